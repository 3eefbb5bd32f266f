"""Error taxonomy. Every error carries a stable machine-readable ``code``."""

from __future__ import annotations


class PlurikitError(Exception):
    code = "PlurikitError"

    def to_json(self) -> dict:
        return {"error": self.code, "message": str(self)}


class PoleAtKappa(PlurikitError, ZeroDivisionError):
    """A specialization or division hit a pole in the weight parameter."""

    code = "PoleAtKappa"


class PoleAtS(PoleAtKappa):
    code = "PoleAtS"


class ZeroPochhammer(PlurikitError, ZeroDivisionError):
    code = "ZeroPochhammer"


class SingularGram(PlurikitError):
    code = "SingularGram"


class SingularSystem(PlurikitError):
    code = "SingularSystem"


class AmbientMismatch(PlurikitError, ValueError):
    code = "AmbientMismatch"


class NonHomogeneous(PlurikitError, ValueError):
    code = "NonHomogeneous"


class NonTVariable(PlurikitError, ValueError):
    code = "NonTVariable"
