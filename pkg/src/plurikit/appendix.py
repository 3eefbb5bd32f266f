"""Golden-file check of the n = 3 table (sigma_1..3 and P_nu, |nu| <= 4)."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from importlib import resources

from .bases import descending_basis, mi_abs, mi_bidegree, offdiag_unflatten
from .field import KAPPA, asc_poch
from .genfun import sigma
from .poly import Poly


class ChecksumError(RuntimeError):
    pass


def _digest(payload: dict) -> str:
    return hashlib.sha256(json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


def load_golden() -> dict:
    raw = json.loads(resources.files("plurikit").joinpath("data/appendix_a.json").read_text())
    if _digest(raw["payload"]) != raw["sha256"]:
        raise ChecksumError("appendix_a.json does not match its checksum")
    return raw["payload"]


def table_normalization(d: int):
    """(kappa)^(d) (kappa-1)^(d)."""
    return asc_poch(KAPPA, d) * asc_poch(KAPPA - 1, d)


@dataclass
class AppendixReport:
    checked: int = 0
    matched: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.checked == self.matched

    def summary(self) -> str:
        return f"{self.matched}/{self.checked} entries match"

    def to_json(self) -> dict:
        return {"checked": self.checked, "matched": self.matched, "ok": self.ok,
                "mismatches": [list(m) for m in self.mismatches]}


def _descending(nu, method: str, cache: dict) -> Poly:
    bd = mi_bidegree(nu)
    if bd not in cache:
        cache[bd] = descending_basis(bd, method=method)
    return cache[bd][nu]


def verify_entries(max_nu: int = 4, method: str = "generating_function", errata: bool = False) -> AppendixReport:
    """Compare P_nu / N_|nu| from the table with the computed P^D_nu.

    ``errata=True`` substitutes the corrected forms of the misprinted entries.
    """
    gold = load_golden()
    entries = {tuple(e["nu"]): e["poly"] for e in gold["entries"]}
    if errata:
        entries.update({tuple(e["nu"]): e["poly"] for e in gold["errata"]})
    rep = AppendixReport()
    cache: dict = {}
    for flat, pj in entries.items():
        nu = offdiag_unflatten(flat, 3)
        d = mi_abs(nu)
        if d > max_nu:
            continue
        rep.checked += 1
        want = Poly.from_json(pj).scale(table_normalization(d).inverse())
        if _descending(nu, method, cache) == want:
            rep.matched += 1
        else:
            rep.mismatches.append(flat)
    return rep


def verify_sigma() -> AppendixReport:
    gold = load_golden()
    rep = AppendixReport()
    for i, pj in sorted(gold["sigma"].items()):
        rep.checked += 1
        if sigma(3, int(i)) == Poly.from_json(pj):
            rep.matched += 1
        else:
            rep.mismatches.append((int(i),))
    return rep
