"""Hand transcription of the n = 3 descending-basis table and sigma table.

Writes src/plurikit/data/appendix_a.json (with a sha256 of the canonical
payload).  Run once; the verifier only reads the JSON.

    python3 scripts/transcribe_appendix.py
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from plurikit.field import KAPPA as k, K, asc_poch
from plurikit.poly import X, Ambient, Poly, tv

AMB = Ambient(3)


def t(i, j):
    return Poly.variable(tv(i, j), AMB)


def x(i, j):
    return Poly.variable((X, i, j), AMB)


def c(v):
    return Poly.const(v, AMB)


SIGMA = {
    1: t(1, 2) * x(1, 2) + t(1, 3) * x(1, 3) + t(2, 1) * x(2, 1) + t(2, 3) * x(2, 3) + t(3, 1) * x(3, 1) + t(3, 2) * x(3, 2),
    2: (t(2, 1) * t(1, 2) - t(2, 2) * t(1, 1)) * x(1, 2) * x(2, 1)
    + (t(1, 2) * t(2, 3) - t(2, 2) * t(1, 3)) * x(1, 2) * x(2, 3)
    + (t(3, 1) * t(1, 2) - t(3, 2) * t(1, 1)) * x(3, 1) * x(1, 2)
    + (t(2, 1) * t(1, 3) - t(2, 3) * t(1, 1)) * x(2, 1) * x(1, 3)
    + (t(3, 1) * t(1, 3) - t(3, 3) * t(1, 1)) * x(3, 1) * x(1, 3)
    + (t(3, 2) * t(1, 3) - t(3, 3) * t(1, 2)) * x(3, 2) * x(1, 3)
    + (t(3, 2) * t(2, 1) - t(3, 1) * t(2, 2)) * x(3, 2) * x(2, 1)
    + (t(3, 1) * t(2, 3) - t(3, 3) * t(2, 1)) * x(3, 1) * x(2, 3)
    + (t(3, 2) * t(2, 3) - t(3, 3) * t(2, 2)) * x(3, 2) * x(2, 3),
    3: ((t(3, 3) * t(2, 2) - t(3, 2) * t(2, 3)) * t(1, 1)
        + (t(3, 1) * t(2, 3) - t(3, 3) * t(2, 1)) * t(1, 2)
        + (t(3, 2) * t(2, 1) - t(3, 1) * t(2, 2)) * t(1, 3))
    * (x(3, 1) * x(2, 3) * x(1, 2) + x(3, 2) * x(2, 1) * x(1, 3)),
}

km1 = lambda r: asc_poch(k - 1, r)
k2 = k - 2

# keys are (nu12, nu13, nu23, nu21, nu31, nu32)
ENTRIES = {
    (0, 0, 0, 0, 0, 0): c(1),
    (1, 0, 0, 0, 0, 0): t(1, 2).scale(k - 1),
    (2, 0, 0, 0, 0, 0): (t(1, 2) ** 2).scale(km1(2) / 2),
    (1, 1, 0, 0, 0, 0): (t(1, 2) * t(1, 3)).scale(km1(2)),
    (1, 0, 1, 0, 0, 0): (t(1, 2) * t(2, 3)).scale(k**2) - (t(2, 2) * t(1, 3)).scale(k),
    (1, 0, 0, 1, 0, 0): (t(1, 2) * t(2, 1)).scale(k**2) - (t(2, 2) * t(1, 1)).scale(k),
    (3, 0, 0, 0, 0, 0): (t(1, 2) ** 3).scale(km1(3) / 6),
    (2, 1, 0, 0, 0, 0): (t(1, 2) ** 2 * t(1, 3)).scale(km1(3) / 2),
    (2, 0, 1, 0, 0, 0): (t(1, 2) ** 2 * t(2, 3)).scale(k * (k + 1) ** 2 / 2)
    - (t(2, 2) * t(1, 2) * t(1, 3)).scale(k * (k + 1)),
    (1, 1, 1, 0, 0, 0): (t(1, 2) * t(1, 3) * t(2, 3)).scale(k**2 * (k + 1))
    - (t(2, 2) * t(1, 3) ** 2).scale(k * (k + 1)),
    (1, 0, 1, 0, 1, 0): (t(1, 2) * t(3, 1) * t(2, 3)).scale(k * (k + 1) * (k**2 - 2) / k2)
    + (t(1, 1) * t(2, 2) * t(3, 3) + t(1, 3) * t(2, 1) * t(3, 2)).scale(2 * k * (k + 1) / k2)
    - (t(1, 1) * t(2, 3) * t(3, 2) + t(2, 2) * t(1, 3) * t(3, 1) + t(3, 3) * t(1, 2) * t(2, 1)).scale(k**2 * (k + 1) / k2),
    (4, 0, 0, 0, 0, 0): (t(1, 2) ** 4).scale(km1(4) / 24),
    (3, 1, 0, 0, 0, 0): (t(1, 2) ** 3 * t(1, 3)).scale(km1(4) / 6),
    (3, 0, 1, 0, 0, 0): (t(1, 2) ** 3 * t(2, 3)).scale(k * (k + 1) * (k + 2) ** 2 / 6)
    - (t(2, 2) * t(1, 2) ** 2 * t(1, 3)).scale(k * (k + 1) * (k + 2) / 2),
    (2, 2, 0, 0, 0, 0): (t(1, 2) ** 2 * t(1, 3) ** 2).scale(km1(4) / 4),
    (2, 0, 2, 0, 0, 0): (t(1, 2) ** 2 * t(2, 3) ** 2).scale((k + 1) ** 2 * (k + 2) ** 2 / 4)
    + (t(2, 2) ** 2 * t(1, 3) ** 2).scale((k + 1) * (k + 2) / 2)
    - (t(2, 2) * t(1, 2) * t(1, 3) * t(2, 3)).scale((k + 1) ** 2 * (k + 2)),
    (2, 1, 1, 0, 0, 0): (t(1, 2) ** 2 * t(1, 3) * t(2, 3)).scale(k * (k + 1) ** 2 * (k + 2) / 2)
    - (t(2, 2) * t(1, 2) * t(1, 3) ** 2).scale(k * (k + 1) * (k + 2)),
    (2, 1, 0, 1, 0, 0): (t(1, 2) ** 2 * t(1, 3) * t(2, 1)).scale(k * (k + 1) * (k + 2) ** 2 / 2)
    - (t(1, 1) * t(1, 2) ** 2 * t(2, 3)).scale(k * (k + 1) * (k + 2) / 2)
    - (t(1, 1) * t(2, 2) * t(1, 2) * t(1, 3)).scale(k * (k + 1) * (k + 2)),
    (2, 0, 1, 0, 1, 0): (t(1, 1) * t(2, 2) * t(3, 3) * t(1, 2) + t(1, 2) * t(1, 3) * t(2, 1) * t(3, 2)).scale(
        (k + 1) * (k + 2) * (2 * k + 1) / k2)
    + (t(1, 1) * t(2, 2) * t(1, 2) * t(1, 3)).scale((k + 1) * (k + 2))
    + (t(1, 2) ** 2 * t(2, 3) * t(3, 1)).scale((k + 1) * (k + 2) * (k**3 + 2 * k**2 - 2 * k - 2) / (2 * k2))
    - (t(3, 3) * t(1, 2) ** 2 * t(2, 1)).scale((k + 1) * (k + 2) * (k**2 + 2 * k + 2) / (2 * k2))
    - (t(1, 1) * t(1, 2) * t(2, 3) * t(3, 2) + t(2, 2) * t(1, 2) * t(1, 3) * t(3, 1)).scale(
        (k + 1) * (k + 2) * (k**2 + k - 1) / k2),
    (1, 1, 1, 1, 0, 0): (t(1, 2) * t(1, 3) * t(2, 1) * t(2, 3)).scale((k + 1) ** 3 * (k + 2))
    - (t(1, 1) * t(1, 2) * t(2, 3) ** 2 + t(2, 2) * t(1, 3) ** 2 * t(2, 1)).scale((k + 1) ** 2 * (k + 2))
    - (t(1, 1) * t(2, 2) * t(1, 3) * t(2, 3)).scale((k - 1) * (k + 1) * (k + 2)),
    (1, 0, 1, 1, 1, 0): (t(1, 1) * t(2, 2) * t(3, 3) * t(2, 1)).scale((k + 1) * (k + 2) * (3 * k - 1) / k2)
    + (t(1, 2) * t(2, 1) * t(2, 3) * t(3, 1)).scale((k + 1) * (k + 2) * (k**3 + k**2 - 3 * k - 1) / (2 * k2))
    + (t(1, 3) * t(2, 1) ** 2 * t(3, 2)).scale((k + 1) * (k + 2) * (2 * k + 1) / k2)
    - (t(1, 1) * t(2, 1) * t(2, 3) * t(3, 2) + t(2, 2) * t(1, 3) * t(2, 1) * t(3, 1)).scale(
        (k + 1) * (k + 2) * (k**2 + 1) / k2)
    - (t(3, 3) * t(1, 2) * t(2, 1) ** 2).scale((k + 1) * (k + 2) * (k**2 + k - 1) / k2)
    - (t(1, 1) * t(2, 2) * t(2, 3) * t(3, 1)).scale((k + 1) ** 2 * (k + 2)),
}


# Minimal corrections of two printed entries.  The printed versions are not
# killed by D_11, D_22, D_33 (the first is not even bihomogeneous); each fix
# changes a single term.
ERRATA = {
    (2, 0, 1, 0, 1, 0): (
        "monomial t11 t22 t12 t13 read as t11 t22 t32 t13",
        ENTRIES[(2, 0, 1, 0, 1, 0)]
        - (t(1, 1) * t(2, 2) * t(1, 2) * t(1, 3)).scale((k + 1) * (k + 2))
        + (t(1, 1) * t(2, 2) * t(3, 2) * t(1, 3)).scale((k + 1) * (k + 2)),
    ),
    (1, 0, 1, 1, 1, 0): (
        "coefficient of t12 t21 t23 t31 without the factor 1/2",
        ENTRIES[(1, 0, 1, 1, 1, 0)]
        + (t(1, 2) * t(2, 1) * t(2, 3) * t(3, 1)).scale((k + 1) * (k + 2) * (k**3 + k**2 - 3 * k - 1) / (2 * k2)),
    ),
}


def payload() -> dict:
    return {
        "n": 3,
        "seed": "A",
        "normalization": "P^D_nu = P_nu / ((kappa)^(|nu|) (kappa-1)^(|nu|))",
        "index_order": ["nu12", "nu13", "nu23", "nu21", "nu31", "nu32"],
        "sigma": {str(i): p.to_json() for i, p in SIGMA.items()},
        "entries": [{"nu": list(key), "poly": p.to_json()} for key, p in ENTRIES.items()],
        "errata": [{"nu": list(key), "note": note, "poly": p.to_json()} for key, (note, p) in ERRATA.items()],
    }


def checksum(obj: dict) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


def main():
    body = payload()
    out = {"sha256": checksum(body), "payload": body}
    path = Path(__file__).resolve().parent.parent / "src" / "plurikit" / "data" / "appendix_a.json"
    path.write_text(json.dumps(out, indent=1, sort_keys=True) + "\n")
    print(f"wrote {len(ENTRIES)} entries to {path}")


if __name__ == "__main__":
    main()
