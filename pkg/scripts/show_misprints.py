"""Show why two printed n = 3 table entries cannot be right.

For each misprinted entry, print the residues D_ii P != 0 of the printed form
and the difference between the printed form and the pipeline output.
"""

from plurikit.appendix import load_golden, table_normalization
from plurikit.bases import descending_basis, mi_abs, mi_bidegree, offdiag_unflatten
from plurikit.poly import Poly
from plurikit.weyl import apply_D


def main():
    gold = load_golden()
    printed = {tuple(e["nu"]): Poly.from_json(e["poly"]) for e in gold["entries"]}
    for e in gold["errata"]:
        flat = tuple(e["nu"])
        nu = offdiag_unflatten(flat, 3)
        p = printed[flat]
        print(f"nu = {flat}")
        print(f"  bidegrees present: {sorted(p.bidegree_split())}")
        for i in (1, 2, 3):
            r = apply_D(i, i, p)
            if r:
                print(f"  D_{i}{i} P = {r}")
        ours = descending_basis(mi_bidegree(nu))[nu].scale(table_normalization(mi_abs(nu)))
        print(f"  pipeline - printed = {ours - p}")


if __name__ == "__main__":
    main()
