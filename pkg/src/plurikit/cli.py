"""Command-line front end.

Exit codes: 0 success, 1 domain error (JSON on stderr), 2 usage error.
Polynomials are given as JSON (the ``Poly.to_json`` format) or as
expressions such as ``"t_1_2*t_2_1 - t_1_1*t_2_2/k"`` (``k`` is kappa).
"""

from __future__ import annotations

import argparse
import ast
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import acceptance
from .appendix import verify_entries, verify_sigma
from .bases import Partition, descending_basis, monomial_basis, offdiag_flatten
from .errors import PlurikitError
from .field import KAPPA
from .genfun import SEEDS, build_G, build_symmetric_G, normalization, substitute_and_extract
from .poly import Ambient, Bidegree, Poly, parse_var
from .pullback import WeightPair, c_mn, c_pullback, phi_inverse, phi_kappa
from .weyl import OPERATORS, apply_op, inner_product


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    n: int | None = None
    n1: int | None = None
    n2: int | None = None
    m: int | None = None
    mu: int | None = None
    partition: list | None = None
    kappa: Fraction | None = None
    seed: str = "A"
    max_degree: int | None = None
    max_weight: int | None = None
    out: str | None = None
    format: str = "json"

    def __post_init__(self):
        if self.partition is not None:
            p = list(self.partition)
            if any(p[i] < p[i + 1] for i in range(len(p) - 1)) or min(p, default=1) < 1:
                raise UsageError("partition must be positive and non-increasing")
            if self.n is not None and sum(p) != self.n:
                raise UsageError(f"partition {p} does not sum to n = {self.n}")
        if self.seed not in SEEDS:
            raise UsageError(f"unknown seed {self.seed!r}")

    @property
    def symbolic(self) -> bool:
        return self.kappa is None


# -- parsing helpers -----------------------------------------------------------


def int_list(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()] if text else []
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


_BINOPS = {ast.Add: lambda a, b: a + b, ast.Sub: lambda a, b: a - b, ast.Mult: lambda a, b: a * b}


def parse_poly(text: str, n: int) -> Poly:
    """JSON object or a polynomial expression in t_i_j (and the other families)."""
    text = text.strip()
    if text.startswith("{"):
        p = Poly.from_json(json.loads(text))
        if p.ambient.n != n:
            p = Poly(p.terms, Ambient(n, p.ambient.kappa_cols))
        return p
    amb = Ambient(n)
    try:
        tree = ast.parse(text, mode="eval").body
    except SyntaxError as e:
        raise UsageError(f"cannot parse polynomial: {e.msg}")

    def ev(node):
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Poly.const(node.value, amb)
        if isinstance(node, ast.Name):
            if node.id == "k":
                return Poly.const(KAPPA, amb)
            try:
                return Poly.variable(parse_var(node.id), amb)
            except (ValueError, KeyError, IndexError) as e:
                raise UsageError(f"unknown variable {node.id!r}") from e
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if type(node.op) in _BINOPS:
                return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
            if isinstance(node.op, ast.Pow) and isinstance(node.right, ast.Constant):
                return ev(node.left) ** int(node.right.value)
            if isinstance(node.op, ast.Div):
                den = ev(node.right)
                if den.total_degree() != 0 or not den:
                    raise UsageError("can only divide by a nonzero constant")
                return ev(node.left).scale(den.constant_term().inverse())
        raise UsageError(f"unsupported expression: {ast.unparse(node)}")

    return ev(tree)


def bidegree_from(args) -> Bidegree:
    a, b = args.row_sums, args.col_sums
    if len(a) != args.n or len(b) != args.n:
        raise UsageError("row and column sums must have length n")
    return Bidegree(tuple(a), tuple(b))


# -- subcommands ----------------------------------------------------------------


def cmd_apply_op(cfg: RunConfig, args) -> dict:
    p = parse_poly(args.poly, cfg.n)
    r = apply_op(args.op, args.i, args.j, p, cfg.kappa)
    return {"result": r.to_json(), "text": str(r)}


def cmd_basis(cfg: RunConfig, args) -> dict:
    bd = bidegree_from(args)
    part = Partition(tuple(cfg.partition)) if cfg.partition else None
    if args.kind == "monomial":
        basis = monomial_basis(bd, partition=part, kappa=cfg.kappa)
    else:
        basis = descending_basis(bd, partition=part, method=args.method, kappa=cfg.kappa)
    entries = [{"nu": [list(r) for r in nu], "offdiag": list(offdiag_flatten(nu)), "poly": p.to_json(), "text": str(p)}
               for nu, p in basis.items()]
    return {"kind": args.kind, "basis": entries, "text": "\n".join(f"{e['nu']}: {e['text']}" for e in entries)}


def cmd_genfun(cfg: RunConfig, args) -> dict:
    w = cfg.max_weight if cfg.max_weight is not None else 6
    G = build_G(cfg.n, SEEDS[cfg.seed](w, cfg.kappa), w, cfg.kappa)
    if args.emit == "series":
        return {"series": G.to_json(), "text": str(G.poly)}
    out = []
    for d in range(w + 1):
        norm = normalization(SEEDS[cfg.seed](d, cfg.kappa), d, cfg.kappa)
        for nu, p in sorted(substitute_and_extract(G, cfg.n, degree=d).items()):
            pd = p.scale(norm.inverse())
            out.append({"nu": [list(r) for r in nu], "poly": pd.to_json(), "text": str(pd)})
    return {"basis": out, "text": "\n".join(f"{e['nu']}: {e['text']}" for e in out)}


def cmd_gensym(cfg: RunConfig, args) -> dict:
    d = cfg.max_degree if cfg.max_degree is not None else 4
    G = build_symmetric_G(cfg.n1, cfg.n2, d, cfg.kappa)
    return {"generator": G.to_json(), "terms": len(G.terms)}


def cmd_phi(cfg: RunConfig, args) -> dict:
    p = parse_poly(args.poly, cfg.n)
    if args.direction == "forward":
        r = phi_kappa(p, kappa=cfg.kappa)
    else:
        r = phi_inverse(p, seed=cfg.seed, kappa=cfg.kappa)
    return {"result": r.to_json(), "text": str(r)}


def cmd_pullback_constant(cfg: RunConfig, args) -> dict:
    w = WeightPair(tuple(args.k), tuple(args.l))
    if args.kind == "c-mn":
        c = c_mn(cfg.m, cfg.n, args.s, w)
    else:
        c = c_pullback(cfg.mu, cfg.m, cfg.n2, w)
    return c.to_json()


def cmd_inner_product(cfg: RunConfig, args) -> dict:
    p, q = parse_poly(args.p, cfg.n), parse_poly(args.q, cfg.n)
    v = inner_product(p, q, cfg.kappa)
    return {"value": v.to_json(), "text": str(v)}


def cmd_verify_appendix(cfg: RunConfig, args) -> dict:
    rep = verify_entries(args.max_nu, method=args.method, errata=args.errata)
    sig = verify_sigma()
    return {"entries": rep.to_json(), "sigma": sig.to_json(), "summary": rep.summary(),
            "ok": rep.ok and sig.ok}


def cmd_verify_all(cfg: RunConfig, args) -> dict:
    only = set(args.only) if args.only else None
    results = acceptance.run_all(quick=args.quick, only=only)
    if cfg.format == "text":
        for r in results:
            print(r.line(), flush=True)
    return {"results": [r.to_json() for r in results], "ok": all(r.passed for r in results)}


COMMANDS = {
    "apply-op": cmd_apply_op,
    "basis": cmd_basis,
    "genfun": cmd_genfun,
    "gensym": cmd_gensym,
    "phi": cmd_phi,
    "pullback-constant": cmd_pullback_constant,
    "inner-product": cmd_inner_product,
    "verify-appendix": cmd_verify_appendix,
    "verify-all": cmd_verify_all,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="plurikit", description="Exact pluriharmonic polynomial toolkit over Q(kappa).")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--kappa", type=rational, help="specialize kappa (default: symbolic)")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", help="write the output here instead of stdout")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("apply-op", parents=[common], help="apply D, E, Eprime or F")
    p.add_argument("--op", "--kind", dest="op", choices=sorted(OPERATORS), required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--poly", required=True)

    p = sub.add_parser("basis", parents=[common], help="monomial or descending basis of one bidegree")
    p.add_argument("--kind", choices=("monomial", "descending"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--row-sums", type=int_list, required=True)
    p.add_argument("--col-sums", type=int_list, required=True)
    p.add_argument("--partition", type=int_list)
    p.add_argument("--method", choices=("linear_solve", "generating_function"), default="linear_solve")

    p = sub.add_parser("genfun", parents=[common], help="the generating function G^(n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", choices=sorted(SEEDS), default="A")
    p.add_argument("--max-weight", type=int, default=6)
    p.add_argument("--emit", choices=("series", "basis"), default="series",
                   help="the series, or the normalized P^D_nu read off from it")

    p = sub.add_parser("gensym", parents=[common], help="the two-block symmetric generator")
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=4)

    p = sub.add_parser("phi", parents=[common], help="phi_kappa or its inverse")
    p.add_argument("--direction", choices=("forward", "inverse"), default="forward")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--seed", choices=sorted(SEEDS), default="A")

    p = sub.add_parser("pullback-constant", parents=[common], help="c(mu/2, rho) or c_mn")
    p.add_argument("--kind", choices=("pullback", "c-mn"), default="pullback")
    p.add_argument("--mu", type=int)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--n2", type=int)
    p.add_argument("--k", type=int_list, default=[])
    p.add_argument("--l", type=int_list, default=[])
    p.add_argument("--s", type=rational, help="specialize s (c-mn only; default symbolic)")

    p = sub.add_parser("inner-product", parents=[common], help="(P, Q)_kappa")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)

    p = sub.add_parser("verify-appendix", parents=[common], help="compare with the n = 3 golden table")
    p.add_argument("--max-nu", type=int, default=4)
    p.add_argument("--method", choices=("linear_solve", "generating_function"), default="generating_function")
    p.add_argument("--errata", action="store_true", help="use the corrected forms of the two misprinted entries")

    p = sub.add_parser("verify-all", parents=[common], help="run the acceptance suite")
    p.add_argument("--quick", action="store_true")
    p.add_argument("--only", type=int_list)
    return ap


def config_from(args) -> RunConfig:
    return RunConfig(
        subcommand=args.subcommand,
        n=getattr(args, "n", None),
        n1=getattr(args, "n1", None),
        n2=getattr(args, "n2", None),
        m=getattr(args, "m", None),
        mu=getattr(args, "mu", None),
        partition=getattr(args, "partition", None),
        kappa=args.kappa,
        seed=getattr(args, "seed", "A"),
        max_degree=getattr(args, "max_degree", None),
        max_weight=getattr(args, "max_weight", None),
        out=args.out,
        format=args.format,
    )


def _check_required(cfg: RunConfig, args):
    if cfg.subcommand == "pullback-constant" and args.kind == "pullback" and (cfg.mu is None or cfg.n2 is None):
        raise UsageError("--mu and --n2 are required for the pullback constant")


def _emit(cfg: RunConfig, payload: dict):
    if cfg.format == "text" and cfg.subcommand == "verify-all":
        text = "ok" if payload["ok"] else "FAILED"
    elif cfg.format == "text":
        text = payload.get("text") or payload.get("summary") or json.dumps(payload, ensure_ascii=False)
    else:
        text = json.dumps(payload, ensure_ascii=False, indent=1)
    if cfg.out:
        Path(cfg.out).write_text(text + "\n", encoding="utf-8")
    else:
        sys.stdout.write(text + "\n")


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        cfg = config_from(args)
        _check_required(cfg, args)
        payload = COMMANDS[cfg.subcommand](cfg, args)
    except PlurikitError as e:
        sys.stderr.write(json.dumps(e.to_json()) + "\n")
        return 1
    except (UsageError, ValueError) as e:
        # malformed weights, partitions or bidegrees
        sys.stderr.write(f"plurikit: error: {e}\n")
        return 2
    _emit(cfg, payload)
    if cfg.subcommand.startswith("verify") and not payload["ok"]:
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
