"""Command line front end: one subcommand per module, diff-friendly output.

Output is line oriented (``key=value``), deterministic across runs, and
exact: the only floating point anywhere is the optional ``--display-ln``
rendering of a torsion order's natural logarithm, which is display-only.
Exit codes: 0 on success, 1 on a domain error (the error class name is
printed), 2 on a usage error.

The environment variable ``SUMFACTOR_MAX_LEVEL`` caps every enumeration
bound accepted on the command line; a note is printed when a cap applies.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from typing import Optional, Sequence

from . import barden, cones, grouppres, mfdexpr, monoidkit, wallhc
from .abgroup import (
    IntMatrix,
    cokernel,
    direct_sum,
    doubled_form,
    min_generators,
    parse_group,
    snf,
    split_summand,
)
from .errors import DomainError

ENV_MAX_LEVEL = "SUMFACTOR_MAX_LEVEL"


def _cap_bound(value: int, label: str) -> int:
    cap = os.environ.get(ENV_MAX_LEVEL)
    if cap is not None:
        try:
            cap_value = int(cap)
        except ValueError:
            raise DomainError(f"{ENV_MAX_LEVEL} must be an integer, got {cap!r}")
        if value > cap_value:
            print(f"note={label} capped to {cap_value} by {ENV_MAX_LEVEL}")
            return cap_value
    return value


def _parse_matrix(text: str) -> IntMatrix:
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"matrix literal is not valid JSON: {exc}") from None
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise DomainError("matrix literal must be a list of rows")
    return IntMatrix.from_rows(rows)


def _fmt_matrix(m: IntMatrix) -> str:
    return "[" + ",".join(
        "[" + ",".join(str(v) for v in m.row(i)) + "]" for i in range(m.rows)
    ) + "]"


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_snf(args) -> int:
    m = _parse_matrix(args.matrix)
    diag, left, right = snf(m)
    print(f"diag={','.join(map(str, diag)) if diag else '-'}")
    print(f"left={_fmt_matrix(left)}")
    print(f"right={_fmt_matrix(right)}")
    return 0


def _cmd_group(args) -> int:
    op = args.op
    if op == "canon":
        print(parse_group(args.args[0]))
    elif op == "sum":
        print(direct_sum(parse_group(args.args[0]), parse_group(args.args[1])))
    elif op == "split":
        out = split_summand(parse_group(args.args[0]), parse_group(args.args[1]))
        print("absent" if out is None else out)
    elif op == "doubled":
        out = doubled_form(parse_group(args.args[0]), plus_z2=args.plus_z2)
        print("absent" if out is None else out)
    elif op == "mingen":
        print(min_generators(parse_group(args.args[0])))
    elif op == "cokernel":
        print(cokernel(_parse_matrix(args.args[0])))
    else:  # pragma: no cover - argparse restricts choices
        raise DomainError(f"unknown group op {op}")
    return 0


def _cmd_m5(args) -> int:
    op = args.op
    if op == "sum":
        m = barden.parse_manifold(args.args[0])
        n = barden.parse_manifold(args.args[1])
        print(barden.consum(m, n))
        return 0
    if op == "factor":
        m = barden.parse_manifold(args.args[0])
        factors = barden.factorize5(m)
        print(f"irreducible={'yes' if barden.irreducible5(m) else 'no'}")
        print(f"factors={len(factors)}")
        for f in factors:
            print(f"  {f}")
        return 0
    if op == "divides":
        n = barden.parse_manifold(args.args[0])
        m = barden.parse_manifold(args.args[1])
        comp = barden.divides5(n, m)
        if comp is None:
            print("divides=no")
        else:
            print("divides=yes")
            print(f"complement={comp}")
        return 0
    if op == "wu":
        m = barden.parse_manifold(args.args[0])
        if barden.wu_divides(m):
            print("wu_divides=yes")
            print(f"complement={barden.wu_complement(m)}")
        else:
            print("wu_divides=no")
        return 0
    max_rank = _cap_bound(args.max_rank, "max-rank")
    max_torsion = _cap_bound(args.max_torsion, "max-torsion")
    max_height = barden.Height.parse(args.max_height)
    elements = barden.enumerate5(max_rank, max_torsion, max_height)
    if op == "enumerate":
        print(f"count={len(elements)}")
        for m in elements:
            print(f"  {m}")
        return 0
    if op == "prime-sweep":
        start = time.monotonic()
        for cand in elements:
            if cand == barden.S5:
                continue
            witness = None
            for x in elements:
                for y in elements:
                    z = barden.consum(x, y)
                    if (
                        barden.divides5(cand, z) is not None
                        and barden.divides5(cand, x) is None
                        and barden.divides5(cand, y) is None
                    ):
                        witness = (x, y)
                        break
                if witness:
                    break
            verdict = "no" if witness else "yes-at-bound"
            line = f"candidate={cand} prime={verdict}"
            if witness:
                line += f" witness={witness[0]};{witness[1]}"
            print(line)
        print(f"runtime={time.monotonic() - start:.3f}s", file=sys.stderr)
        return 0
    raise DomainError(f"unknown m5 op {op}")  # pragma: no cover


def _cmd_monoid(args) -> int:
    specs = monoidkit.builtin_specs()
    if args.spec not in specs:
        raise DomainError(
            f"unknown spec {args.spec!r}; available: {', '.join(sorted(specs))}"
        )
    spec = specs[args.spec]
    bound = _cap_bound(args.bound, "bound")
    if args.op == "ufm":
        verdict = monoidkit.ufm_check(spec, bound)
    else:
        if args.element is None:
            raise DomainError(f"--element is required for op {args.op}")
        if spec.parse is None:  # pragma: no cover - all builtins parse
            raise DomainError(f"spec {spec.name} has no element literal parser")
        element = spec.parse(args.element)
        ops = {
            "unit": monoidkit.is_unit,
            "prime": monoidkit.is_prime,
            "irreducible": monoidkit.is_irreducible,
            "cancellable": monoidkit.is_cancellable,
        }
        verdict = ops[args.op](spec, element, bound)
    print(monoidkit.format_verdict(spec, verdict))
    return 0


def _cmd_hc(args) -> int:
    if args.op == "case":
        case = wallhc.ufm_case(args.k)
        print(f"k={case.k}")
        print(f"k_mod_8={case.k_mod_8}")
        print(f"smooth={case.smooth}")
        print(f"smooth_mechanism={case.smooth_mechanism}")
        print(f"pl={case.pl}")
        print(f"pl_mechanism={case.pl_mechanism}")
        for note in case.notes:
            print(f"note={note}")
        for cite in case.citations:
            print(f"citation={cite}")
        return 0
    if args.op == "witness":
        if args.k_mod_8 != 1:
            raise DomainError("type witnesses live in the k = 1 mod 8 fragment")
        w = wallhc.type_noncancellation_witness(args.g, args.arf)
        print(f"w0={w.w0}")
        print(f"w1={w.w1}")
        print(f"w0#w1={w.left}")
        print(f"w0#w0={w.right}")
        print(f"equal={'yes' if w.left == w.right else 'no'}")
        print(f"distinct={'yes' if w.w0 != w.w1 else 'no'}")
        print("note=equality means equality of the modeled invariants (rank, arf, type)")
        return 0
    raise DomainError(f"unknown hc op {args.op}")  # pragma: no cover


def _cmd_pres(args) -> int:
    op = args.op
    if op == "parse":
        print(grouppres.parse_presentation(args.args[0]))
        return 0
    if op == "abelianize":
        print(grouppres.abelianization(grouppres.parse_presentation(args.args[0])))
        return 0
    if op == "deficiency":
        p = grouppres.parse_presentation(args.args[0])
        print(f"deficiency={grouppres.deficiency(p)}")
        print(f"euler_char={grouppres.euler_char(p)}")
        return 0
    if op == "metzler":
        pres = grouppres.metzler_presentation(args.p, args.s, args.q)
        print(pres)
        return 0
    if op == "q28":
        p1, p2, cert = grouppres.q28_presentations()
        print(f"p1={p1}")
        print(f"p2={p2}")
        print(f"deficiencies={cert.deficiencies[0]},{cert.deficiencies[1]}")
        print(f"abelianizations={cert.abelianizations[0]},{cert.abelianizations[1]}")
        print(f"inequivalence={cert.inequivalence_citation}")
        return 0
    raise DomainError(f"unknown pres op {op}")  # pragma: no cover


def _cmd_cones(args) -> int:
    if args.op == "equiv":
        a, b = cones.ConeClass.of(args.a), cones.ConeClass.of(args.b)
        print(f"homotopy={'yes' if cones.cone_homotopy_equiv(a, b) else 'no'}")
        print(f"stable={'yes' if cones.cone_stable_equiv(a, b) else 'no'}")
        return 0
    if args.op == "witnesses":
        for a, b in cones.cone_witness_pairs():
            print(f"{{{a},{b}}}")
        return 0
    raise DomainError(f"unknown cones op {args.op}")  # pragma: no cover


def _cmd_witness(args) -> int:
    cert = mfdexpr.make_witness(
        args.family,
        args.k,
        p=args.p,
        s=args.s,
        q=args.q,
        q2=args.q2,
        a=args.a,
        b=args.b,
    )
    print(cert.serialize())
    return 0


def _cmd_complexity(args) -> int:
    desc = mfdexpr.parse_descriptor(args.descriptor)
    c = mfdexpr.complexity(desc)
    print(f"d={c.d if c.d is not None else '?'}")
    print(f"rank={c.rank_sum if c.rank_sum is not None else '?'}")
    print(f"torsion={c.torsion_order if c.torsion_order is not None else '?'}")
    if args.display_ln:
        if c.torsion_order is None:
            print("ln_torsion=?")
        else:
            print(f"ln_torsion={math.log(c.torsion_order):.6f}")
    print(f"sphere_like={'yes' if mfdexpr.is_sphere_like(desc) else 'no'}")
    return 0


# ---------------------------------------------------------------------------
# Parser assembly
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sumfactor",
        description="exact arithmetic in connected-sum monoids of manifolds",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("snf", help="Smith normal form of an integer matrix")
    p.add_argument("matrix", help='JSON rows, e.g. "[[2,4],[6,8]]"')
    p.set_defaults(func=_cmd_snf)

    p = sub.add_parser("group", help="canonical abelian group arithmetic")
    p.add_argument("op", choices=["canon", "sum", "split", "doubled", "mingen", "cokernel"])
    p.add_argument("args", nargs="+", help="group literals (or a matrix for cokernel)")
    p.add_argument("--plus-z2", action="store_true", help="halve after removing one Z/2")
    p.set_defaults(func=_cmd_group)

    p = sub.add_parser("m5", help="simply connected 5-manifolds")
    p.add_argument(
        "op", choices=["sum", "factor", "divides", "wu", "enumerate", "prime-sweep"]
    )
    p.add_argument("args", nargs="*", help="manifold literals M5(H2=..., h=...)")
    p.add_argument("--max-rank", type=int, default=1)
    p.add_argument("--max-torsion", type=int, default=8)
    p.add_argument("--max-height", default="2", help="a natural number or inf")
    p.set_defaults(func=_cmd_m5)

    p = sub.add_parser("monoid", help="bounded monoid predicates")
    monoid_sub = p.add_subparsers(dest="monoid_command", required=True)
    chk = monoid_sub.add_parser("check", help="run one predicate")
    chk.add_argument("--spec", required=True)
    chk.add_argument("--op", required=True, choices=["unit", "prime", "irreducible", "cancellable", "ufm"])
    chk.add_argument("--element", default=None)
    chk.add_argument("--bound", type=int, required=True)
    chk.set_defaults(func=_cmd_monoid)

    p = sub.add_parser("hc", help="highly connected even-dimensional fragment")
    hc_sub = p.add_subparsers(dest="hc_command", required=True)
    case = hc_sub.add_parser("case", help="unique factorization case table")
    case.add_argument("--k", type=int, required=True)
    case.set_defaults(func=_cmd_hc, op="case")
    wit = hc_sub.add_parser("witness", help="type-bit non-cancellation witness")
    wit.add_argument("--k-mod-8", dest="k_mod_8", type=int, required=True)
    wit.add_argument("--g", type=int, required=True)
    wit.add_argument("--arf", type=int, required=True, choices=[0, 1])
    wit.set_defaults(func=_cmd_hc, op="witness")

    p = sub.add_parser("pres", help="finite group presentations")
    p.add_argument("op", choices=["parse", "abelianize", "deficiency", "metzler", "q28"])
    p.add_argument("args", nargs="*", help="a presentation literal")
    p.add_argument("--p", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--q", type=int)
    p.set_defaults(func=_cmd_pres)

    p = sub.add_parser("cones", help="mapping cones on torsion classes")
    cones_sub = p.add_subparsers(dest="cones_command", required=True)
    eq = cones_sub.add_parser("equiv")
    eq.add_argument("--a", type=int, required=True)
    eq.add_argument("--b", type=int, required=True)
    eq.set_defaults(func=_cmd_cones, op="equiv")
    wits = cones_sub.add_parser("witnesses")
    wits.set_defaults(func=_cmd_cones, op="witnesses")

    p = sub.add_parser("witness", help="non-cancellation witness certificates")
    p.add_argument("--family", required=True, choices=["metzler", "q28", "cone"])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--q2", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("complexity", help="complexity of a manifold descriptor")
    p.add_argument("--descriptor", required=True)
    p.add_argument("--display-ln", action="store_true")
    p.set_defaults(func=_cmd_complexity)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse and dispatch; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error={type(exc).__name__} message={exc}", file=sys.stderr)
        return 1


def main() -> None:  # pragma: no cover - thin wrapper
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
