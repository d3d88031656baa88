"""Command-line front end.

Every subcommand is a thin wrapper over the library; answers are printed as
deterministic text, or as a single JSON document with ``--json``.  Exit
codes: 0 success (including negative predicate answers), 1 semantic
precondition failure, 2 I/O or parse failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .exactla import ExactLAError
from .nalg import (
    AlgebraError,
    NaryAlgebra,
    abelianization,
    commutator,
    daletskii,
    liesation,
    validate_leibniz,
    validate_lie,
)
from .ext import CubeError, GaloisStructure, central_obstruction, is_central_oracle, is_extension
from .homology import compare_uce, h2_via_uce, hopf_evaluate, uce_leibniz, uce_lie
from .files import ParseError, SemanticError, load_algebra, load_cube, parse_field, serialize_algebra

GALOIS = {g.value: g for g in GaloisStructure}


def fmt_vector(a: NaryAlgebra, v: tuple) -> str:
    """Human-readable combination of basis labels, e.g. ``e1 - 1/2*e3``."""
    fld = a.field
    labels = a.labels()
    parts = []
    for i, c in enumerate(v):
        if not c:
            continue
        s = fld.fmt(c)
        if s == "1":
            term = labels[i]
        elif s == "-1":
            term = f"-{labels[i]}"
        else:
            term = f"{s}*{labels[i]}"
        parts.append(term)
    if not parts:
        return "0"
    out = parts[0]
    for term in parts[1:]:
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out


def _counterexample_doc(a: NaryAlgebra, report):
    if report.ok or report.counterexample is None:
        return None
    kind, tup, defect = report.counterexample
    labels = a.labels()
    return {
        "kind": kind,
        "at": [labels[i - 1] for i in tup],
        "defect": fmt_vector(a, defect),
    }


def _emit(args, doc: dict, text_lines):
    if args.json:
        print(json.dumps(doc, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def cmd_check(args):
    a = load_algebra(args.algebra, args.field)
    lb = validate_leibniz(a)
    doc = {"leibniz": lb.ok}
    lines = []
    ce = _counterexample_doc(a, lb)
    lines.append("leibniz: OK" if lb.ok else
                 f"leibniz: FAIL ({ce['kind']} at ({', '.join(ce['at'])}))")
    if not lb.ok:
        doc["counterexample"] = ce
    if args.lie:
        lie = validate_lie(a)
        doc["lie"] = lie.ok
        ce = _counterexample_doc(a, lie)
        lines.append("lie: OK" if lie.ok else
                     f"lie: FAIL ({ce['kind']} at ({', '.join(ce['at'])}))")
        if not lie.ok:
            doc["counterexample"] = ce
    _emit(args, doc, lines)


def cmd_commutator(args):
    a = load_algebra(args.algebra, args.field)
    if args.variant in ("lie", "relative") and a.field.char == 2:
        raise SemanticError("characteristic 2 not supported")
    comm = commutator(a, [a.full()] * a.n, args.variant)
    doc = {"dim": comm.rank,
           "basis": [[a.field.fmt(x) for x in v] for v in comm.space.basis]}
    lines = [f"commutator ({args.variant}): dim {comm.rank}"]
    lines += [f"  {fmt_vector(a, v)}" for v in comm.space.basis]
    _emit(args, doc, lines)


def _emit_algebra(args, out: NaryAlgebra, headline: str):
    if args.json:
        sys.stdout.write(serialize_algebra(out))
    else:
        print(headline)


def cmd_abelianize(args):
    a = load_algebra(args.algebra, args.field)
    out, _ = abelianization(a)
    _emit_algebra(args, out, f"abelianization: dim {out.dim}")


def cmd_liesate(args):
    a = load_algebra(args.algebra, args.field)
    out, _ = liesation(a)
    _emit_algebra(args, out, f"liesation: dim {out.dim}")


def cmd_daletskii(args):
    a = load_algebra(args.algebra, args.field)
    out = daletskii(a)
    _emit_algebra(args, out, f"daletskii: arity 2, dim {out.dim}")


def cmd_extension(args):
    c = load_cube(args.cube, args.field)
    rep = is_extension(c)
    doc = {"extension": rep.ok,
           "failing": list(rep.failing) if rep.failing is not None else None}
    lines = ["extension: true" if rep.ok else
             f"extension: false (comparison fails at I={{{','.join(map(str, rep.failing))}}})"]
    _emit(args, doc, lines)


def cmd_central(args):
    c = load_cube(args.cube, args.field)
    g = GALOIS[args.galois]
    obs = central_obstruction(c, g)
    a = c.domain
    central = obs.ideal.rank == 0
    doc = {"central": central, "obstruction_dim": obs.ideal.rank,
           "basis": [[a.field.fmt(x) for x in v] for v in obs.ideal.space.basis]}
    basis_txt = ", ".join(fmt_vector(a, v) for v in obs.ideal.space.basis)
    line = f"central: {str(central).lower()}; obstruction dim {obs.ideal.rank}"
    if obs.ideal.rank:
        line += f"; basis: {basis_txt}"
    lines = [line]
    if args.oracle:
        oracle = is_central_oracle(c, g)
        doc["oracle"] = oracle
        lines.append(f"oracle: {str(oracle).lower()}"
                     + ("" if oracle == central else "  [DISAGREES]"))
    _emit(args, doc, lines)


def cmd_hopf(args):
    c = load_cube(args.cube, args.field)
    g = GALOIS[args.galois]
    rep = hopf_evaluate(c, g)
    if not c.domain.name.startswith("fnil2("):
        print("note: input is not a truncated-free presentation; the value is "
              "the Hopf formula on this extension, not necessarily a homology "
              "dimension", file=sys.stderr)
    doc = {"numerator": rep.numerator.rank, "denominator": rep.denominator.rank,
           "h": rep.h_dim}
    lines = [f"numerator dim {rep.numerator.rank}; "
             f"denominator dim {rep.denominator.rank}; h = {rep.h_dim}"]
    _emit(args, doc, lines)


def cmd_uce(args):
    a = load_algebra(args.algebra, args.field)
    res = uce_leibniz(a) if args.variant == "leibniz" else uce_lie(a)
    doc = {"variant": res.variant, "dim_U": res.U.dim, "kernel_dim": res.kernel.rank}
    lines = [f"U({a.name}, {res.variant}): dim {res.U.dim}; kernel dim {res.kernel.rank}"]
    _emit(args, doc, lines)


def cmd_h2(args):
    a = load_algebra(args.algebra, args.field)
    h2 = h2_via_uce(a, args.variant)
    _emit(args, {"h2": h2}, [f"h2 ({args.variant}): {h2}"])


def cmd_compare_uce(args):
    a = load_algebra(args.algebra, args.field)
    cmp = compare_uce(a)
    doc = {
        "checks": cmp.checks,
        "dim_U_leibniz": cmp.uce_lb.U.dim,
        "dim_U_lie": cmp.uce_lie.U.dim,
        "kernel_dim_leibniz": cmp.uce_lb.kernel.rank,
        "kernel_dim_lie": cmp.uce_lie.kernel.rank,
        "kernel_dim_f": cmp.ker_f_dim,
    }
    lines = [f"U_leibniz: dim {cmp.uce_lb.U.dim} (kernel {cmp.uce_lb.kernel.rank}); "
             f"U_lie: dim {cmp.uce_lie.U.dim} (kernel {cmp.uce_lie.kernel.rank}); "
             f"ker f: {cmp.ker_f_dim}"]
    for name in sorted(cmp.checks):
        lines.append(f"check {name}: {'pass' if cmp.checks[name] else 'FAIL'}")
    _emit(args, doc, lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--field", type=parse_field, default=None, metavar="F<p>",
                        help="reinterpret scalars over the prime field F<p>")

    p = argparse.ArgumentParser(prog="nleib",
                                description="Exact computer algebra for Leibniz and Lie n-algebras")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("check", parents=[common], help="run the algebra validators")
    sp.add_argument("algebra")
    sp.add_argument("--lie", action="store_true", help="also check skew symmetry")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("commutator", parents=[common], help="full commutator ideal")
    sp.add_argument("algebra")
    sp.add_argument("--variant", required=True, choices=["leibniz", "lie", "relative"])
    sp.set_defaults(func=cmd_commutator)

    sp = sub.add_parser("abelianize", parents=[common])
    sp.add_argument("algebra")
    sp.set_defaults(func=cmd_abelianize)

    sp = sub.add_parser("liesate", parents=[common])
    sp.add_argument("algebra")
    sp.set_defaults(func=cmd_liesate)

    sp = sub.add_parser("daletskii", parents=[common])
    sp.add_argument("algebra")
    sp.set_defaults(func=cmd_daletskii)

    sp = sub.add_parser("extension", parents=[common], help="extension predicate")
    sp.add_argument("cube")
    sp.set_defaults(func=cmd_extension)

    sp = sub.add_parser("central", parents=[common], help="centrality and obstruction")
    sp.add_argument("cube")
    sp.add_argument("--galois", required=True, choices=sorted(GALOIS))
    sp.add_argument("--oracle", action="store_true",
                    help="also run the kernel-pair oracle")
    sp.set_defaults(func=cmd_central)

    sp = sub.add_parser("hopf", parents=[common], help="evaluate the Hopf formula")
    sp.add_argument("cube")
    sp.add_argument("--galois", required=True, choices=sorted(GALOIS))
    sp.set_defaults(func=cmd_hopf)

    sp = sub.add_parser("uce", parents=[common], help="universal central extension")
    sp.add_argument("algebra")
    sp.add_argument("--variant", required=True, choices=["leibniz", "lie"])
    sp.set_defaults(func=cmd_uce)

    sp = sub.add_parser("h2", parents=[common], help="kernel dimension of the UCE")
    sp.add_argument("algebra")
    sp.add_argument("--variant", required=True, choices=["leibniz", "lie"])
    sp.set_defaults(func=cmd_h2)

    sp = sub.add_parser("compare-uce", parents=[common],
                        help="compare the Leibniz and Lie UCEs of a Lie n-algebra")
    sp.add_argument("algebra")
    sp.set_defaults(func=cmd_compare_uce)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (SemanticError, AlgebraError, CubeError, ExactLAError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
