"""``qtwist`` command line.

Exit status: 0 on success, 1 when a check comes out false (axioms fail, an
ideal comparison is unequal, a move changes an ideal), 2 on bad input.
"""
from __future__ import annotations

import argparse
import io
import random
import sys
from collections import Counter
from contextlib import redirect_stderr, redirect_stdout

from . import io as qio
from .alexander import (
    build_matrix,
    elementary_ideal,
    pair_cocycle,
    pair_laurent,
    random_move,
    reduce_matrix,
)
from .errors import QtwistError
from .homology import cocycle_basis, format_chain, quandle_H2, require_cocycle
from .knots import augmented_ideal, state_sum_weights, surface_weight_ideal, verify_theorem2
from .quandle import check_axioms, corpus, enumerate_homs, is_connected, trivial_quandle
from .ring import GroupRingElem, LaurentIdeal, format_elem


class _Out:
    """Collects report lines; ``--machine`` switches to ``key=value`` records."""

    def __init__(self, machine: bool):
        self.machine = machine
        self.lines: list[str] = []

    def say(self, human: str, kind: str | None = None, **fields):
        if self.machine:
            if kind is not None:
                body = "\t".join(f"{k}={v}" for k, v in fields.items())
                self.lines.append(f"{kind}\t{body}" if body else kind)
        else:
            self.lines.append(human)

    def text(self) -> str:
        return "\n".join(self.lines) + ("\n" if self.lines else "")


def _coloring(a) -> str:
    return "(" + ",".join(str(int(v)) for v in a) + ")"


def _ideal_text(I) -> str:
    return str(I)


def _pair(args, X):
    if args.laurent:
        return pair_laurent()
    if not args.cocycle:
        raise QtwistError("one of --cocycle or --laurent is required")
    theta = qio.read_cocycle(args.cocycle, X.order)
    require_cocycle(X, theta)
    return pair_cocycle(theta)


def _target(args):
    if args.target:
        return qio.read_quandle(args.target)
    if getattr(args, "laurent", False):
        return trivial_quandle(1)
    raise QtwistError("--target is required")


def _selected_colorings(P, X, args):
    homs = enumerate_homs(P, X)
    if args.coloring is not None:
        want = tuple(int(v) for v in args.coloring.split(","))
        if want not in homs:
            raise QtwistError(f"{_coloring(want)} is not a coloring")
        homs = [want]
    return homs


# --- subcommands ------------------------------------------------------------


def cmd_check(args, out):
    table = qio.read_table(args.quandle)
    bad = check_axioms(table)
    if bad is not None:
        out.say(f"axioms: {bad}", "axioms", ok="no", axiom=bad.axiom, witness=_coloring(bad.witness))
        return 1
    X = qio.read_quandle(args.quandle)
    conn, orbits = is_connected(X)
    text = "yes" if conn else "no (orbits " + " ".join("{" + ",".join(map(str, o)) + "}" for o in orbits) + ")"
    out.say(f"axioms: ok; connected: {text}", "check", axioms="ok", connected="yes" if conn else "no",
            orbits=len(orbits))
    return 0


def cmd_homs(args, out):
    P = qio.read_presentation(args.pres)
    X = qio.read_quandle(args.target)
    homs = enumerate_homs(P, X)
    out.say(f"{len(homs)} homomorphisms", "homs", count=len(homs))
    if args.verbose:
        for a in homs:
            out.say("  " + _coloring(a), "hom", coloring=_coloring(a))
    return 0


def cmd_h2(args, out):
    X = qio.read_quandle(args.quandle)
    h = quandle_H2(X)
    out.say(f"H2 = {h.describe()}", "h2", group=h.describe().replace(" ", ""))
    for d, z in zip(h.invariant_factors, h.generators):
        label = "Z" if d == 0 else f"Z/{d}"
        out.say(f"  {label}: {format_chain(z)}", "cycle", order=d, chain=format_chain(z).replace(" ", ""))
    return 0


def cmd_cocycles(args, out):
    X = qio.read_quandle(args.quandle)
    basis = cocycle_basis(X, args.modulus)
    orders = [c.order for c in basis]
    desc = " + ".join(f"Z/{d}" for d in orders) or "0"
    out.say(f"H2(X; Z/{args.modulus}) = {desc}", "cohomology", modulus=args.modulus, group=desc.replace(" ", ""))
    for k, c in enumerate(basis):
        vals = [f"{x} {y} {c(x, y)[0]}" for x in range(X.order) for y in range(X.order) if c(x, y)[0]]
        out.say(f"cocycle {k} (order {c.order}):", "cocycle", index=k, order=c.order,
                values=";".join(v.replace(" ", ",") for v in vals))
        for v in vals:
            out.say("  " + v)
    return 0


def cmd_matrix(args, out):
    X = _target(args)
    P = qio.read_presentation(args.pres)
    pair = _pair(args, X)
    for a in _selected_colorings(P, X, args):
        M = build_matrix(P, a, X, pair)
        R = reduce_matrix(M)
        out.say(f"coloring {_coloring(a)}: {M.nrows}x{M.ncols}, reduced {R.nrows}x{R.ncols}",
                "matrix", coloring=_coloring(a), shape=f"{M.nrows}x{M.ncols}", reduced=f"{R.nrows}x{R.ncols}")
        out.say(M.format())
        if args.verbose:
            out.say("reduced:")
            out.say(R.format())
    return 0


def cmd_ideal(args, out):
    X = _target(args)
    P = qio.read_presentation(args.pres)
    pair = _pair(args, X)
    rng = random.Random(args.seed)
    status = 0
    coeffs = None
    if pair.group.is_finite:
        coeffs = [GroupRingElem.monomial(pair.group, g) for g in pair.group.elements]
    for a in _selected_colorings(P, X, args):
        M = build_matrix(P, a, X, pair)
        I = elementary_ideal(M, args.d)
        out.say(f"coloring {_coloring(a)}: E_{args.d} = {_ideal_text(I)}", "ideal",
                coloring=_coloring(a), d=args.d, ideal=_ideal_text(I).replace(" ", ""))
        if args.moves and not isinstance(I, LaurentIdeal):
            N = M
            for _ in range(args.moves):
                N = random_move(N, rng, coeffs)
            same = elementary_ideal(N, args.d) == I
            out.say(f"  after {args.moves} random moves: {'unchanged' if same else 'CHANGED'}",
                    "moves", coloring=_coloring(a), count=args.moves, unchanged="yes" if same else "no")
            status = status or (0 if same else 1)
    return status


def cmd_statesum(args, out):
    X = qio.read_quandle(args.target)
    pd = qio.read_pd(args.pd)
    theta = qio.read_cocycle(args.cocycle, X.order)
    homs, weights = state_sum_weights(pd, X, theta)
    counts = Counter(weights)
    out.say(f"{len(homs)} colorings; state sum: "
            + " + ".join(f"{n}*{format_elem(w)}" for w, n in sorted(counts.items())),
            "statesum", colorings=len(homs))
    for w, n in sorted(counts.items()):
        out.say(f"  W = {format_elem(w)}: {n}", "weight", value=format_elem(w), count=n)
    if args.verbose:
        for a, w in zip(homs, weights):
            out.say(f"  {_coloring(a)} -> {format_elem(w)}", "coloring", coloring=_coloring(a),
                    value=format_elem(w))
    return 0


def cmd_surface_ideal(args, out):
    X = qio.read_quandle(args.target)
    mp = qio.read_marked(args.marked)
    theta = qio.read_cocycle(args.cocycle, X.order)
    require_cocycle(X, theta)
    status = 0
    for a in _selected_colorings(mp.presentation, X, args):
        I = surface_weight_ideal(mp, a, X, theta)
        J = augmented_ideal(mp, a, X, theta)
        eq = I == J
        out.say(f"coloring {_coloring(a)}: weight ideal = {I}; E_0 = {J}; equal: {'yes' if eq else 'no'}",
                "surface", coloring=_coloring(a), weight_ideal=str(I).replace(" ", ""),
                e0=str(J).replace(" ", ""), equal="yes" if eq else "no")
        status = status or (0 if eq else 1)
    return status


def cmd_verify_thm2(args, out):
    if args.quandles:
        named = [(p, qio.read_quandle(p)) for p in args.quandles]
    else:
        named = [(n, X) for n, X in corpus().items() if X.order <= args.max_order]
    status = 0
    compared, quandles = 0, 0
    for name, X in named:
        if not is_connected(X)[0]:
            if args.quandles:
                out.say(f"{name}: not connected, skipped", "skip", quandle=name)
            continue
        quandles += 1
        for m in args.modulus:
            for k, theta in enumerate(cocycle_basis(X, m)):
                r = verify_theorem2(X, theta)
                compared += 1
                out.say(f"{name} Z/{m} cocycle {k}: E_0 = {r.lhs}; image ideal = {r.rhs}; "
                        f"equal: {'yes' if r.equal else 'no'}",
                        "thm2", quandle=name, modulus=m, cocycle=k, equal="yes" if r.equal else "no")
                status = status or (0 if r.equal else 1)
    verdict = "all equal" if status == 0 else "SOME UNEQUAL"
    out.say(f"{compared} basis cocycles over {quandles} connected quandles: {verdict}",
            "summary", cocycles=compared, quandles=quandles, equal="yes" if status == 0 else "no")
    return status


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--machine", action="store_true", help="one tab-separated record per line")
    common.add_argument("--verbose", "-v", action="store_true")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized options")

    p = argparse.ArgumentParser(prog="qtwist", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="quandle axioms and connectivity")
    s.add_argument("quandle")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("homs", parents=[common], help="count homomorphisms (colorings)")
    s.add_argument("--pres", required=True, help="presentation file or .pd code")
    s.add_argument("--target", required=True)
    s.set_defaults(func=cmd_homs)

    s = sub.add_parser("h2", parents=[common], help="second quandle homology")
    s.add_argument("quandle")
    s.set_defaults(func=cmd_h2)

    s = sub.add_parser("cocycles", parents=[common], help="basis of H^2 with Z/m coefficients")
    s.add_argument("quandle")
    s.add_argument("--modulus", "-m", type=int, required=True)
    s.set_defaults(func=cmd_cocycles)

    for name, func, helptext in (
        ("matrix", cmd_matrix, "twisted Alexander matrix per coloring"),
        ("ideal", cmd_ideal, "elementary ideal per coloring"),
    ):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--pres", required=True, help="presentation file or .pd code")
        s.add_argument("--target")
        g = s.add_mutually_exclusive_group(required=True)
        g.add_argument("--cocycle")
        g.add_argument("--laurent", action="store_true", help="use the pair (t, 1-t)")
        s.add_argument("--coloring", help="restrict to one coloring, e.g. 0,1,2")
        if name == "ideal":
            s.add_argument("--d", type=int, default=0)
            s.add_argument("--moves", type=int, default=0,
                           help="also apply this many random matrix moves and recheck")
        s.set_defaults(func=func)

    s = sub.add_parser("statesum", parents=[common], help="state-sum weights of a PD code")
    s.add_argument("--pd", required=True)
    s.add_argument("--target", required=True)
    s.add_argument("--cocycle", required=True)
    s.set_defaults(func=cmd_statesum)

    s = sub.add_parser("surface-ideal", parents=[common], help="loop-weight ideal of a marked presentation")
    s.add_argument("--marked", required=True)
    s.add_argument("--target", required=True)
    s.add_argument("--cocycle", required=True)
    s.add_argument("--coloring")
    s.set_defaults(func=cmd_surface_ideal)

    s = sub.add_parser("verify-thm2", parents=[common],
                       help="compare E_0 with the homology image ideal over connected quandles")
    s.add_argument("quandles", nargs="*", help="quandle files (default: built-in corpus)")
    s.add_argument("--modulus", "-m", type=int, nargs="+", default=[2, 3])
    s.add_argument("--max-order", type=int, default=5)
    s.set_defaults(func=cmd_verify_thm2)
    return p


def run(argv) -> tuple[int, str]:
    """Run one command; returns ``(exit status, report text)``."""
    parser = build_parser()
    buf = io.StringIO()
    try:
        with redirect_stderr(buf), redirect_stdout(buf):
            args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return (2 if exc.code else 0), buf.getvalue()
    out = _Out(args.machine)
    try:
        status = args.func(args, out)
    except QtwistError as exc:
        return 2, out.text() + f"error: {exc}\n"
    return status, out.text()


def main(argv=None) -> int:
    status, text = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if status != 2 else sys.stderr
    stream.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
