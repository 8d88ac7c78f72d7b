"""Command-line interface: construct, verify, predict, enumerate.

Exit codes: 0 success / match, 1 mismatch between computed and predicted
(or between the two enumeration routes), 2 invalid input, I/O or budget
errors.
"""
from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from . import __version__
from ._enum import DEFAULT_BUDGET, BudgetExceeded
from .codes import (generator_matrix, is_almost_mds, is_q_divisible, minimum_distance,
                    singleton_defect, weight_enumerator_direct, weight_enumerator_geometric)
from .enumerator import verify
from .finite_field import is_prime, make_field, make_subfield_view
from .formulas import predict_2scattered, predict_full_scattered
from .linsets import build_direct_sum_set, build_linear_set, is_scattered
from .qpoly import TABLE1, gabidulin_tuple, table1_tuple
from .serialize import dumps, enumerator_to_dict, format_matrix, read_matrix

FAMILIES = sorted(TABLE1) + ["direct-sum"]


class UsageError(ValueError):
    pass


def _view(args):
    if not is_prime(args.p):
        raise UsageError(f"--p must be prime, got {args.p}")
    if args.e < 1 or args.n is None or args.n < 1:
        raise UsageError("--e and --n must be positive")
    return make_subfield_view(make_field(args.p, args.e * args.n), args.e)


def build_set(args):
    view = _view(args)
    if args.family == "direct-sum":
        if args.t is None or args.t < 2:
            raise UsageError("direct-sum needs --t >= 2")
        blocks = [gabidulin_tuple(view, 3, args.s) for _ in range(args.t)]
        return build_direct_sum_set(blocks, budget=args.budget)
    maps = table1_tuple(view, args.family, r=args.r, s=args.s, delta=args.delta, h=args.hparam)
    return build_linear_set(maps)


def _write(text, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _enumerate(L, G, method, args):
    kw = dict(budget=args.budget, workers=args.workers)
    if method == "direct":
        return weight_enumerator_direct(G, **kw)
    if method == "geometric":
        return weight_enumerator_geometric(L, **kw)
    direct = weight_enumerator_direct(G, **kw)
    geometric = weight_enumerator_geometric(L, **kw)
    if direct != geometric:
        raise RouteMismatch(f"direct route {direct} differs from geometric route {geometric}")
    return direct


class RouteMismatch(RuntimeError):
    pass


def cmd_construct(args) -> int:
    L = build_set(args)
    G = generator_matrix(L)
    _write(format_matrix(G), args.output)
    summary = (f"N={G.N} r={G.r} rank={L.rank} field=GF({L.view.q}^{L.view.n}) "
               f"scattered={str(is_scattered(L)).lower()}")
    print(summary, file=sys.stderr if args.output is None else sys.stdout)
    return 0


def _prediction(h, n, r, q):
    # for r = 3 both closed forms apply and agree
    if h == "2":
        return predict_2scattered(r, n, q)
    if h == "full" or (h.isdigit() and int(h) == r - 1):
        return predict_full_scattered(n, r, q)
    raise UsageError(f"no closed form for h={h} (use 'full' or 2)")


def cmd_verify(args) -> int:
    start = time.perf_counter()
    L = build_set(args)
    G = generator_matrix(L)
    computed = _enumerate(L, G, args.method, args)
    h = args.h or ("2" if args.family == "direct-sum" else "full")
    r = args.predict_r if args.predict_r is not None else L.r
    predicted = _prediction(h, L.view.n, r, L.view.q)
    report = verify(computed, predicted, elapsed=time.perf_counter() - start)
    report.parameters.update(family=args.family, q=L.view.q, n=L.view.n, method=args.method)
    text = report.render(timing=args.timing)
    sys.stdout.write(text)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text)
    return 0 if report.passed else 1


def cmd_predict(args) -> int:
    if not is_prime(args.p) or args.e < 1:
        raise UsageError("--p must be prime and --e positive")
    if args.r is None:
        raise UsageError("predict needs --r")
    q = args.p**args.e
    W = _prediction(args.h, args.n, args.r, q)
    lines = [f"prediction: {W.source}", f"length: {W.length}", f"dimension: {W.dimension}",
             f"field_order: {W.field_order}", "weight  count"]
    lines += [f"{w:>6}  {c}" for w, c in W.items() if w]
    lines += [f"minimum_distance: {minimum_distance(W)}",
              f"singleton_defect: {singleton_defect(W)}",
              f"almost_mds: {str(is_almost_mds(W)).lower()}",
              f"q_divisible: {str(is_q_divisible(W, q)).lower()}"]
    _write("\n".join(lines) + "\n", args.output)
    return 0


def _set_from_source(G):
    if not G.source:
        raise UsageError("the geometric route needs the map tuples recorded in the matrix file")
    if len(G.source) == 1:
        L = build_linear_set(G.source[0])
    else:
        L = build_direct_sum_set(G.source)
    if not np.array_equal(L.points.T, G.entries):
        raise UsageError("matrix columns do not match the recorded map tuples")
    return L


def cmd_enumerate(args) -> int:
    try:
        G = read_matrix(args.matrix)
    except OSError as exc:
        raise UsageError(f"cannot read {args.matrix}: {exc}") from None
    L = _set_from_source(G) if args.method != "direct" else None
    W = _enumerate(L, G, args.method, args)
    _write(dumps(enumerator_to_dict(W)), args.output)
    return 0


def _add_common(sp, family=True):
    sp.add_argument("--p", type=int, required=True, help="characteristic")
    sp.add_argument("--e", type=int, default=1, help="q = p^e")
    sp.add_argument("--n", type=int, required=True, help="big field GF(q^n)")
    sp.add_argument("--r", type=int, help="number of maps / projective dimension + 1")
    if family:
        sp.add_argument("--t", type=int, help="number of planar blocks (direct-sum)")
        sp.add_argument("--family", choices=FAMILIES, default="gabidulin")
        sp.add_argument("--s", type=int, default=1)
        sp.add_argument("--delta", type=int, help="twist parameter as an element code")
        sp.add_argument("--hparam", type=int, help="element h of the 6-4-bzz row, as a code")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("-o", "--output")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fewweight",
        description="Few-weight codes from scattered linear sets: build, enumerate, verify.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("construct", help="write a generator matrix")
    _add_common(sp)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("verify", help="compare the computed enumerator to the closed form")
    _add_common(sp)
    sp.add_argument("--method", choices=["direct", "geometric", "both"], default="both")
    sp.add_argument("--h", help="'full' (h = r-1) or 2; default from the family")
    sp.add_argument("--predict-r", type=int, help="dimension to use for the prediction")
    sp.add_argument("--report", help="also write the report here")
    sp.add_argument("--timing", action="store_true", help="append elapsed time to the report")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("predict", help="print the predicted enumerator")
    _add_common(sp, family=False)
    sp.add_argument("--h", default="full", help="'full' (h = r-1) or 2")
    sp.set_defaults(func=cmd_predict)

    sp = sub.add_parser("enumerate", help="enumerate the code of a matrix file")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--method", choices=["direct", "geometric", "both"], default="direct")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_enumerate)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except RouteMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError, BudgetExceeded, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
