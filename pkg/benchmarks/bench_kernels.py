"""Compare the numba and numpy backends of the table kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Times the axiom check and the coloring search on Alexander quandles of
growing order, after one warm-up call per backend (so numba compile time is
excluded), and checks that both backends agree.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from qtwist import _kernels
from qtwist.knots import figure_eight, pd_to_presentation, trefoil
from qtwist.quandle import alexander_quandle


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])

    print(f"{'kernel':<28}{'order':>6}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    # Alexander quandles Z/p with t = 2 (p prime, so the table is a quandle)
    for p in (11, 31, 61, 101):
        X = alexander_quandle(p, 2)
        times = []
        for b in backends:
            _kernels.axiom_witness(X.table, b)
            times.append(best_of(lambda: _kernels.axiom_witness(X.table, b), args.repeat))
        _report("axioms", p, times)

    for label, pd in (("colorings trefoil", trefoil()), ("colorings figure-eight", figure_eight())):
        P = pd_to_presentation(pd)
        enc = _kernels.encode_relators(P.relators)
        for p in (11, 31, 61):
            X = alexander_quandle(p, 2 if label.endswith("trefoil") else 3)
            results, times = [], []
            for b in backends:
                results.append(_kernels.colorings(X.table, X.inv_table, P.ngens, enc, b))
                times.append(
                    best_of(lambda: _kernels.colorings(X.table, X.inv_table, P.ngens, enc, b), args.repeat)
                )
            assert all(np.array_equal(results[0], r) for r in results[1:]), "backends disagree"
            _report(label, p, times)


def _report(name, order, times):
    speed = f"{times[0] / times[-1]:>9.1f}x" if len(times) > 1 and times[-1] > 0 else ""
    print(f"{name:<28}{order:>6}" + "".join(f"{t * 1e3:>10.3f}ms" for t in times) + speed)


if __name__ == "__main__":
    main()
