"""Time the compiled and pure-Python kernels on the same workloads.

Run with ``python benchmarks/bench_kernels.py [--repeat N]``.
"""
import argparse
import time

from opav import _backend
from opav.core import compositions

WORKLOADS = {
    "count_fixed [3,3,2] 123": lambda m: m.count_fixed((3, 3, 2), (1, 2, 3)),
    "count_fixed n=8 k=4 132": lambda m: sum(m.count_fixed(c, (1, 3, 2)) for c in compositions(8, 4)),
    "count_star n=8 k=3 132": lambda m: m.count_star(8, 3, (1, 3, 2)),
    "count_words k=3 n=10 123": lambda m: m.count_words(3, 10, (1, 2, 3)),
    "scheme [2]*9 cold": lambda m: m.SchemeEngine().count((2,) * 9),
    "scheme op_{14,3} shapes cold": lambda m: _scheme_row(m, 14, 3),
}


def _scheme_row(mod, n, k):
    eng = mod.SchemeEngine()
    return sum(eng.count(c) for c in compositions(n, k))


def bench(fn, mod, repeat):
    best = float("inf")
    value = None
    for _ in range(repeat):
        start = time.perf_counter()
        value = fn(mod)
        best = min(best, time.perf_counter() - start)
    return best, value


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    mods = _backend.available()
    names = [m.NAME for m in mods]
    print(f"{'workload':32}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(mods) == 2 else ""))
    for label, fn in WORKLOADS.items():
        results = [bench(fn, m, args.repeat) for m in mods]
        values = {v for _, v in results}
        if len(values) != 1:
            raise SystemExit(f"backends disagree on {label}: {values}")
        row = f"{label:32}" + "".join(f"{t * 1000:10.2f}ms" for t, _ in results)
        if len(results) == 2:
            row += f"{results[1][0] / results[0][0]:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
