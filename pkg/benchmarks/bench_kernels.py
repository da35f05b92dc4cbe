"""Time the compiled kernels against the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

from switchlab._backend import load

CASES = [
    ("classifier_sweep n=6", lambda k: k.classifier_sweep(6)),
    ("realizations 2^6,1^2 all", lambda k: k.realizations([2] * 6 + [1] * 2, 0, 10**7)),
    ("rg_edges 2^6,1^2 all", None),
    ("param_values domination", None),
    ("forest_transition_sweep 2^4,1^4", None),
]


def _prepare(kernel):
    d = [2] * 6 + [1] * 2
    codes = kernel.realizations(d, 0, 10**7)
    forest_d = [2] * 4 + [1] * 4
    forests = kernel.realizations(forest_d, 1, 10**7)
    return {
        "rg_edges 2^6,1^2 all": lambda k: k.rg_edges(8, codes),
        "param_values domination": lambda k: k.param_values(8, codes, 3),
        "forest_transition_sweep 2^4,1^4": lambda k: k.forest_transition_sweep(8, forests),
    }


def bench(kernel, repeat):
    extra = _prepare(kernel)
    out = {}
    for name, fn in CASES:
        fn = fn or extra[name]
        best = float("inf")
        for _ in range(repeat):
            t = time.perf_counter()
            fn(kernel)
            best = min(best, time.perf_counter() - t)
        out[name] = best
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    py = bench(load("python"), args.repeat)
    try:
        compiled = bench(load("compiled"), args.repeat)
    except ImportError:
        compiled = None
        print("compiled core not built; showing the Python timings only")
    print(f"{'kernel':36s} {'python s':>10s} {'compiled s':>11s} {'speedup':>8s}")
    for name, _ in CASES:
        if compiled is None:
            print(f"{name:36s} {py[name]:10.4f}")
        else:
            print(f"{name:36s} {py[name]:10.4f} {compiled[name]:11.4f} {py[name] / compiled[name]:8.1f}x")


if __name__ == "__main__":
    main()
