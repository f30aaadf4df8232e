"""Compare the compiled and pure-Python kernels on the order-6048 closure.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import time

import numpy as np

from g2cubics import _kernels, fano
from g2cubics.fano import _scaled


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    ints, denom = _scaled([g for _, g in fano.point_generators(7)])
    elements, _ = _kernels.closure(ints, denom, 10**5)
    results = {}
    for name, mod in _kernels.backends().items():
        results[name] = {
            "closure": best_of(lambda: mod.closure(ints, denom, 10**5), args.repeat),
            "automorphism_residuals": best_of(lambda: mod.automorphism_residuals(elements, denom), args.repeat),
            "element_orders": best_of(lambda: mod.element_orders(elements, denom), args.repeat),
        }
        assert np.count_nonzero(mod.automorphism_residuals(elements, denom)) == 0
    names = list(results)
    print(f"{'kernel':<24}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for kernel in results[names[0]]:
        row = f"{kernel:<24}" + "".join(f"{results[n][kernel]:>11.4f}s" for n in names)
        if "cython" in results:
            row += f"{results['pure'][kernel] / results['cython'][kernel]:>11.1f}x"
        print(row)
    print(f"(6048 elements, denominator {denom}; selected backend: {_kernels.BACKEND})")


if __name__ == "__main__":
    main()
