"""Time the compiled kernels against the numpy fallback.

Usage::

    python benchmarks/bench_kernels.py [--n 200000] [--repeat 5]

Prints one line per kernel with the best wall time of each backend and the
speed-up. Both backends are also compared for agreement.
"""
import argparse
import timeit

import numpy as np

from etpa._backend import available_backends


def cases(n):
    rng = np.random.default_rng(0)
    x = rng.uniform(-60.0, 60.0, n)
    t = rng.uniform(-40.0, 40.0, n)
    dt = np.abs(t)
    nu = rng.uniform(-3.0, 3.0, 8)
    w = rng.normal(size=8) + 1j * rng.normal(size=8)
    return {
        "sici": lambda k: k.sici(x),
        "cin": lambda k: k.cin(x),
        "gamma_profile": lambda k: k.gamma_profile(2.0, 1.0, t),
        "overlap": lambda k: k.overlap(nu, w, dt),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=200_000)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    backends = available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; timing the numpy fallback only")
    print(f"{'kernel':<15}" + "".join(f"{name:>12}" for name in backends) + f"{'speed-up':>10}"
          + f"{'max diff':>11}")
    for name, fn in cases(args.n).items():
        times, results = {}, {}
        for bname, mod in backends.items():
            results[bname] = fn(mod)
            times[bname] = min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat))
        row = f"{name:<15}" + "".join(f"{times[b] * 1e3:10.2f}ms" for b in backends)
        if "cython" in times:
            row += f"{times['python'] / times['cython']:9.1f}x"
            a, b = results["python"], results["cython"]
            a = np.concatenate([np.ravel(v) for v in a]) if isinstance(a, tuple) else a
            b = np.concatenate([np.ravel(v) for v in b]) if isinstance(b, tuple) else b
            row += f"{np.max(np.abs(np.asarray(a) - np.asarray(b))):11.1e}"
        print(row)


if __name__ == "__main__":
    main()
