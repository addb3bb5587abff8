"""Time the compiled kernels against the numpy fallback on real point tables.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from tadic import kernels
from tadic.finite_fields import field_create
from tadic.galois import hensel_modulus

# (p, n, N): enumerate F_{p^n}^x with traces mod p^N
CASES = [(3, 8, 3), (5, 6, 2), (7, 6, 2), (2, 18, 4)]


def inputs(p, n, N):
    F = field_create(p, n)
    R = hensel_modulus(p, N, n)
    w = R.teich(F.primitive)
    basis = [tuple(1 if r == c else 0 for r in range(n)) for c in range(n)]
    cols = [R.mul(w, b) for b in basis]
    W = np.array([[cols[c][r] for c in range(n)] for r in range(n)], dtype=np.int64)
    ell = np.array(R.trace_vector, dtype=np.int64)
    return W, ell, F.size - 1, R.pN


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    backends = ["python"] + (["cython"] if kernels.BACKEND == "cython" else [])
    if len(backends) == 1:
        print("compiled kernels not built; timing the fallback only")
    print(f"{'kernel':<16}{'case':<16}{'points':>10}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for p, n, N in CASES:
        W, ell, q1, mod = inputs(p, n, N)
        tr = kernels.power_traces(W, ell, q1, mod)
        offsets, exps = [0, q1 // 3, 7], [1, 2, q1 - 1]
        jobs = {
            "power_traces": lambda b: kernels.power_traces(W, ell, q1, mod, backend=b),
            "trace_histogram": lambda b: kernels.trace_histogram(tr, offsets, exps, mod, backend=b),
        }
        for name, job in jobs.items():
            results = [job(b) for b in backends]
            assert all(np.array_equal(results[0], r) for r in results[1:]), name
            times = [best(lambda b=b: job(b), args.repeat) for b in backends]
            speed = f"{times[0] / times[-1]:>9.1f}x" if len(times) > 1 else ""
            print(f"{name:<16}{f'GR({p}^{N}, {n})':<16}{q1:>10}"
                  + "".join(f"{t * 1e3:>10.2f}ms" for t in times) + speed)


if __name__ == "__main__":
    main()
