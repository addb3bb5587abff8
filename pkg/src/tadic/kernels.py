"""Kernel dispatch: the compiled extension when built, numpy otherwise.

Set ``TADIC_PURE_PYTHON=1`` to force the fallback.
"""

import os

import numpy as np

from . import _kernels_py

_compiled = None
if not os.environ.get("TADIC_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"

# int64 dot products of n terms below modulus^2 must not overflow
_INT64_SAFE = 1 << 62


def implementation(name=None):
    """Return the kernel module for `name` ("cython", "python" or None=active)."""
    name = name or BACKEND
    if name == "cython":
        if _compiled is None:
            raise ImportError("compiled kernels are not built")
        return _compiled
    return _kernels_py


def _power_traces_exact(W, ell, count, modulus):
    n = len(W)
    v = [1 % modulus] + [0] * (n - 1)
    out = []
    for _ in range(count):
        out.append(sum(a * b for a, b in zip(ell, v)) % modulus)
        v = [sum(W[r][c] * v[c] for c in range(n)) % modulus for r in range(n)]
    return np.array(out, dtype=object)


def power_traces(W, ell, count, modulus, backend=None):
    n = len(W)
    if n * modulus * modulus >= _INT64_SAFE:
        return _power_traces_exact([list(map(int, row)) for row in W], [int(x) for x in ell], count, modulus)
    W = np.ascontiguousarray(W, dtype=np.int64)
    ell = np.ascontiguousarray(ell, dtype=np.int64)
    return implementation(backend).power_traces(W, ell, int(count), int(modulus))


def trace_histogram(tr, offsets, exps, modulus, backend=None):
    tr = np.ascontiguousarray(tr, dtype=np.int64)
    offsets = np.ascontiguousarray(offsets, dtype=np.int64)
    exps = np.ascontiguousarray(exps, dtype=np.int64)
    return implementation(backend).trace_histogram(tr, offsets, exps, int(modulus))


# above this many bins a dense histogram wastes memory; count distinct sums instead
DENSE_LIMIT = 1 << 22


def trace_counts(tr, offsets, exps, modulus, backend=None):
    """(value, count) pairs of s_j mod modulus, ascending by value, zero counts omitted."""
    if modulus <= DENSE_LIMIT:
        hist = trace_histogram(tr, offsets, exps, modulus, backend)
        nz = np.nonzero(hist)[0]
        return [(int(z), int(hist[z])) for z in nz]
    tr = np.ascontiguousarray(tr, dtype=np.int64)
    offsets = np.ascontiguousarray(offsets, dtype=np.int64)
    exps = np.ascontiguousarray(exps, dtype=np.int64)
    sums = implementation(backend).trace_sums(tr, offsets, exps, int(modulus))
    vals, counts = np.unique(sums, return_counts=True)
    return [(int(z), int(c)) for z, c in zip(vals, counts)]
