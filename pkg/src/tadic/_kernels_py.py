"""Pure-Python (numpy) versions of the point-enumeration kernels.

power_traces(W, ell, count, modulus)
    tr[j] = ell . W^j e_0 mod modulus for 0 <= j < count, where W is the
    matrix of multiplication by a unit w (columns are images of the basis)
    and ell the trace functional; i.e. tr[j] = Tr(w^j).

trace_histogram(tr, offsets, exps, modulus)
    For every j in [0, len(tr)), s_j = sum_u tr[(offsets[u] + j*exps[u]) mod len(tr)];
    returns the histogram of s_j mod modulus (length `modulus`).

trace_sums(tr, offsets, exps, modulus)
    The array of s_j mod modulus itself, for moduli too large to bin densely.
"""

import math

import numpy as np

_CHUNK = 1 << 20


def power_traces(W, ell, count, modulus):
    W = np.asarray(W, dtype=np.int64)
    ell = np.asarray(ell, dtype=np.int64)
    n = W.shape[0]
    K = max(1, math.isqrt(count))
    # columns: W^b e_0 for b < K
    V = np.zeros((n, K), dtype=np.int64)
    v = np.zeros(n, dtype=np.int64)
    v[0] = 1 % modulus
    for b in range(K):
        V[:, b] = v
        v = (W @ v) % modulus
    WK = np.eye(n, dtype=np.int64)
    for _ in range(K):
        WK = (WK @ W) % modulus
    blocks = -(-count // K)
    R = np.zeros((blocks, n), dtype=np.int64)
    r = ell % modulus
    for a in range(blocks):
        R[a] = r
        r = (r @ WK) % modulus
    out = ((R @ V) % modulus).reshape(-1)
    return out[:count]


def trace_histogram(tr, offsets, exps, modulus):
    tr = np.asarray(tr, dtype=np.int64)
    q1 = tr.shape[0]
    offsets = [int(o) % q1 for o in offsets]
    exps = [int(e) % q1 for e in exps]
    hist = np.zeros(modulus, dtype=np.int64)
    for start in range(0, q1, _CHUNK):
        j = np.arange(start, min(start + _CHUNK, q1), dtype=np.int64)
        s = np.zeros(j.shape[0], dtype=np.int64)
        for off, ex in zip(offsets, exps):
            s += tr[(off + j * ex) % q1]
        hist += np.bincount(s % modulus, minlength=modulus)
    return hist


def trace_sums(tr, offsets, exps, modulus):
    tr = np.asarray(tr, dtype=np.int64)
    q1 = tr.shape[0]
    out = np.empty(q1, dtype=np.int64)
    for start in range(0, q1, _CHUNK):
        j = np.arange(start, min(start + _CHUNK, q1), dtype=np.int64)
        s = np.zeros(j.shape[0], dtype=np.int64)
        for off, ex in zip(offsets, exps):
            s += tr[(int(off) % q1 + j * (int(ex) % q1)) % q1]
        out[start:start + j.shape[0]] = s % modulus
    return out
