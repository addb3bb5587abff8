# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops for point enumeration.

These functions mirror tadic._kernels_py exactly; see that module for the
contracts.
"""

import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64


cdef void _matvec(const i64[:, :] A, const i64[:] x, i64[:] y, i64 modulus, bint transpose) nogil:
    cdef Py_ssize_t n = A.shape[0]
    cdef Py_ssize_t r, c
    cdef i64 acc
    for r in range(n):
        acc = 0
        if transpose:
            for c in range(n):
                acc += x[c] * A[c, r]
        else:
            for c in range(n):
                acc += A[r, c] * x[c]
        y[r] = acc % modulus


def power_traces(const i64[:, :] W, const i64[:] ell, Py_ssize_t count, i64 modulus):
    # baby steps V[b] = W^b e_0, giant steps r_a = ell W^(aK); tr[aK + b] = r_a . V[b]
    cdef Py_ssize_t n = W.shape[0]
    cdef Py_ssize_t K = max(1, <Py_ssize_t>(count ** 0.5))
    cdef Py_ssize_t a, b, r, c, k, j
    cdef i64 acc
    V_arr = np.zeros((K, n), dtype=np.int64)
    cdef i64[:, :] V = V_arr
    V[0, 0] = 1 % modulus
    for b in range(1, K):
        _matvec(W, V[b - 1], V[b], modulus, False)
    WK_arr = np.eye(n, dtype=np.int64)
    nxt_arr = np.empty((n, n), dtype=np.int64)
    cdef i64[:, :] WK = WK_arr
    cdef i64[:, :] nxt = nxt_arr
    for k in range(K):
        for r in range(n):
            for c in range(n):
                acc = 0
                for j in range(n):
                    acc += WK[r, j] * W[j, c]
                nxt[r, c] = acc % modulus
        WK[:, :] = nxt
    out_arr = np.empty(count, dtype=np.int64)
    cdef i64[:] out = out_arr
    row_arr = np.empty(n, dtype=np.int64)
    tmp_arr = np.empty(n, dtype=np.int64)
    cdef i64[:] row = row_arr
    cdef i64[:] tmp = tmp_arr
    for r in range(n):
        row[r] = ell[r] % modulus
    j = 0
    for a in range((count + K - 1) // K):
        for b in range(K):
            if j >= count:
                break
            acc = 0
            for r in range(n):
                acc += row[r] * V[b, r]
            out[j] = acc % modulus
            j += 1
        _matvec(WK, row, tmp, modulus, True)
        row[:] = tmp
    return out_arr


def trace_histogram(const i64[:] tr, const i64[:] offsets, const i64[:] exps, i64 modulus):
    cdef Py_ssize_t q1 = tr.shape[0]
    cdef Py_ssize_t nt = offsets.shape[0]
    cdef Py_ssize_t j, u
    cdef i64 s
    hist_arr = np.zeros(modulus, dtype=np.int64)
    cdef i64[:] hist = hist_arr
    idx_arr = np.empty(nt, dtype=np.int64)
    step_arr = np.empty(nt, dtype=np.int64)
    cdef i64[:] idx = idx_arr
    cdef i64[:] step = step_arr
    for u in range(nt):
        idx[u] = ((offsets[u] % q1) + q1) % q1
        step[u] = ((exps[u] % q1) + q1) % q1
    for j in range(q1):
        s = 0
        for u in range(nt):
            s += tr[idx[u]]
            idx[u] += step[u]
            if idx[u] >= q1:
                idx[u] -= q1
        hist[s % modulus] += 1
    return hist_arr


def trace_sums(const i64[:] tr, const i64[:] offsets, const i64[:] exps, i64 modulus):
    cdef Py_ssize_t q1 = tr.shape[0]
    cdef Py_ssize_t nt = offsets.shape[0]
    cdef Py_ssize_t j, u
    cdef i64 s
    out_arr = np.empty(q1, dtype=np.int64)
    cdef i64[:] out = out_arr
    idx_arr = np.empty(nt, dtype=np.int64)
    step_arr = np.empty(nt, dtype=np.int64)
    cdef i64[:] idx = idx_arr
    cdef i64[:] step = step_arr
    for u in range(nt):
        idx[u] = ((offsets[u] % q1) + q1) % q1
        step[u] = ((exps[u] % q1) + q1) % q1
    for j in range(q1):
        s = 0
        for u in range(nt):
            s += tr[idx[u]]
            idx[u] += step[u]
            if idx[u] >= q1:
                idx[u] -= q1
        out[j] = s % modulus
    return out_arr
