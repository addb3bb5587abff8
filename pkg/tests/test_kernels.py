import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tadic import kernels

BACKENDS = ["python"] + (["cython"] if kernels.BACKEND == "cython" else [])


def naive_power_traces(W, ell, count, modulus):
    n = len(W)
    v = [1] + [0] * (n - 1)
    out = []
    for _ in range(count):
        out.append(sum(a * b for a, b in zip(ell, v)) % modulus)
        v = [sum(W[r][c] * v[c] for c in range(n)) % modulus for r in range(n)]
    return out


def naive_sums(tr, offsets, exps, modulus):
    L = len(tr)
    return [sum(tr[(o + j * e) % L] for o, e in zip(offsets, exps)) % modulus for j in range(L)]


matrices = st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.lists(st.lists(st.integers(0, 10 ** 6), min_size=n, max_size=n), min_size=n, max_size=n),
    st.lists(st.integers(0, 10 ** 6), min_size=n, max_size=n)))


@pytest.mark.parametrize("backend", BACKENDS)
@settings(max_examples=40, deadline=None)
@given(matrices, st.integers(1, 300), st.sampled_from([2, 9, 125, 7 ** 4, 3 ** 12]))
def test_power_traces(backend, Wl, count, modulus):
    W, ell = Wl
    W = [[x % modulus for x in row] for row in W]
    ell = [x % modulus for x in ell]
    got = kernels.power_traces(W, ell, count, modulus, backend=backend)
    assert [int(x) for x in got] == naive_power_traces(W, ell, count, modulus)


def test_power_traces_exact_path_for_huge_moduli():
    modulus = 3 ** 40
    W = [[2, 5], [7, 11]]
    got = kernels.power_traces(W, [1, 3], 20, modulus)
    assert [int(x) for x in got] == naive_power_traces(W, [1, 3], 20, modulus)


sums_args = st.integers(1, 200).flatmap(lambda L: st.tuples(
    st.lists(st.integers(0, 1000), min_size=L, max_size=L),
    st.lists(st.tuples(st.integers(-500, 500), st.integers(-6, 6)), min_size=1, max_size=4)))


@pytest.mark.parametrize("backend", BACKENDS)
@settings(max_examples=60, deadline=None)
@given(sums_args, st.sampled_from([2, 25, 49, 243]))
def test_histogram_and_sums(backend, args, modulus):
    tr, terms = args
    offsets = [o for o, _ in terms]
    exps = [e for _, e in terms]
    ref = naive_sums(tr, offsets, exps, modulus)
    hist = kernels.trace_histogram(tr, offsets, exps, modulus, backend=backend)
    assert list(hist) == [ref.count(v) for v in range(modulus)]
    impl = kernels.implementation(backend)
    s = impl.trace_sums(np.asarray(tr, dtype=np.int64), np.asarray(offsets, dtype=np.int64),
                        np.asarray(exps, dtype=np.int64), modulus)
    assert list(s) == ref


@pytest.mark.parametrize("backend", BACKENDS)
def test_trace_counts_dense_and_sparse_agree(backend, monkeypatch):
    rng = np.random.default_rng(3)
    tr = rng.integers(0, 10 ** 6, size=500)
    args = (tr, [3, 17], [1, -2], 5 ** 5)
    dense = kernels.trace_counts(*args, backend=backend)
    monkeypatch.setattr(kernels, "DENSE_LIMIT", 10)
    sparse = kernels.trace_counts(*args, backend=backend)
    assert dense == sparse
    assert sum(c for _, c in dense) == 500


def test_backend_selection():
    assert kernels.BACKEND in ("cython", "python")
    assert kernels.implementation("python").__name__.endswith("_kernels_py")


@pytest.mark.skipif(kernels.BACKEND != "cython", reason="extension not built")
def test_backends_agree_on_real_table():
    from tadic.galois import hensel_modulus

    R = hensel_modulus(3, 2, 6)
    w = R.teich(R.residue_field.primitive)
    n = R.n
    cols = [R.mul(w, tuple(1 if r == c else 0 for r in range(n))) for c in range(n)]
    W = [[cols[c][r] for c in range(n)] for r in range(n)]
    a = kernels.power_traces(W, R.trace_vector, R.q - 1, R.pN, backend="python")
    b = kernels.power_traces(W, R.trace_vector, R.q - 1, R.pN, backend="cython")
    assert np.array_equal(a, b)
    ha = kernels.trace_histogram(a, [0, 5], [1, -1], R.pN, backend="python")
    hb = kernels.trace_histogram(a, [0, 5], [1, -1], R.pN, backend="cython")
    assert np.array_equal(ha, hb)


def test_pure_python_switch():
    import os
    import subprocess
    import sys

    env = dict(os.environ, TADIC_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from tadic import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
