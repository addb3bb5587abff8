import itertools

import pytest

from oracles import mult_matrix_trace, poly_pow
from tadic.errors import PreconditionError
from tadic.finite_fields import field_create
from tadic.galois import gr_frobenius, gr_trace, hensel_modulus, teichmuller

RINGS = [(5, 2, 1), (3, 3, 2), (2, 4, 3), (5, 2, 2), (7, 3, 2), (2, 3, 4)]


def test_teichmuller_in_Z_mod_25():
    R = hensel_modulus(5, 2, 1)
    F = field_create(5, 1)
    assert [teichmuller(F.element(i), R).coeffs[0] for i in range(5)] == [0, 1, 7, 18, 24]


@pytest.mark.parametrize("p,N,n", RINGS)
def test_modulus_lifts_field_modulus_and_root_is_teichmuller(p, N, n):
    R = hensel_modulus(p, N, n)
    F = field_create(p, n)
    assert tuple(c % p for c in R.modulus) == F.modulus
    if n > 1:
        xi = [0, 1] + [0] * (n - 2)
        assert poly_pow(xi, p ** n, list(R.modulus), p ** N) == xi


@pytest.mark.parametrize("p,N,n", RINGS)
def test_teichmuller_multiplicative_and_fixed(p, N, n):
    R = hensel_modulus(p, N, n)
    F = R.residue_field
    for i, j in itertools.product(range(F.size), repeat=2):
        a, b = F.element(i), F.element(j)
        ta, tb = teichmuller(a, R), teichmuller(b, R)
        assert teichmuller(a * b, R) == ta * tb
        assert ta.residue() == a
        assert ta ** R.q == ta


@pytest.mark.parametrize("p,N,n", RINGS)
def test_frobenius_is_ring_automorphism_lifting_pth_power(p, N, n):
    R = hensel_modulus(p, N, n)
    F = R.residue_field
    elems = [R.elem([(3 * i + 7 * k * k + 1) % R.pN for k in range(n)]) for i in range(6)]
    for a, b in itertools.product(elems, repeat=2):
        assert gr_frobenius(a * b) == gr_frobenius(a) * gr_frobenius(b)
        assert gr_frobenius(a + b) == gr_frobenius(a) + gr_frobenius(b)
    for a in elems:
        assert gr_frobenius(a).residue() == a.residue() ** p
        assert R.frob_inv(R.frob(a.coeffs)) == a.coeffs
    for i in range(F.size):
        t = teichmuller(F.element(i), R)
        assert gr_frobenius(t) == t ** p


@pytest.mark.parametrize("p,N,n", RINGS)
def test_trace_is_matrix_trace(p, N, n):
    R = hensel_modulus(p, N, n)
    for i in range(12):
        z = [(5 * i + 11 * k + i * k * k) % R.pN for k in range(n)]
        assert gr_trace(R.elem(z)) == mult_matrix_trace(z, list(R.modulus), R.pN)


def test_inverse():
    R = hensel_modulus(3, 3, 2)
    a = R.elem([2, 5])
    assert R.mul(R.inv(a.coeffs), a.coeffs) == R.one
    with pytest.raises(ZeroDivisionError):
        R.inv(R.elem([3, 6]).coeffs)


def test_mixed_rings_rejected():
    a = hensel_modulus(3, 2, 2).elem([1, 1])
    b = hensel_modulus(3, 3, 2).elem([1, 1])
    with pytest.raises(PreconditionError):
        a + b
