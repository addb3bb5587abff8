import cmath

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import cyc_norm, cyc_to_complex, vp_int
from tadic.cyclotomic import CycField, CyclotomicInt, CycRational, pi_valuation, root_power, substitute_pi
from tadic.errors import PreconditionError
from tadic.polygons import INFINITY
from tadic.series import TSeries

FIELDS = [(2, 1), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1), (5, 2)]


def elements(K):
    return st.lists(st.integers(-30, 30), min_size=K.e, max_size=K.e).map(
        lambda c: CyclotomicInt(K, tuple(c)))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_ring_ops_match_complex_embedding(pm, data):
    K = CycField(*pm)
    a, b = data.draw(elements(K)), data.draw(elements(K))
    za, zb = cyc_to_complex(a), cyc_to_complex(b)
    assert abs(cyc_to_complex(a * b) - za * zb) < 1e-6 * (1 + abs(za * zb))
    assert abs(cyc_to_complex(a + b) - (za + zb)) < 1e-6 * (1 + abs(za) + abs(zb))
    assert abs(cyc_to_complex(a ** 3) - za ** 3) < 1e-6 * (1 + abs(za) ** 3)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(2, 2), (3, 1), (3, 2), (5, 1), (7, 1)]), st.data())
def test_valuation_equals_norm_valuation(pm, data):
    K = CycField(*pm)
    a = data.draw(elements(K))
    n = cyc_norm(a)
    expected = INFINITY if n == 0 else vp_int(n, K.p)
    assert pi_valuation(a) == expected


def test_valuation_examples():
    K = CycField(3, 2)
    assert pi_valuation(K.pi) == 1
    assert pi_valuation(K.integer(3)) == K.e
    assert pi_valuation(K.pi ** 5) == 5
    assert pi_valuation(K.zero()) == INFINITY


@pytest.mark.parametrize("p,m", FIELDS)
def test_root_powers(p, m):
    K = CycField(p, m)
    z = cmath.exp(2j * cmath.pi / K.order)
    for t in range(-3, K.order + 3):
        assert abs(cyc_to_complex(root_power(K, t)) - z ** t) < 1e-9
    total = sum((root_power(K, t) for t in range(K.order)), K.zero())
    assert total.is_zero()


def test_histogram_and_pi_basis():
    K = CycField(3, 1)
    x = K.from_histogram([2, 1, 0])
    assert x == 2 + root_power(K, 1)
    b = x.pi_basis()
    assert sum((c * K.pi ** i for i, c in enumerate(b)), K.zero()) == x
    with pytest.raises(PreconditionError):
        K.from_histogram([1, 2])


def test_substitute_pi():
    K = CycField(5, 1)
    S = TSeries(5, 3, (1, 2, 0, 7))
    val, prec = substitute_pi(S, K)
    assert val == 1 + 2 * K.pi + 7 * K.pi ** 3
    assert prec == min(4, 4 * 3)


def test_rational_lowest_terms_and_json():
    K = CycField(3, 1)
    r = CycRational(K.integer(6) + 3 * K.pi, 9)
    assert r.den == 3 and not r.is_integral
    assert (r * CycRational(K.integer(3))).is_integral
    x = K.pi ** 2
    assert CyclotomicInt.from_json(x.to_json()) == x
    assert str(K.integer(0)) == "0"
    with pytest.raises(PreconditionError):
        x + CycField(5, 1).pi
