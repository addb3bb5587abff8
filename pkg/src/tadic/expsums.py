"""Brute-force exponential sums, exact L-functions and their Newton polygons.

A unit x of F_{q^k} is written g^j for the smallest-index primitive element
g, so its Teichmueller lift is w^j with w = Teich(g). Then

    Tr(f(x_hat)) = sum_u Tr(w^(t_u + j u)),    a_u = g^(t_u),

and a sum over all units is a histogram of these traces over j, built by
the kernels in ``tadic.kernels`` from a table of Tr(w^j).
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from functools import lru_cache

from . import kernels
from .cyclotomic import CycField, CyclotomicInt, CycRational, pi_valuation
from .errors import BudgetExceeded, PreconditionError, PropertyViolation
from .finite_fields import embed_raw, field_create
from .galois import hensel_modulus
from .laurent import LaurentPolyFq
from .polygons import (INFINITY, ConvexPolygon, arithmetic_polygon, newton_polygon_from_points,
                       polygon_compare)
from .series import TSeries, binomial_coeffs, binomial_precision

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10 ** 8


def default_budget() -> int:
    return int(os.environ.get("TADIC_BUDGET", DEFAULT_BUDGET))


@dataclass(frozen=True)
class PointTable:
    """Tr(w^j) mod p^N for all j, w the Teichmueller lift of a primitive element."""

    p: int
    a: int
    k: int
    N: int
    traces: object  # int64 array of length q^k - 1
    logs: dict  # F_q element tuple -> discrete log in F_{q^k}

    @property
    def size(self) -> int:
        return len(self.traces)


@lru_cache(maxsize=8)
def point_table(p: int, a: int, k: int, N: int) -> PointTable:
    n = a * k
    F = field_create(p, n)
    R = hensel_modulus(p, N, n)
    Fq = field_create(p, a)
    Q1 = F.size - 1
    g = F.primitive
    w = R.teich(g)
    basis = [tuple(1 if r == c else 0 for r in range(n)) for c in range(n)]
    cols = [R.mul(w, b) for b in basis]
    W = [[cols[c][r] for c in range(n)] for r in range(n)]
    traces = kernels.power_traces(W, R.trace_vector, Q1, R.pN)
    # logs of the embedded base field
    step = Q1 // (Fq.size - 1)
    h = F.pow(g, step)
    power_log = {}
    y = F.one
    for i in range(Fq.size - 1):
        power_log[y] = i * step
        y = F.mul(y, h)
    logs = {x: power_log[embed_raw(x, Fq, F)] for x in Fq.units()}
    return PointTable(p, a, k, N, traces, logs)


def _check_budget(count: int, budget, what: str):
    budget = default_budget() if budget is None else budget
    if count > budget:
        raise BudgetExceeded(count, budget, what)


def trace_histogram(f: LaurentPolyFq, k: int, N: int, budget=None):
    """Histogram over x in F_{q^k}^x of Tr(f(x_hat)) mod p^N."""
    if k <= 0:
        raise PreconditionError("k must be >= 1")
    _check_budget(f.q ** k - 1, budget, f"q^k - 1 = {f.q}^{k} - 1")
    tab = point_table(f.p, f.a, k, N)
    offsets = [tab.logs[c] for _, c in f.coeffs]
    exps = list(f.support)
    return kernels.trace_histogram(tab.traces, offsets, exps, f.p ** N)


def trace_counts(f: LaurentPolyFq, k: int, N: int, budget=None) -> list:
    """Sparse form of trace_histogram: (value, count) pairs."""
    if k <= 0:
        raise PreconditionError("k must be >= 1")
    _check_budget(f.q ** k - 1, budget, f"q^k - 1 = {f.q}^{k} - 1")
    tab = point_table(f.p, f.a, k, N)
    offsets = [tab.logs[c] for _, c in f.coeffs]
    return kernels.trace_counts(tab.traces, offsets, list(f.support), f.p ** N)


def sum_S_cyclotomic(f: LaurentPolyFq, k: int, m: int, budget=None) -> CyclotomicInt:
    """S_f(k, pi_m) as an element of Z[zeta_{p^m}]."""
    K = CycField(f.p, m)
    return K.from_histogram(trace_histogram(f, k, m, budget))


def sum_S_Tseries(f: LaurentPolyFq, k: int, N: int, M: int, budget=None) -> TSeries:
    """S_f(k, T) mod (p^N, T^M)."""
    Nw = binomial_precision(M, N, f.p)
    mod = f.p ** N
    out = [0] * M
    for z, cnt in trace_counts(f, k, Nw, budget):
        for i, b in enumerate(binomial_coeffs(z, M, mod)):
            out[i] += cnt * b
    S = TSeries(f.p, N, tuple(out))
    if S.coeffs[0] != (f.q ** k - 1) % mod:
        raise PropertyViolation("constant term of S_f(k, T) differs from q^k - 1")
    return S


@dataclass(frozen=True)
class LPolynomial:
    m: int
    field: CycField
    coeffs: tuple  # CyclotomicInt c_0 .. c_deg
    a: int

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def valuations(self) -> list:
        return [pi_valuation(c) for c in self.coeffs]

    def to_json(self) -> dict:
        return {"m": self.m, "degree": self.degree,
                "coeffs": [c.to_json()["coeffs"] for c in self.coeffs],
                "valuations": [None if v == INFINITY else v for v in self.valuations()]}


def l_function_cost(q: int, top: int) -> int:
    return sum(q ** k - 1 for k in range(1, top + 1))


def l_function(f: LaurentPolyFq, m: int, budget=None, slack: int = 2) -> LPolynomial:
    """L_f(s, pi_m) from n c_n = sum_{k<=n} S_k c_{n-k}, with integrality and
    degree checks."""
    p = f.p
    if f.delta.D % p == 0:
        raise PreconditionError(f"p = {p} divides D = {f.delta.D}")
    if m < 1:
        raise PreconditionError("m must be >= 1")
    deg = p ** (m - 1) * f.delta.vol
    top = deg + slack
    cost = l_function_cost(f.q, top)
    _check_budget(cost, budget, f"sum_(k=1..{top}) (q^k - 1) with q = {f.q}")
    K = CycField(p, m)
    S = [None] + [sum_S_cyclotomic(f, k, m, budget=cost) for k in range(1, top + 1)]
    c = [CycRational(K.one())]
    for n in range(1, top + 1):
        acc = CycRational(K.zero())
        for k in range(1, n + 1):
            acc = acc + CycRational(S[k]) * c[n - k]
        c.append(acc.div_int(n))
    for n, cn in enumerate(c):
        if not cn.is_integral:
            raise PropertyViolation(f"L-coefficient c_{n} is not integral (denominator {cn.den})")
    for n in range(deg + 1, top + 1):
        if not c[n].num.is_zero():
            raise PropertyViolation(f"L-coefficient c_{n} beyond degree {deg} is nonzero")
    if c[deg].num.is_zero():
        raise PropertyViolation(f"L-function has degree below {deg}")
    return LPolynomial(m, K, tuple(x.num for x in c[: deg + 1]), f.a)


def np_of_L(L: LPolynomial) -> ConvexPolygon:
    return newton_polygon_from_points(enumerate(L.valuations()))


def np_C_from_L(L: LPolynomial, range_: int) -> ConvexPolygon:
    """pi_m-adic NP of C = prod_j L(q^j s), first `range_` slopes."""
    shift = L.a * L.field.e
    slopes = np_of_L(L).slopes
    if any(s > shift for s in slopes):
        raise PropertyViolation(f"L-slope exceeds a*e_m = {shift}; reciprocal roots too large")
    out = []
    j = 0
    while len(out) < range_ + len(slopes):
        out.extend(s + j * shift for s in slopes)
        j += 1
    return ConvexPolygon(tuple(sorted(out)[:range_]))


def expected_polygon(f: LaurentPolyFq, m: int) -> ConvexPolygon:
    """ord_p(q) * p_Delta on [0, p^{m-1} Vol]."""
    length = f.p ** (m - 1) * f.delta.vol
    return arithmetic_polygon(f.delta, f.p, length).scale(f.a)


def hypothesis_holds(f: LaurentPolyFq) -> bool:
    return f.p > 3 * f.delta.D


def verify_main(f: LaurentPolyFq, m: int = 1, budget=None, slack: int = 2) -> dict:
    from .hasse import hasse_product_eval

    L = l_function(f, m, budget, slack)
    np_L = np_of_L(L)
    expected = expected_polygon(f, m)
    rng = len(expected)
    cmp = polygon_compare(np_L, expected, rng)
    hasse = hasse_product_eval(f.delta, f.p, f)
    hyp = hypothesis_holds(f)
    report = {
        "f": f.describe(),
        "p": f.p, "a": f.a, "m": m, "delta": str(f.delta),
        "np_L": np_L.to_json()["slopes"],
        "expected": expected.to_json()["slopes"],
        "np_above_expected": cmp.lies_above,
        "equal": cmp.equal,
        "hasse_value": list(hasse["value"]),
        "hasse_nonzero": hasse["nonzero"],
        "hypothesis_violated": not hyp,
        "consistent": (cmp.equal == hasse["nonzero"]) if hyp else None,
        "L": L.to_json(),
    }
    if not hyp:
        log.warning("p = %d <= 3D = %d: theorem guarantees do not apply", f.p, 3 * f.delta.D)
    return report
