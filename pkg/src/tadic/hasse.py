"""Hasse polynomials: slope sets A_m, admissible permutations S_m^0, H_m and
their product, evaluated at the coefficients of f."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from . import series
from .errors import PreconditionError, PropertyViolation
from .finite_fields import FieldDesc
from .laurent import LaurentPolyFq
from .polygons import Polytope1D, arithmetic_polygon, ceil, turning_points, varpi

log = logging.getLogger(__name__)

MAX_SLOPE_SET = 10


def _member_key(a: int):
    return (abs(a), a < 0)


@dataclass(frozen=True)
class SlopeSet:
    m: int
    threshold: int
    members: tuple


def is_turning_point(delta: Polytope1D, p: int, m: int) -> bool:
    if m < 1:
        return False
    s = arithmetic_polygon(delta, p, m + 1).slopes
    return s[m - 1] < s[m]


def slope_set(delta: Polytope1D, p: int, m: int) -> SlopeSet:
    if m < 1:
        raise PreconditionError("m must be >= 1")
    P = arithmetic_polygon(delta, p, m + 1)
    thr = int(P.slopes[m - 1])
    # varpi(a) >= (p-1) deg(a) - 1, so members have deg(a) <= (thr + 1)/(p - 1)
    horizon = Fraction(thr + 1, p - 1)
    members = tuple(sorted((a for a in delta.members(max_deg=horizon) if varpi(delta, p, a) <= thr),
                           key=_member_key))
    if P.slopes[m - 1] < P.slopes[m] and len(members) != m:
        raise PropertyViolation(f"|A_{m}| = {len(members)} at a turning point, expected {m}")
    return SlopeSet(m, thr, members)


def _side_scale(delta: Polytope1D, a: int) -> int:
    return delta.d if a > 0 else -delta.e


def _admissible(delta: Polytope1D, p: int, A: tuple, a: int, b: int, reading: str) -> bool:
    if a == 0:
        return b == 0
    sign = 1 if a > 0 else -1
    n = max((x for x in A if x * sign > 0), key=delta.deg)
    dpa = delta.deg(p * a)
    rhs = dpa - ceil(dpa - delta.deg(n))
    lhs = Fraction(b, _side_scale(delta, a)) if reading == "signed" else delta.deg(b)
    return lhs >= rhs


def _parity(perm: dict, A: tuple) -> int:
    seen = set()
    sign = 1
    for start in A:
        if start in seen:
            continue
        length = 0
        x = start
        while x not in seen:
            seen.add(x)
            x = perm[x]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def s_m0(delta: Polytope1D, p: int, m: int, reading: str = "signed") -> list:
    """Admissible permutations of A_m, as dicts a -> tau(a).

    ``reading="signed"`` uses tau(a)/d(sgn a) with d(+) = d, d(-) = -e;
    ``"degree"`` uses deg(tau(a)) on the left instead.
    """
    if not is_turning_point(delta, p, m):
        raise PreconditionError(f"m = {m} is not a turning point of the arithmetic polygon")
    if m >= delta.vol:
        log.info("m = %d >= Vol = %d: outside the range where H_m enters the genericity product", m, delta.vol)
    A = slope_set(delta, p, m).members
    if len(A) > MAX_SLOPE_SET:
        raise PreconditionError(f"|A_m| = {len(A)} exceeds the enumeration cap {MAX_SLOPE_SET}")
    allowed = {a: [b for b in A if _admissible(delta, p, A, a, b, reading)] for a in A}
    out = []
    order = sorted(A, key=lambda a: len(allowed[a]))
    perm = {}
    used = set()

    def extend(k):
        if k == len(order):
            out.append(dict(perm))
            return
        a = order[k]
        for b in allowed[a]:
            if b not in used:
                perm[a] = b
                used.add(b)
                extend(k + 1)
                used.discard(b)
                del perm[a]

    extend(0)
    key = lambda t: tuple(t[a] for a in A)
    return sorted(out, key=key)


def _compositions(variables: tuple, target: int, count: int):
    """All {j: n_j} over `variables` with sum j n_j = target, sum n_j = count."""
    vs = sorted(variables)

    def rec(idx, tgt, cnt):
        if idx == len(vs) - 1:
            j = vs[idx]
            if cnt * j == tgt:
                yield {j: cnt} if cnt else {}
            return
        rest = vs[idx + 1:]
        lo, hi = min(rest), max(rest)
        j = vs[idx]
        for n in range(cnt + 1):
            t2, c2 = tgt - n * j, cnt - n
            if c2 * lo <= t2 <= c2 * hi:
                for tail in rec(idx + 1, t2, c2):
                    if n:
                        tail = dict(tail)
                        tail[j] = n
                    yield tail

    if not vs:
        return
    yield from rec(0, target, count)


def variable_order(delta: Polytope1D) -> tuple:
    return tuple(sorted(delta.lattice, key=_member_key))


@dataclass(frozen=True)
class HassePolynomial:
    p: int
    m: int
    variables: tuple  # exponents j of y_j, in display order
    monomials: dict = field(hash=False)  # exponent tuple -> coefficient in [1, p)

    def is_zero(self) -> bool:
        return not self.monomials

    def sorted_terms(self):
        return sorted(self.monomials.items(), key=lambda t: t[0], reverse=True)

    def __str__(self):
        if not self.monomials:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            factors = []
            for j, n in zip(self.variables, exps):
                if n:
                    name = f"y{j}" if j >= 0 else f"y({j})"
                    factors.append(name if n == 1 else f"{name}^{n}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts)

    def weights(self) -> list:
        """y-weight sum |j| n_j of every monomial."""
        return [sum(abs(j) * n for j, n in zip(self.variables, e)) for e in self.monomials]

    def evaluate(self, values: dict, F: FieldDesc) -> tuple:
        """Value at y_j = values[j] (raw F tuples, missing -> 0)."""
        acc = F.zero
        for exps, c in self.monomials.items():
            term = F.const(c)
            for j, n in zip(self.variables, exps):
                if n:
                    term = F.mul(term, F.pow(values.get(j, F.zero), n))
            acc = F.add(acc, term)
        return acc

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "text": str(self),
                "monomials": [{"exponents": {str(j): n for j, n in zip(self.variables, e) if n},
                               "coeff": c} for e, c in self.sorted_terms()]}


def hasse_m(delta: Polytope1D, p: int, m: int, perms=None) -> HassePolynomial:
    """H_m reduced mod p. ``perms`` restricts the sum to a subset of S_m^0."""
    A = slope_set(delta, p, m).members
    if perms is None:
        perms = s_m0(delta, p, m)
    variables = variable_order(delta)
    pos = {j: k for k, j in enumerate(variables)}
    need = max([ceil(delta.deg(p * i - b)) for i in A for b in A if delta.in_cone(p * i - b)] + [0])
    lam = series.artin_hasse(p, need + 1).coeffs
    total = {}
    for tau in perms:
        poly = {(0,) * len(variables): Fraction(_parity(tau, A))}
        for i in A:
            t = p * i - tau[i]
            if not delta.in_cone(t):
                poly = {}
                break
            cnt = ceil(delta.deg(t))
            inner = {}
            for comp in _compositions(variables, t, cnt):
                e = [0] * len(variables)
                coef = Fraction(1)
                for j, n in comp.items():
                    e[pos[j]] = n
                    coef *= lam[n]
                inner[tuple(e)] = inner.get(tuple(e), 0) + coef
            prod = {}
            for e1, c1 in poly.items():
                for e2, c2 in inner.items():
                    e = tuple(x + y for x, y in zip(e1, e2))
                    prod[e] = prod.get(e, 0) + c1 * c2
            poly = prod
        for e, c in poly.items():
            total[e] = total.get(e, 0) + c
    reduced = {}
    for e, c in total.items():
        r = series.reduce_fraction(Fraction(c), p, 1)
        if r:
            reduced[e] = r
    return HassePolynomial(p, m, variables, reduced)


def genericity_turning_points(delta: Polytope1D, p: int) -> list:
    """Turning points m < Vol of the arithmetic polygon."""
    P = arithmetic_polygon(delta, p, delta.vol)
    return [m for m in turning_points(P) if m < delta.vol]


def hasse_product_eval(delta: Polytope1D, p: int, f: LaurentPolyFq) -> dict:
    if f.delta != delta or f.p != p:
        raise PreconditionError("f does not match (delta, p)")
    F = f.field
    values = dict(f.coeffs)
    value = F.one
    factors = {}
    for m in genericity_turning_points(delta, p):
        v = hasse_m(delta, p, m).evaluate(values, F)
        factors[m] = v
        value = F.mul(value, v)
    return {"value": value, "nonzero": any(value), "factors": factors}


def hasse_polynomials(delta: Polytope1D, p: int, upto=None) -> dict:
    """H_m for every turning point m < Vol (or m <= upto when given)."""
    if upto is None:
        ms = genericity_turning_points(delta, p)
    else:
        ms = turning_points(arithmetic_polygon(delta, p, upto + 1))
        ms = [m for m in ms if m <= upto]
    return {m: hasse_m(delta, p, m) for m in ms}
