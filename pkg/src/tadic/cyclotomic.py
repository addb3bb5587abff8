"""Exact arithmetic in Z[zeta_{p^m}] and the pi_m-adic valuation, pi_m = zeta - 1."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .errors import PreconditionError
from .polygons import INFINITY
from .series import TSeries, vp


@dataclass(frozen=True)
class CycField:
    p: int
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise PreconditionError("level m must be >= 1")

    @cached_property
    def order(self) -> int:
        return self.p ** self.m

    @cached_property
    def e(self) -> int:
        """Ramification index phi(p^m) = degree of the field."""
        return (self.p - 1) * self.p ** (self.m - 1)

    @cached_property
    def _step(self) -> int:
        return self.p ** (self.m - 1)

    def reduce(self, a) -> tuple:
        """Reduce a coefficient list (any length) modulo Phi_{p^m}."""
        e, step = self.e, self._step
        a = list(a)
        for k in range(len(a) - 1, e - 1, -1):
            c = a[k]
            if c:
                base = k - e
                for j in range(self.p - 1):
                    a[base + j * step] -= c
                a[k] = 0
        a = a[:e]
        return tuple(a + [0] * (e - len(a)))

    def zero(self) -> "CyclotomicInt":
        return CyclotomicInt(self, (0,) * self.e)

    def one(self) -> "CyclotomicInt":
        return self.integer(1)

    def integer(self, n: int) -> "CyclotomicInt":
        return CyclotomicInt(self, (n,) + (0,) * (self.e - 1))

    def from_histogram(self, hist) -> "CyclotomicInt":
        """sum_t hist[t] * zeta^t for t in Z/p^m."""
        if len(hist) != self.order:
            raise PreconditionError(f"histogram must have {self.order} bins")
        return CyclotomicInt(self, self.reduce([int(h) for h in hist]))

    @cached_property
    def pi(self) -> "CyclotomicInt":
        return root_power(self, 1) - self.one()


@lru_cache(maxsize=None)
def _binom_table(n: int):
    return [[math.comb(i, j) for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class CyclotomicInt:
    owner: CycField
    coeffs: tuple

    def _check(self, other):
        if isinstance(other, int):
            return self.owner.integer(other)
        if other.owner != self.owner:
            raise PreconditionError("operands live in different cyclotomic fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        return CyclotomicInt(self.owner, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return CyclotomicInt(self.owner, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return CyclotomicInt(self.owner, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicInt(self.owner, tuple(other * a for a in self.coeffs))
        other = self._check(other)
        a, b = self.coeffs, other.coeffs
        out = [0] * (2 * len(a) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return CyclotomicInt(self.owner, self.owner.reduce(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = self.owner.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def content(self) -> int:
        return math.gcd(*self.coeffs)

    def divide_exact(self, n: int) -> "CyclotomicInt":
        if any(c % n for c in self.coeffs):
            raise ArithmeticError(f"not divisible by {n}")
        return CyclotomicInt(self.owner, tuple(c // n for c in self.coeffs))

    def pi_basis(self) -> tuple:
        """Coefficients b_i with self = sum b_i pi^i, i < e (binomial transform)."""
        e = self.owner.e
        tab = _binom_table(e)
        b = [0] * e
        for i, c in enumerate(self.coeffs):
            if c:
                row = tab[i]
                for j in range(i + 1):
                    b[j] += c * row[j]
        return tuple(b)

    def to_json(self) -> dict:
        return {"p": self.owner.p, "m": self.owner.m, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "CyclotomicInt":
        K = CycField(obj["p"], obj["m"])
        return cls(K, tuple(int(c) for c in obj["coeffs"]))

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mon = "1" if i == 0 else ("z" if i == 1 else f"z^{i}")
                terms.append(f"{c}*{mon}" if mon != "1" else str(c))
        return " + ".join(terms) if terms else "0"


def root_power(K: CycField, t: int) -> CyclotomicInt:
    t %= K.order
    vec = [0] * (t + 1)
    vec[t] = 1
    return CyclotomicInt(K, K.reduce(vec))


def pi_valuation(c: CyclotomicInt):
    """v(c) normalized by v(zeta - 1) = 1; INFINITY for 0.

    The terms b_i pi^i have valuations i + e v_p(b_i), pairwise distinct mod e,
    so the minimum is attained exactly once.
    """
    e = c.owner.e
    p = c.owner.p
    best = INFINITY
    for i, b in enumerate(c.pi_basis()):
        if b:
            v = i + e * vp(b, p)
            if v < best:
                best = v
    return best


def substitute_pi(S: TSeries, K: CycField):
    """Evaluate S at T = pi_m; returns (value, precision).

    The value is correct modulo pi^precision with precision = min(M, e N).
    """
    if S.p != K.p:
        raise PreconditionError("series and field have different primes")
    acc = K.zero()
    pi = K.pi
    for c in reversed(S.coeffs):
        acc = acc * pi + c
    return acc, min(S.M, K.e * S.N)


@dataclass(frozen=True)
class CycRational:
    """num / den with num in Z[zeta], den a positive integer, in lowest terms."""

    num: CyclotomicInt
    den: int = 1

    def __post_init__(self):
        g = math.gcd(self.num.content(), self.den)
        if g > 1:
            object.__setattr__(self, "num", self.num.divide_exact(g))
            object.__setattr__(self, "den", self.den // g)

    @property
    def is_integral(self) -> bool:
        return self.den == 1

    def __add__(self, other: "CycRational"):
        return CycRational(self.num * other.den + other.num * self.den, self.den * other.den)

    def __mul__(self, other: "CycRational"):
        return CycRational(self.num * other.num, self.den * other.den)

    def div_int(self, n: int) -> "CycRational":
        return CycRational(self.num, self.den * n)
