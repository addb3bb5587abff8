"""Truncated power series: exact rational series and series over Z/p^N.

Holds the Artin-Hasse exponential E(t), the uniformizer pi(T) defined by
E(pi) = 1 + T, and the binomial series (1+T)^z.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import PrecisionError, PreconditionError, PropertyViolation


def vp(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("v_p(0) is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_factorial(n: int, p: int) -> int:
    v = 0
    while n:
        n //= p
        v += n
    return v


def vp_fraction(x: Fraction, p: int):
    if x == 0:
        return None
    return vp(x.numerator, p) - vp(x.denominator, p)


def reduce_fraction(x: Fraction, p: int, N: int) -> int:
    """Image of a p-integral rational in Z/p^N."""
    mod = p ** N
    if x.denominator % p == 0:
        raise PrecisionError(f"{x} is not p-integral for p={p}")
    return x.numerator * pow(x.denominator, -1, mod) % mod


@dataclass(frozen=True)
class RationalSeries:
    coeffs: tuple

    @property
    def M(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def is_p_integral(self, p: int) -> bool:
        return all(c.denominator % p for c in self.coeffs)

    def reduce(self, p: int, N: int) -> "TSeries":
        return TSeries(p, N, tuple(reduce_fraction(c, p, N) for c in self.coeffs))

    def mul(self, other: "RationalSeries") -> "RationalSeries":
        M = min(self.M, other.M)
        out = [Fraction(0)] * M
        for i, a in enumerate(self.coeffs[:M]):
            if a:
                for j in range(M - i):
                    out[i + j] += a * other.coeffs[j]
        return RationalSeries(tuple(out))

    def inverse(self) -> "RationalSeries":
        """Multiplicative inverse (constant term must be nonzero)."""
        a = self.coeffs
        inv0 = 1 / a[0]
        out = [inv0]
        for n in range(1, self.M):
            s = sum(a[k] * out[n - k] for k in range(1, n + 1))
            out.append(-s * inv0)
        return RationalSeries(tuple(out))


@lru_cache(maxsize=None)
def artin_hasse(p: int, M: int) -> RationalSeries:
    """lambda_0 .. lambda_{M-1} of E(t) = exp(sum t^{p^i}/p^i).

    From E' = E * sum_i t^{p^i - 1}: n lambda_n = sum_{p^i <= n} lambda_{n - p^i}.
    """
    if M < 1:
        raise PreconditionError("M must be >= 1")
    lam = [Fraction(1)]
    for n in range(1, M):
        s = Fraction(0)
        pk = 1
        while pk <= n:
            s += lam[n - pk]
            pk *= p
        lam.append(s / n)
    out = RationalSeries(tuple(lam))
    if not out.is_p_integral(p):
        raise PropertyViolation("Artin-Hasse coefficients are not p-integral")
    return out


def artin_hasse_mod(p: int, M: int, N: int) -> tuple:
    """lambda_i reduced into Z/p^N."""
    return artin_hasse(p, M).reduce(p, N).coeffs


@lru_cache(maxsize=None)
def pi_rational(p: int, M: int) -> RationalSeries:
    """Compositional inverse of E(t) - 1, exactly, by Lagrange inversion."""
    lam = artin_hasse(p, M + 1).coeffs
    # h(t) = t / (E(t) - 1) = 1 / (1 + lam_2 t + lam_3 t^2 + ...)
    h = RationalSeries(tuple(lam[1:M + 1])).inverse()
    out = [Fraction(0)] * M
    if M > 1:
        out[1] = Fraction(1)
    hn = h
    for n in range(2, M):
        hn = hn.mul(h)
        out[n] = hn[n - 1] / n
    return RationalSeries(tuple(out))


@dataclass(frozen=True)
class TSeries:
    """Series c_0 + c_1 T + ... + c_{M-1} T^{M-1} over Z/p^N."""

    p: int
    N: int
    coeffs: tuple

    def __post_init__(self):
        m = self.p ** self.N
        object.__setattr__(self, "coeffs", tuple(int(c) % m for c in self.coeffs))

    @property
    def M(self) -> int:
        return len(self.coeffs)

    @property
    def pN(self) -> int:
        return self.p ** self.N

    @classmethod
    def zero(cls, p, N, M):
        return cls(p, N, (0,) * M)

    @classmethod
    def one(cls, p, N, M):
        return cls(p, N, (1,) + (0,) * (M - 1))

    def _compat(self, other):
        if (self.p, self.N, self.M) != (other.p, other.N, other.M):
            raise PreconditionError("series with different precision metadata")

    def __add__(self, other):
        self._compat(other)
        return TSeries(self.p, self.N, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._compat(other)
        return TSeries(self.p, self.N, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        if isinstance(other, int):
            return TSeries(self.p, self.N, tuple(other * c for c in self.coeffs))
        self._compat(other)
        M = self.M
        out = [0] * M
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(M - i):
                    out[i + j] += a * other.coeffs[j]
        return TSeries(self.p, self.N, tuple(out))

    __rmul__ = __mul__

    def compose(self, inner: "TSeries") -> "TSeries":
        """self(inner(T)); inner must have zero constant term."""
        self._compat(inner)
        if inner.coeffs[0] % self.pN:
            raise PreconditionError("inner series must have zero constant term")
        acc = TSeries.zero(self.p, self.N, self.M)
        for c in reversed(self.coeffs):
            acc = acc * inner + TSeries(self.p, self.N, (c,) + (0,) * (self.M - 1))
        return acc

    def to_json(self) -> dict:
        return {"p": self.p, "N": self.N, "M": self.M,
                "coeffs": [to_base_p(c, self.p) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "TSeries":
        return cls(obj["p"], obj["N"], tuple(int(s, obj["p"]) if obj["p"] <= 36 else int(s) for s in obj["coeffs"]))


def to_base_p(n: int, p: int) -> str:
    """Base-p digit string, most significant digit first (decimal digits if p > 36)."""
    if p > 36:
        return str(n)
    digits = "0123456789abcdefghijklmnopqrstuvwxyz"
    if n == 0:
        return "0"
    out = []
    while n:
        n, r = divmod(n, p)
        out.append(digits[r])
    return "".join(reversed(out))


def pi_of_T(p: int, M: int, N: int) -> TSeries:
    return pi_rational(p, M).reduce(p, N)


def artin_hasse_series(p: int, M: int, N: int) -> TSeries:
    return TSeries(p, N, artin_hasse_mod(p, M, N))


def binomial_precision(M: int, N: int, p: int) -> int:
    """Precision z must carry for (1+T)^z to be correct mod (p^N, T^M)."""
    return N + vp_factorial(max(M - 1, 0), p)


def binomial_coeffs(z: int, M: int, mod: int) -> list:
    """binom(z, k) mod `mod` for k < M, z a nonnegative integer."""
    out = [1 % mod]
    c = 1
    for k in range(1, M):
        c = c * (z - k + 1) // k
        out.append(c % mod)
    return out


def one_plus_T_pow(z: int, M: int, N: int, p: int, z_precision: int) -> TSeries:
    """(1+T)^z mod (p^N, T^M), for z known modulo p^z_precision."""
    need = binomial_precision(M, N, p)
    if z_precision < need:
        raise PrecisionError(f"(1+T)^z to T^{M} mod p^{N} needs z mod p^{need}, got p^{z_precision}")
    z %= p ** z_precision
    return TSeries(p, N, tuple(binomial_coeffs(z, M, p ** N)))
