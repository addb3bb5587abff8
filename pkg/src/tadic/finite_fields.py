"""Finite fields F_{p^n} in a dense polynomial basis.

The defining polynomial is the first monic irreducible of degree n when
monic polynomials are enumerated by the integer sum(c_i p^i) of their lower
coefficients (constant coefficient least significant). Elements are tuples
of n residues; ``index`` is the same base-p encoding.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator

from sympy import isprime, primefactors

from . import _poly
from .errors import PreconditionError, PropertyViolation


def _is_irreducible(g, p):
    n = len(g) - 1
    if n == 1:
        return True
    x = (0, 1) + (0,) * (n - 2)

    def frob_power(k):
        y = x
        for _ in range(k):
            y = _poly.powmod(y, p, g, p)
        return y

    if list(frob_power(n)) != list(x):
        return False
    for r in primefactors(n):
        y = frob_power(n // r)
        diff = list(y)
        diff[1] = (diff[1] - 1) % p
        if len(_poly.gcd_poly(diff, list(g), p)) > 1:
            return False
    return True


@dataclass(frozen=True)
class FieldDesc:
    p: int
    n: int
    modulus: tuple

    @cached_property
    def size(self) -> int:
        return self.p ** self.n

    def __repr__(self):
        return f"GF({self.p}^{self.n}, modulus={list(self.modulus)})"

    # raw tuple arithmetic -------------------------------------------------
    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x % self.p for x in a)

    def mul(self, a, b):
        return _poly.mulmod(a, b, self.modulus, self.p)

    def scal(self, c, a):
        return tuple(c * x % self.p for x in a)

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        return _poly.powmod(a, e, self.modulus, self.p)

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self.pow(a, self.size - 2)

    @cached_property
    def zero(self):
        return (0,) * self.n

    @cached_property
    def one(self):
        return (1,) + (0,) * (self.n - 1)

    def const(self, c):
        return (c % self.p,) + (0,) * (self.n - 1)

    def from_index(self, i: int):
        out = []
        for _ in range(self.n):
            i, r = divmod(i, self.p)
            out.append(r)
        return tuple(out)

    def index(self, a) -> int:
        return sum(c * self.p ** k for k, c in enumerate(a))

    def elem(self, coeffs) -> "FieldElem":
        coeffs = tuple(int(c) % self.p for c in coeffs)
        if len(coeffs) != self.n:
            raise PreconditionError(f"expected {self.n} coefficients for {self!r}")
        return FieldElem(self, coeffs)

    def element(self, i: int) -> "FieldElem":
        return FieldElem(self, self.from_index(i))

    # structure ------------------------------------------------------------
    def frob(self, a, times=1):
        for _ in range(times % self.n if self.n else 0):
            a = self.pow(a, self.p)
        return a

    def trace(self, a) -> int:
        acc = a
        y = a
        for _ in range(self.n - 1):
            y = self.pow(y, self.p)
            acc = self.add(acc, y)
        if any(acc[1:]):
            raise PropertyViolation("absolute trace left the prime field")
        return acc[0]

    @cached_property
    def primitive(self):
        """Smallest-index generator of the unit group."""
        q1 = self.size - 1
        if q1 == 1:
            return self.one
        factors = primefactors(q1)
        for i in range(1, self.size):
            g = self.from_index(i)
            if all(self.pow(g, q1 // r) != self.one for r in factors):
                return g
        raise PropertyViolation("no primitive element found")

    def units(self) -> Iterator[tuple]:
        for i in range(1, self.size):
            yield self.from_index(i)


@dataclass(frozen=True)
class FieldElem:
    owner: FieldDesc
    coeffs: tuple

    def _check(self, other):
        if not isinstance(other, FieldElem):
            return self.owner.elem(self.owner.const(other))
        if other.owner != self.owner:
            raise PreconditionError("operands live in different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldElem(self.owner, self.owner.add(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return FieldElem(self.owner, self.owner.sub(self.coeffs, other.coeffs))

    def __neg__(self):
        return FieldElem(self.owner, self.owner.neg(self.coeffs))

    def __mul__(self, other):
        other = self._check(other)
        return FieldElem(self.owner, self.owner.mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e):
        return FieldElem(self.owner, self.owner.pow(self.coeffs, e))

    def inverse(self):
        return FieldElem(self.owner, self.owner.inv(self.coeffs))

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __bool__(self):
        return any(self.coeffs)

    @property
    def index(self) -> int:
        return self.owner.index(self.coeffs)

    def __repr__(self):
        return f"{self.coeffs}"


@lru_cache(maxsize=None)
def field_create(p: int, n: int) -> FieldDesc:
    if not isprime(p):
        raise PreconditionError(f"{p} is not prime")
    if n < 1:
        raise PreconditionError("extension degree must be >= 1")
    for i in range(p ** n):
        low = []
        j = i
        for _ in range(n):
            j, r = divmod(j, p)
            low.append(r)
        g = tuple(low) + (1,)
        if _is_irreducible(g, p):
            return FieldDesc(p, n, g)
    raise PropertyViolation(f"no irreducible polynomial of degree {n} over F_{p}")


def frobenius(x: FieldElem) -> FieldElem:
    return FieldElem(x.owner, x.owner.frob(x.coeffs))


def trace_absolute(x: FieldElem) -> int:
    return x.owner.trace(x.coeffs)


def _subfield_elements(target: FieldDesc, sub_degree: int) -> list:
    """The p^sub_degree elements of the subfield of `target` of that degree."""
    if target.n % sub_degree:
        raise PreconditionError(f"degree {sub_degree} does not divide {target.n}")
    qs = target.p ** sub_degree
    h = target.pow(target.primitive, (target.size - 1) // (qs - 1))
    out = [target.zero]
    y = target.one
    for _ in range(qs - 1):
        out.append(y)
        y = target.mul(y, h)
    return out


@lru_cache(maxsize=None)
def embedding_root(source: FieldDesc, target: FieldDesc):
    """Image of the source generator: the smallest-index root of the source
    modulus in the target."""
    if source.p != target.p:
        raise PreconditionError("fields of different characteristic")
    roots = []
    for y in _subfield_elements(target, source.n):
        acc = target.zero
        for c in reversed(source.modulus):
            acc = target.add(target.mul(acc, y), target.const(c))
        if not any(acc):
            roots.append(y)
    if not roots:
        raise PropertyViolation("source modulus has no root in target")
    return min(roots, key=target.index)


def embed_raw(x: tuple, source: FieldDesc, target: FieldDesc) -> tuple:
    if source == target:
        return x
    r = embedding_root(source, target)
    acc = target.zero
    for c in reversed(x):
        acc = target.add(target.mul(acc, r), target.const(c))
    return acc


def embed(x: FieldElem, target: FieldDesc) -> FieldElem:
    return FieldElem(target, embed_raw(x.coeffs, x.owner, target))


def preimage(y: FieldElem, source: FieldDesc) -> FieldElem:
    """Inverse of ``embed`` on its image."""
    for i in range(source.size):
        x = source.from_index(i)
        if embed_raw(x, source, y.owner) == y.coeffs:
            return FieldElem(source, x)
    raise PreconditionError("element does not lie in the embedded subfield")


def trace_relative(x: FieldElem, sub: FieldDesc) -> FieldElem:
    """Trace from x's field down to the subfield `sub`."""
    big = x.owner
    if big.n % sub.n:
        raise PreconditionError("not a subfield")
    q = sub.size
    acc = x.coeffs
    y = x.coeffs
    for _ in range(big.n // sub.n - 1):
        y = big.pow(y, q)
        acc = big.add(acc, y)
    return preimage(FieldElem(big, acc), sub)


def units_iter(field: FieldDesc) -> Iterator[FieldElem]:
    for c in field.units():
        yield FieldElem(field, c)
