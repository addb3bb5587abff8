"""Galois rings GR(p^N, n) = W(F_{p^n}) / p^N.

The ring is (Z/p^N)[x]/(G) where G lifts the finite-field modulus and its
root xi is its own Teichmueller lift (xi^{p^n} = xi). With that choice the
Frobenius is the substitution xi -> xi^p, so no normal basis is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from . import _poly
from .errors import PreconditionError, PropertyViolation
from .finite_fields import FieldDesc, FieldElem, field_create


@dataclass(frozen=True)
class GaloisRing:
    p: int
    N: int
    n: int
    modulus: tuple

    @cached_property
    def pN(self) -> int:
        return self.p ** self.N

    @cached_property
    def q(self) -> int:
        return self.p ** self.n

    @cached_property
    def residue_field(self) -> FieldDesc:
        return field_create(self.p, self.n)

    def __repr__(self):
        return f"GR({self.p}^{self.N}, {self.n})"

    # raw tuple arithmetic -------------------------------------------------
    @cached_property
    def zero(self):
        return (0,) * self.n

    @cached_property
    def one(self):
        return (1 % self.pN,) + (0,) * (self.n - 1)

    def const(self, c):
        return (c % self.pN,) + (0,) * (self.n - 1)

    def add(self, a, b):
        m = self.pN
        return tuple((x + y) % m for x, y in zip(a, b))

    def sub(self, a, b):
        m = self.pN
        return tuple((x - y) % m for x, y in zip(a, b))

    def neg(self, a):
        m = self.pN
        return tuple(-x % m for x in a)

    def scal(self, c, a):
        m = self.pN
        return tuple(c * x % m for x in a)

    def mul(self, a, b):
        if self.n == 1:
            return (a[0] * b[0] % self.pN,)
        return _poly.mulmod(a, b, self.modulus, self.pN)

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        return _poly.powmod(a, e, self.modulus, self.pN)

    def is_unit(self, a) -> bool:
        return any(c % self.p for c in a)

    def inv(self, a):
        """Inverse of a unit: Newton iteration from the residue-field inverse."""
        if not self.is_unit(a):
            raise ZeroDivisionError(f"{a} is not a unit of {self!r}")
        F = self.residue_field
        y = self.lift(F.inv(self.reduce(a)))
        two = self.const(2)
        prec = 1
        while prec < self.N:
            y = self.mul(y, self.sub(two, self.mul(a, y)))
            prec *= 2
        return y

    def reduce(self, a):
        return tuple(c % self.p for c in a)

    def lift(self, xbar):
        return tuple(int(c) % self.pN for c in xbar)

    def is_scalar(self, a) -> bool:
        return not any(a[1:])

    def elem(self, coeffs) -> "GRElem":
        coeffs = tuple(int(c) % self.pN for c in coeffs)
        if len(coeffs) != self.n:
            raise PreconditionError(f"expected {self.n} coefficients for {self!r}")
        return GRElem(self, coeffs)

    # Frobenius and trace ----------------------------------------------------
    @cached_property
    def _frob_cols(self):
        xi = (0, 1) + (0,) * (self.n - 2) if self.n > 1 else self.zero
        xp = self.pow(xi, self.p) if self.n > 1 else self.zero
        cols = [self.one]
        for _ in range(1, self.n):
            cols.append(self.mul(cols[-1], xp))
        return cols

    def _apply(self, cols, a):
        m = self.pN
        out = [0] * self.n
        for c, col in zip(a, cols):
            if c:
                for k, v in enumerate(col):
                    out[k] += c * v
        return tuple(x % m for x in out)

    def frob(self, a):
        if self.n == 1:
            return a
        return self._apply(self._frob_cols, a)

    @cached_property
    def _frob_inv_cols(self):
        cols = [tuple(1 if k == i else 0 for k in range(self.n)) for i in range(self.n)]
        for _ in range(self.n - 1):
            cols = [self.frob(c) for c in cols]
        return cols

    def frob_inv(self, a):
        if self.n == 1:
            return a
        return self._apply(self._frob_inv_cols, a)

    @cached_property
    def trace_vector(self) -> tuple:
        """Tr(xi^i) for i < n."""
        out = []
        for i in range(self.n):
            e = tuple(1 if k == i else 0 for k in range(self.n))
            acc = e
            y = e
            for _ in range(self.n - 1):
                y = self.frob(y)
                acc = self.add(acc, y)
            if not self.is_scalar(acc):
                raise PropertyViolation("trace is not a scalar; modulus is not Teichmueller-compatible")
            out.append(acc[0])
        return tuple(out)

    def trace(self, a) -> int:
        return sum(x * t for x, t in zip(a, self.trace_vector)) % self.pN

    def teich(self, xbar):
        """Teichmueller lift of a residue-field tuple."""
        y = self.lift(xbar)
        if not any(y):
            return y
        for _ in range(self.N - 1):
            y = self.pow(y, self.q)
        if self.pow(y, self.q) != y:
            raise PropertyViolation("Teichmueller iteration did not reach a fixed point")
        return y


@dataclass(frozen=True)
class GRElem:
    owner: GaloisRing
    coeffs: tuple

    def _check(self, other):
        if not isinstance(other, GRElem):
            return GRElem(self.owner, self.owner.const(other))
        if other.owner != self.owner:
            raise PreconditionError("operands live in different Galois rings")
        return other

    def __add__(self, other):
        return GRElem(self.owner, self.owner.add(self.coeffs, self._check(other).coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        return GRElem(self.owner, self.owner.sub(self.coeffs, self._check(other).coeffs))

    def __neg__(self):
        return GRElem(self.owner, self.owner.neg(self.coeffs))

    def __mul__(self, other):
        return GRElem(self.owner, self.owner.mul(self.coeffs, self._check(other).coeffs))

    __rmul__ = __mul__

    def __pow__(self, e):
        return GRElem(self.owner, self.owner.pow(self.coeffs, e))

    def residue(self) -> FieldElem:
        return FieldElem(self.owner.residue_field, self.owner.reduce(self.coeffs))

    def __repr__(self):
        return f"{self.coeffs}"


@lru_cache(maxsize=None)
def hensel_modulus(p: int, N: int, n: int) -> GaloisRing:
    F = field_create(p, n)
    g = F.modulus
    if N == 1 or n == 1:
        # the root of x (n == 1) is 0, already its own lift
        return GaloisRing(p, N, n, g)
    mod = p ** N
    q = p ** n
    x = (0, 1) + (0,) * (n - 2)
    xi = x
    for _ in range(N - 1):
        xi = _poly.powmod(xi, q, g, mod)
    conj = [xi]
    for _ in range(n - 1):
        conj.append(_poly.powmod(conj[-1], p, g, mod))
    # prod (X - c) with coefficients in (Z/p^N)[x]/(g)
    zero = (0,) * n
    one = (1,) + (0,) * (n - 1)
    poly = [one]
    for c in conj:
        negc = tuple(-v % mod for v in c)
        new = [zero] * (len(poly) + 1)
        for k, coef in enumerate(poly):
            new[k + 1] = tuple((a + b) % mod for a, b in zip(new[k + 1], coef))
            prod = _poly.mulmod(coef, negc, g, mod)
            new[k] = tuple((a + b) % mod for a, b in zip(new[k], prod))
        poly = new
    if any(any(c[1:]) for c in poly):
        raise PropertyViolation("lifted modulus has non-scalar coefficients")
    G = tuple(c[0] for c in poly)
    R = GaloisRing(p, N, n, G)
    xi_new = (0, 1) + (0,) * (n - 2)
    if R.pow(xi_new, q) != xi_new:
        raise PropertyViolation("lifted root is not Teichmueller")
    if tuple(c % p for c in G) != g:
        raise PropertyViolation("lifted modulus does not reduce to the field modulus")
    return R


def teichmuller(xbar: FieldElem, R: GaloisRing) -> GRElem:
    if xbar.owner != R.residue_field:
        raise PreconditionError("element does not live in the residue field of the ring")
    return GRElem(R, R.teich(xbar.coeffs))


def gr_frobenius(z: GRElem) -> GRElem:
    return GRElem(z.owner, z.owner.frob(z.coeffs))


def gr_trace(z: GRElem) -> int:
    return z.owner.trace(z.coeffs)
