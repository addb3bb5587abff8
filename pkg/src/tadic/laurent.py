"""Laurent polynomials f(x) = sum a_u x^u over F_q with exponents in [-e, d]."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import PreconditionError
from .finite_fields import FieldDesc, FieldElem, field_create
from .polygons import Polytope1D

_TERM = re.compile(r"^\s*a\(\s*(-?\d+)\s*\)\s*=\s*([0-9:]+)\s*$")


def parse_element(text: str, F: FieldDesc) -> tuple:
    """An F_q element from ``"7"`` (base-p index) or ``"3:1"`` (c0:c1:...)."""
    text = text.strip()
    if ":" in text:
        parts = [int(t) for t in text.split(":")]
        if len(parts) > F.n:
            raise PreconditionError(f"too many coefficients in {text!r} for {F!r}")
        return tuple(c % F.p for c in parts + [0] * (F.n - len(parts)))
    i = int(text)
    if not 0 <= i < F.size:
        raise PreconditionError(f"element index {i} out of range for {F!r}")
    return F.from_index(i)


def parse_terms(text: str, F: FieldDesc) -> dict:
    """``"a(-1)=1,a(1)=3:1"`` -> {u: F tuple}."""
    out = {}
    for tok in filter(None, (t.strip() for t in text.split(","))):
        m = _TERM.match(tok)
        if not m:
            raise PreconditionError(f"cannot parse coefficient {tok!r}; expected a(u)=value")
        out[int(m.group(1))] = parse_element(m.group(2), F)
    return out


@dataclass(frozen=True)
class LaurentPolyFq:
    delta: Polytope1D
    field: FieldDesc
    coeffs: tuple  # ((u, raw field tuple), ...) sorted by u, nonzero entries only

    def __post_init__(self):
        F = self.field
        clean = {}
        for u, c in self.coeffs:
            if isinstance(c, FieldElem):
                c = c.coeffs
            c = tuple(int(x) % F.p for x in c)
            if len(c) != F.n:
                raise PreconditionError(f"coefficient a({u}) has wrong length for {F!r}")
            if not -self.delta.e <= u <= self.delta.d:
                raise PreconditionError(f"exponent {u} outside [{self.delta}]")
            if any(c):
                clean[int(u)] = c
        for v in self.delta.vertices:
            if v not in clean:
                raise PreconditionError(f"coefficient at vertex {v} must be nonzero")
        object.__setattr__(self, "coeffs", tuple(sorted(clean.items())))

    @classmethod
    def build(cls, delta: Polytope1D, p: int, a: int, values: dict) -> "LaurentPolyFq":
        """``values`` maps exponent -> int index, coefficient tuple or FieldElem."""
        F = field_create(p, a)
        items = []
        for u, v in values.items():
            if isinstance(v, int):
                v = F.from_index(v % F.size) if a > 1 else F.const(v)
            items.append((u, v))
        return cls(delta, F, tuple(items))

    @classmethod
    def parse(cls, delta: Polytope1D, p: int, a: int, text: str) -> "LaurentPolyFq":
        F = field_create(p, a)
        return cls(delta, F, tuple(parse_terms(text, F).items()))

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def a(self) -> int:
        """ord_p(q)."""
        return self.field.n

    @property
    def q(self) -> int:
        return self.field.size

    def coeff(self, u: int) -> tuple:
        return dict(self.coeffs).get(u, self.field.zero)

    @property
    def support(self) -> tuple:
        return tuple(u for u, _ in self.coeffs)

    def frobenius_conjugate(self) -> "LaurentPolyFq":
        F = self.field
        return LaurentPolyFq(self.delta, F, tuple((u, F.pow(c, F.p)) for u, c in self.coeffs))

    def describe(self) -> str:
        terms = []
        for u, c in self.coeffs:
            val = str(c[0]) if self.field.n == 1 else ":".join(map(str, c))
            terms.append(f"a({u})={val}")
        return ",".join(terms)

    def to_json(self) -> dict:
        return {"delta": str(self.delta), "p": self.p, "a": self.a,
                "modulus": list(self.field.modulus),
                "coeffs": {str(u): list(c) for u, c in self.coeffs}}
