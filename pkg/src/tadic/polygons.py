"""Interval polytopes in Z and the convex polygons built from them.

All arithmetic is exact (``fractions.Fraction``); the only non-rational value
is ``INFINITY`` for degrees outside the cone.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator

from .errors import PreconditionError

log = logging.getLogger(__name__)

INFINITY = math.inf


def frac(x: Fraction) -> Fraction:
    return x - math.floor(x)


def ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


@dataclass(frozen=True)
class Polytope1D:
    """The interval [-e, d] containing 0."""

    e: int
    d: int

    def __post_init__(self):
        if self.e < 0 or self.d < 0:
            raise PreconditionError(f"endpoints must be nonnegative reaches, got e={self.e}, d={self.d}")
        if self.e + self.d < 1:
            raise PreconditionError("the interval must strictly contain {0}")

    @classmethod
    def parse(cls, text: str) -> "Polytope1D":
        """Parse ``"-e..d"`` (e.g. ``"-1..1"``, ``"0..3"``)."""
        try:
            lo, hi = text.split("..")
            lo, hi = int(lo), int(hi)
        except ValueError as exc:
            raise PreconditionError(f"cannot parse interval {text!r}; expected LO..HI") from exc
        if lo > 0 or hi < 0:
            raise PreconditionError(f"interval {text!r} must contain 0")
        return cls(-lo, hi)

    def __str__(self):
        return f"{-self.e}..{self.d}"

    @cached_property
    def D(self) -> int:
        return math.lcm(*[x for x in (self.e, self.d) if x])

    @cached_property
    def vol(self) -> int:
        return self.e + self.d

    @property
    def lattice(self) -> range:
        """Integer points of the interval itself."""
        return range(-self.e, self.d + 1)

    @property
    def vertices(self) -> tuple[int, ...]:
        """Nonzero endpoints."""
        return tuple(v for v in (self.d, -self.e) if v)

    def deg(self, a: int):
        if a == 0:
            return Fraction(0)
        side = self.d if a > 0 else self.e
        if side == 0:
            return INFINITY
        return Fraction(abs(a), side)

    def in_cone(self, a: int) -> bool:
        return self.deg(a) != INFINITY

    def members(self, max_deg=None) -> Iterator[int]:
        """Integers of the cone by |a| ascending, positive first at ties.

        Without ``max_deg`` the stream is infinite.
        """
        yield 0
        k = 1
        while True:
            emitted = False
            for a in (k, -k):
                dg = self.deg(a)
                if dg == INFINITY:
                    continue
                if max_deg is not None and dg > max_deg:
                    continue
                emitted = True
                yield a
            if max_deg is not None and not emitted:
                return
            k += 1

    def side_max(self, sign: int) -> int:
        return self.d if sign > 0 else self.e


def deg(delta: Polytope1D, a: int):
    return delta.deg(a)


def _require_member(delta: Polytope1D, a: int):
    if not delta.in_cone(a):
        raise PreconditionError(f"{a} is not in the cone of [{delta}]")


def delta_in(delta: Polytope1D, p: int, a: int, reading: str = "literal") -> int:
    """The correction bit subtracted from ceil((p-1) deg a).

    ``reading="literal"`` compares deg(i) with {deg(a)}; ``"fractional"``
    compares {deg(i)} instead. A witness must satisfy |i| < side endpoint
    under either reading (the conditions are periodic in i), so both scan
    the same finite range.
    """
    _require_member(delta, a)
    if a == 0:
        return 0
    fa = frac(delta.deg(a))
    sign = 1 if a > 0 else -1
    for k in range(1, delta.side_max(sign)):
        i = sign * k
        di = delta.deg(i)
        lhs = di if reading == "literal" else frac(di)
        if lhs < fa and frac(delta.deg(p * i)) == fa:
            return 1
    return 0


def varpi(delta: Polytope1D, p: int, a: int) -> int:
    _require_member(delta, a)
    return ceil((p - 1) * delta.deg(a)) - delta_in(delta, p, a)


@dataclass(frozen=True)
class ConvexPolygon:
    """Piecewise-linear convex function on [0, len(slopes)] with value 0 at 0.

    ``slopes[k]`` is the slope on [k, k+1].
    """

    slopes: tuple = ()
    _values: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        slopes = tuple(Fraction(s) for s in self.slopes)
        for a, b in zip(slopes, slopes[1:]):
            if b < a:
                raise PreconditionError(f"slopes must be non-decreasing: {a} > {b}")
        object.__setattr__(self, "slopes", slopes)
        vals = [Fraction(0)]
        for s in slopes:
            vals.append(vals[-1] + s)
        object.__setattr__(self, "_values", tuple(vals))

    def __len__(self):
        return len(self.slopes)

    def value(self, k: int) -> Fraction:
        if not 0 <= k <= len(self.slopes):
            raise PreconditionError(f"polygon defined on [0, {len(self.slopes)}], asked for {k}")
        return self._values[k]

    def values(self) -> tuple:
        return self._values

    def prefix(self, n: int) -> "ConvexPolygon":
        return ConvexPolygon(self.slopes[:n])

    def scale(self, c) -> "ConvexPolygon":
        return ConvexPolygon(tuple(c * s for s in self.slopes))

    def to_json(self) -> dict:
        return {"slopes": [str(s) for s in self.slopes]}

    @classmethod
    def from_json(cls, obj) -> "ConvexPolygon":
        return cls(tuple(Fraction(s) for s in obj["slopes"]))

    def rows(self):
        """(k, slope on [k-1, k], value at k) for k = 1..len."""
        return [(k, self.slopes[k - 1], self._values[k]) for k in range(1, len(self.slopes) + 1)]

    def __str__(self):
        return "(" + ", ".join(str(s) for s in self.slopes) + ")"


def _sorted_prefix(delta: Polytope1D, key, length: int, label: str) -> list:
    if length < 1:
        raise PreconditionError("length must be >= 1")
    # every member of degree > length + 3 has key > any of the first `length`
    horizon = Fraction(length + 3)
    natural = [key(a) for a in delta.members(max_deg=horizon)]
    ordered = sorted(natural)
    if natural[: length] != ordered[: length]:
        log.debug("%s: |a|-order differs from sorted order for [%s]", label, delta)
    return ordered[:length]


def hodge_polygon(delta: Polytope1D, length: int) -> ConvexPolygon:
    return ConvexPolygon(tuple(_sorted_prefix(delta, delta.deg, length, "hodge")))


def arithmetic_polygon(delta: Polytope1D, p: int, length: int) -> ConvexPolygon:
    return ConvexPolygon(tuple(_sorted_prefix(delta, lambda a: varpi(delta, p, a), length, "arithmetic")))


def newton_polygon_from_points(points: Iterable) -> ConvexPolygon:
    """Lower convex hull of (x, y) points; points with infinite y are skipped."""
    pts = [(int(x), Fraction(y)) for x, y in points if y != INFINITY]
    if not pts:
        raise PreconditionError("no finite points")
    pts.sort()
    if pts[0][0] != 0:
        raise PreconditionError("points must include x = 0")
    for (x0, _), (x1, _) in zip(pts, pts[1:]):
        if x0 == x1:
            raise PreconditionError("x-values must be distinct")
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it lies on or above the chord hull[-2] -> pt
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    slopes = []
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        s = (y1 - y0) / (x1 - x0)
        slopes.extend([s] * (x1 - x0))
    return ConvexPolygon(tuple(slopes))


def turning_points(P: ConvexPolygon) -> list[int]:
    s = P.slopes
    return [k for k in range(1, len(s)) if s[k - 1] < s[k]]


@dataclass(frozen=True)
class PolygonComparison:
    lies_above: bool
    equal: bool
    first_divergence: int | None

    def to_json(self):
        return {"lies_above": self.lies_above, "equal": self.equal, "first_divergence": self.first_divergence}


def polygon_compare(P: ConvexPolygon, Q: ConvexPolygon, range_: int) -> PolygonComparison:
    """Compare P and Q at the integers 0..range_.

    ``first_divergence`` is the last integer up to which the two agree before
    their values first differ (the point where the polygons split).
    """
    pv = [P.value(k) for k in range(range_ + 1)]
    qv = [Q.value(k) for k in range(range_ + 1)]
    above = all(a >= b for a, b in zip(pv, qv))
    diff = [k for k in range(range_ + 1) if pv[k] != qv[k]]
    if not diff:
        return PolygonComparison(above, True, None)
    return PolygonComparison(above, False, diff[0] - 1)


def slope_recurrence_holds(delta: Polytope1D, p: int, periods: int = 3) -> bool:
    """Check s(i + j Vol) = j (p-1) + s(i) on the first `periods` periods."""
    vol = delta.vol
    s = arithmetic_polygon(delta, p, vol * periods).slopes
    return all(s[i + j * vol] == j * (p - 1) + s[i] for j in range(periods) for i in range(vol))
