"""Truncated Dwork operator over GR(p^N, a)[[pi^(1/D)]].

Basis vectors are e_i = pi^deg(i) x^i for i in M(Delta). If
E_f(x) = sum_n gamma_n x^n then one application of the operator sends e_j to
sum_i sigma^-1(gamma_{pi-j}) pi^(deg j - deg i) e_i, so its matrix is
A_ij = sigma^-1(gamma_{pi-j}) pi^(deg j - deg i). Being semi-linear, the
b-fold iterate has matrix A sigma^-1(A) ... sigma^-(b-1)(A).

Truncation. Row i of A has pi-order >= (p-1) deg(i). Every coefficient of
the characteristic series, and every trace of a power, is a sum of products
in which each basis index occurs as a row index, so modulo pi^(>X) only the
indices with (p-1) deg(i) <= X matter. The matrix on that finite basis is
therefore exact modulo pi^(>X) without any refinement argument; the
stability check in ``fredholm_stability`` is kept as a sanity test.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from . import series
from .errors import PrecisionError, PreconditionError, PropertyViolation, TruncationError
from .galois import GaloisRing, hensel_modulus
from .hasse import genericity_turning_points, slope_set
from .laurent import LaurentPolyFq
from .polygons import (INFINITY, ConvexPolygon, Polytope1D, arithmetic_polygon, ceil,
                       newton_polygon_from_points)
from .series import TSeries, pi_of_T, vp, vp_factorial

log = logging.getLogger(__name__)


class PiSeries:
    """Truncated series sum c_k pi^(k/D), k in [0, cutoff], c_k in a Galois ring."""

    __slots__ = ("ring", "D", "cutoff", "coeffs")

    def __init__(self, ring: GaloisRing, D: int, cutoff: int, coeffs=None):
        self.ring = ring
        self.D = D
        self.cutoff = cutoff
        clean = {}
        for k, c in (coeffs or {}).items():
            if k < 0:
                raise PropertyViolation(f"negative pi-exponent {k}/{D}")
            if k <= cutoff and any(c):
                clean[k] = c
        self.coeffs = clean

    def _new(self, coeffs):
        return PiSeries(self.ring, self.D, self.cutoff, coeffs)

    def zero(self):
        return self._new({})

    def one(self):
        return self._new({0: self.ring.one})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        R = self.ring
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = R.add(out[k], c) if k in out else c
        return self._new(out)

    def __neg__(self):
        return self._new({k: self.ring.neg(c) for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        R = self.ring
        cut = self.cutoff
        out = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = k1 + k2
                if k <= cut:
                    t = R.mul(c1, c2)
                    out[k] = R.add(out[k], t) if k in out else t
        return self._new(out)

    def scale(self, n: int):
        return self._new({k: self.ring.scal(n, c) for k, c in self.coeffs.items()})

    def shift(self, k0: int):
        """Multiply by pi^(k0/D); k0 may be negative if no term drops below 0."""
        return self._new({k + k0: c for k, c in self.coeffs.items()})

    def frob_inv(self):
        R = self.ring
        return self._new({k: R.frob_inv(c) for k, c in self.coeffs.items()})

    def coefficient(self, k: int):
        return self.coeffs.get(k, self.ring.zero)

    def order(self, modulus=None):
        """pi-order of the reduction mod `modulus` (default p^N); INFINITY
        when zero up to the cutoff."""
        modulus = modulus or self.ring.pN
        ks = [k for k, c in self.coeffs.items() if any(x % modulus for x in c)]
        return Fraction(min(ks), self.D) if ks else INFINITY

    def fractional_vanishes(self) -> bool:
        return all(k % self.D == 0 for k in self.coeffs)

    def to_json(self) -> dict:
        return {"D": self.D, "cutoff": str(Fraction(self.cutoff, self.D)),
                "terms": {str(Fraction(k, self.D)): list(c) for k, c in sorted(self.coeffs.items())}}

    def __repr__(self):
        return f"PiSeries({self.to_json()['terms']})"


def ef_gamma(f: LaurentPolyFq, cutoff: int, N: int, indices=None) -> dict:
    """gamma_n for E_f(x) = prod_u E(pi a_u^ x^u) = sum_n gamma_n x^n, modulo
    pi^(>cutoff) and p^N. Keys are x-exponents; pi-exponents are stored as
    numerators over D."""
    delta = f.delta
    D = delta.D
    R = hensel_modulus(f.p, N, f.a)
    if indices is not None:
        for i in indices:
            if delta.in_cone(i) and ceil(delta.deg(i)) > cutoff:
                raise TruncationError(f"gamma_{i} has pi-order >= {ceil(delta.deg(i))} > cutoff {cutoff}",
                                      minimal_bound=ceil(delta.deg(i)))
    lam = series.artin_hasse(f.p, cutoff + 1).reduce(f.p, N).coeffs
    acc = {0: {0: R.one}}
    for u, c in f.coeffs:
        w = R.teich(c)
        single = []
        wk = R.one
        for k in range(cutoff + 1):
            if lam[k] % R.pN:
                single.append((k, R.scal(lam[k], wk)))
            wk = R.mul(wk, w)
        new = {}
        for i, ser in acc.items():
            for e, c0 in ser.items():
                for k, t in single:
                    if e + k > cutoff:
                        break
                    slot = new.setdefault(i + u * k, {})
                    v = R.mul(c0, t)
                    slot[e + k] = R.add(slot[e + k], v) if e + k in slot else v
        acc = new
    return {i: PiSeries(R, D, cutoff * D, {e * D: c for e, c in ser.items()}) for i, ser in acc.items()}


@dataclass(frozen=True)
class DworkBasis:
    delta: Polytope1D
    bound: Fraction
    members: tuple

    @classmethod
    def build(cls, delta: Polytope1D, bound) -> "DworkBasis":
        bound = Fraction(bound)
        return cls(delta, bound, tuple(delta.members(max_deg=bound)))

    def weight(self, i: int) -> int:
        """Numerator of deg(i) over D."""
        w = self.delta.deg(i) * self.delta.D
        return int(w)

    def __len__(self):
        return len(self.members)


@dataclass
class DworkMatrix:
    basis: DworkBasis
    entries: list  # entries[r][c]: PiSeries
    p: int
    a: int
    N: int
    pi_cutoff: Fraction
    single_step: list = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return len(self.basis)

    @property
    def ring(self) -> GaloisRing:
        return self.entries[0][0].ring

    def zero_series(self) -> PiSeries:
        e = self.entries[0][0]
        return e.zero()


def _matmul(X, Y):
    n = len(X)
    out = []
    for r in range(n):
        row = []
        for c in range(n):
            acc = X[r][0] * Y[0][c]
            for k in range(1, n):
                acc = acc + X[r][k] * Y[k][c]
            row.append(acc)
        out.append(row)
    return out


def minimal_deg_bound(p: int, pi_cutoff) -> Fraction:
    return Fraction(pi_cutoff) / (p - 1)


def psi_matrix(f: LaurentPolyFq, N: int, pi_cutoff, deg_bound=None) -> DworkMatrix:
    """Matrix of the b-fold operator, exact modulo (p^N, pi^(>pi_cutoff))."""
    delta, p = f.delta, f.p
    D = delta.D
    X = Fraction(pi_cutoff)
    if X < 0:
        raise PreconditionError("pi-cutoff must be >= 0")
    Bmin = minimal_deg_bound(p, X)
    B = Bmin if deg_bound is None else Fraction(deg_bound)
    if B < Bmin:
        raise TruncationError(f"degree bound {B} drops basis rows of pi-order <= {X}; need >= {Bmin}",
                              minimal_bound=Bmin)
    basis = DworkBasis.build(delta, B)
    cut = int(X * D)
    gamma_cut = int(X + max(delta.deg(i) for i in basis.members))
    gamma = ef_gamma(f, gamma_cut, N)
    R = hensel_modulus(p, N, f.a)
    empty = PiSeries(R, D, cut)
    A = []
    for i in basis.members:
        row = []
        for j in basis.members:
            g = gamma.get(p * i - j)
            if g is None:
                row.append(empty)
                continue
            row.append(PiSeries(R, D, cut, g.frob_inv().shift(basis.weight(j) - basis.weight(i)).coeffs))
        A.append(row)
    _check_entry_orders(delta, p, basis, A, gamma)
    P = A
    Ak = A
    for _ in range(1, f.a):
        Ak = [[e.frob_inv() for e in row] for row in Ak]
        P = _matmul(P, Ak)
    for r, i in enumerate(basis.members):
        for e in P[r]:
            if e.order() < (p - 1) * delta.deg(i):
                raise PropertyViolation(f"row {i} of the iterate has order below (p-1)deg(i)")
    return DworkMatrix(basis, P, p, f.a, N, X, single_step=A)


def _check_entry_orders(delta, p, basis, A, gamma):
    """ord(gamma_{pi-j}) >= ceil(deg(pi-j)), read back from the weighted entries."""
    for r, i in enumerate(basis.members):
        for c, j in enumerate(basis.members):
            e = A[r][c]
            if e.is_zero():
                continue
            n = p * i - j
            if not delta.in_cone(n):
                raise PropertyViolation(f"gamma_{n} outside the cone is nonzero")
            if e.order() + delta.deg(i) - delta.deg(j) < ceil(delta.deg(n)):
                raise PropertyViolation(f"entry ({i},{j}) violates the order estimate")


def _divide(s: PiSeries, k: int, prec: int):
    """s / k where s is known mod p^prec; returns (quotient, new precision)."""
    R = s.ring
    p = R.p
    v = vp(k, p)
    u = k // p ** v
    uinv = pow(u, -1, R.pN)
    if v == 0:
        return s.scale(uinv), prec
    if prec < v:
        raise PrecisionError(f"dividing by {k} needs {v} p-adic digits, only {prec} known")
    mod = p ** prec
    out = {}
    for key, c in s.coeffs.items():
        cc = []
        for x in c:
            x %= mod
            if x % p ** v:
                raise PropertyViolation(f"Newton identity: coefficient not divisible by {p}^{v}")
            cc.append(x // p ** v * uinv % R.pN)
        out[key] = tuple(cc)
    return s._new(out), prec - v


@dataclass(frozen=True)
class FredholmCoeff:
    k: int
    value: PiSeries
    p_precision: int  # correct modulo p^p_precision
    pi_cutoff: Fraction  # and modulo pi^(>pi_cutoff)

    def order(self, unit: bool = False):
        p = self.value.ring.p
        if self.p_precision <= 0:
            raise PrecisionError(f"c_{self.k} has no trustworthy p-adic digits")
        return self.value.order(p if unit else p ** self.p_precision)

    def leading(self, at):
        """Coefficient at pi^at, reduced into the residue field."""
        k = at * self.value.D
        if k != int(k):
            raise PreconditionError("exponent is off the pi^(1/D) grid")
        return self.value.ring.reduce(self.value.coefficient(int(k)))


def power_traces(Mx: DworkMatrix, upto: int) -> list:
    """tr(Mx^i) for 1 <= i <= upto."""
    out = []
    P = Mx.entries
    for i in range(1, upto + 1):
        if i > 1:
            P = _matmul(P, Mx.entries)
        t = P[0][0]
        for r in range(1, Mx.size):
            t = t + P[r][r]
        out.append(t)
    return out


def fredholm_coeffs(Mx: DworkMatrix, upto: int) -> list:
    """c_1..c_upto with det(1 - Mx s) = sum (-1)^k c_k s^k, by Newton's
    identities k c_k = sum_i (-1)^(i-1) c_(k-i) tr(Mx^i)."""
    if upto > Mx.size:
        raise PreconditionError(f"upto = {upto} exceeds the basis size {Mx.size}")
    traces = power_traces(Mx, upto)
    N = Mx.N
    c = [Mx.entries[0][0].one()]
    prec = [N]
    out = []
    for k in range(1, upto + 1):
        acc = Mx.zero_series()
        pk = N
        for i in range(1, k + 1):
            term = c[k - i] * traces[i - 1]
            acc = acc + term if i % 2 == 1 else acc - term
            pk = min(pk, prec[k - i])
        val, pk = _divide(acc, k, pk)
        c.append(val)
        prec.append(pk)
        out.append(FredholmCoeff(k, val, pk, Mx.pi_cutoff))
    return out


def fredholm_reserve(upto: int, p: int) -> int:
    return vp_factorial(upto, p)


def fredholm_polygon(coeffs: list, unit: bool = True) -> ConvexPolygon:
    pts = [(0, 0)] + [(c.k, c.order(unit)) for c in coeffs]
    return newton_polygon_from_points(pts)


def fredholm_stability(f: LaurentPolyFq, upto: int, N: int, pi_cutoff) -> bool:
    """c_1..c_upto agree when the basis bound grows by one degree unit."""
    M1 = psi_matrix(f, N, pi_cutoff)
    M2 = psi_matrix(f, N, pi_cutoff, deg_bound=M1.basis.bound + 1)
    n = min(upto, M1.size)
    for c1, c2 in zip(fredholm_coeffs(M1, n), fredholm_coeffs(M2, n)):
        mod = f.p ** min(c1.p_precision, c2.p_precision)
        if (c1.value - c2.value).order(mod) != INFINITY:
            return False
    return True


def _as_Tseries(t: PiSeries, M: int, N: int) -> TSeries:
    R = t.ring
    D = t.D
    if not t.fractional_vanishes():
        raise PropertyViolation("trace has nonzero fractional pi-exponent components")
    coeffs = [0] * M
    for k, c in t.coeffs.items():
        if not R.is_scalar(c):
            raise PropertyViolation("trace coefficient is not in Z_p")
        if k // D < M:
            coeffs[k // D] = c[0]
    pi_T = pi_of_T(R.p, M, N)
    return TSeries(R.p, N, tuple(coeffs)).compose(pi_T)


def verify_trace_formula(f: LaurentPolyFq, k: int, N: int = 2, M: int = 6, budget=None) -> dict:
    """Compare tr((Psi^b)^k) with (q^k - 1)^-1 S_f(k, T) mod (p^N, T^M)."""
    from .expsums import sum_S_Tseries

    if k < 1 or M < 1:
        raise PreconditionError("k and M must be >= 1")
    Mx = psi_matrix(f, N, M - 1)
    tr = power_traces(Mx, k)[-1]
    frac_ok = tr.fractional_vanishes()
    lhs = _as_Tseries(tr, M, N)
    S = sum_S_Tseries(f, k, N, M, budget)
    mod = f.p ** N
    inv = pow((f.q ** k - 1) % mod, -1, mod)
    rhs = TSeries(f.p, N, tuple(inv * c for c in S.coeffs))
    diff = lhs - rhs
    return {"k": k, "N": N, "M": M, "basis_size": Mx.size,
            "fractional_components_vanish": frac_ok,
            "matrix_side": lhs.to_json()["coeffs"], "sum_side": rhs.to_json()["coeffs"],
            "residual": diff.to_json()["coeffs"], "ok": not any(diff.coeffs)}


def _det(mat: list, one: PiSeries) -> PiSeries:
    n = len(mat)
    if n > 8:
        raise PreconditionError("minor too large for expansion")
    total = one.zero()
    for perm in itertools.permutations(range(n)):
        term = one
        for r, c in enumerate(perm):
            term = term * mat[r][c]
            if term.is_zero():
                break
        inv = sum(1 for x in range(n) for y in range(x + 1, n) if perm[x] > perm[y])
        total = total - term if inv % 2 else total + term
    return total


def minor_leading(f: LaurentPolyFq, m: int, N: int = 1) -> dict:
    """det(gamma_{pi-j}) over A_m: its pi-order and the reduction of
    det / pi^(p_Delta(m)) mod pi."""
    delta, p = f.delta, f.p
    A = slope_set(delta, p, m).members
    pm = int(arithmetic_polygon(delta, p, m).value(m))
    gamma = ef_gamma(f, pm, N)
    R = hensel_modulus(p, N, f.a)
    one = PiSeries(R, delta.D, pm * delta.D, {0: R.one})
    empty = one.zero()
    mat = [[gamma.get(p * i - j, empty) for j in A] for i in A]
    det = _det(mat, one)
    order = det.order()
    if order < pm:
        raise PropertyViolation(f"minor order {order} is below p_Delta({m}) = {pm}")
    lead = R.reduce(det.coefficient(pm * delta.D))
    return {"m": m, "members": list(A), "p_delta_m": pm,
            "order": None if order == INFINITY else str(order),
            "order_exceeds_cutoff": order == INFINITY,
            "leading": lead, "leading_nonzero": any(lead)}


@dataclass
class Certificate:
    granted: bool
    checks: list
    reason: str = ""

    def to_json(self) -> dict:
        return {"granted": self.granted, "reason": self.reason, "checks": self.checks}


def certify_all_m(f: LaurentPolyFq, N: int = 1, deg_bound=None) -> Certificate:
    """Check, at every turning point m < Vol, that c_m of the b-fold operator
    has pi-order exactly a p_Delta(m) with a unit leading coefficient."""
    delta, p, a = f.delta, f.p, f.a
    if p <= 3 * delta.D:
        raise PreconditionError(f"certification needs p > 3D = {3 * delta.D}")
    ms = genericity_turning_points(delta, p)
    if not ms:
        return Certificate(True, [], "no turning points below Vol")
    top = max(ms)
    P = arithmetic_polygon(delta, p, top)
    X = a * P.value(top)
    Nw = N + fredholm_reserve(top, p)
    Mx = psi_matrix(f, Nw, X, deg_bound)
    coeffs = fredholm_coeffs(Mx, top)
    checks = []
    granted = True
    reason = ""
    for m in ms:
        c = coeffs[m - 1]
        target = a * P.value(m)
        if c.p_precision < 1:
            raise PrecisionError(f"c_{m} carries no p-adic digit; raise the p-precision")
        low = c.order()
        if low < target:
            raise PropertyViolation(f"ord c_{m} = {low} below a*p_Delta({m}) = {target}")
        lead = c.leading(target)
        unit = any(lead)
        checks.append({"m": m, "target_order": str(target), "p_precision": c.p_precision,
                       "leading": list(lead), "unit": unit})
        if not unit and granted:
            granted = False
            reason = f"leading coefficient of c_{m} at pi^{target} is not a unit"
    return Certificate(granted, checks, reason or "all turning points certified")
