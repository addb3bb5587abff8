"""Censuses over coefficient tuples: Hasse product versus brute-force NP."""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import PreconditionError
from .expsums import _check_budget, l_function_cost, verify_main
from .finite_fields import field_create
from .laurent import LaurentPolyFq
from .polygons import Polytope1D


def swept_positions(delta: Polytope1D, fixed: dict) -> list:
    """Nonconstant exponents not pinned by ``fixed``; the constant term stays 0."""
    return [u for u in delta.lattice if u != 0 and u not in fixed]


def admissible_tuples(delta: Polytope1D, p: int, a: int = 1, fixed=None) -> list:
    """All coefficient assignments {u: F_q tuple} with nonzero vertex entries,
    in lexicographic order of the element indices over ascending u."""
    F = field_create(p, a)
    fixed = dict(fixed or {})
    pos = swept_positions(delta, fixed)
    choices = []
    for u in pos:
        rng = range(1, F.size) if u in delta.vertices else range(F.size)
        choices.append([F.from_index(i) for i in rng])
    out = []
    for combo in itertools.product(*choices):
        vals = dict(fixed)
        vals.update(zip(pos, combo))
        out.append(vals)
    return out


@dataclass(frozen=True)
class SweepRow:
    coeffs: str
    hasse_value: tuple
    hasse_nonzero: bool
    np_slopes: tuple
    equal: bool
    consistent: object  # bool, or None when p <= 3D

    def to_json(self) -> dict:
        return {"coeffs": self.coeffs, "hasse_value": list(self.hasse_value),
                "hasse_nonzero": self.hasse_nonzero, "np_slopes": list(self.np_slopes),
                "equal": self.equal, "consistent": self.consistent}


@dataclass
class SweepResult:
    p: int
    a: int
    m: int
    delta: Polytope1D
    rows: list = field(default_factory=list)

    @property
    def generic(self) -> list:
        return [r for r in self.rows if r.hasse_nonzero]

    @property
    def non_generic(self) -> list:
        return [r for r in self.rows if not r.hasse_nonzero]

    @property
    def inconsistent(self) -> list:
        return [r for r in self.rows if r.consistent is False]

    def summary(self) -> dict:
        return {"rows": len(self.rows), "generic": len(self.generic),
                "non_generic": len(self.non_generic),
                "non_generic_f": [r.coeffs for r in self.non_generic],
                "inconsistent": [r.coeffs for r in self.inconsistent]}

    def to_json(self) -> dict:
        return {"p": self.p, "a": self.a, "m": self.m, "delta": str(self.delta),
                "summary": self.summary(), "rows": [r.to_json() for r in self.rows]}


def _run_one(args) -> SweepRow:
    delta, p, a, m, values, budget, slack = args
    f = LaurentPolyFq.build(delta, p, a, values)
    rep = verify_main(f, m, budget=budget, slack=slack)
    return SweepRow(f.describe(), tuple(rep["hasse_value"]), rep["hasse_nonzero"],
                    tuple(rep["np_L"]), rep["equal"], rep["consistent"])


def sweep(delta: Polytope1D, p: int, a: int = 1, m: int = 1, fixed=None, sample=None,
          seed: int = 0, workers: int = 1, budget=None, slack: int = 2) -> SweepResult:
    """Run verify_main over all (or ``sample`` seeded random) admissible f.

    Rows come back in input order whatever the worker count.
    """
    F = field_create(p, a)
    fixed = {u: (F.from_index(v) if isinstance(v, int) else tuple(v)) for u, v in (fixed or {}).items()}
    tuples = admissible_tuples(delta, p, a, fixed)
    if sample is not None:
        if sample < 0:
            raise PreconditionError("sample size must be >= 0")
        if sample < len(tuples):
            idx = sorted(random.Random(seed).sample(range(len(tuples)), sample))
            tuples = [tuples[i] for i in idx]
    per_row = l_function_cost(F.size, p ** (m - 1) * delta.vol + slack)
    _check_budget(per_row * len(tuples), budget, f"{len(tuples)} tuples x {per_row} points")
    jobs = [(delta, p, a, m, t, per_row, slack) for t in tuples]
    result = SweepResult(p, a, m, delta)
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            result.rows = list(ex.map(_run_one, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        result.rows = [_run_one(j) for j in jobs]
    return result
