import json
from fractions import Fraction

import numpy as np
import pytest

from tadic.emit import overlay, polygon_rows, polygon_svg, to_csv, to_json
from tadic.errors import BudgetExceeded, PreconditionError
from tadic.polygons import ConvexPolygon, Polytope1D
from tadic.sweep import admissible_tuples, swept_positions, sweep


@pytest.mark.parametrize("e,d,p,fixed,count", [
    (0, 2, 7, None, 42),
    (1, 1, 5, None, 16),
    (0, 3, 11, {3: (1,)}, 121),
    (0, 1, 3, None, 2),
])
def test_admissible_counts(e, d, p, fixed, count):
    assert len(admissible_tuples(Polytope1D(e, d), p, fixed=fixed)) == count


def test_vertices_never_zero_and_constant_skipped():
    delta = Polytope1D(1, 2)
    assert swept_positions(delta, {}) == [u for u in delta.lattice if u != 0]
    for vals in admissible_tuples(delta, 3):
        assert 0 not in vals
        assert all(vals[v] != (0,) for v in delta.vertices)


def test_admissible_order_is_lexicographic():
    tuples = admissible_tuples(Polytope1D(0, 2), 3)
    keys = [(t[1][0], t[2][0]) for t in tuples]
    assert keys == sorted(keys)


def test_quadratic_gauss_sums_have_half_slope():
    # |g|^2 = p, so every root has p-adic order 1/2, i.e. (p-1)/2 in pi units
    res = sweep(Polytope1D(0, 2), 7)
    assert len(res.rows) == 42
    assert {r.np_slopes for r in res.rows} == {("0", "3")}
    assert res.summary()["non_generic"] == 0


def test_workers_do_not_change_order():
    delta = Polytope1D(1, 1)
    one = sweep(delta, 5, workers=1)
    two = sweep(delta, 5, workers=2)
    assert one.to_json() == two.to_json()


def test_sample_is_seeded():
    delta = Polytope1D(0, 3)
    a = sweep(delta, 5, sample=4, seed=3)
    b = sweep(delta, 5, sample=4, seed=3)
    c = sweep(delta, 5, sample=4, seed=4)
    assert [r.coeffs for r in a.rows] == [r.coeffs for r in b.rows]
    assert len(a.rows) == 4
    assert [r.coeffs for r in a.rows] != [r.coeffs for r in c.rows]
    with pytest.raises(PreconditionError):
        sweep(delta, 5, sample=-1)


def test_sweep_budget_refusal():
    with pytest.raises(BudgetExceeded):
        sweep(Polytope1D(0, 3), 11, fixed={3: 1}, m=2, budget=1000)


def test_sweep_json_is_serializable():
    res = sweep(Polytope1D(1, 1), 5, sample=3)
    blob = json.loads(to_json(res))
    assert blob["summary"]["rows"] == 3
    assert blob["delta"] == "-1..1"
    assert len(blob["rows"]) == 3


def test_to_json_handles_fractions_and_numpy():
    s = to_json({"x": Fraction(1, 3), "n": np.int64(7), "t": (1, 2)}, indent=None)
    assert json.loads(s) == {"x": "1/3", "n": 7, "t": [1, 2]}
    with pytest.raises(TypeError):
        to_json({"bad": object()})


def test_polygon_rows_and_csv():
    header, rows = polygon_rows({"A": ConvexPolygon((0, 1)), "B": ConvexPolygon((1, 1, 2))})
    assert header == ["k", "A_slope", "A_value", "B_slope", "B_value"]
    assert rows[2] == [3, "", "", 2, 4]
    text = to_csv(header, rows)
    assert text.splitlines()[1] == "1,0,0,1,1"


def test_overlay_and_svg():
    delta = Polytope1D(0, 3)
    ov = overlay(delta, 5, 1, 4, newton=ConvexPolygon((0, 2, 2, 4)))
    assert list(ov) == ["a*p_Delta", "(p-1)*a*Hodge", "NP"]
    assert ov["(p-1)*a*Hodge"].slopes == (0, Fraction(4, 3), Fraction(8, 3), 4)
    svg = polygon_svg(ov)
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    assert svg.count("<polyline") == 3
    assert ">NP</text>" in svg
