import csv
import io
import random
from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from trackmech.errors import ConfigError
from trackmech.mission import EXTINGUISHERS, FIRE_TESTS
from trackmech.sweep import (
    CSV_COLUMNS,
    DesignSpace,
    evaluate_row,
    grid_values,
    refine,
    sweep,
)
from trackmech.traction import evaluate


@pytest.fixture(scope="module")
def mission_space(geom, state30):
    return dict(
        geometry=geom,
        state=state30,
        extinguisher=EXTINGUISHERS["MFZL10-ABC"],
        fire_tests=(FIRE_TESTS["A"], FIRE_TESTS["B"]),
    )


def test_grid_values_inclusive():
    assert grid_values(0.1, 0.3, 0.1) == pytest.approx((0.1, 0.2, 0.3))
    assert grid_values(1.0, 1.0, 0.5) == (1.0,)
    with pytest.raises(ConfigError):
        grid_values(1.0, 0.0, 0.1)
    with pytest.raises(ConfigError):
        grid_values(0.0, 1.0, 0.0)


def test_single_point_is_reference(steer_soil, mission_space):
    space = DesignSpace(**mission_space)
    res = sweep(space, steer_soil)
    assert res.total_count == res.feasible_count == 1
    assert res.best.row.objective == pytest.approx(5.59, abs=0.005)
    ref = evaluate(mission_space["geometry"], steer_soil, mission_space["state"])
    assert res.best.report == ref
    assert res.best.feasibility.passed


def test_heavy_vehicles_all_fail_slope(steer_soil, mission_space):
    space = DesignSpace(ranges={"m": (1e4, 1e5, 1e4)}, **mission_space)
    res = sweep(space, steer_soil)
    assert res.empty and res.feasible_count == 0 and res.total_count == 10
    for row in res.rows:
        assert row.a < 0
        assert row.failed_check == "slope_climb"
        assert row.objective is None


def test_tie_break_first_lexicographic(steer_soil, mission_space):
    # B enters no objective, so every B value ties; the smallest must win
    space = DesignSpace(ranges={"B": (0.6, 1.0, 0.1)}, **mission_space)
    res = sweep(space, steer_soil)
    assert res.feasible_count == 5
    assert res.best.row.point[2] == pytest.approx(0.6)


def test_failed_check_order(steer_soil, mission_space):
    # pitch ratio fails everywhere and is reported ahead of the slope failure
    bad = replace(mission_space["geometry"], RD=0.5)
    space = DesignSpace(**{**mission_space, "geometry": bad}, ranges={"m": (1e4, 2e4, 1e4)})
    res = sweep(space, steer_soil)
    assert {r.failed_check for r in res.rows} == {"pitch_ratio"}


def test_time_budget_failure(steer_soil, mission_space):
    space = DesignSpace(ranges={"v": (0.25, 1.5, 0.25)}, **mission_space)
    res = sweep(space, steer_soil)
    slow = [r for r in res.rows if r.point[3] < 1.0]
    assert slow and all(r.failed_check == "time_budget" for r in slow)


def test_grid_cap(steer_soil, mission_space):
    with pytest.raises(ConfigError, match="cap"):
        DesignSpace(ranges={"b": (0.1, 0.2, 0.01), "l": (0.5, 1.5, 0.01)}, max_points=100, **mission_space)


def test_unknown_variable(mission_space):
    with pytest.raises(ConfigError):
        DesignSpace(ranges={"P": (0.1, 0.2, 0.01)}, **mission_space)


def test_csv_columns_and_format(steer_soil, mission_space):
    space = DesignSpace(ranges={"m": (300, 20000, 9850)}, **mission_space)
    text = sweep(space, steer_soil).to_csv()
    assert "\r" not in text and text.endswith("\n")
    rows = list(csv.reader(io.StringIO(text)))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert rows[1][14] == "true" and rows[1][15] == "" and float(rows[1][16]) > 0
    assert rows[-1][14] == "false" and rows[-1][16] == ""


def test_rows_reevaluate_identically(steer_soil, mission_space):
    space = DesignSpace(
        ranges={"b": (0.1, 0.3, 0.02), "l": (0.5, 1.5, 0.1), "m": (200, 600, 100)}, **mission_space
    )
    res = sweep(space, steer_soil)
    rng = random.Random(7)
    sample = rng.sample(res.rows, max(1, len(res.rows) // 100))
    for row in sample:
        assert evaluate_row(space, steer_soil, row.point) == row


def test_order_independent(steer_soil, mission_space):
    space = DesignSpace(ranges={"b": (0.1, 0.3, 0.02), "v": (0.5, 2.0, 0.25)}, **mission_space)
    ref = sweep(space, steer_soil)
    order = list(range(space.size))
    random.Random(3).shuffle(order)
    shuffled = sweep(space, steer_soil, order=order)
    assert shuffled.to_csv() == ref.to_csv()
    assert shuffled.best == ref.best


def test_order_must_be_permutation(steer_soil, mission_space):
    space = DesignSpace(ranges={"b": (0.1, 0.3, 0.1)}, **mission_space)
    with pytest.raises(ConfigError):
        sweep(space, steer_soil, order=[0, 0, 1])


@settings(max_examples=15, deadline=None)
@given(st.floats(0.1, 0.25), st.floats(0.01, 0.1), st.floats(0.5, 1.2), st.floats(0.05, 0.4))
def test_enlarging_range_never_hurts(steer_soil, mission_space, b_lo, b_extra, l_lo, l_extra):
    small = DesignSpace(ranges={"b": (b_lo, b_lo + 0.1, 0.02), "l": (l_lo, l_lo + 0.2, 0.1)}, **mission_space)
    big = DesignSpace(
        ranges={"b": (b_lo, b_lo + 0.1 + b_extra, 0.02), "l": (l_lo, l_lo + 0.2 + l_extra, 0.1)},
        **mission_space,
    )
    s, b = sweep(small, steer_soil), sweep(big, steer_soil)
    if not s.empty:
        assert b.best.row.objective >= s.best.row.objective


def test_drawbar_objective(steer_soil, mission_space):
    space = DesignSpace(ranges={"l": (0.6, 1.4, 0.2)}, objective="max_drawbar_pull", **mission_space)
    res = sweep(space, steer_soil)
    feasible = [r for r in res.rows if r.feasible]
    assert res.best.row.objective == max(r.drawbar_pull for r in feasible)


def test_slope_evaluated_at_30_when_state_flat(steer_soil, mission_space):
    flat = replace(mission_space["state"], theta=0.0)
    space = DesignSpace(**{**mission_space, "state": flat}, ranges={"m": (300, 300, 1)})
    res = sweep(space, steer_soil)
    assert res.best.row.a == pytest.approx(5.59 + 1471.5 / 300, abs=0.01)
    assert res.best.feasibility["slope_climb"].value == pytest.approx(5.59, abs=0.01)


def test_refine_not_worse(steer_soil, mission_space):
    space = DesignSpace(ranges={"l": (0.6, 1.4, 0.2)}, objective="max_drawbar_pull", **mission_space)
    res = sweep(space, steer_soil)
    row = refine(space, steer_soil, res, "l")
    assert row.feasible
    assert row.objective >= res.best.row.objective
    with pytest.raises(ConfigError):
        refine(space, steer_soil, res, "b")


def test_parallel_matches_sequential(steer_soil, mission_space):
    space = DesignSpace(ranges={"b": (0.1, 0.3, 0.01), "l": (0.5, 1.5, 0.1)}, **mission_space)
    seq = sweep(space, steer_soil)
    par = sweep(space, steer_soil, workers=2, chunk_size=37)
    assert par.to_csv() == seq.to_csv()
