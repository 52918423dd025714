import math
import warnings
from dataclasses import replace

import pytest
from hypothesis import given, strategies as st

from trackmech.chassis import (
    PAPER_CHASSIS,
    TrackGeometry,
    contact_area,
    pitch_ratio_check,
    roadwheel_pitch_ratio,
    steering_check,
)
from trackmech.errors import ConfigError, DomainError
from trackmech.terrain import PAPER_SOFT_SOIL


def geom(**kw):
    base = dict(b=0.18, l=1.0, B=0.8, P=0.155, RD=0.19)
    base.update(kw)
    return TrackGeometry(**base)


def test_pitch_ratio_reference():
    ratio, ok = roadwheel_pitch_ratio(PAPER_CHASSIS)
    assert ratio == pytest.approx(1.2258, abs=1e-4)
    assert ok


def test_pitch_ratio_unity_fails():
    ratio, ok = roadwheel_pitch_ratio(geom(RD=0.155))
    assert ratio == 1.0 and not ok


def test_pitch_ratio_nominal():
    ratio, ok = roadwheel_pitch_ratio(geom(RD=0.24, P=0.2))
    assert ratio == pytest.approx(1.2) and ok


def test_pitch_band_configurable():
    _, ok = roadwheel_pitch_ratio(PAPER_CHASSIS, band=(1.0, 1.2))
    assert not ok
    chk = pitch_ratio_check(PAPER_CHASSIS, band=(1.0, 1.2))
    assert chk.margin < 0 and not chk.passed


@given(st.floats(0.01, 2.0), st.floats(0.01, 2.0), st.floats(0.1, 100.0))
def test_pitch_ratio_homogeneous(RD, P, alpha):
    r1, _ = roadwheel_pitch_ratio(geom(RD=RD, P=P))
    r2, _ = roadwheel_pitch_ratio(geom(RD=alpha * RD, P=alpha * P))
    assert r2 == pytest.approx(r1, rel=1e-12)


def test_contact_area():
    assert contact_area(PAPER_CHASSIS) == pytest.approx(0.36)
    assert contact_area(geom(b=0.5, l=2.0)) == pytest.approx(2.0)
    assert contact_area(geom(b=1.0, l=1.0, B=2.0)) == pytest.approx(2.0)


@pytest.mark.parametrize("field", ["b", "l", "B", "P", "RD"])
def test_geometry_positive(field):
    with pytest.raises(DomainError, match=f"chassis.{field} "):
        geom(**{field: 0.0})


def test_narrow_tread_warns_only():
    with pytest.warns(UserWarning, match="tread"):
        g = geom(B=0.1)
    assert g.B == 0.1


def test_reference_geometry_no_warning():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        replace(PAPER_CHASSIS)


def test_steering_reference():
    """Hand-calc: (2/0.5)(6.89/8.175 + tan 29 - 0.1) = 5.18849"""
    t = replace(PAPER_SOFT_SOIL, mu_t=0.5, f_r=0.1)
    expected = 4.0 * (6.89 / 8.175 + math.tan(math.radians(29)) - 0.1)
    res = steering_check(PAPER_CHASSIS, t, 8.175)
    assert res.ratio == pytest.approx(1.25)
    assert res.limit == pytest.approx(expected, rel=1e-12)
    assert res.limit == pytest.approx(5.188, abs=1e-3)
    assert res.passed
    assert res.margin == pytest.approx(expected - 1.25)


@pytest.mark.parametrize("mu_t", [1.0, 1e6, 1e12])
def test_steering_degenerate_limit(mu_t):
    t = replace(PAPER_SOFT_SOIL, c=0.0, phi=0.0, mu_t=mu_t, f_r=0.0)
    res = steering_check(PAPER_CHASSIS, t, 8.0)
    assert res.limit == 0.0
    assert not res.passed


def test_steering_requires_coefficients():
    with pytest.raises(ConfigError):
        steering_check(PAPER_CHASSIS, PAPER_SOFT_SOIL, 8.0)
    with pytest.raises(ConfigError):
        steering_check(PAPER_CHASSIS, replace(PAPER_SOFT_SOIL, mu_t=0.5), 8.0)


def test_steering_zero_pressure():
    t = replace(PAPER_SOFT_SOIL, mu_t=0.5, f_r=0.1)
    with pytest.raises(DomainError):
        steering_check(PAPER_CHASSIS, t, 0.0)


@given(st.floats(0.1, 5.0), st.floats(0.2, 5.0), st.sampled_from([0.5, 2.0, 10.0]),
       st.floats(0.1, 2.0), st.floats(0.0, 0.5), st.floats(0.5, 50.0))
def test_steering_verdict_scale_invariant(l, B, alpha, mu_t, f_r, p):
    t = replace(PAPER_SOFT_SOIL, mu_t=mu_t, f_r=f_r)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        g1 = geom(l=l, B=B)
        g2 = geom(l=alpha * l, B=alpha * B)
    r1 = steering_check(g1, t, p)
    r2 = steering_check(g2, t, p)
    assert r1.ratio == pytest.approx(r2.ratio, rel=1e-12)
    if abs(r1.margin) > 1e-9:
        assert r1.passed == r2.passed


@given(st.floats(0, 20), st.floats(0, 60), st.floats(0.0, 5.0), st.floats(0.0, 10.0))
def test_steering_limit_monotone_in_soil_strength(c, phi, dc, dphi):
    base = replace(PAPER_SOFT_SOIL, c=c, phi=phi, mu_t=0.5, f_r=0.1)
    stronger = replace(base, c=c + dc, phi=phi + dphi)
    assert steering_check(PAPER_CHASSIS, stronger, 8.0).limit >= steering_check(PAPER_CHASSIS, base, 8.0).limit


@given(st.floats(0.05, 2.0), st.floats(0.0, 0.5), st.floats(0.5, 50.0),
       st.floats(0.0, 1.0), st.floats(0.0, 0.5), st.floats(0.0, 10.0))
def test_steering_limit_non_increasing(mu_t, f_r, p, dmu, df, dp):
    base = replace(PAPER_SOFT_SOIL, mu_t=mu_t, f_r=f_r)
    lim = steering_check(PAPER_CHASSIS, base, p).limit
    tol = 1e-12 * max(1.0, abs(lim))
    assert steering_check(PAPER_CHASSIS, replace(base, mu_t=mu_t + dmu), p).limit <= lim + tol or lim < 0
    assert steering_check(PAPER_CHASSIS, replace(base, f_r=f_r + df), p).limit <= lim + tol
    assert steering_check(PAPER_CHASSIS, base, p + dp).limit <= lim + tol
