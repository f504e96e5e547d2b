import math

import pytest

import flatfront


def test_cross_ratio_of_unit_square():
    assert flatfront.cross_ratio(0, 1, 1 + 1j, 1j) == pytest.approx(-1)


def test_poincare_projection():
    u = 0.7
    y = flatfront.poincare_project(math.cosh(u), math.sinh(u), 0, 0)
    assert y == pytest.approx((math.tanh(u / 2), 0, 0), abs=1e-15)
    with pytest.raises(flatfront.FlatFrontError, match="WrongSheet"):
        flatfront.poincare_project(-1, 0, 0, 0)


def test_forward_pipeline_validates():
    holo = flatfront.generate(6, 6)
    assert holo["type"] == "holomorphic_map"
    report = flatfront.validate(holo, t=0.5, s=[-0.5, 0, 0.5])
    assert report["passed"]
    names = {c["name"] for c in report["checks"]}
    assert {"holom", "flatW", "rodrigues", "curvature", "lifts"} <= names


def test_dual_adds_fields():
    doc = flatfront.dual(flatfront.generate(3, 3))
    assert "gstar" in doc and "r" in doc


def test_round_trip_through_gauss_maps():
    front = flatfront.weierstrass(flatfront.generate(5, 5), t=0.5, s=[0, 0.25])
    pair = flatfront.gauss(front)
    assert pair["type"] == "darboux_pair"
    data = flatfront.invert(pair)
    assert flatfront.validate(data, s=[0.1])["passed"]


def test_darboux_then_invert():
    pair = flatfront.darboux(flatfront.generate(5, 5), t=0.25, seed=0.3 + 0.7j)
    assert flatfront.validate(flatfront.invert(pair), s=[0.2])["passed"]


def test_moebius_image_validates():
    holo = flatfront.moebius(flatfront.generate(5, 5), 1, 0, 0.05, 1 + 1j)
    assert flatfront.validate(holo, t=0.5)["passed"]


def test_obj_export_counts():
    front = flatfront.weierstrass(flatfront.generate(4, 3), t=0.5)
    lines = flatfront.export_obj(front, s=0.5).splitlines()
    assert sum(line.startswith("v ") for line in lines) == 12
    assert sum(line.startswith("f ") for line in lines) == 6


def test_excluded_parameter_raises():
    with pytest.raises(flatfront.FlatFrontError, match="InvalidParameter"):
        flatfront.weierstrass(flatfront.generate(3, 3), t=1.0)
