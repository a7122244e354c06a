from fractions import Fraction

import pytest

from elliptic_lc.fibers import II, IIISTAR, IISTAR, IVSTAR, I, Istar, N, build_fiber_graph, log_resolution_graph
from elliptic_lc.mmp import relative_model
from elliptic_lc.singularities import classify_configuration, multiset, parse_label


@pytest.mark.parametrize("t,label", [(IISTAR, "E8"), (IIISTAR, "E7"), (IVSTAR, "E6"), (Istar(3), "D7"), (I(5), "A4")], ids=str)
def test_weierstrass_dynkin(t, label):
    assert relative_model(t, Fraction(0)).singularity_labels() == [label]


def test_single_curves():
    g = log_resolution_graph(II)
    assert classify_configuration(g, ["D2"], starred=True).label == "A1*"
    assert classify_configuration(g, ["D1"], starred=True).label == "A2*"
    assert classify_configuration(g, ["D2"]).label == "A1"


def test_blow_down_to_smooth_point():
    # contracting the whole exceptional locus of the II resolution restores a smooth point
    g = log_resolution_graph(II)
    rec = classify_configuration(g, ["D1", "D2", "E"], starred=True)
    assert rec.is_smooth and rec.label == "A0"


def test_unrecognised_configurations_keep_their_data():
    g = build_fiber_graph(Istar(0))
    rec = classify_configuration(g, ["A", "E0", "D1"])
    assert rec.label == "A3"
    rec = relative_model(N(1), Fraction(0)).singularities
    assert [r.kind for r in rec if not r.is_smooth] == ["non-normal"]


def test_label_round_trip():
    for text in ("A3", "D6", "E7", "A2*", "A5*"):
        assert parse_label(text).label == text


def test_multiset_identifies_a1_star():
    g = log_resolution_graph(II)
    assert multiset([classify_configuration(g, ["D2"], starred=True)])["A1"] == 1


def test_istar_twisted_rows():
    assert relative_model(Istar(0), Fraction(1)).singularity_labels() == ["A1"] * 4
    assert relative_model(Istar(4), Fraction(1)).singularity_labels() == ["A1", "A1", "D6"]
