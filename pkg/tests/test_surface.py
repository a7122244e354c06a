from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from elliptic_lc.fibers import II, III, IISTAR, IV, I, Istar, N, catalog
from elliptic_lc.lattice import DivisorClass, pair_classes
from elliptic_lc.mmp import ModelForm
from elliptic_lc.polynomial import Polynomial
from elliptic_lc.surface import (
    GlobalKind, SurfaceConfig, SurfaceError, canonical_class, global_model, lc_square_and_t,
    rational_i0star_example, section_contracted, section_pairing, section_pairing_lattice,
    section_self_intersection, surface_lattice,
)

from conftest import weights

a = Polynomial.variable("a")
F = Fraction


def test_config_validation():
    with pytest.raises(SurfaceError):
        SurfaceConfig(0, 1, ((II, F(3, 2)),))
    with pytest.raises(SurfaceError):
        SurfaceConfig(0, 1, ((N(1), F(1, 2)),))
    with pytest.raises(SurfaceError):
        SurfaceConfig(0, 0, ((II, F(1, 2)),), isotrivial_j_infinity=True)
    with pytest.raises(SurfaceError):
        SurfaceConfig(0, 1, (), (0.5,))


@pytest.mark.parametrize("t,shift", [
    (Istar(0), F(1, 2)), (Istar(3), F(1, 2)), (II, F(1, 6)), (III, F(1, 4)), (IV, F(1, 3)),
    (IISTAR, F(5, 6)), (N(1), F(1, 2)), (I(4), 0), (N(2), 0),
])
def test_section_square_with_one_twisted_mark(t, shift):
    cfg = SurfaceConfig(0, 1, ((t, F(1)),), isotrivial_j_infinity=t.kind.value == "N")
    assert section_self_intersection(cfg) == -1 + shift


def test_canonical_class():
    cfg = SurfaceConfig(1, 2, ((III, F(9, 10)), (IV, F(1, 2))))
    assert canonical_class(cfg) == DivisorClass({"G": 2, "F0.E": 2})
    k = canonical_class(cfg)
    form = surface_lattice(cfg)
    assert pair_classes(k, DivisorClass.of("S"), form) == 2


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.integers(1, 4),
       st.lists(st.tuples(st.sampled_from([t for t in catalog() if t.kind.value != "N"]), weights), max_size=3),
       st.lists(weights, max_size=2))
def test_section_pairing_two_ways(g, d, marks, generic):
    cfg = SurfaceConfig(g, d, tuple(marks), tuple(generic))
    want = 2 * g - 2 + sum(cfg.weights, F(0))
    assert section_pairing(cfg) == want
    assert section_pairing_lattice(cfg) == want


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 3), st.lists(weights, max_size=5))
def test_section_contraction_matches_adjunction(g, ws):
    cfg = SurfaceConfig(g, 1, (), tuple(ws))
    assert section_contracted(cfg) == (section_pairing(cfg) <= 0)


def test_symbolic_example_polynomials():
    cfg = rational_i0star_example()
    square, t = lc_square_and_t(cfg, F(2, 5))
    assert t == 4 * a - 1
    assert square == (3 * a - 1) * (5 * a - 1) / 2
    with pytest.raises(SurfaceError):
        lc_square_and_t(cfg)


@pytest.mark.parametrize("alpha,label", [
    (F(0), "point"), (F(1, 5), "point"), (F(1, 4), "point"), (F(3, 10), "curve"), (F(1, 3), "curve"),
    (F(2, 5), "pseudoelliptic"), (F(1, 2), "pseudoelliptic"),
    (F(3, 4), "elliptic_lc_model (F0 Intermediate, F1 Twisted)"), (F(1), "elliptic_lc_model (F0 Twisted, F1 Twisted)"),
])
def test_rational_example_labels(alpha, label):
    assert global_model(rational_i0star_example(alpha)).label == label


def test_numeric_values_at_half():
    m = global_model(rational_i0star_example(F(1, 2)))
    assert (m.t, m.square) == (1, F(3, 8))
    assert m.iitaka_dimension == 2


def test_global_rules():
    assert global_model(SurfaceConfig(2, 1, (), (F(1, 2),))).kind is GlobalKind.ELLIPTIC
    assert global_model(SurfaceConfig(1, 1, (), (0,))).kind is GlobalKind.PSEUDOELLIPTIC
    assert global_model(SurfaceConfig(1, 0, (), (0,), is_product=True, isotrivial_j_infinity=True)).kind is GlobalKind.PRODUCT
    assert global_model(SurfaceConfig(0, 2, (), (0, 0))).kind is GlobalKind.POINT
    assert global_model(SurfaceConfig(0, 2, (), (F(1, 3),))).kind is GlobalKind.PSEUDOELLIPTIC
    assert global_model(SurfaceConfig(0, 3, ((II, F(1, 2)),))).kind is GlobalKind.PSEUDOELLIPTIC
    with pytest.raises(SurfaceError):
        global_model(SurfaceConfig(0, 0, (), ()))


def test_elliptic_label_lists_only_special_fibers():
    m = global_model(SurfaceConfig(0, 1, ((I(3), F(1)), (II, F(9, 10)), (III, F(1)))))
    assert m.detail == (ModelForm.WEIERSTRASS, ModelForm.INTERMEDIATE, ModelForm.TWISTED)
    assert m.label == "elliptic_lc_model (F1 Intermediate, F2 Twisted)"
    assert m.notes
