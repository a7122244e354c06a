from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from elliptic_lc.classifier import (
    ClassifierError, delta_coefficient, has_transition, normalized, relative_model_form, singularity_table,
    threshold_a0,
)
from elliptic_lc.fibers import II, III, IIISTAR, IV, I, Istar, N, catalog
from elliptic_lc.mmp import ModelForm, relative_model

from conftest import weights


def test_thresholds():
    assert [threshold_a0(t) for t in (II, III, IV, N(1), Istar(2))] == [Fraction(5, 6), Fraction(3, 4), Fraction(2, 3), Fraction(1, 2), 0]
    for t in (I(3), N(0), N(2)):
        assert not has_transition(t)
        with pytest.raises(ClassifierError):
            threshold_a0(t)


def test_boundaries_are_weierstrass():
    assert relative_model_form(II, Fraction(5, 6)) is ModelForm.WEIERSTRASS
    assert relative_model_form(II, Fraction(51, 60)) is ModelForm.INTERMEDIATE
    assert relative_model_form(Istar(0), Fraction(0)) is ModelForm.WEIERSTRASS
    assert relative_model_form(Istar(0), Fraction(1, 1000)) is ModelForm.INTERMEDIATE
    assert relative_model_form(III, 1) is ModelForm.TWISTED


@given(st.sampled_from(catalog()), weights)
def test_engine_matches_closed_form(t, a):
    assert relative_model(t, a).form == relative_model_form(t, a)


def test_delta():
    assert delta_coefficient(II, ModelForm.TWISTED) == 4
    assert delta_coefficient(III, ModelForm.INTERMEDIATE) == 2
    assert delta_coefficient(IV, ModelForm.TWISTED) == 1
    assert delta_coefficient(IV, ModelForm.WEIERSTRASS) == 0
    assert delta_coefficient(IIISTAR, ModelForm.TWISTED) == 0


def test_tables():
    assert singularity_table(II, "intermediate") == ["A1*", "A2*"]
    assert singularity_table(Istar(0), "twisted") == ["A1"] * 4
    assert singularity_table(Istar(5), "intermediate") == ["A1", "D7"]
    with pytest.raises(ClassifierError):
        singularity_table(N(1), "weierstrass")
    with pytest.raises(ClassifierError):
        singularity_table(I(3), "twisted")


def test_normalized():
    assert normalized(["A1*", "A0", "A2*"]) == normalized(["A1", "A2*"])
