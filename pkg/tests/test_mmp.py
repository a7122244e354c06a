import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from elliptic_lc.fibers import II, III, IISTAR, IV, I, Istar, N, catalog, log_resolution_graph, mmp_start_graph
from elliptic_lc.mmp import (
    InternalError, MmpError, ModelForm, check_weight, contract, log_degrees, log_discrepancies,
    one_shot_log_pullback, relative_model, run_relative_mmp,
)
from elliptic_lc.lattice import NotExceptionalError
from elliptic_lc.polynomial import Polynomial
from elliptic_lc.selftest import step_identities

from conftest import weights

TYPES = catalog()


@pytest.mark.parametrize("bad", [Fraction(-1, 2), Fraction(3, 2), 0.5])
def test_weight_range(bad):
    with pytest.raises(MmpError):
        check_weight(bad)


def test_log_degrees_need_log_smooth_graph():
    from elliptic_lc.fibers import build_fiber_graph
    with pytest.raises(MmpError):
        log_degrees(build_fiber_graph(II), Fraction(1, 2))


def test_contract_rejects_non_exceptional_sets():
    g = mmp_start_graph(Istar(0))
    with pytest.raises((MmpError, NotExceptionalError)):
        contract(g, list(g.ids))


def test_numeric_weight_required():
    with pytest.raises(MmpError):
        run_relative_mmp(mmp_start_graph(II), Polynomial.variable())


def test_ii_intermediate():
    m = relative_model(II, Fraction(9, 10))
    assert m.form is ModelForm.INTERMEDIATE
    assert set(m.survivors) == {"A", "E"}
    assert m.singularity_labels() == ["A1*", "A2*"]


def test_istar_twisted_survivor():
    m = relative_model(Istar(3), Fraction(1))
    assert m.form is ModelForm.TWISTED
    assert m.survivors == ("E0",)
    assert m.section_square_shift == Fraction(1, 2)


def test_n_types():
    assert relative_model(N(0), Fraction(1, 2)).form is ModelForm.N0
    assert relative_model(N(2), Fraction(1)).form is ModelForm.N0
    assert relative_model(N(1), Fraction(1, 2)).form is ModelForm.WEIERSTRASS
    assert relative_model(N(1), Fraction(3, 4)).form is ModelForm.INTERMEDIATE


def test_trace_serialization():
    m = relative_model(III, Fraction(9, 10))
    d = m.trace.to_dict()
    assert d["steps"][0]["contracted"] == ["D1", "D2"]
    assert Fraction(d["final_degrees"]["E"]) == Fraction(3, 20)
    assert "step 1 (extremal)" in m.trace.to_text()


@pytest.mark.parametrize("t", TYPES, ids=str)
def test_log_degree_total(t):
    # sum of multiplicity times degree equals the degree on a general fiber, which is 1
    for a in (Fraction(0), Fraction(1, 3), Fraction(4, 5), Fraction(1)):
        g = mmp_start_graph(t)
        assert log_degrees(g, a).fiber_total(g) == 1


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(TYPES), weights, st.integers(0, 10**6))
def test_order_invariance(t, a, seed):
    batch = relative_model(t, a)
    one = run_relative_mmp(mmp_start_graph(t), a, rng=random.Random(seed))
    assert one.form == batch.form
    assert set(one.survivors) == set(batch.survivors)
    assert sorted(r.label for r in one.singularities) == sorted(r.label for r in batch.singularities)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(TYPES), weights)
def test_step_identities_and_final_nefness(t, a):
    m = relative_model(t, a)
    assert step_identities(m) == []
    assert all(v >= 0 for v in log_degrees(m.graph, a).values())


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(TYPES), weights)
def test_discrepancies_match_one_shot_solve(t, a):
    m = relative_model(t, a)
    disc = log_discrepancies(m.trace)
    assert disc == one_shot_log_pullback(m.trace.start, m.survivors, a)
    assert all(v >= -1 for v in disc.values())


@pytest.mark.parametrize("t,a0", [(II, Fraction(5, 6)), (III, Fraction(3, 4)), (IV, Fraction(2, 3)), (N(1), Fraction(1, 2))], ids=str)
def test_lc_centre_exactly_at_threshold(t, a0):
    d = log_discrepancies(relative_model(t, a0).trace)
    assert d["E"] == -1
    d = log_discrepancies(relative_model(t, a0 - Fraction(1, 60)).trace)
    assert d["E"] > -1


def test_symbolic_degrees_on_log_resolution():
    a = Polynomial.variable()
    deg = log_degrees(log_resolution_graph(IV), a)
    assert deg["A"] == 3 - 3 * a and deg["E"] == 3 * a - 2


def test_weierstrass_at_zero_keeps_only_section_component():
    for t in (IISTAR, I(6), Istar(4)):
        m = relative_model(t, Fraction(0))
        assert m.form is ModelForm.WEIERSTRASS
        assert len(m.survivors) == 1


def test_internal_error_is_distinct_from_input_error():
    assert not issubclass(InternalError, ValueError)
