from fractions import Fraction

import pytest

from elliptic_lc.fibers import (
    II, III, IIISTAR, IISTAR, IV, IVSTAR, FiberError, FiberType, Geometry, I, Istar, Kind, N, Stage,
    build_fiber_graph, catalog, fiber_class_defect, log_resolution_graph, mmp_start_graph,
    proper_subsets_negative_definite,
)


@pytest.mark.parametrize("text,expected", [
    ("I5", I(5)), ("i2*", Istar(2)), ("II", II), ("iv*", IVSTAR), ("N1", N(1)), ("IIIstar", IIISTAR), ("I0", I(0)),
])
def test_parse(text, expected):
    assert FiberType.parse(text) == expected
    assert FiberType.parse(str(expected)) == expected


@pytest.mark.parametrize("bad", ["V", "I-1", "N3", "", "II**"])
def test_parse_rejects(bad):
    with pytest.raises((FiberError, ValueError)):
        FiberType.parse(bad)


def test_catalog_size():
    assert len(catalog()) == 25


@pytest.mark.parametrize("t", catalog(), ids=str)
def test_fiber_class_is_orthogonal(t):
    for g in (build_fiber_graph(t), mmp_start_graph(t)):
        assert not any(fiber_class_defect(g).values())
        assert g.is_connected()


@pytest.mark.parametrize("t", [Istar(2), IISTAR, IIISTAR, IVSTAR, I(4)], ids=str)
def test_proper_subsets_negative_definite(t):
    assert proper_subsets_negative_definite(build_fiber_graph(t))


def test_multiplicities():
    g = build_fiber_graph(IISTAR)
    assert sorted(c.multiplicity for c in g.components) == [1, 2, 2, 3, 3, 4, 4, 5, 6]
    g = build_fiber_graph(Istar(3))
    assert [g.component(f"E{i}").multiplicity for i in range(4)] == [2, 2, 2, 2]


@pytest.mark.parametrize("t", [II, III, IV, N(1)], ids=str)
def test_log_resolution_is_log_smooth(t):
    g = log_resolution_graph(t)
    assert g.stage is Stage.LOG_RESOLUTION
    assert all(c.geometry in (Geometry.SMOOTH_RATIONAL, Geometry.SEMI_SMOOTH_RATIONAL) for c in g.components)


def test_single_component_types():
    assert build_fiber_graph(I(1)).component("A").geometry is Geometry.NODAL_RATIONAL
    assert build_fiber_graph(N(0)).component("A").geometry is Geometry.NODAL_CUBIC
    assert build_fiber_graph(I(0)).component("A").geometry is Geometry.SMOOTH_ELLIPTIC
    assert build_fiber_graph(II).component("A").geometry is Geometry.CUSPIDAL_RATIONAL


def test_n2_canonical_degrees():
    g = build_fiber_graph(N(2))
    assert g.component("E").k_degree == 1 and g.component("A").k_degree == -1
    assert g.intersection("A", "A") == g.intersection("E", "E") == -1


def test_relatively_minimal_graphs_are_k_trivial():
    for t in catalog():
        if t.kind == Kind.N and t.n == 2:
            continue
        assert all(c.k_degree == 0 for c in build_fiber_graph(t).components), t


def test_cycle():
    g = build_fiber_graph(I(4))
    assert all(len(g.neighbors(c)) == 2 for c in g.ids)
    assert g.intersection("A", "A") == Fraction(-2)
