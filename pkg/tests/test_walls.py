from fractions import Fraction

import pytest

from elliptic_lc.fibers import II, III, I
from elliptic_lc.surface import SurfaceConfig, rational_i0star_example
from elliptic_lc.walls import (
    WallError, WallKind, coordinate_regimes, cube_chambers, parametric_walls, parse_path, section_wall,
)

F = Fraction


def test_rational_example_walls():
    rep = parametric_walls(rational_i0star_example())
    assert rep.wall_values() == [F(1, 4), F(1, 3), F(1, 2), F(1)]
    assert F(1, 5) not in rep.wall_values()
    kinds = [w.kinds[0] for w in rep.walls]
    assert kinds == [WallKind.TRIVIALITY, WallKind.BIGNESS, WallKind.SECTION, WallKind.FIBER]
    assert [c.label for c in rep.chambers][:3] == ["point", "curve", "pseudoelliptic"]


def test_chambers_cover_the_path_and_agree_with_samples():
    from elliptic_lc.surface import global_model
    cfg = rational_i0star_example()
    rep = parametric_walls(cfg)
    for k in range(61):
        x = F(k, 60)
        (c,) = [c for c in rep.chambers if c.contains(x)]
        assert global_model(cfg.at(x)).label == c.label


def test_all_equal_path_wall_at_unit_sum():
    cfg = SurfaceConfig(0, 1, ((I(2), F(1, 2)), (I(3), F(1, 2))), (F(1, 2),))
    rep = parametric_walls(cfg, parse_path("a,a,a", 3))
    assert rep.wall_values() == [F(1, 3), F(2, 3)]
    assert [c.label for c in rep.chambers] == ["point", "pseudoelliptic", "elliptic_lc_model"]


def test_no_pseudoelliptic_walls_in_degree_three():
    cfg = SurfaceConfig(0, 3, ((II, F(1, 2)), (III, F(1, 2))), (F(1, 2),))
    rep = parametric_walls(cfg, parse_path("a,a,a", 3))
    kinds = {k for w in rep.walls for k in w.kinds}
    assert kinds <= {WallKind.FIBER, WallKind.SECTION}
    assert rep.wall_values() == [F(2, 3), F(3, 4), F(5, 6), F(1)]


def test_section_wall():
    assert section_wall(SurfaceConfig(0, 1, (), (F(1, 2), F(1, 2)))).rhs == 2
    assert section_wall(SurfaceConfig(1, 1, (), (F(1, 2),))).degenerate
    assert section_wall(SurfaceConfig(2, 1, (), (F(1, 2),))) is None


@pytest.mark.parametrize("spec", ["a,0.5", "a,b", "a,", "sin(a),1", "a"])
def test_bad_paths(spec):
    with pytest.raises(WallError):
        parse_path(spec, 2)


def test_path_constants_and_symbol():
    p = parse_path("t, 1/2, 1 - t")
    assert [str(x) for x in p] == ["t", "1/2", "-t + 1"]


def test_coordinate_regimes():
    assert [str(r) for r in coordinate_regimes(II)] == ["[0, 5/6] Weierstrass", "(5/6, 1) Intermediate", "{1} Twisted"]
    assert len(coordinate_regimes(I(4))) == 1


def test_cube_cells():
    # two weights never sum past 2, so the section is contracted everywhere
    rep = cube_chambers(SurfaceConfig(0, 3, ((II, F(1, 2)),), (F(1, 2),)))
    assert len(rep.chambers) == 3
    assert all(c.label.endswith("section contracted") for c in rep.chambers)
    rep = cube_chambers(SurfaceConfig(0, 3, ((II, F(1, 2)),), (F(1, 2), F(1, 2))))
    assert len(rep.chambers) == 6
    assert rep.hyperplanes[0].rhs == 2
    big = cube_chambers(SurfaceConfig(0, 3, tuple((II, F(1, 2)) for _ in range(7))), max_cells=10)
    assert big.chambers == () and big.notes
