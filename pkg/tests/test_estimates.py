import math

import numpy as np
import pytest

import marstrand.estimates as estimates
from marstrand import (
    CapExceeded,
    DyadicCover,
    DyadicSquare,
    ThetaGrid,
    build_good_cover,
    cover_from_set,
    energy_pair_bound,
    energy_quadrature,
    energy_transversal_bound,
    good_angle_sets,
    overlap_angle_measure,
    project_square,
    shell_masses,
    squares_at_depth,
    sweep,
    union_measure,
)

from conftest import CARPET, DIAGONAL, FULL2, random_cover

SINGLE = DyadicCover((DyadicSquare(0, 0, 0),), 1.5)


def test_theta_grid_nodes():
    grid = ThetaGrid(16)
    assert grid.nodes[0] == pytest.approx(-math.pi / 2 + math.pi / 32, rel=1e-15)
    assert grid.nodes[-1] == pytest.approx(math.pi / 2 - math.pi / 32, rel=1e-15)
    assert len(grid.nodes) == 16
    with pytest.raises(ValueError):
        ThetaGrid(8)


def test_sweep_single_square_cs_is_tight():
    grid = ThetaGrid(16)
    report = sweep(SINGLE, grid)
    expected = np.abs(np.cos(grid.nodes)) + np.abs(np.sin(grid.nodes))
    assert report.m_proj == pytest.approx(expected, rel=1e-12)
    assert report.cs_lower == pytest.approx(report.m_proj, rel=1e-12)
    assert np.all(report.cs_lower <= report.m_proj + 1e-9)


def test_sweep_full_grid_profile_integral():
    ds = squares_at_depth(FULL2, 2)
    cover = build_good_cover(ds, 2.0, 1.0)
    from marstrand import profile_integral

    # 16 squares, weight diam = sqrt(2)/4, length 1/4 each at theta = 0
    assert profile_integral(cover, 0.0) == pytest.approx(math.sqrt(2), rel=1e-12)
    report = sweep(cover, ThetaGrid(32))
    assert report.m_proj == pytest.approx(
        np.abs(np.cos(report.theta)) + np.abs(np.sin(report.theta)), rel=1e-12
    )


def test_energy_quadrature_single_square():
    got = energy_quadrature(SINGLE, ThetaGrid(2048))
    assert got == pytest.approx(4 * math.sqrt(2), abs=1e-3)
    # grid doubling is stable well under 0.1%
    coarse = energy_quadrature(SINGLE, ThetaGrid(512))
    fine = energy_quadrature(SINGLE, ThetaGrid(1024))
    assert abs(fine - coarse) < 1e-3 * abs(coarse)


def test_energy_pair_bound_single_square():
    assert energy_pair_bound(SINGLE) == pytest.approx(2 * math.pi, rel=1e-12)
    trans = energy_transversal_bound(SINGLE)
    assert trans.capped == pytest.approx(2 * math.pi, rel=1e-12)
    assert trans.literal == 0.0


def test_pair_bound_two_squares_assembles_from_overlap_measures():
    a, b = DyadicSquare(1, 0, 0), DyadicSquare(1, 1, 1)
    cover = DyadicCover((a, b), 1.5)
    w2_min = a.diam ** (2 * (cover.s - 1)) * a.diam
    expected = 2 * w2_min * math.pi + 2 * w2_min * overlap_angle_measure(a, b)
    assert energy_pair_bound(cover) == pytest.approx(expected, rel=1e-12)


def test_transversal_literal_two_squares():
    cover = DyadicCover((DyadicSquare(1, 0, 0), DyadicSquare(1, 1, 1)), 1.5)
    # |Q|**s = 2**-0.75 each, centers sqrt(2)/2 apart: 2 * 2**-1.5 / 2**-0.5 = 1
    assert energy_transversal_bound(cover).literal == pytest.approx(1.0, rel=1e-12)


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_inequality_chain_random_covers(seed):
    rng = np.random.default_rng(seed)
    cover = random_cover(rng, 40, max_level=5, s=1.5)
    grid = ThetaGrid(256)
    quad = energy_quadrature(cover, grid)
    pair = energy_pair_bound(cover)
    trans = energy_transversal_bound(cover)
    assert quad <= pair * (1 + 1e-9)
    assert pair <= trans.capped * (1 + 1e-9)


def test_inequality_chain_generated_covers():
    grid = ThetaGrid(64)
    for spec, s in ((CARPET, math.log(9) / math.log(4)), (DIAGONAL, 1.1), (FULL2, 2.0)):
        for depth in (1, 2, 3):
            cover = build_good_cover(squares_at_depth(spec, depth), s, 1.0)
            quad = energy_quadrature(cover, grid)
            pair = energy_pair_bound(cover)
            trans = energy_transversal_bound(cover)
            assert quad <= pair * (1 + 1e-9)
            assert pair <= trans.capped * (1 + 1e-9)


def test_lattice_fast_path_matches_direct(monkeypatch):
    covers = [
        cover_from_set(squares_at_depth(CARPET, 2)),
        cover_from_set(squares_at_depth(FULL2, 3), 2.0),
        cover_from_set(squares_at_depth(DIAGONAL, 3)),
    ]
    for cover in covers:
        direct = estimates._pair_sums_direct(cover)
        level = cover.squares[0].level
        fast = estimates._pair_sums_lattice(cover, level)
        assert fast.pair == pytest.approx(direct.pair, rel=1e-9)
        assert fast.capped == pytest.approx(direct.capped, rel=1e-9)
        assert fast.literal == pytest.approx(direct.literal, rel=1e-9)
    # the dispatcher picks the lattice path once the cover is large enough
    monkeypatch.setattr(estimates, "_FAST_MIN_SQUARES", 1)
    cover = covers[0]
    assert energy_pair_bound(cover, max_squares=1) == pytest.approx(
        estimates._pair_sums_direct(cover).pair, rel=1e-9
    )


def test_pair_cap_raises_for_mixed_level_covers():
    rng = np.random.default_rng(5)
    cover = random_cover(rng, 50, max_level=6, s=1.5)
    assert len({q.level for q in cover.squares}) > 1
    with pytest.raises(CapExceeded, match="quadratic"):
        energy_pair_bound(cover, max_squares=10)
    with pytest.raises(CapExceeded):
        energy_transversal_bound(cover, max_squares=10)


def test_shell_masses_two_squares():
    # centers 3/8 apart horizontally: 1/4 < 3/8 <= 1/2 puts the partner in shell 1
    a = DyadicSquare(3, 0, 0)
    b = DyadicSquare(3, 3, 0)
    cover = DyadicCover((a, b), 1.5)
    shells = shell_masses(cover, a)
    assert len(shells) == 1
    assert shells[0].j == 1
    assert shells[0].mass == pytest.approx(b.diam**1.5, rel=1e-12)
    assert shells[0].normalized == pytest.approx(b.diam**1.5 / 0.5**1.5, rel=1e-12)


def test_shell_masses_far_pair_lands_in_shell_zero():
    a = DyadicSquare(2, 0, 0)
    b = DyadicSquare(2, 3, 3)  # centers 0.75 * sqrt(2) apart > 1/2
    cover = DyadicCover((a, b), 1.5)
    shells = shell_masses(cover, a)
    assert [sh.j for sh in shells] == [0]


def test_shell_masses_full_grid_constant():
    for n in range(1, 6):
        cover = cover_from_set(squares_at_depth(FULL2, n), 2.0)
        anchor = cover.squares[0]
        shells = shell_masses(cover, anchor)
        assert all(sh.normalized <= 36.0 for sh in shells)
        # no shell deeper than the lattice spacing
        assert max(sh.j for sh in shells) <= n


def test_shell_masses_requires_membership():
    cover = cover_from_set(squares_at_depth(FULL2, 2), 2.0)
    with pytest.raises(ValueError, match="not a cover element"):
        shell_masses(cover, DyadicSquare(5, 0, 0))


def test_good_angle_sets_extremes():
    grid = ThetaGrid(32)
    covers = [SINGLE]
    report = sweep(SINGLE, grid)
    top = float(np.max(report.int_f2))
    low = float(np.min(report.int_f2))
    all_empty = good_angle_sets(covers, grid, eps=2.0 / low)
    assert not np.any(all_empty.masks[0]) and not np.any(all_empty.limit)
    all_full = good_angle_sets(covers, grid, eps=0.5 / top)
    assert np.all(all_full.masks[0]) and np.all(all_full.limit)
    with pytest.raises(ValueError):
        good_angle_sets(covers, grid, eps=0.0)


def test_good_angle_chebyshev_consistency():
    grid = ThetaGrid(64)
    s = math.log(9) / math.log(4)
    cover = build_good_cover(squares_at_depth(CARPET, 2), s, 1.0)
    report = sweep(cover, grid)
    quad = report.energy_quadrature()
    eps = math.pi / (2 * quad)
    sets = good_angle_sets([cover], grid, eps, reports=[report])
    bad = ~sets.masks[0]
    bad_measure = grid.weight * int(np.count_nonzero(bad))
    assert bad_measure / eps <= grid.weight * float(np.sum(report.int_f2[bad])) + 1e-12
    assert grid.weight * float(np.sum(report.int_f2[bad])) <= quad + 1e-12


def test_good_angle_limit_is_tail_union():
    grid = ThetaGrid(16)
    rng = np.random.default_rng(9)
    covers = [random_cover(rng, 10, max_level=4, s=1.5) for _ in range(3)]
    sets = good_angle_sets(covers, grid, eps=1.0)
    # over a finite list the limit equals the last mask
    assert np.array_equal(sets.limit, sets.masks[-1])


def test_diagonal_antidiagonal_projection_shrinks():
    values = []
    for n in range(1, 6):
        cover = cover_from_set(squares_at_depth(DIAGONAL, n))
        ivals = [project_square(q, -math.pi / 4) for q in cover.squares]
        values.append(union_measure(ivals))
        # every projection measure is below the total projected length
        assert values[-1] <= sum(iv.length for iv in ivals) + 1e-12
    for prev, cur in zip(values, values[1:]):
        assert prev / cur >= 1.2
