"""Exact ball search, the grid oracle, curve rows, and the annealing search."""

import random
from fractions import Fraction

import pytest

from slkkm.bounds import lower_bound_main, sperner_lower
from slkkm.coloring import ColoringError, PointColoring
from slkkm.constructions import (
    brick_coloring,
    hamming_coloring,
    orthant_coloring,
    proximate_grid,
)
from slkkm.geometry import GeometryError, as_point, ball_box
from slkkm.search import (
    brute_force_oracle,
    empirical_K_curve,
    extremal_search,
    max_colors_ball,
    verify_theorem,
)

from helpers import random_point_coloring, random_region_coloring

P = as_point


class TestMaxColorsBall:
    def test_orthant_center_hits_all(self):
        r = max_colors_ball(orthant_coloring(2), "1/10")
        assert r.max_colors == 4
        assert r.witness_center == (Fraction(1, 2), Fraction(1, 2))
        assert len(r.colors_hit) == 4

    def test_three_point_segment(self):
        pc = PointColoring(1, (P([0]), P(["1/2"]), P([1])), ("a", "b", "c"))
        r = max_colors_ball(pc, "2/5")
        assert r.max_colors == 2

    def test_hamming_half_open_gap(self):
        assert max_colors_ball(hamming_coloring(2), "1/2").max_colors == 3

    def test_invalid_coloring_rejected(self):
        pc = PointColoring(1, (P([0]), P([1])), ("a", "a"))
        with pytest.raises(ColoringError):
            max_colors_ball(pc, "1/4")

    def test_nonpositive_eps_rejected(self):
        with pytest.raises(GeometryError):
            max_colors_ball(orthant_coloring(1), 0)

    def test_colors_hit_reverified_at_witness(self):
        rng = random.Random(61)
        for _ in range(10):
            rc = random_region_coloring(rng)
            for closed in (False, True):
                r = max_colors_ball(rc, "1/4", closed=closed)
                ball = ball_box(r.witness_center, Fraction(1, 4), closed)
                direct = {lbl for lbl, u in rc.classes.items() if u.intersects_box(ball)}
                assert direct == set(r.colors_hit)
                assert len(direct) == r.max_colors

    def test_closed_at_least_open_and_monotone(self):
        rng = random.Random(62)
        for _ in range(8):
            rc = random_region_coloring(rng)
            prev_open = prev_closed = 0
            for eps in ("1/8", "1/4", "1/2"):
                open_max = max_colors_ball(rc, eps).max_colors
                closed_max = max_colors_ball(rc, eps, closed=True).max_colors
                assert open_max <= closed_max
                assert open_max >= prev_open and closed_max >= prev_closed
                prev_open, prev_closed = open_max, closed_max


class TestBruteOracle:
    def test_orthant_grid_includes_center(self):
        assert brute_force_oracle(orthant_coloring(2), "1/10", grid_step="1/20") == 4

    def test_brick_tight_value(self):
        assert brute_force_oracle(brick_coloring("1/2"), "1/4", closed=True,
                                  grid_step="1/40") == 3

    def test_never_exceeds_exact_and_agrees_on_fine_grid(self):
        rng = random.Random(63)
        for _ in range(15):
            rc = random_region_coloring(rng, den=20)
            for closed in (False, True):
                exact = max_colors_ball(rc, "1/4", closed=closed).max_colors
                coarse = brute_force_oracle(rc, "1/4", closed=closed, grid_step="1/8")
                fine = brute_force_oracle(rc, "1/4", closed=closed, grid_step="1/40")
                assert coarse <= exact
                assert fine == exact


class TestVerifyTheorem:
    @pytest.mark.parametrize("coloring", [
        orthant_coloring(1), orthant_coloring(2), orthant_coloring(3),
        hamming_coloring(2), hamming_coloring(3), brick_coloring("1/2")])
    @pytest.mark.parametrize("eps", ["1/10", "1/4", "1/2"])
    def test_builtins_meet_bound(self, coloring, eps):
        report = verify_theorem(coloring, eps)
        assert report.ok
        assert report.bound == lower_bound_main(coloring.dim, Fraction(eps))

    def test_point_coloring_needs_rho(self):
        pc = PointColoring(1, (P([0]), P([1])), ("a", "b"))
        with pytest.raises(ColoringError):
            verify_theorem(pc, "1/2")
        report = verify_theorem(pc, "1/2", rho="1/2")
        assert report.bound == sperner_lower(1, Fraction(1, 2), Fraction(1, 2))
        assert report.ok

    def test_random_region_colorings(self):
        rng = random.Random(64)
        for _ in range(10):
            rc = random_region_coloring(rng)
            for eps in ("1/10", "1/2"):
                assert verify_theorem(rc, eps).ok

    def test_random_sperner_instances(self):
        rng = random.Random(65)
        pts = proximate_grid(2, Fraction(1, 3))
        for _ in range(10):
            pc = random_point_coloring(rng, pts)
            report = verify_theorem(pc, "1/2", rho=Fraction(1, 3))
            assert report.ok


class TestCurve:
    def test_brick_curve_monotone(self):
        rows = empirical_K_curve(brick_coloring("1/2"), ["1/8", "1/4", "3/8", "1/2"])
        opens = [r.open_max for r in rows]
        closeds = [r.closed_max for r in rows]
        assert opens == sorted(opens)
        assert closeds == sorted(closeds)
        assert all(o <= c for o, c in zip(opens, closeds))
        assert rows[0].closed_max == 3

    def test_large_eps_sees_all_orthants(self):
        rows = empirical_K_curve(orthant_coloring(2), ["3/5"])
        assert rows[0].open_max == 4

    def test_unsorted_rejected(self):
        with pytest.raises(GeometryError):
            empirical_K_curve(orthant_coloring(1), ["1/2", "1/4"])


class TestExtremal:
    def test_finds_brick_equivalent_optimum(self):
        result = extremal_search(2, "1/4", budget=300, seed=0, grid_n=4)
        assert result.max_colors == 3
        assert result.note == "box-union upper evidence"

    def test_d1_floor(self):
        result = extremal_search(1, "1/2", budget=50, seed=0, grid_n=4)
        assert result.max_colors == 2

    def test_deterministic_for_seed(self):
        a = extremal_search(2, "1/4", budget=60, seed=7, grid_n=3)
        b = extremal_search(2, "1/4", budget=60, seed=7, grid_n=3)
        assert a.max_colors == b.max_colors
        assert a.coloring.classes.keys() == b.coloring.classes.keys()

    def test_never_below_floor(self):
        for seed in range(4):
            result = extremal_search(2, "1/2", budget=40, seed=seed, grid_n=3)
            assert result.max_colors >= lower_bound_main(2, Fraction(1, 2))
