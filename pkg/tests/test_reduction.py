"""Quadratic-form substitution data, coloring lifts, and end-to-end solving.

Exactness bar: everything here is checked in exact integer/rational
arithmetic, and solver outputs are re-verified by verify_quad_solution,
which shares no arithmetic with the solver.
"""

import itertools

import pytest

from ramseykit.coloring import Coloring
from ramseykit.reduction import (
    DegenerateCoefficientsError,
    exp_lift,
    lift_coloring,
    quadratic_setup,
    solution_to_json,
    solve_quadratic,
    verify_quad_solution,
)


class TestQuadraticSetup:
    def test_pinned_1_m1(self):
        rd = quadratic_setup((1, -1))
        assert rd.u == (1, -1)
        assert rd.b == 4
        assert rd.chosen_poly == "p"

    def test_pinned_1_1_m2(self):
        rd = quadratic_setup((1, 1, -2))
        assert rd.u == (7, 1, -5)
        assert rd.b == 36
        # 49 + 1 - 50 = 0
        assert 1 * 49 + 1 * 1 - 2 * 25 == 0

    def test_validation(self):
        with pytest.raises(ValueError):
            quadratic_setup((1,))
        with pytest.raises(ValueError):
            quadratic_setup((1, 0, -1))
        with pytest.raises(ValueError):
            quadratic_setup((1, 1))

    def test_falls_to_q_when_p_is_zero(self):
        # c = (-1, 3, -3, 1): both alpha and beta vanish, so p is the zero
        # polynomial; the variant with the doubled last index takes over
        rd = quadratic_setup((-1, 3, -3, 1))
        assert rd.chosen_poly == "q"
        c = (-1, 3, -3, 1)
        assert sum(cl * ul * ul for cl, ul in zip(c, rd.u)) == 0
        assert rd.b == 2 * sum(cl * ul for cl, ul in zip(c, rd.u)) > 0

    def test_falls_to_q_when_p_has_only_zero_root(self):
        # c = (-1, 2, -1): alpha = 0 but beta != 0, so p = beta*t^2
        rd = quadratic_setup((-1, 2, -1))
        assert rd.chosen_poly == "q"
        assert rd.u == (23, 17, -7)

    def test_both_degenerate_raises(self):
        # k = 4 vector where neither variant has a non-zero rational root
        with pytest.raises(DegenerateCoefficientsError):
            quadratic_setup((-25, 51, -27, 1))

    def test_negation_branch(self):
        rd = quadratic_setup((1, -2, 1))
        assert rd.u == (-23, -17, 7)
        assert sum(cl * ul for cl, ul in zip((1, -2, 1), rd.u)) > 0

    @pytest.mark.parametrize("k", [2, 3])
    def test_exhaustive_grid(self, k):
        for c in itertools.product(range(-5, 6), repeat=k):
            if any(v == 0 for v in c) or sum(c) != 0:
                continue
            rd = quadratic_setup(c)  # no vector in this grid is degenerate
            assert sum(cl * ul * ul for cl, ul in zip(c, rd.u)) == 0
            assert sum(cl * ul for cl, ul in zip(c, rd.u)) > 0
            assert rd.b == 2 * sum(cl * ul for cl, ul in zip(c, rd.u))
            assert len(set(rd.u)) == k
            # the flip branch never fires for root-built u: the cross sum is
            # num * alpha / 2, and a usable non-zero root needs both non-zero
            assert rd.sign_flips == ()

    def test_root_denominator_recorded(self):
        rd = quadratic_setup((1, -1))
        assert rd.root_t.denominator == rd.d == 3


class TestLiftColoring:
    def test_multiples_inherit(self):
        chi = Coloring.modular(10, 2)
        lifted = lift_coloring(chi, 4)
        assert lifted.n == 40 and lifted.r == 2 + 4 - 1
        for m in range(1, 11):
            assert lifted.color_of(4 * m) == chi.color_of(m)

    def test_residues_get_fresh_colors(self):
        chi = Coloring.modular(10, 2)
        lifted = lift_coloring(chi, 4)
        # 7 = 4*1 + 3 -> fresh color r + 3 = 5
        assert lifted.color_of(7) == 5
        assert lifted.color_of(1) == 2 + 1
        assert lifted.color_of(6) == 2 + 2

    def test_explicit_r_must_match(self):
        chi = Coloring.modular(10, 2)
        assert lift_coloring(chi, 3, r=2).r == 4
        with pytest.raises(ValueError):
            lift_coloring(chi, 3, r=5)

    def test_b_lower_bound(self):
        with pytest.raises(ValueError):
            lift_coloring(Coloring.solid(5), 1)

    def test_no_witness_leaks_off_multiples(self):
        # monochromatic witnesses of the u-pattern under the lift sit on
        # multiples of b; spot-check color classes are as designed
        chi = Coloring.solid(20)
        lifted = lift_coloring(chi, 2)
        odd_colors = {lifted.color_of(v) for v in range(1, 41, 2)}
        assert odd_colors == {2}  # r + 1


class TestExpLift:
    def test_powers_of_two(self):
        chi = Coloring.modular(20, 2)
        lifted = exp_lift(chi, 2)
        # 2, 4, 8, 16 are all even
        assert lifted.n == 4
        assert [lifted.color_of(i) for i in range(1, 5)] == [2, 2, 2, 2]

    def test_mixed_colors(self):
        chi = Coloring.from_sequence([1, 2, 1, 1, 1, 1, 1, 2, 2])
        lifted = exp_lift(chi, 3)
        # 3 -> color 1, 9 -> color 2
        assert [lifted.color_of(i) for i in range(1, 3)] == [1, 2]

    def test_domain_too_small(self):
        with pytest.raises(ValueError):
            exp_lift(Coloring.solid(1), 2)
        with pytest.raises(ValueError):
            exp_lift(Coloring.solid(5), 1)


class TestSolveQuadratic:
    def test_all_one_coloring(self):
        chi = Coloring.solid(200)
        sol = solve_quadratic((1, -1), chi)
        assert sol is not None
        assert sol.a == (8, 3, 1)
        assert sol.color == 1
        assert sol.source_witness == (8, 4)
        assert verify_quad_solution((1, -1), chi, sol).ok

    def test_parity_coloring(self):
        chi = Coloring.modular(200, 2)
        sol = solve_quadratic((1, -1), chi)
        assert sol is not None
        assert verify_quad_solution((1, -1), chi, sol).ok
        # a1^2 - a2^2 = a0 with all entries even-colored
        a0, a1, a2 = sol.a
        assert a1 * a1 - a2 * a2 == a0

    def test_three_term_equation(self):
        chi = Coloring.solid(3000)
        sol = solve_quadratic((1, 1, -2), chi)
        assert sol is not None
        a0, a1, a2, a3 = sol.a
        assert a1 * a1 + a2 * a2 - 2 * a3 * a3 == a0
        assert verify_quad_solution((1, 1, -2), chi, sol).ok

    def test_returns_none_when_domain_too_small(self):
        assert solve_quadratic((1, -1), Coloring.solid(3)) is None

    def test_search_box_limits_scan(self):
        chi = Coloring.solid(200)
        sol = solve_quadratic((1, -1), chi, search_box=4)
        # box caps assignments at 4 < b = 4's first useful multiple pair (8,4)
        assert sol is None

    @pytest.mark.parametrize("seed", [0, 1, 2, 3])
    def test_random_colorings_verify(self, seed):
        chi = Coloring.random_uniform(300, 2, seed)
        sol = solve_quadratic((1, -1), chi)
        if sol is not None:
            assert verify_quad_solution((1, -1), chi, sol).ok


class TestVerifyQuadSolution:
    def setup_method(self):
        self.chi = Coloring.solid(200)
        self.sol = solve_quadratic((1, -1), self.chi)

    def test_rejects_wrong_equation(self):
        from ramseykit.reduction import QuadSolution

        bad = QuadSolution((9, 3, 1), 1, (8, 4))
        res = verify_quad_solution((1, -1), self.chi, bad)
        assert not res.ok and "equation" in res.reason

    def test_rejects_duplicates(self):
        from ramseykit.reduction import QuadSolution

        bad = QuadSolution((8, 3, 3), 1, (8, 4))
        assert "distinct" in verify_quad_solution((1, -1), self.chi, bad).reason

    def test_rejects_wrong_color(self):
        chi = Coloring.modular(200, 2)
        sol = solve_quadratic((1, -1), chi)
        from ramseykit.reduction import QuadSolution

        bad = QuadSolution(sol.a, 1 if sol.color == 2 else 2, sol.source_witness)
        assert not verify_quad_solution((1, -1), chi, bad).ok

    def test_rejects_out_of_domain(self):
        from ramseykit.reduction import QuadSolution

        bad = QuadSolution((399, 20, 1), 1, (1, 1))
        res = verify_quad_solution((1, -1), Coloring.solid(200), bad)
        assert not res.ok and "domain" in res.reason

    def test_rejects_nonpositive(self):
        from ramseykit.reduction import QuadSolution

        bad = QuadSolution((8, 3, 0), 1, (8, 4))
        assert "positive" in verify_quad_solution((1, -1), self.chi, bad).reason

    def test_length_mismatch(self):
        from ramseykit.reduction import QuadSolution

        bad = QuadSolution((8, 3), 1, (8, 4))
        assert not verify_quad_solution((1, -1), self.chi, bad).ok


class TestSolutionJson:
    def test_shape(self):
        chi = Coloring.solid(200)
        rd = quadratic_setup((1, -1))
        sol = solve_quadratic((1, -1), chi)
        data = solution_to_json(rd, sol)
        assert data == {
            "c": [1, -1],
            "u": [1, -1],
            "b": 4,
            "a": [8, 3, 1],
            "color": 1,
            "source_witness": [8, 4],
        }
