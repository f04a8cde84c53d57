"""Avoiding-coloring search, thresholds, certificates, and the greedy heuristic.

The backtracking search explores canonical colorings only (color t may appear
only after 1..t-1 all have), so its find-all output is compared against the
canonical filter of the full enumeration oracle, and its exists/threshold
answers against the unfiltered oracle.
"""

import json

import pytest

from ramseykit.bruteforce import (
    naive_avoiding_canonical,
    naive_exists_avoiding,
    naive_threshold,
)
from ramseykit.coloring import Coloring
from ramseykit.families import PatternFamily, preset_family
from ramseykit.search import (
    AvoidCertificate,
    IncompleteBoxError,
    SearchBudgetExceeded,
    SearchStats,
    exists_avoiding,
    find_all_avoiding,
    greedy_avoider,
    threshold,
    verify_certificate,
)
from ramseykit.witnesses import count_witnesses

BOX_COMPLETE_PRESETS = [
    preset_family("schur"),
    preset_family("vdw", 3),
    preset_family("geometric", 2),
    preset_family("x_xp1"),
    preset_family("x_y_3xmy"),
    preset_family("xyxy"),
]


class TestExistsAvoiding:
    @pytest.mark.parametrize("fam", BOX_COMPLETE_PRESETS, ids=lambda f: f.name)
    @pytest.mark.parametrize("n", [1, 3, 6, 9, 12])
    def test_agrees_with_naive_r2(self, fam, n):
        got = exists_avoiding(fam, 2, n) is not None
        assert got == naive_exists_avoiding(fam, 2, n)

    @pytest.mark.parametrize("n", [1, 4, 8, 11])
    def test_agrees_with_naive_r3_schur(self, n):
        fam = preset_family("schur")
        got = exists_avoiding(fam, 3, n) is not None
        assert got == naive_exists_avoiding(fam, 3, n)

    def test_certificate_is_verified_and_reusable(self):
        cert = exists_avoiding(preset_family("schur"), 2, 4)
        assert cert is not None and cert.verified
        assert verify_certificate(cert)
        assert count_witnesses(preset_family("schur"), cert.to_coloring()) == 0

    def test_schur_n4_canonical_classes(self):
        # canonical-first search yields classes {1,4} and {2,3}
        cert = exists_avoiding(preset_family("schur"), 2, 4)
        chi = cert.to_coloring()
        assert chi.class_values(1).tolist() == [1, 4]
        assert chi.class_values(2).tolist() == [2, 3]

    def test_none_when_forced(self):
        assert exists_avoiding(preset_family("schur"), 2, 5) is None
        assert exists_avoiding(preset_family("xyxy"), 2, 4) is None

    def test_box_incomplete_rejected_by_default(self):
        fam = PatternFamily.from_texts(2, ["x0", "x0 - x1"])
        with pytest.raises(IncompleteBoxError):
            exists_avoiding(fam, 2, 10)

    def test_box_relative_stamps_certificate(self):
        fam = PatternFamily.from_texts(2, ["x0", "x0 - x1"])
        cert = exists_avoiding(fam, 2, 3, allow_box_relative=True)
        if cert is not None:
            assert cert.box_relative

    def test_budget_raises(self):
        with pytest.raises(SearchBudgetExceeded):
            exists_avoiding(preset_family("schur"), 3, 13, max_nodes=50)

    def test_stats_accumulate(self):
        stats = SearchStats()
        exists_avoiding(preset_family("schur"), 2, 5, stats=stats)
        assert stats.nodes > 0

    @pytest.mark.parametrize("n", [10, 13])
    def test_parallel_matches_serial_existence(self, n):
        fam = preset_family("schur")
        serial = exists_avoiding(fam, 3, n) is not None
        parallel = exists_avoiding(fam, 3, n, jobs=3) is not None
        assert serial == parallel


class TestFindAllAvoiding:
    @pytest.mark.parametrize("fam", BOX_COMPLETE_PRESETS, ids=lambda f: f.name)
    @pytest.mark.parametrize("n", [2, 4, 6, 8])
    def test_matches_canonical_oracle(self, fam, n):
        mine = [list(c) for c in find_all_avoiding(fam, 2, n)]
        oracle = [list(c) for c in naive_avoiding_canonical(fam, 2, n)]
        assert mine == oracle

    @pytest.mark.parametrize("n", [4, 8, 11])
    def test_matches_canonical_oracle_r3(self, n):
        fam = preset_family("schur")
        mine = [list(c) for c in find_all_avoiding(fam, 3, n)]
        oracle = [list(c) for c in naive_avoiding_canonical(fam, 3, n)]
        assert mine == oracle

    def test_every_result_is_avoiding(self):
        fam = preset_family("xyxy")
        sols = find_all_avoiding(fam, 3, 6)
        assert sols
        for sol in sols:
            chi = Coloring.from_sequence(list(sol), r=3)
            assert count_witnesses(fam, chi) == 0


class TestThreshold:
    def test_schur_2(self):
        res = threshold(preset_family("schur"), 2, 20)
        assert res.exact and res.value == 5
        assert res.certificate.n == 4
        assert verify_certificate(res.certificate)

    def test_schur_3(self):
        res = threshold(preset_family("schur"), 3, 20)
        assert res.exact and res.value == 14

    def test_vdw3(self):
        res = threshold(preset_family("vdw", 3), 2, 20)
        assert res.exact and res.value == 9
        assert res.value == naive_threshold(preset_family("vdw", 3), 2, 12)

    def test_xyxy(self):
        res = threshold(preset_family("xyxy"), 2, 20)
        assert res.exact and res.value == 4

    def test_geometric_is_trivial(self):
        # x0 alone with x0*x1 <= n forces x1 = 1 at n = 1: single-value sets
        # complete at N = 1 for every r
        for r in (1, 2, 3):
            res = threshold(preset_family("geometric", 2), r, 5)
            assert res.exact and res.value == 1

    def test_lower_bound_shape(self):
        res = threshold(preset_family("x_xp1"), 2, 12)
        assert not res.exact and res.value == 13
        assert res.describe() == "T >= 13"
        assert res.certificate.n == 12

    def test_monotone_in_r(self):
        fam = preset_family("schur")
        t2 = threshold(fam, 2, 20).value
        t3 = threshold(fam, 3, 20).value
        assert t2 <= t3

    def test_extension_antitone(self):
        # adding a term can only shrink the avoider space, so T can only drop
        base = preset_family("vdw", 3)
        extended = base.with_terms("x0 + 3*x1")  # vdw:4 superset
        t_base = threshold(base, 2, 20)
        t_ext = threshold(extended, 2, 40)
        assert t_ext.value >= t_base.value  # longer progressions are harder to force

    def test_box_incomplete_rejected(self):
        with pytest.raises(IncompleteBoxError):
            threshold(PatternFamily.from_texts(2, ["x0", "x0 - x1"]), 2, 10)

    def test_budget_propagates(self):
        with pytest.raises(SearchBudgetExceeded):
            threshold(preset_family("schur"), 3, 14, max_nodes=30)

    def test_json_round_trip(self):
        res = threshold(preset_family("schur"), 2, 20)
        data = json.loads(json.dumps(res.to_json()))
        assert data["value"] == 5 and data["exact"] is True
        cert = AvoidCertificate.from_json(data["certificate"])
        assert verify_certificate(cert)


class TestColorPermutationEquivariance:
    @pytest.mark.parametrize("fam", BOX_COMPLETE_PRESETS, ids=lambda f: f.name)
    def test_witness_count_invariant(self, fam):
        chi = Coloring.random_uniform(10, 3, 5)
        for perm in ([2, 3, 1], [3, 2, 1], [1, 3, 2]):
            assert count_witnesses(fam, chi) == count_witnesses(fam, chi.permuted(perm))

    def test_avoider_permutes_to_avoider(self):
        cert = exists_avoiding(preset_family("schur"), 2, 4)
        chi = cert.to_coloring().permuted([2, 1])
        assert count_witnesses(preset_family("schur"), chi) == 0


class TestGreedy:
    def test_first_fit_x_xp1(self):
        cert = greedy_avoider(preset_family("x_xp1"), 2, 200, "first-fit")
        assert cert is not None and cert.verified
        assert verify_certificate(cert)

    def test_first_fit_dead_ends_on_schur(self):
        # first-fit paints itself into a corner: greedily feasible prefixes
        # reach a position where both colors complete a triple, and with no
        # backtracking the pass returns nothing
        assert greedy_avoider(preset_family("schur"), 2, 200, "first-fit") is None

    def test_random_strategy_seeded(self):
        a = greedy_avoider(preset_family("x_xp1"), 2, 50, "random", seed=11)
        b = greedy_avoider(preset_family("x_xp1"), 2, 50, "random", seed=11)
        assert (a is None) == (b is None)
        if a is not None:
            assert a.to_coloring() == b.to_coloring()

    def test_random_finds_schur_avoider_small(self):
        cert = greedy_avoider(preset_family("schur"), 2, 4, "random", seed=0, restarts=64)
        assert cert is not None and verify_certificate(cert)

    def test_unknown_strategy(self):
        with pytest.raises(ValueError):
            greedy_avoider(preset_family("schur"), 2, 5, "clever")


class TestCertificates:
    def test_from_coloring_verifies(self):
        chi = Coloring.from_sequence([1, 2, 2, 1])
        cert = AvoidCertificate.from_coloring(preset_family("schur"), chi)
        assert cert.verified

    def test_from_coloring_rejects_non_avoider(self):
        with pytest.raises(ValueError):
            AvoidCertificate.from_coloring(preset_family("schur"), Coloring.solid(5))

    def test_tampered_certificate_fails(self):
        cert = exists_avoiding(preset_family("schur"), 2, 4)
        data = cert.to_json()
        data["coloring_rle"] = [[1, 4]]  # all-one is not avoiding at n=4
        assert not verify_certificate(AvoidCertificate.from_json(data))

    def test_json_round_trip(self):
        cert = exists_avoiding(preset_family("schur"), 2, 4)
        back = AvoidCertificate.from_json(json.loads(json.dumps(cert.to_json())))
        assert back.to_coloring() == cert.to_coloring()
        assert back.family == cert.family


class TestGeneratorContainment:
    """How the s=1 {0, id} generated family relates to the classic presets."""

    def test_generated_family_is_the_sum_product_preset(self):
        from ramseykit.families import prefix_product_family

        gen = prefix_product_family(1, [["0", "x0"]])
        assert gen.fingerprint() == preset_family("xyxy").fingerprint()

    def test_term_subset_monotonicity(self):
        # dropping terms can only gain witnesses: every {x, x+y, xy} witness
        # assignment is a witness of the sub-family {x, x+y}
        from ramseykit.witnesses import iter_witnesses

        sub = PatternFamily.from_texts(2, ["x0", "x0 + x1"])
        chi = Coloring.random_uniform(20, 2, 9)
        sub_assignments = {w.assignment for w in iter_witnesses(preset_family("xyxy"), chi)}
        all_sub = {w.assignment for w in iter_witnesses(sub, chi)}
        assert sub_assignments <= all_sub

    def test_product_witness_is_not_a_sum_triple_witness(self):
        # {x, x+y, xy} monochromatic does NOT make {x, y, x+y} monochromatic:
        # at (2,4), colors of 2, 8, 6 agree while 4 differs
        from ramseykit.witnesses import Instance, Witness, verify_witness

        colors = [1] * 10
        colors[4 - 1] = 2
        chi = Coloring.from_sequence(colors)
        w = Witness(Instance((2, 4), (2, 6, 8)), 1)
        assert verify_witness(preset_family("xyxy"), chi, w).ok
        schur_w = Witness(Instance((2, 4), (2, 4, 6)), 1)
        assert not verify_witness(preset_family("schur"), chi, schur_w).ok
