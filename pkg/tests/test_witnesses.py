"""Witness enumeration, counting, verification, and serialization.

The pruned enumerator is cross-checked against the no-pruning oracle in
``bruteforce`` throughout; any divergence is a bug in the pruning logic.
"""

import numpy as np
import pytest

from ramseykit.bruteforce import naive_all_witnesses, naive_count_witnesses, naive_instances
from ramseykit.coloring import Coloring
from ramseykit.families import PatternFamily, preset_family, reduction_family
from ramseykit.witnesses import (
    Instance,
    Witness,
    count_witnesses,
    enumerate_instances,
    enumeration_complete,
    find_witness,
    find_witnesses,
    iter_witnesses,
    verify_witness,
    witness_from_json,
    witness_to_json,
)

ALL_PRESETS = [
    preset_family("schur"),
    preset_family("vdw", 3),
    preset_family("geometric", 2),
    preset_family("x_xp1"),
    preset_family("x_y_3xmy"),
    preset_family("xyxy"),
]


class TestEnumerateInstances:
    @pytest.mark.parametrize("fam", ALL_PRESETS, ids=lambda f: f.name)
    @pytest.mark.parametrize("n", [1, 2, 5, 9])
    def test_matches_naive_oracle(self, fam, n):
        pruned = [(i.assignment, i.term_values) for i in enumerate_instances(fam, n)]
        assert pruned == naive_instances(fam, n)

    def test_lex_order(self):
        got = [inst.assignment for inst in enumerate_instances(preset_family("schur"), 4)]
        assert got == sorted(got)
        assert got[0] == (1, 1)

    def test_box_restricts_assignments(self):
        fam = preset_family("xyxy")
        boxed = list(enumerate_instances(fam, 20, box=[(2, 3), (2, 3)]))
        assert all(2 <= v <= 3 for inst in boxed for v in inst.assignment)
        assert len(boxed) == 4

    def test_uniform_int_box(self):
        fam = preset_family("schur")
        a = list(enumerate_instances(fam, 10, box=4))
        b = list(enumerate_instances(fam, 10, box=[(1, 4), (1, 4)]))
        assert a == b

    def test_negative_coefficient_admissibility(self):
        # 3*x0 - x1 must stay in [1..n]
        fam = preset_family("x_y_3xmy")
        for inst in enumerate_instances(fam, 10):
            assert all(1 <= v <= 10 for v in inst.term_values)

    def test_empty_when_constant_exceeds_n(self):
        fam = PatternFamily.from_texts(1, ["x0", "x0 + 7"])
        assert list(enumerate_instances(fam, 7)) == []
        assert len(list(enumerate_instances(fam, 8))) == 1

    def test_enumeration_complete(self):
        assert enumeration_complete(preset_family("schur"), 10)
        # a shrunken box can miss admissible assignments
        assert not enumeration_complete(preset_family("schur"), 10, box=5)
        # negative coefficients leave x1 unbounded by term admissibility
        assert not enumeration_complete(PatternFamily.from_texts(2, ["x0", "x0 - x1"]), 10)


class TestFindAndIterate:
    def test_first_witness_all_one_xyxy(self):
        # (1,1) gives values (1, 2, 1): the lex-least witness
        w = find_witness(preset_family("xyxy"), Coloring.solid(6))
        assert w.assignment == (1, 1)
        assert w.term_values == (1, 2, 1)
        assert w.color == 1

    def test_distinct_skips_collapsing_assignments(self):
        # (1,1) gives (1,2,1): rejected; (1,2) gives (1,3,2): first distinct hit
        w = find_witness(preset_family("xyxy"), Coloring.solid(6), distinct=True)
        assert w.assignment == (1, 2)
        assert w.term_values == (1, 3, 2)
        assert len(set(w.term_values)) == len(w.term_values)

    def test_family_distinct_default(self):
        fam = PatternFamily.from_texts(2, ["x0", "x0 + x1", "x0*x1"], distinct_required=True)
        w = find_witness(fam, Coloring.solid(6))
        assert len(set(w.term_values)) == 3

    def test_no_witness_on_avoider(self):
        chi = Coloring.from_sequence([1, 2, 2, 1])  # schur avoider at n=4
        assert find_witness(preset_family("schur"), chi) is None

    @pytest.mark.parametrize("fam", ALL_PRESETS, ids=lambda f: f.name)
    def test_iter_matches_naive(self, fam):
        chi = Coloring.random_uniform(9, 2, 3)
        mine = [(w.assignment, w.term_values, w.color) for w in iter_witnesses(fam, chi)]
        assert mine == naive_all_witnesses(fam, chi)

    def test_find_witnesses_list(self):
        ws = find_witnesses(preset_family("schur"), Coloring.solid(4))
        assert [w.assignment for w in ws] == [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 1)]


class TestCounting:
    @pytest.mark.parametrize("fam", ALL_PRESETS, ids=lambda f: f.name)
    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_vectorized_count_matches_naive(self, fam, seed):
        chi = Coloring.random_uniform(11, 2, seed)
        assert count_witnesses(fam, chi) == naive_count_witnesses(fam, chi)

    def test_count_with_distinct(self):
        chi = Coloring.solid(6)
        fam = preset_family("xyxy")
        assert count_witnesses(fam, chi, distinct=True) == naive_count_witnesses(
            fam, chi, distinct=True
        )

    def test_count_with_box(self):
        chi = Coloring.solid(10)
        fam = preset_family("schur")
        boxed = count_witnesses(fam, chi, box=3)
        assert boxed == sum(
            1 for _ in iter_witnesses(fam, chi, box=3)
        )

    def test_bignum_fallback_agrees(self):
        # term x0^40 overflows int64 instantly, forcing the streaming path
        fam = PatternFamily.from_texts(1, ["x0", "x0^40"])
        chi = Coloring.solid(2)
        assert count_witnesses(fam, chi) == 1  # only x0=1 keeps x0^40 <= 2

    def test_zero_on_avoider(self):
        chi = Coloring.from_sequence([1, 2, 2, 1])
        assert count_witnesses(preset_family("schur"), chi) == 0


class TestVerifyWitness:
    def setup_method(self):
        self.fam = preset_family("schur")
        self.chi = Coloring.solid(10)
        self.good = Witness(Instance((2, 3), (2, 3, 5)), 1)

    def test_good(self):
        res = verify_witness(self.fam, self.chi, self.good)
        assert res.ok and bool(res)

    def test_bad_recomputation(self):
        w = Witness(Instance((2, 3), (2, 3, 6)), 1)
        res = verify_witness(self.fam, self.chi, w)
        assert not res.ok
        assert "term 3" in res.reason and "!=" in res.reason

    def test_out_of_range(self):
        w = Witness(Instance((9, 9), (9, 9, 18)), 1)
        res = verify_witness(self.fam, self.chi, w)
        assert not res.ok and "out of range" in res.reason

    def test_wrong_color(self):
        chi = Coloring.modular(10, 2)
        w = Witness(Instance((2, 2), (2, 2, 4)), 1)
        res = verify_witness(self.fam, chi, w)
        assert not res.ok
        assert "term 1 colored 2 != 1" in res.reason

    def test_arity_mismatch(self):
        w = Witness(Instance((2,), (2, 3, 5)), 1)
        assert not verify_witness(self.fam, self.chi, w).ok

    def test_distinct_enforced_when_required(self):
        fam = PatternFamily.from_texts(2, ["x0", "x0*x1"], distinct_required=True)
        w = Witness(Instance((2, 1), (2, 2)), 1)
        res = verify_witness(fam, self.chi, w)
        assert not res.ok and "distinct" in res.reason

    def test_nonpositive_assignment(self):
        w = Witness(Instance((0, 3), (0, 3, 3)), 1)
        assert not verify_witness(self.fam, self.chi, w).ok


class TestSerialization:
    def test_round_trip_with_family(self):
        fam = preset_family("xyxy")
        chi = Coloring.solid(6)
        w = find_witness(fam, chi)
        data = witness_to_json(fam, chi, w)
        assert data["family_name"] == "xyxy"
        assert data["n"] == 6 and data["r"] == 1
        back, fam_back = witness_from_json(data)
        assert back == w and fam_back == fam

    def test_without_family(self):
        data = {"assignment": [1, 2], "term_values": [1, 2, 3], "color": 2}
        w, fam = witness_from_json(data)
        assert fam is None and w.assignment == (1, 2) and w.color == 2

    def test_reduction_family_witness_round_trip(self):
        fam = reduction_family((1, -1))
        chi = Coloring.solid(30)
        w = find_witness(fam, chi)
        back, fam_back = witness_from_json(witness_to_json(fam, chi, w))
        assert verify_witness(fam_back, chi, back).ok
