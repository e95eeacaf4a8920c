"""Voting-rule tabulation tests, anchored on the two worked elections."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weakirv import core
from weakirv.core import (
    EmptyProfileError,
    Profile3,
    analyze,
    argmax_set,
    argmin_set,
    borda_scores,
    bucklin_result,
    irv_winner,
    most_last_place,
    normalize_ranking,
    pairwise_and_condorcet,
    plurality,
)

A, B, C = 0, 1, 2


profiles = st.builds(
    Profile3,
    st.tuples(*[st.integers(0, 40)] * 6),
    st.tuples(*[st.integers(0, 15)] * 3),
).filter(lambda p: p.total > 0)

complete_profiles = st.builds(
    Profile3, st.tuples(*[st.integers(0, 40)] * 6)
).filter(lambda p: p.total > 0)


class TestProfile:
    def test_normalize_two_candidate_ranking(self):
        assert normalize_ranking((0, 1)) == (0, 1, 2)
        assert normalize_ranking((2, 0)) == (2, 0, 1)
        assert normalize_ranking((1,)) == (1,)

    def test_rejects_duplicates(self):
        with pytest.raises(ValueError):
            normalize_ranking((0, 0))

    def test_from_ballots_matches_table1(self, table1):
        built = Profile3.from_ballots(
            [(6, (A, B, C)), (8, (B, C)), (4, (C, A)), (1, (C, B, A))]
        )
        assert built == table1

    def test_negative_counts_rejected(self):
        with pytest.raises(ValueError):
            Profile3((1, -1, 0, 0, 0, 0))

    def test_totals(self, table5):
        assert table5.total == 8915
        assert not table5.is_complete
        assert table5.first_place_tallies() == (3236, 2879, 2800)


class TestIrv:
    def test_table1_second_round(self, table1):
        winner, rounds = irv_winner(table1, 0)
        assert winner == A
        assert rounds[0].tallies == (6, 8, 5)
        assert rounds[0].eliminated == C
        assert rounds[1].tallies == (10, 9, None)

    def test_unanimous_majority_round1(self):
        winner, rounds = irv_winner(Profile3((9, 0, 0, 0, 0, 0)), 0)
        assert winner == A
        assert len(rounds) == 1

    def test_table5_worlobah_wins(self, table5):
        winner, rounds = irv_winner(table5, 0)
        assert winner == B  # Worlobah
        assert rounds[0].eliminated == C  # Gordon
        assert rounds[1].tallies == (4037, 4056, None)
        # Gordon's 822 bullet ballots exhaust.
        assert rounds[1].active == 8915 - 822

    def test_empty_profile(self):
        with pytest.raises(EmptyProfileError):
            irv_winner(Profile3((0,) * 6), 0)

    def test_tie_break_is_seeded(self):
        # fully symmetric profile: elimination and victory both tie
        p = Profile3((1, 1, 1, 1, 1, 1))
        winners = {irv_winner(p, seed)[0] for seed in range(60)}
        assert winners == {A, B, C}
        assert irv_winner(p, 7) == irv_winner(p, 7)


class TestPlurality:
    def test_table1(self, table1):
        winner, loser = plurality(table1)
        assert winner == (B,)
        assert loser == (C,)

    def test_symmetric_tie(self):
        winner, loser = plurality(Profile3((1, 1, 1, 1, 1, 1)))
        assert winner == (A, B, C) and loser == (A, B, C)

    def test_table5_gordon_last(self, table5):
        _, loser = plurality(table5)
        assert loser == (C,)


class TestBorda:
    def test_table1_complete(self, table1):
        assert borda_scores(table1, "COMPLETE") == (16, 23, 18)

    def test_single_bullet_avg(self):
        p = Profile3((0,) * 6, (1, 0, 0))
        assert borda_scores(p, "AVG") == (2, Fraction(1, 2), Fraction(1, 2))

    def test_table5_pm(self, table5):
        # alphabetical order Arab, Gordon, Worlobah = labels A, C, B
        s = borda_scores(table5, "PM")
        assert (s[A], s[C], s[B]) == (8361, 7807, 7691)

    def test_table5_om_and_avg_losers(self, table5):
        om = borda_scores(table5, "OM")
        avg = borda_scores(table5, "AVG")
        assert min(range(3), key=lambda c: om[c]) == A      # Arab
        assert min(range(3), key=lambda c: avg[c]) == C     # Gordon

    def test_complete_variant_rejects_bullets(self, table5):
        with pytest.raises(ValueError):
            borda_scores(table5, "COMPLETE")

    @given(complete_profiles)
    def test_complete_scores_sum_to_3v(self, p):
        assert sum(borda_scores(p, "COMPLETE")) == 3 * p.total

    @given(profiles)
    def test_partial_score_sums(self, p):
        n_bullets = sum(p.bullet_counts)
        v = p.total
        # a full ballot awards 3 points in total; a bullet awards 2 plus
        # what the variant gives the two unranked candidates
        assert sum(borda_scores(p, "OM")) == 3 * v + n_bullets
        assert sum(borda_scores(p, "PM")) == 3 * v - n_bullets
        assert sum(borda_scores(p, "AVG")) == 3 * v


class TestBucklin:
    def test_table1_round2(self, table1):
        r = bucklin_result(table1)
        assert r.declared_round == 2
        assert r.sums == (10, 15, 13)
        assert r.winner == (B,) and r.loser == (A,)

    def test_majority_in_round1(self):
        p = Profile3((6, 0, 2, 0, 1, 0))
        r = bucklin_result(p)
        assert r.declared_round == 1
        assert r.loser == (C,)

    def test_table5_round2(self, table5):
        r = bucklin_result(table5)
        assert r.declared_round == 2
        assert (r.sums[A], r.sums[C], r.sums[B]) == (5125, 5007, 4812)
        assert r.loser == (B,)  # Worlobah

    def test_no_majority_ever(self):
        # nothing but bullets: round-3 sums equal round-1 tallies
        p = Profile3((0,) * 6, (3, 2, 1))
        r = bucklin_result(p)
        assert not r.majority_reached
        assert r.declared_round == 3
        assert r.winner == (A,) and r.loser == (C,)

    @given(complete_profiles)
    def test_complete_round3_reaches_majority(self, p):
        assert bucklin_result(p).majority_reached


class TestMostLastPlace:
    def test_table1(self, table1):
        assert most_last_place(table1) == (A,)

    def test_requires_complete(self, table5):
        with pytest.raises(ValueError):
            most_last_place(table5)

    def test_symmetric_tie(self):
        assert most_last_place(Profile3((2, 2, 2, 2, 2, 2))) == (A, B, C)

    def test_majority_winner_with_most_lasts(self):
        # A holds a majority yet collects the most last places:
        # lasts are A: b2+c2, B: a2+c1, C: a1+b1.
        p = Profile3((6, 6, 0, 5, 0, 6))
        assert plurality(p)[0] == (A,)
        assert 2 * p.first_place_tallies()[A] > p.total
        assert most_last_place(p) == (A,)


class TestPairwise:
    def test_table1_c_beats_a(self, table1):
        # A beats B 10-9, C beats A 13-6, B beats C 14-5: a cycle
        r = pairwise_and_condorcet(table1)
        assert r.margins[C][A] == 13 - 6
        assert r.condorcet_winner is None and r.condorcet_loser is None
        assert r.minimax_winners == (B,)  # B's worst defeat (1) is minimal

    def test_unanimous(self):
        r = pairwise_and_condorcet(Profile3((7, 0, 0, 0, 0, 0)))
        assert r.condorcet_winner == A and r.condorcet_loser == C

    def test_table5_cycle(self, table5):
        r = pairwise_and_condorcet(table5)
        assert r.condorcet_winner is None and r.condorcet_loser is None
        assert r.margins[A][C] > 0      # Arab beats Gordon
        assert r.margins[C][B] > 0      # Gordon beats Worlobah
        assert r.margins[B][A] > 0      # Worlobah beats Arab
        assert r.minimax_winners == (A,)  # Arab's worst loss (19) is minimal

    @given(profiles)
    def test_margins_antisymmetric(self, p):
        m = pairwise_and_condorcet(p).margins
        for x in range(3):
            for y in range(3):
                assert m[x][y] == -m[y][x]


class TestAnalyze:
    def test_table1_triple_coincidence(self, table1):
        out = analyze(table1, 0)
        assert out.irv_winner == A
        assert out.borda_losers["COMPLETE"] == (A,)
        assert out.bucklin_loser == (A,)
        flags = out.strict_weak_winner_flags()
        assert flags["borda_complete"] and flags["bucklin"]
        assert flags["most_last_place"]  # A is last on 8+1=9 ballots, the max
        assert out.most_last_place == (A,)

    def test_unanimous_no_flags(self):
        out = analyze(Profile3((9, 0, 0, 0, 0, 0)), 0)
        assert not any(out.strict_weak_winner_flags().values())

    def test_table5_flags(self, table5):
        out = analyze(table5, 0)
        assert out.irv_winner == B
        flags = out.strict_weak_winner_flags()
        assert flags["bucklin"] and flags["borda_pm"]
        assert not flags["borda_om"] and not flags["borda_avg"]
        assert out.most_last_place is None

    def test_deterministic(self, table5):
        a = analyze(table5, 123)
        b = analyze(table5, 123)
        assert a == b

    @given(complete_profiles, st.integers(0, 2**31))
    @settings(max_examples=200)
    def test_irv_never_elects_strict_plurality_loser(self, p, seed):
        tallies = p.first_place_tallies()
        if len(set(tallies)) == 3:
            winner, _ = irv_winner(p, seed)
            assert tallies[winner] != min(tallies)

    @given(profiles, st.integers(0, 2**31))
    @settings(max_examples=300)
    def test_irv_never_elects_condorcet_loser(self, p, seed):
        out = analyze(p, seed)
        if out.condorcet_loser is not None:
            assert out.irv_winner != out.condorcet_loser

    @given(complete_profiles)
    def test_bucklin_loser_is_mlp_without_majority(self, p):
        r = bucklin_result(p)
        if r.declared_round == 2:
            assert set(r.loser) == set(most_last_place(p))

    @given(profiles, st.permutations([0, 1, 2]))
    @settings(max_examples=200)
    def test_relabeling_equivariance(self, p, perm):
        q = p.relabeled(perm)
        assert q.total == p.total
        assert sorted(q.first_place_tallies()) == sorted(p.first_place_tallies())
        pt = p.first_place_tallies()
        qt = q.first_place_tallies()
        for c in range(3):
            assert qt[perm[c]] == pt[c]


def test_argset_helpers():
    assert argmin_set((3, 1, 1)) == (B, C)
    assert argmax_set((3, 1, 3)) == (A, C)
