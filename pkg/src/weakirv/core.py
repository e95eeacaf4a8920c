"""Preference profiles and voting-rule tabulation for 3-candidate elections.

Candidates carry the canonical labels A, B, C (indices 0, 1, 2).  A complete
profile is described by six ranking counts in the fixed column order

    a1: A>B>C   a2: A>C>B   b1: B>A>C   b2: B>C>A   c1: C>A>B   c2: C>B>A

plus three bullet-vote counts (ballots ranking a single candidate).  A ballot
ranking exactly two candidates is equivalent to the full ranking obtained by
appending the missing candidate, so it is normalized away at construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

CANDIDATES = (0, 1, 2)
CANDIDATE_NAMES = "ABC"

#: Full rankings in profile column order (a1, a2, b1, b2, c1, c2).
RANKINGS = ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))
RANKING_INDEX = {r: i for i, r in enumerate(RANKINGS)}

BORDA_VARIANTS = ("COMPLETE", "AVG", "OM", "PM")

#: Points awarded to each unranked candidate on a bullet ballot, doubled to
#: stay in integer arithmetic (AVG gives half a point).
_UNRANKED_POINTS_X2 = {"COMPLETE": None, "AVG": 1, "OM": 2, "PM": 0}


class EmptyProfileError(ValueError):
    """Raised when an operation needs at least one voter."""


def normalize_ranking(ranking: Sequence[int]) -> tuple[int, ...]:
    """Validate a ranking over {0,1,2} and complete a length-2 ranking.

    Returns a tuple of length 1 (bullet vote) or 3 (full ranking).
    """
    r = tuple(int(c) for c in ranking)
    if not 1 <= len(r) <= 3:
        raise ValueError(f"ranking must list 1-3 candidates, got {ranking!r}")
    if any(c not in CANDIDATES for c in r):
        raise ValueError(f"candidate indices must be in {{0,1,2}}, got {ranking!r}")
    if len(set(r)) != len(r):
        raise ValueError(f"duplicate candidate in ranking {ranking!r}")
    if len(r) == 2:
        r = r + tuple(c for c in CANDIDATES if c not in r)
    return r


@dataclass(frozen=True)
class Profile3:
    """Counts of the nine ballot types of a 3-candidate election."""

    full_counts: tuple[int, int, int, int, int, int]
    bullet_counts: tuple[int, int, int] = (0, 0, 0)

    def __post_init__(self):
        full = tuple(int(c) for c in self.full_counts)
        bullets = tuple(int(c) for c in self.bullet_counts)
        if len(full) != 6 or len(bullets) != 3:
            raise ValueError("expected 6 full-ranking counts and 3 bullet counts")
        if any(c < 0 for c in full + bullets):
            raise ValueError("ballot counts must be non-negative")
        object.__setattr__(self, "full_counts", full)
        object.__setattr__(self, "bullet_counts", bullets)

    @classmethod
    def from_ballots(cls, ballots: Iterable[tuple[int, Sequence[int]]]) -> "Profile3":
        """Build a profile from (count, ranking) pairs, normalizing rankings."""
        full = [0] * 6
        bullets = [0] * 3
        for count, ranking in ballots:
            count = int(count)
            if count < 0:
                raise ValueError("ballot counts must be non-negative")
            r = normalize_ranking(ranking)
            if len(r) == 1:
                bullets[r[0]] += count
            else:
                full[RANKING_INDEX[r]] += count
        return cls(tuple(full), tuple(bullets))

    @property
    def total(self) -> int:
        return sum(self.full_counts) + sum(self.bullet_counts)

    @property
    def is_complete(self) -> bool:
        return sum(self.bullet_counts) == 0

    def first_place_tallies(self) -> tuple[int, int, int]:
        f, u = self.full_counts, self.bullet_counts
        return (f[0] + f[1] + u[0], f[2] + f[3] + u[1], f[4] + f[5] + u[2])

    def second_place_tallies(self) -> tuple[int, int, int]:
        f = self.full_counts
        return (f[2] + f[4], f[0] + f[5], f[1] + f[3])

    def third_place_tallies(self) -> tuple[int, int, int]:
        f = self.full_counts
        return (f[3] + f[5], f[1] + f[4], f[0] + f[2])

    def relabeled(self, perm: Sequence[int]) -> "Profile3":
        """Profile after renaming candidate c to perm[c]."""
        full = [0] * 6
        for i, r in enumerate(RANKINGS):
            new = tuple(perm[c] for c in r)
            full[RANKING_INDEX[new]] = self.full_counts[i]
        bullets = [0] * 3
        for c in CANDIDATES:
            bullets[perm[c]] = self.bullet_counts[c]
        return Profile3(tuple(full), tuple(bullets))


@dataclass(frozen=True)
class IrvRound:
    """First-place tallies of one IRV round over the active ballots."""

    tallies: tuple[Optional[int], Optional[int], Optional[int]]
    active: int
    eliminated: Optional[int]
    tie_broken: bool


def _require_voters(profile: Profile3) -> None:
    if profile.total == 0:
        raise EmptyProfileError("profile has no voters")


def _tie_set(scores: Sequence, best) -> tuple[int, ...]:
    return tuple(c for c in CANDIDATES if scores[c] == best)


def argmin_set(scores: Sequence) -> tuple[int, ...]:
    return _tie_set(scores, min(scores))


def argmax_set(scores: Sequence) -> tuple[int, ...]:
    return _tie_set(scores, max(scores))


def _choose(rng: np.random.Generator, candidates: Sequence[int]) -> int:
    return int(rng.choice(np.asarray(candidates)))


def irv_winner(profile: Profile3, rng_seed) -> tuple[int, tuple[IrvRound, ...]]:
    """Run instant runoff voting; ties are broken uniformly at random.

    A candidate wins a round by holding strictly more than half of the active
    (non-exhausted) ballots.  When the trailing candidate is eliminated, their
    full ballots transfer to the next-ranked name and their bullet ballots
    exhaust.  Returns the winner and the per-round tally log.
    """
    _require_voters(profile)
    rng = np.random.default_rng(rng_seed)
    f, u = profile.full_counts, profile.bullet_counts
    tallies = list(profile.first_place_tallies())
    active = profile.total
    rounds = []
    if max(tallies) >= active // 2 + 1:
        winner = tallies.index(max(tallies))
        rounds.append(IrvRound(tuple(tallies), active, None, False))
        return winner, tuple(rounds)

    low = argmin_set(tallies)
    tie1 = len(low) > 1
    eliminated = _choose(rng, low) if tie1 else low[0]
    rounds.append(IrvRound(tuple(tallies), active, eliminated, tie1))

    # Transfers of the eliminated candidate's full ballots, by column.
    transfers = {
        0: ((1, f[0]), (2, f[1])),
        1: ((0, f[2]), (2, f[3])),
        2: ((0, f[4]), (1, f[5])),
    }
    for dest, n in transfers[eliminated]:
        tallies[dest] += n
    active -= u[eliminated]
    tallies[eliminated] = None

    rest = [c for c in CANDIDATES if c != eliminated]
    tie2 = tallies[rest[0]] == tallies[rest[1]]
    if tie2:
        winner = _choose(rng, rest)
    else:
        winner = max(rest, key=lambda c: tallies[c])
    final = tuple(tallies[c] if c != eliminated else None for c in CANDIDATES)
    rounds.append(IrvRound(final, active, None, tie2))
    return winner, tuple(rounds)


def plurality(profile: Profile3) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """First-place winner and loser; ties reported as tie sets, not broken."""
    _require_voters(profile)
    tallies = profile.first_place_tallies()
    return argmax_set(tallies), argmin_set(tallies)


def _borda_scores_x2(profile: Profile3, variant: str) -> tuple[int, int, int]:
    """Doubled Borda scores, exact in integer arithmetic."""
    if variant not in BORDA_VARIANTS:
        raise ValueError(f"unknown Borda variant {variant!r}")
    if variant == "COMPLETE" and not profile.is_complete:
        raise ValueError("COMPLETE Borda variant requires a profile without bullet votes")
    firsts = profile.first_place_tallies()
    seconds = profile.second_place_tallies()
    u = profile.bullet_counts
    unranked_x2 = _UNRANKED_POINTS_X2[variant] or 0
    scores = []
    for c in CANDIDATES:
        s = 4 * firsts[c] + 2 * seconds[c]
        # each bullet for another candidate leaves c unranked
        s += unranked_x2 * (sum(u) - u[c])
        scores.append(s)
    return tuple(scores)


def borda_scores(profile: Profile3, variant: str = "COMPLETE") -> tuple[Fraction, Fraction, Fraction]:
    """Borda scores (2/1/0 points by rank) as exact rationals.

    On a bullet ballot the ranked candidate earns 2 points and each unranked
    candidate earns 1 (OM), 0 (PM) or 1/2 (AVG).
    """
    return tuple(Fraction(s, 2) for s in _borda_scores_x2(profile, variant))


@dataclass(frozen=True)
class BucklinResult:
    winner: tuple[int, ...]
    loser: tuple[int, ...]
    declared_round: int
    sums: tuple[int, int, int]
    majority_reached: bool


def bucklin_result(profile: Profile3) -> BucklinResult:
    """Bucklin voting: accumulate rank tallies until a sum reaches a majority.

    The majority threshold is fixed at more than half of all cast ballots.
    If no cumulative sum ever reaches the threshold (possible with many
    bullet votes), the largest round-3 sum wins and the smallest loses.
    Winner ties are reported as a tie set, never broken.
    """
    _require_voters(profile)
    threshold = profile.total // 2 + 1
    firsts = profile.first_place_tallies()
    seconds = profile.second_place_tallies()
    thirds = profile.third_place_tallies()
    cumulative = [firsts]
    cumulative.append(tuple(a + b for a, b in zip(cumulative[0], seconds)))
    cumulative.append(tuple(a + b for a, b in zip(cumulative[1], thirds)))
    for rd, sums in enumerate(cumulative, start=1):
        if max(sums) >= threshold:
            return BucklinResult(argmax_set(sums), argmin_set(sums), rd, sums, True)
    sums = cumulative[2]
    return BucklinResult(argmax_set(sums), argmin_set(sums), 3, sums, False)


def most_last_place(profile: Profile3) -> tuple[int, ...]:
    """Candidates with the most last-place votes (complete ballots only)."""
    _require_voters(profile)
    if not profile.is_complete:
        raise ValueError("most_last_place is defined only for complete-ballot profiles")
    return argmax_set(profile.third_place_tallies())


@dataclass(frozen=True)
class PairwiseResult:
    """Head-to-head margins and the Condorcet/minimax designations.

    ``margins[x][y]`` is (votes preferring x over y) minus (votes preferring
    y over x); bullet ballots abstain between the two unranked candidates.
    """

    margins: tuple[tuple[int, int, int], ...]
    condorcet_winner: Optional[int]
    condorcet_loser: Optional[int]
    minimax_winners: tuple[int, ...]


def pairwise_and_condorcet(profile: Profile3) -> PairwiseResult:
    _require_voters(profile)
    f, u = profile.full_counts, profile.bullet_counts
    # prefer[x][y]: ballots ranking x above y (bullets count for the ranked
    # candidate against both others).
    prefer = [[0] * 3 for _ in CANDIDATES]
    for i, r in enumerate(RANKINGS):
        n = f[i]
        prefer[r[0]][r[1]] += n
        prefer[r[0]][r[2]] += n
        prefer[r[1]][r[2]] += n
    for c in CANDIDATES:
        for other in CANDIDATES:
            if other != c:
                prefer[c][other] += u[c]
    margins = tuple(
        tuple(prefer[x][y] - prefer[y][x] for y in CANDIDATES) for x in CANDIDATES
    )
    winner = loser = None
    for c in CANDIDATES:
        if all(margins[c][o] > 0 for o in CANDIDATES if o != c):
            winner = c
        if all(margins[c][o] < 0 for o in CANDIDATES if o != c):
            loser = c
    if winner is not None:
        minimax = (winner,)
    else:
        worst = [max(margins[o][c] for o in CANDIDATES if o != c) for c in CANDIDATES]
        minimax = argmin_set(worst)
    return PairwiseResult(margins, winner, loser, minimax)


@dataclass(frozen=True)
class ElectionOutcome:
    """Every rule's result for one profile, plus tie bookkeeping.

    Loser/winner fields that a rule does not break at random are tie sets
    (singleton means strict).  ``tie_events`` lists the stages where a random
    break was actually consumed.
    """

    irv_winner: int
    irv_rounds: tuple[IrvRound, ...]
    plurality_winner: tuple[int, ...]
    plurality_loser: tuple[int, ...]
    condorcet_winner: Optional[int]
    condorcet_loser: Optional[int]
    minimax_winner: int
    margins: tuple[tuple[int, int, int], ...]
    borda_losers: dict[str, tuple[int, ...]]
    bucklin_winner: tuple[int, ...]
    bucklin_loser: tuple[int, ...]
    bucklin_round: int
    most_last_place: Optional[tuple[int, ...]]
    tie_events: tuple[str, ...]

    def strict_weak_winner_flags(self) -> dict[str, bool]:
        """Which weakness measures the IRV winner hits, requiring a strictly
        unique weakest candidate (a tie never sets a flag)."""
        w = (self.irv_winner,)
        flags = {f"borda_{v.lower()}": self.borda_losers.get(v) == w for v in BORDA_VARIANTS}
        flags["bucklin"] = self.bucklin_loser == w
        if self.most_last_place is not None:
            flags["most_last_place"] = self.most_last_place == w
        return flags


def analyze(profile: Profile3, rng_seed) -> ElectionOutcome:
    """Tabulate every rule and weak-candidate measure applicable to the profile."""
    _require_voters(profile)
    rng = np.random.default_rng(rng_seed)
    ties = []

    winner, rounds = irv_winner(profile, rng)
    for rd in rounds:
        if rd.tie_broken:
            ties.append("irv_elimination" if rd.eliminated is not None else "irv_victory")

    plur_w, plur_l = plurality(profile)
    pair = pairwise_and_condorcet(profile)
    if len(pair.minimax_winners) > 1:
        minimax = _choose(rng, pair.minimax_winners)
        ties.append("minimax")
    else:
        minimax = pair.minimax_winners[0]

    losers = {}
    if profile.is_complete:
        loser_set = argmin_set(_borda_scores_x2(profile, "COMPLETE"))
        for variant in BORDA_VARIANTS:
            losers[variant] = loser_set
    else:
        for variant in ("AVG", "OM", "PM"):
            losers[variant] = argmin_set(_borda_scores_x2(profile, variant))

    buck = bucklin_result(profile)
    mlp = most_last_place(profile) if profile.is_complete else None

    return ElectionOutcome(
        irv_winner=winner,
        irv_rounds=rounds,
        plurality_winner=plur_w,
        plurality_loser=plur_l,
        condorcet_winner=pair.condorcet_winner,
        condorcet_loser=pair.condorcet_loser,
        minimax_winner=minimax,
        margins=pair.margins,
        borda_losers=losers,
        bucklin_winner=buck.winner,
        bucklin_loser=buck.loser,
        bucklin_round=buck.declared_round,
        most_last_place=mlp,
        tie_events=tuple(ties),
    )
