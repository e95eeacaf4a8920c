"""Seeded experiment sweeps over the spatial models.

Each trial owns an independent random stream spawned from the master seed
and the trial index, so any trial can be reproduced in isolation and the
aggregate is bit-identical no matter how trials are distributed over
workers.  Per-trial records are merged by summing counters, an associative
and order-independent reduction.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import IO, Iterable, Optional, Sequence, Union

import numpy as np

from . import core, spatial
from .core import BORDA_VARIANTS
from .spatial import SpatialModel, parse_model

RULES = ("IRV", "PLURALITY", "MINIMAX")

#: weakness measures tabulated for complete and truncated ballots
COMPLETE_MEASURES = ("min_utility", "borda_complete", "bucklin", "most_last_place")
PARTIAL_MEASURES = ("min_utility", "borda_avg", "borda_om", "borda_pm", "bucklin")

_MEASURE_TO_VARIANT = {
    "borda_complete": "COMPLETE",
    "borda_avg": "AVG",
    "borda_om": "OM",
    "borda_pm": "PM",
}


@dataclass(frozen=True)
class ExperimentConfig:
    model: SpatialModel
    v_count: int = 4001
    trials: int = 100_000
    bullet_prob: float = 0.0
    master_seed: int = 20240001
    rules: tuple[str, ...] = ("IRV",)

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if isinstance(self.model, str):
            object.__setattr__(self, "model", parse_model(self.model))
        bad = [r for r in self.rules if r not in RULES]
        if bad:
            raise ValueError(f"unknown rules {bad}; choose from {RULES}")

    @property
    def measures(self) -> tuple[str, ...]:
        return COMPLETE_MEASURES if self.bullet_prob == 0 else PARTIAL_MEASURES


@dataclass(frozen=True)
class MeasureStat:
    count: int
    trials: int

    @property
    def frequency(self) -> float:
        return self.count / self.trials

    @property
    def stderr(self) -> float:
        p = self.frequency
        return math.sqrt(p * (1.0 - p) / self.trials)


@dataclass(frozen=True)
class ExperimentReport:
    config: ExperimentConfig
    counts: dict[tuple[str, str], int]          # (rule, measure) -> coincidences
    tie_counts: dict[str, int]
    weak_tie_counts: dict[str, int]             # measure -> trials with tied weakest
    joint_borda_min_utility: int                # IRV = Borda loser = min utility
    borda_loser_is_min_utility: int
    bucklin_mlp_mismatch: int                   # complete, no-majority trials only
    degenerate_trials: int

    def stat(self, rule: str, measure: str) -> MeasureStat:
        return MeasureStat(self.counts[(rule, measure)], self.config.trials)

    @property
    def conditional_borda_given_min_utility(self) -> Optional[float]:
        """P(IRV elects the Borda loser | Borda loser has minimum utility)."""
        if self.borda_loser_is_min_utility == 0:
            return None
        return self.joint_borda_min_utility / self.borda_loser_is_min_utility

    def merged_with(self, other: "ExperimentReport") -> "ExperimentReport":
        counts = {k: self.counts[k] + other.counts[k] for k in self.counts}
        ties = {k: self.tie_counts.get(k, 0) + other.tie_counts.get(k, 0)
                for k in set(self.tie_counts) | set(other.tie_counts)}
        weak = {k: self.weak_tie_counts.get(k, 0) + other.weak_tie_counts.get(k, 0)
                for k in set(self.weak_tie_counts) | set(other.weak_tie_counts)}
        return ExperimentReport(
            self.config, counts, ties, weak,
            self.joint_borda_min_utility + other.joint_borda_min_utility,
            self.borda_loser_is_min_utility + other.borda_loser_is_min_utility,
            self.bucklin_mlp_mismatch + other.bucklin_mlp_mismatch,
            self.degenerate_trials + other.degenerate_trials,
        )


def trial_rng(master_seed: int, index: int) -> np.random.Generator:
    """The independent stream of one trial, reproducible in isolation."""
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=(index,)))


def _unique(tie_set) -> Optional[int]:
    return tie_set[0] if tie_set is not None and len(tie_set) == 1 else None


def _run_block(cfg: ExperimentConfig, start: int, stop: int) -> ExperimentReport:
    counts = {(r, m): 0 for r in cfg.rules for m in cfg.measures}
    ties: dict[str, int] = {}
    weak_ties: dict[str, int] = {}
    joint = denom = mismatch = degenerate = 0
    borda_variant = "COMPLETE" if cfg.bullet_prob == 0 else "AVG"

    for i in range(start, stop):
        rng = trial_rng(cfg.master_seed, i)
        election = spatial.sample_election(cfg.model, cfg.v_count, rng)
        profile = spatial.derive_profile(election, cfg.bullet_prob, rng)
        outcome = core.analyze(profile, rng)
        if election.coincident_candidates():
            degenerate += 1

        min_util = spatial.min_utility_candidate(election)
        weakest = {"min_utility": min_util}
        for m in cfg.measures:
            if m == "min_utility":
                continue
            tie_set = (outcome.bucklin_loser if m == "bucklin"
                       else outcome.most_last_place if m == "most_last_place"
                       else outcome.borda_losers[_MEASURE_TO_VARIANT[m]])
            weakest[m] = _unique(tie_set)
            if len(tie_set) > 1:
                weak_ties[m] = weak_ties.get(m, 0) + 1
        if min_util is None:
            weak_ties["min_utility"] = weak_ties.get("min_utility", 0) + 1

        winners = {}
        for rule in cfg.rules:
            if rule == "IRV":
                winners[rule] = outcome.irv_winner
            elif rule == "PLURALITY":
                w = _unique(outcome.plurality_winner)
                if w is None:
                    w = int(rng.choice(np.asarray(outcome.plurality_winner)))
                    ties["plurality_winner"] = ties.get("plurality_winner", 0) + 1
                winners[rule] = w
            else:
                winners[rule] = outcome.minimax_winner

        for rule in cfg.rules:
            for m in cfg.measures:
                if weakest[m] is not None and winners[rule] == weakest[m]:
                    counts[(rule, m)] += 1

        for event in outcome.tie_events:
            ties[event] = ties.get(event, 0) + 1

        irv = outcome.irv_winner
        bl = weakest.get("borda_complete" if cfg.bullet_prob == 0 else "borda_avg")
        if bl is not None and bl == min_util:
            denom += 1
            if irv == bl:
                joint += 1

        if cfg.bullet_prob == 0 and outcome.bucklin_round > 1:
            buck = set(outcome.bucklin_loser)
            mlp = set(outcome.most_last_place or ())
            if buck != mlp:
                mismatch += 1

    return ExperimentReport(cfg, counts, ties, weak_ties, joint, denom,
                            mismatch, degenerate)


def run_experiment(cfg: ExperimentConfig, threads: int = 1) -> ExperimentReport:
    """Run all trials; the result does not depend on the worker count."""
    if threads <= 1 or cfg.trials < 2 * threads:
        return _run_block(cfg, 0, cfg.trials)
    chunk = max(1, math.ceil(cfg.trials / (4 * threads)))
    spans = [(s, min(s + chunk, cfg.trials)) for s in range(0, cfg.trials, chunk)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(_run_block, *zip(*[(cfg, a, b) for a, b in spans])))
    report = parts[0]
    for part in parts[1:]:
        report = report.merged_with(part)
    return report


def sweep_sigma(
    template: ExperimentConfig,
    sigmas: Sequence[float],
    threads: int = 1,
) -> list[ExperimentReport]:
    """One experiment per sigma, on the template model's mixture axes."""
    if not sigmas:
        raise ValueError("sigma list must not be empty")
    if not template.model.has_sigma_axis:
        raise ValueError("template model has no sigma-parameterized axis")
    reports = []
    for s in sigmas:
        cfg = replace(template, model=template.model.with_sigma(float(s)))
        reports.append(run_experiment(cfg, threads=threads))
    return reports


def report_rows(report: ExperimentReport) -> list[dict]:
    """Tidy rows for one report: sigma, model, measure, frequency, stderr, trials.

    The measure column carries the rule prefix for non-IRV rules so the
    six-column schema stays fixed across comparison runs.
    """
    cfg = report.config
    sigmas = {a.sigma for a in cfg.model.axes if a.sigma is not None}
    sigma = sigmas.pop() if len(sigmas) == 1 else ""
    rows = []
    for (rule, measure), _ in sorted(report.counts.items()):
        st = report.stat(rule, measure)
        name = measure if rule == "IRV" else f"{rule}:{measure}"
        rows.append({
            "sigma": sigma,
            "model": str(cfg.model),
            "measure": name,
            "frequency": st.frequency,
            "stderr": st.stderr,
            "trials": cfg.trials,
        })
    cond = report.conditional_borda_given_min_utility
    if cond is not None and "IRV" in cfg.rules:
        rows.append({
            "sigma": sigma,
            "model": str(cfg.model),
            "measure": "borda_given_min_utility",
            "frequency": cond,
            "stderr": math.sqrt(cond * (1 - cond) / report.borda_loser_is_min_utility),
            "trials": report.borda_loser_is_min_utility,
        })
    return rows


def write_report_csv(reports: Iterable[ExperimentReport], out: Union[str, IO[str]]) -> None:
    own = isinstance(out, str)
    fh = open(out, "w", newline="") if own else out
    try:
        writer = csv.DictWriter(
            fh, fieldnames=["sigma", "model", "measure", "frequency", "stderr", "trials"]
        )
        writer.writeheader()
        for report in reports:
            for row in report_rows(report):
                writer.writerow(row)
    finally:
        if own:
            fh.close()
