"""Permutation scheduling: candidate-set heuristics, IRS usage statistics,
time-averaged rates, both eavesdropper strategies, and the max-min
secrecy objective.

Time is normalized to receiver reconfiguration units: each permutation
stays active for tau units, switching costs one unit (rate factor
tau/(tau+1)), and the dynamic eavesdropper burns delta units per dwell
scanning all IRSs before locking on.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import Infeasible, SizeLimit
from .link import Permutation, PermutationMetrics

ENUMERATION_LIMIT = 10**6


@dataclass(frozen=True)
class PermutationSet:
    """A chosen subset of permutations and the heuristic that built it."""

    members: tuple[Permutation, ...]
    selection_method: str  # best_rate | uniform_irs | random | explicit
    num_irs: int

    def __post_init__(self):
        if not self.members:
            raise ValueError("permutation set must be non-empty")
        if len({p.assignment for p in self.members}) != len(self.members):
            raise ValueError("permutation set has duplicate members")

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class SchedulePolicy:
    """Dwell time tau, eavesdropper scan cost delta (time units), and the
    per-UE average-rate floor r_min (bits/s)."""

    tau: int
    delta: int
    r_min: float = 0.0

    def __post_init__(self):
        if self.tau < 1 or self.delta < 1:
            raise ValueError("tau and delta must be >= 1")
        if self.r_min < 0:
            raise ValueError("r_min must be nonnegative")


@dataclass(frozen=True)
class SweepResult:
    """Metrics of one (selection method, set size, tau) grid point, with
    the secrecy columns evaluated for the scenario's victim UE."""

    method: str
    set_size: int
    tau: int
    avg_rate: np.ndarray  # (K,)
    sr_static: float
    sr_dynamic: float
    sr_combined: float
    max_usage: float
    feasible: bool


def enumerate_permutations(n: int, k: int) -> list[Permutation]:
    """All injective maps from K UEs to N IRSs, lexicographic order.

    Raises SizeLimit when N!/(N-K)! exceeds ENUMERATION_LIMIT.
    """
    if k > n:
        raise ValueError(f"need K <= N, got K={k} > N={n}")
    count = math.perm(n, k)
    if count > ENUMERATION_LIMIT:
        raise SizeLimit(f"{count} permutations exceed the {ENUMERATION_LIMIT} limit")
    return [Permutation(t) for t in itertools.permutations(range(n), k)]


def usage_matrix(pset: PermutationSet) -> np.ndarray:
    """omega[k, n]: fraction of members serving UE k through IRS n.
    Rows sum to 1."""
    k_count = len(pset.members[0].assignment)
    omega = np.zeros((k_count, pset.num_irs))
    for p in pset.members:
        for k, n in enumerate(p.assignment):
            omega[k, n] += 1.0
    return omega / pset.size


def select_best_rate(pmetrics: PermutationMetrics, size: int) -> PermutationSet:
    """The `size` permutations with the highest sum rate; ties broken by
    lexicographic assignment order."""
    _check_size(pmetrics, size)
    ranked = sorted(pmetrics.perms, key=lambda p: (-pmetrics.sum_rate(p), p.assignment))
    return PermutationSet(members=tuple(ranked[:size]), selection_method="best_rate",
                          num_irs=pmetrics.num_irs)


def select_uniform_irs(pmetrics: PermutationMetrics, size: int) -> PermutationSet:
    """Greedy max-usage minimization: repeatedly add the permutation that
    minimizes the resulting max_{k,n} omega, breaking ties by highest sum
    rate, then lexicographic order."""
    _check_size(pmetrics, size)
    k_count = pmetrics.rate.shape[1]
    counts = np.zeros((k_count, pmetrics.num_irs))
    chosen: list[Permutation] = []
    remaining = list(pmetrics.perms)
    for step in range(1, size + 1):
        best = None
        for p in remaining:
            trial_max = max(counts[k, n] + 1 for k, n in enumerate(p.assignment))
            peak = max(trial_max, counts.max())
            key = (peak, -pmetrics.sum_rate(p), p.assignment)
            if best is None or key < best[0]:
                best = (key, p)
        p = best[1]
        for k, n in enumerate(p.assignment):
            counts[k, n] += 1
        chosen.append(p)
        remaining.remove(p)
    return PermutationSet(members=tuple(chosen), selection_method="uniform_irs",
                          num_irs=pmetrics.num_irs)


def select_random(pmetrics: PermutationMetrics, size: int, seed: int) -> PermutationSet:
    """Uniform sample without replacement, deterministic per seed; members
    kept in lexicographic order."""
    _check_size(pmetrics, size)
    rng = np.random.default_rng(seed)
    idx = rng.choice(len(pmetrics.perms), size=size, replace=False)
    members = sorted((pmetrics.perms[i] for i in idx), key=lambda p: p.assignment)
    return PermutationSet(members=tuple(members), selection_method="random",
                          num_irs=pmetrics.num_irs)


def _check_size(pmetrics: PermutationMetrics, size: int):
    if not (1 <= size <= len(pmetrics.perms)):
        raise ValueError(f"set size {size} outside 1..{len(pmetrics.perms)}")


def _member_rows(pset: PermutationSet, pmetrics: PermutationMetrics) -> np.ndarray:
    return np.array([pmetrics.index_of(p) for p in pset.members])


def average_rate(pset: PermutationSet, pmetrics: PermutationMetrics,
                 policy: SchedulePolicy) -> np.ndarray:
    """Per-UE average rate: tau/(tau+1) times the mean member rate (the
    one-unit switching pause is the only penalty)."""
    rows = _member_rows(pset, pmetrics)
    return policy.tau / (policy.tau + 1.0) * pmetrics.rate[rows].mean(axis=0)


def sr_static(pset: PermutationSet, pmetrics: PermutationMetrics, victim: int) -> float:
    """Secrecy rate against an eavesdropper camped on the IRS most often
    serving the victim (ties: lowest IRS index). Independent of tau."""
    omega = usage_matrix(pset)
    n_star = int(np.argmax(omega[victim]))
    rows = _member_rows(pset, pmetrics)
    return float(pmetrics.secrecy[rows, n_star, victim].mean())


def sr_dynamic(pset: PermutationSet, pmetrics: PermutationMetrics, victim: int,
               policy: SchedulePolicy) -> float:
    """Secrecy rate against an eavesdropper that spends delta units per
    dwell scanning all IRSs (full secrecy while scanning) and then tracks
    the worst-case IRS. If delta > tau the scan never completes and every
    dwell stays fully secret."""
    rows = _member_rows(pset, pmetrics)
    rate = pmetrics.rate[rows, victim]
    if policy.delta > policy.tau:
        return float(rate.mean())
    worst = pmetrics.secrecy[rows, :, victim].min(axis=1)
    frac = policy.delta / policy.tau
    return float(((1.0 - frac) * worst + frac * rate).mean())


def sr_combined(pset: PermutationSet, pmetrics: PermutationMetrics, victim: int,
                policy: SchedulePolicy) -> float:
    """The eavesdropper picks whichever strategy hurts more."""
    return min(sr_static(pset, pmetrics, victim),
               sr_dynamic(pset, pmetrics, victim, policy))


def sweep_point(pset: PermutationSet, pmetrics: PermutationMetrics, victim: int,
                policy: SchedulePolicy) -> SweepResult:
    """Evaluate one (set, tau) grid point for the given victim."""
    avg = average_rate(pset, pmetrics, policy)
    static = sr_static(pset, pmetrics, victim)
    dynamic = sr_dynamic(pset, pmetrics, victim, policy)
    return SweepResult(
        method=pset.selection_method, set_size=pset.size, tau=policy.tau,
        avg_rate=avg, sr_static=static, sr_dynamic=dynamic,
        sr_combined=min(static, dynamic),
        max_usage=float(usage_matrix(pset).max()),
        feasible=bool(np.all(avg >= policy.r_min)))


@dataclass(frozen=True)
class ObjectiveResult:
    """Grid evaluation of the max-min secrecy objective."""

    entries: tuple[SweepResult, ...]
    scores: np.ndarray  # worst-case-victim sr_combined per entry
    best_set: PermutationSet
    best_tau: int
    best_score: float


def evaluate_objective(candidate_sets, tau_grid, pmetrics: PermutationMetrics,
                       policy: SchedulePolicy, victim: int) -> ObjectiveResult:
    """Score every (candidate set, tau) pair by the worst-case-victim
    combined secrecy rate, subject to every UE clearing r_min. Returns the
    feasible maximizer (ties: smaller set, then smaller tau). The reported
    SweepResult columns use the scenario's `victim`.

    Raises Infeasible when no pair satisfies the rate constraint.
    """
    candidate_sets = list(candidate_sets)
    tau_grid = list(tau_grid)
    if not candidate_sets or not tau_grid:
        raise ValueError("candidate sets and tau grid must be non-empty")
    k_count = pmetrics.rate.shape[1]
    entries = []
    scores = []
    best = None
    for pset in candidate_sets:
        for tau in tau_grid:
            pol = SchedulePolicy(tau=tau, delta=policy.delta, r_min=policy.r_min)
            result = sweep_point(pset, pmetrics, victim, pol)
            score = min(sr_combined(pset, pmetrics, k, pol) for k in range(k_count))
            entries.append(result)
            scores.append(score)
            if result.feasible:
                key = (score, -pset.size, -tau)
                if best is None or key > best[0]:
                    best = (key, pset, tau, score)
    if best is None:
        raise Infeasible(f"no (set, tau) pair reaches r_min = {policy.r_min}")
    return ObjectiveResult(entries=tuple(entries), scores=np.array(scores),
                           best_set=best[1], best_tau=best[2], best_score=best[3])
