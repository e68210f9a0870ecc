"""The online schedulers and their subset-selection procedures.

Five schedulers cover the migration-factor line:

* ``alg_a`` (m >= 5/2) keeps machine 2 inside [1-mu, 1+mu] with
  mu = 2/(2m+3), rebalancing via an exact max-subset-sum when needed.
* ``alg_b`` (3/4 <= m < 5/2) keeps machine 2 inside [3/4, 5/4] and never
  migrates more than (3/4) * p_j, whatever m is.
* ``alg_c`` (1/2 <= m < 2/3) and ``alg_d`` (2/3 <= m < 3/4) keep machine 2
  at most 2-m, differing in how the migrating subset is chosen.
* ``baseline_nomig`` never migrates and achieves 3/2 when the optimum is 1.

All of them are deterministic pure functions of the visible state; the
enforcement of budgets and hierarchy stays in :func:`core.apply_decision`.
Three deliberately naive opponents used by adversary tests live at the
bottom.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .core import (
    AssignmentDecision,
    Job,
    MachineId,
    Regime,
    ScheduleState,
    ZERO,
    as_fraction,
    ratio_bound,
)
from .errors import RegimeMismatch, SizeLimit

SchedulerFn = Callable[[ScheduleState, Job, Fraction], AssignmentDecision]

EXACT_SEARCH_LIMIT = 24

M1 = MachineId.M1
M2 = MachineId.M2


@dataclass(frozen=True)
class WSelection:
    """A chosen subset of candidates: positions, their total size, and the
    minimum total the caller needed to move (when applicable)."""

    chosen: tuple[int, ...]
    total: Fraction
    target_deficit: Fraction | None = None


def select_max_subset(
    sizes: Sequence[Fraction],
    cap: Fraction,
    limit: int = EXACT_SEARCH_LIMIT,
) -> WSelection:
    """Subset of maximum total size not exceeding ``cap``, exact.

    Depth-first over positions in the given order with include-before-
    exclude, pruned by suffix sums; among equal-total optima this visits
    the lexicographically smallest index set first, which is the tie-break.
    """
    if cap < 0:
        raise ValueError(f"cap must be >= 0, got {cap}")
    n = len(sizes)
    if n > limit:
        raise SizeLimit(f"{n} candidates exceed the exact-search limit {limit}")

    suffix = [ZERO] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + sizes[i]

    best_total = ZERO
    best: tuple[int, ...] = ()

    def search(i: int, total: Fraction, chosen: tuple[int, ...]) -> None:
        nonlocal best_total, best
        reach = total + suffix[i]
        if reach <= best_total:
            return  # cannot strictly improve; equal totals are lex-larger
        if reach <= cap:
            best_total = reach
            best = chosen + tuple(range(i, n))
            return
        if i == n:
            best_total = total
            best = chosen
            return
        if total + sizes[i] <= cap:
            search(i + 1, total + sizes[i], chosen + (i,))
            if best_total == cap:
                return
        search(i + 1, total, chosen)

    search(0, ZERO, ())
    return WSelection(chosen=best, total=best_total)


def select_prefix_max(
    sizes: Sequence[Fraction], cap: Fraction
) -> WSelection:
    """Longest prefix with total at most ``cap`` (possibly empty)."""
    total = ZERO
    chosen: list[int] = []
    for i, size in enumerate(sizes):
        if total + size > cap:
            break
        total += size
        chosen.append(i)
    return WSelection(chosen=tuple(chosen), total=total)


def select_prefix_min(
    sizes: Sequence[Fraction], floor: Fraction
) -> WSelection:
    """Shortest prefix with total at least ``floor``; the entire list if
    even that falls short."""
    total = ZERO
    chosen: list[int] = []
    for i, size in enumerate(sizes):
        if total >= floor:
            break
        total += size
        chosen.append(i)
    return WSelection(chosen=tuple(chosen), total=total, target_deficit=floor)


def _require_regime(name: str, m: Fraction, regime: Regime) -> None:
    actual = ratio_bound(m).regime
    if actual is not regime:
        raise RegimeMismatch(
            f"scheduler {name} expects the {regime.value} regime; "
            f"m={m} falls in {actual.value}"
        )


@lru_cache(maxsize=1024)
def _mu(m: Fraction) -> Fraction:
    return Fraction(2, 1) / (2 * m + 3)


def alg_a(state: ScheduleState, job: Job, m: Fraction) -> AssignmentDecision:
    """High-migration scheduler (m >= 5/2): final makespan at most 1 + mu.

    Rules, in order: grade-1 jobs or a machine 2 already at 1-mu send the
    arrival to machine 1; if machine 2 stays within 1+mu the arrival joins
    it; otherwise all grade-2 jobs plus the arrival are repartitioned so
    machine 2 carries a maximum-total subset of size at most 1.
    """
    m = as_fraction(m)
    _require_regime("A", m, Regime.HIGH)
    mu = _mu(m)
    y_prev = state.y
    if job.gos == 1 or y_prev >= 1 - mu:
        return AssignmentDecision(M1, step=2)
    if y_prev + job.size <= 1 + mu:
        return AssignmentDecision(M2, step=3)

    # rebalance: machine 2 gets a max-total subset of Z u Y u {j} capped at 1
    candidates = sorted(state.z_indices() + state.y_indices())
    sizes = [state.jobs[idx].size for idx in candidates] + [job.size]
    selection = select_max_subset(sizes, Fraction(1))
    picked = set(selection.chosen)
    job_pos = len(sizes) - 1
    migrations = []
    for pos, idx in enumerate(candidates):
        new_machine = M2 if pos in picked else M1
        if state.assignment[idx] is not new_machine:
            migrations.append((idx, new_machine))
    target = M2 if job_pos in picked else M1
    return AssignmentDecision(target, tuple(migrations), step=4)


def alg_b(state: ScheduleState, job: Job, m: Fraction) -> AssignmentDecision:
    """Mid-migration scheduler (3/4 <= m < 5/2): makespan at most 5/4 while
    migrating at most (3/4) * p_j per arrival."""
    m = as_fraction(m)
    _require_regime("B", m, Regime.MID)
    y_prev = state.y
    if job.gos == 1 or y_prev >= Fraction(3, 4):
        return AssignmentDecision(M1, step=2)
    p = job.size
    if y_prev + p <= Fraction(5, 4):
        return AssignmentDecision(M2, step=3)

    sorted_y = state.sorted_y_desc()
    sizes = [size for _, size in sorted_y]

    if p >= Fraction(3, 4):
        # large arrival: clear the longest prefix that fits the budget
        selection = select_prefix_max(sizes, Fraction(3, 4) * p)
        if y_prev - selection.total + p > Fraction(5, 4):
            return AssignmentDecision(M1, step=4)
        migrations = tuple((sorted_y[i][0], M1) for i in selection.chosen)
        return AssignmentDecision(M2, migrations, step=4)

    # medium arrival (1/2 < p < 3/4)
    p_max, idx_max = state.max_y_with_index()
    if p + p_max > Fraction(5, 4):
        return AssignmentDecision(M1, step=5)
    if p_max >= y_prev / 2:
        chosen = [idx for idx, _ in sorted_y if idx != idx_max]
    elif p_max >= Fraction(1, 4):
        chosen = [idx_max]
    else:
        selection = select_prefix_min(sizes, Fraction(1, 4))
        if selection.total > Fraction(3, 4) * p:
            kept = set(selection.chosen)
            chosen = [sorted_y[i][0] for i in range(len(sizes)) if i not in kept]
        else:
            chosen = [sorted_y[i][0] for i in selection.chosen]
    migrations = tuple((idx, M1) for idx in chosen)
    return AssignmentDecision(M2, migrations, step=5)


def alg_c(state: ScheduleState, job: Job, m: Fraction) -> AssignmentDecision:
    """Low-migration scheduler for 1/2 <= m < 2/3: makespan at most 2 - m.

    When the arrival does not fit, it goes to machine 1 if the largest
    machine-2 job is too big to migrate; otherwise the shortest prefix
    covering the overflow migrates and the arrival takes machine 2.
    """
    m = as_fraction(m)
    _require_regime("C", m, Regime.LOW_C)
    y_prev = state.y
    if job.gos == 1 or y_prev >= m:
        return AssignmentDecision(M1, step=2)
    p = job.size
    if y_prev + p <= 2 - m:
        return AssignmentDecision(M2, step=3)
    if state.max_y_job > m * p:
        return AssignmentDecision(M1, step=4)

    deficit = p + y_prev - (2 - m)
    sorted_y = state.sorted_y_desc()
    selection = select_prefix_min([size for _, size in sorted_y], deficit)
    migrations = tuple((sorted_y[i][0], M1) for i in selection.chosen)
    return AssignmentDecision(M2, migrations, step=5)


def alg_d(state: ScheduleState, job: Job, m: Fraction) -> AssignmentDecision:
    """Low-migration scheduler for 2/3 <= m < 3/4: makespan at most 2 - m.

    Large arrivals (p >= m) clear the longest prefix that fits the budget;
    smaller ones move a prefix of total in [m/3, 2m/3], swapped for its
    complement when it exceeds what the budget allows.
    """
    m = as_fraction(m)
    _require_regime("D", m, Regime.LOW_D)
    y_prev = state.y
    if job.gos == 1 or y_prev >= m:
        return AssignmentDecision(M1, step=2)
    p = job.size
    if y_prev + p <= 2 - m:
        return AssignmentDecision(M2, step=3)

    sorted_y = state.sorted_y_desc()
    sizes = [size for _, size in sorted_y]

    if p >= m:
        selection = select_prefix_max(sizes, m * p)
        if y_prev - selection.total + p > 2 - m:
            return AssignmentDecision(M1, step=4)
        migrations = tuple((sorted_y[i][0], M1) for i in selection.chosen)
        return AssignmentDecision(M2, migrations, step=4)

    selection = select_prefix_min(sizes, m / 3)
    chosen = list(selection.chosen)
    w_total = selection.total
    if w_total > min(2 * m / 3, m * p):
        kept = set(chosen)
        chosen = [i for i in range(len(sizes)) if i not in kept]
        w_total = y_prev - w_total
    if y_prev - w_total + p > 2 - m:
        return AssignmentDecision(M1, step=5)
    migrations = tuple((sorted_y[i][0], M1) for i in chosen)
    return AssignmentDecision(M2, migrations, step=5)


def baseline_nomig(state: ScheduleState, job: Job) -> AssignmentDecision:
    """Threshold rule without migration: grade-2 jobs join machine 2 until
    its load reaches 1/2, everything else goes to machine 1.

    Achieves makespan at most 3/2 on any stream whose true optimum is 1:
    if machine 2 ends below 1/2 it holds every grade-2 job, so machine 1
    carries only grade-1 load (at most 1); otherwise machine 1 carries at
    most 2 - 1/2 and machine 2 at most 1/2 + 1.
    """
    if job.gos == 1 or state.y >= Fraction(1, 2):
        return AssignmentDecision(M1, step=2)
    return AssignmentDecision(M2, step=3)


# --- naive opponents used to exercise the adversaries -----------------

def greedy_to_m2(state: ScheduleState, job: Job, m: Fraction) -> AssignmentDecision:
    """Send every grade-2 job to machine 2, never migrate."""
    return AssignmentDecision(M2 if job.gos == 2 else M1)


def greedy_least_loaded(
    state: ScheduleState, job: Job, m: Fraction
) -> AssignmentDecision:
    """Grade-2 jobs join the currently smaller machine (ties to machine 2)."""
    if job.gos == 1:
        return AssignmentDecision(M1)
    return AssignmentDecision(M1 if state.load1 < state.load2 else M2)


def all_to_m1(state: ScheduleState, job: Job, m: Fraction) -> AssignmentDecision:
    """Pile everything onto machine 1."""
    return AssignmentDecision(M1)


def _baseline_adapter(state: ScheduleState, job: Job, m: Fraction) -> AssignmentDecision:
    return baseline_nomig(state, job)


SCHEDULERS: dict[str, SchedulerFn] = {
    "A": alg_a,
    "B": alg_b,
    "C": alg_c,
    "D": alg_d,
    "baseline": _baseline_adapter,
    "greedy-m2": greedy_to_m2,
    "least-loaded": greedy_least_loaded,
    "all-m1": all_to_m1,
}

# schedulers with a proven makespan guarantee, keyed by regime
REGIME_ALGORITHM: dict[Regime, str] = {
    Regime.HIGH: "A",
    Regime.MID: "B",
    Regime.LOW_D: "D",
    Regime.LOW_C: "C",
    Regime.NO_MIG: "baseline",
}


def scheduler_for_regime(m) -> tuple[str, SchedulerFn]:
    """Name and function of the guaranteed scheduler for this m."""
    name = REGIME_ALGORITHM[ratio_bound(m).regime]
    return name, SCHEDULERS[name]


def get_scheduler(name: str) -> SchedulerFn:
    try:
        return SCHEDULERS[name]
    except KeyError:
        raise KeyError(
            f"unknown scheduler {name!r}; choose from {sorted(SCHEDULERS)}"
        ) from None
