"""Domain types, schedule bookkeeping, migration budgets, and tight bounds.

Everything is exact: sizes, loads, budgets, and bounds are
:class:`fractions.Fraction` values, so every guarantee in this package is a
decidable comparison rather than a float tolerance.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from .errors import (
    BudgetExceeded,
    HierarchyViolation,
    NegativeM,
    ParseError,
    UnknownJob,
)

RationalLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(value: RationalLike) -> Fraction:
    """Coerce ints, Fractions, and 'num/den' strings to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParseError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational literal {value!r}") from exc
    raise ParseError(f"not a rational: {value!r}")


def fraction_str(value: Fraction) -> str:
    """Canonical 'num/den' form: lowest terms, positive denominator."""
    return f"{value.numerator}/{value.denominator}"


class MachineId(IntEnum):
    """The two machines. M1 runs everything; M2 only grade-2 jobs."""

    M1 = 1
    M2 = 2

    def other(self) -> "MachineId":
        return MachineId.M2 if self is MachineId.M1 else MachineId.M1


@dataclass(frozen=True)
class Job:
    """One stream element: positive size and a grade of service in {1, 2}.

    Grade-1 jobs may only ever run on machine 1; grade-2 jobs run anywhere.
    """

    index: int
    size: Fraction
    gos: int

    def __post_init__(self) -> None:
        if self.index < 1:
            raise ValueError(f"job index must be >= 1, got {self.index}")
        if not isinstance(self.size, Fraction):
            object.__setattr__(self, "size", as_fraction(self.size))
        if self.size <= 0:
            raise ValueError(f"job size must be positive, got {self.size}")
        if self.gos not in (1, 2):
            raise ValueError(f"grade of service must be 1 or 2, got {self.gos}")


@dataclass(frozen=True)
class AssignmentDecision:
    """Target machine for the arriving job plus reassignments of older jobs.

    ``migrations`` lists each moved job exactly once with its new machine;
    the arriving job itself is never part of it.  ``step`` records which
    scheduler rule produced the decision (diagnostic only).
    """

    target: MachineId
    migrations: tuple[tuple[int, MachineId], ...] = ()
    step: int | None = None

    def migrated_indices(self) -> tuple[int, ...]:
        return tuple(idx for idx, _ in self.migrations)


@dataclass(frozen=True)
class LedgerEntry:
    job_index: int
    job_size: Fraction
    migrated_total: Fraction
    budget: Fraction

    @property
    def ratio(self) -> Fraction:
        return self.migrated_total / self.job_size


class MigrationLedger:
    """Per-arrival record of migrated volume against the budget m * p_j."""

    def __init__(self) -> None:
        self.entries: list[LedgerEntry] = []

    def record(self, job: Job, migrated_total: Fraction, m: Fraction) -> LedgerEntry:
        entry = LedgerEntry(job.index, job.size, migrated_total, m * job.size)
        self.entries.append(entry)
        return entry

    @property
    def max_ratio(self) -> Fraction:
        """Largest migrated_total / p_j over all arrivals (0 if none)."""
        if not self.entries:
            return ZERO
        return max(entry.ratio for entry in self.entries)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class ScheduleState:
    """Assignment of all arrived jobs plus cached load aggregates.

    ``x``: total size of grade-1 jobs (all on machine 1).
    ``y``: total size of grade-2 jobs on machine 2.
    ``z``: total size of grade-2 jobs on machine 1.
    States are value-like; :func:`apply_decision` returns a new state.
    """

    jobs: dict[int, Job] = field(default_factory=dict)
    assignment: dict[int, MachineId] = field(default_factory=dict)
    x: Fraction = ZERO
    y: Fraction = ZERO
    z: Fraction = ZERO

    @classmethod
    def empty(cls) -> "ScheduleState":
        return cls()

    @property
    def lam(self) -> Fraction:
        """Running total of grade-1 sizes (same as x in any legal state)."""
        return self.x

    @property
    def load1(self) -> Fraction:
        return self.x + self.z

    @property
    def load2(self) -> Fraction:
        return self.y

    @property
    def makespan(self) -> Fraction:
        return max(self.load1, self.load2)

    @property
    def arrived_total(self) -> Fraction:
        return self.x + self.y + self.z

    def machine_of(self, index: int) -> MachineId:
        return self.assignment[index]

    def y_indices(self) -> list[int]:
        """Grade-2 jobs currently on machine 2, ascending arrival order."""
        return sorted(
            idx
            for idx, mach in self.assignment.items()
            if mach is MachineId.M2
        )

    def z_indices(self) -> list[int]:
        """Grade-2 jobs currently on machine 1, ascending arrival order."""
        return sorted(
            idx
            for idx, mach in self.assignment.items()
            if mach is MachineId.M1 and self.jobs[idx].gos == 2
        )

    def sorted_y_desc(self) -> list[tuple[int, Fraction]]:
        """Machine-2 jobs as (index, size), non-increasing size, ties by
        smaller arrival index first."""
        items = [(idx, self.jobs[idx].size) for idx in self.y_indices()]
        items.sort(key=lambda pair: (-pair[1], pair[0]))
        return items

    @property
    def max_y_job(self) -> Fraction:
        """Largest size on machine 2; 0 when machine 2 is empty."""
        sizes = [self.jobs[idx].size for idx in self.y_indices()]
        return max(sizes) if sizes else ZERO

    @property
    def second_max_y_job(self) -> Fraction:
        """Second largest size on machine 2; 0 when fewer than two jobs."""
        sizes = sorted(
            (self.jobs[idx].size for idx in self.y_indices()), reverse=True
        )
        return sizes[1] if len(sizes) >= 2 else ZERO

    def max_y_with_index(self) -> tuple[Fraction, int | None]:
        """(size, index) of the largest machine-2 job, ties by smaller index."""
        items = self.sorted_y_desc()
        if not items:
            return ZERO, None
        idx, size = items[0]
        return size, idx


def apply_decision(
    state: ScheduleState,
    job: Job,
    decision: AssignmentDecision,
    ledger: MigrationLedger,
    m: RationalLike,
) -> ScheduleState:
    """Place ``job`` and apply the decision's migrations, enforcing the
    per-arrival migration budget and the machine hierarchy.

    Returns the new state; the ledger gains one entry for this arrival.
    Raises BudgetExceeded, HierarchyViolation, or UnknownJob on an illegal
    decision, leaving the ledger untouched.
    """
    m = as_fraction(m)
    if m < 0:
        raise NegativeM(f"migration factor must be >= 0, got {m}")
    if job.index in state.jobs:
        raise ValueError(f"job {job.index} already scheduled")
    if job.gos == 1 and decision.target is MachineId.M2:
        raise HierarchyViolation(
            f"grade-1 job {job.index} cannot run on machine 2"
        )

    migrated_total = ZERO
    seen: set[int] = set()
    for idx, new_machine in decision.migrations:
        if idx in seen:
            raise ValueError(f"job {idx} listed twice in one decision")
        seen.add(idx)
        if idx not in state.jobs:
            raise UnknownJob(f"migration references unknown job {idx}")
        moved = state.jobs[idx]
        if state.assignment[idx] == new_machine:
            raise ValueError(f"migration of job {idx} does not change machines")
        if moved.gos == 1 and new_machine is MachineId.M2:
            raise HierarchyViolation(
                f"grade-1 job {idx} cannot migrate to machine 2"
            )
        migrated_total += moved.size

    budget = m * job.size
    if migrated_total > budget:
        raise BudgetExceeded(
            f"arrival {job.index}: migrated {migrated_total} > budget {budget}"
        )

    jobs = dict(state.jobs)
    assignment = dict(state.assignment)
    x, y, z = state.x, state.y, state.z

    for idx, new_machine in decision.migrations:
        moved = state.jobs[idx]
        if new_machine is MachineId.M2:
            z -= moved.size
            y += moved.size
        else:
            y -= moved.size
            z += moved.size
        assignment[idx] = new_machine

    jobs[job.index] = job
    assignment[job.index] = decision.target
    if job.gos == 1:
        x += job.size
    elif decision.target is MachineId.M2:
        y += job.size
    else:
        z += job.size

    ledger.record(job, migrated_total, m)
    return ScheduleState(jobs=jobs, assignment=assignment, x=x, y=y, z=z)


class Regime(str, Enum):
    """Migration-factor intervals with distinct tight competitive ratios."""

    HIGH = "high"      # m >= 5/2
    MID = "mid"        # 3/4 <= m < 5/2
    LOW_D = "lowD"     # 2/3 <= m < 3/4
    LOW_C = "lowC"     # 1/2 <= m < 2/3
    NO_MIG = "nomig"   # 0 <= m < 1/2


@dataclass(frozen=True)
class RegimeBound:
    """Exact tight competitive ratio for a migration factor.

    ``mu`` is the slack 2/(2m+3) of the high regime, defined there only.
    """

    m: Fraction
    regime: Regime
    bound: Fraction
    mu: Fraction | None = None


@lru_cache(maxsize=4096)
def _ratio_bound_cached(m: Fraction) -> RegimeBound:
    if m >= Fraction(5, 2):
        mu = Fraction(2, 2 * m + 3)
        return RegimeBound(m, Regime.HIGH, 1 + mu, mu)
    if m >= Fraction(3, 4):
        return RegimeBound(m, Regime.MID, Fraction(5, 4))
    if m >= Fraction(2, 3):
        return RegimeBound(m, Regime.LOW_D, 2 - m)
    if m >= Fraction(1, 2):
        return RegimeBound(m, Regime.LOW_C, 2 - m)
    return RegimeBound(m, Regime.NO_MIG, Fraction(3, 2))


def ratio_bound(m: RationalLike) -> RegimeBound:
    """Tight competitive ratio as a function of the migration factor.

    (2m+5)/(2m+3) for m >= 5/2; 5/4 on [3/4, 5/2); 2-m on [1/2, 3/4);
    3/2 below 1/2.  Non-increasing in m and continuous at every boundary.
    """
    m = as_fraction(m)
    if m < 0:
        raise NegativeM(f"migration factor must be >= 0, got {m}")
    return _ratio_bound_cached(m)


@dataclass(frozen=True)
class Instance:
    """Ordered job stream with a declared optimal makespan.

    Streams are normalized so the declared optimum is 1 before scheduling;
    :meth:`normalized` performs the exact rescale.
    """

    jobs: tuple[Job, ...]
    declared_opt: Fraction = ONE

    def __post_init__(self) -> None:
        if not isinstance(self.declared_opt, Fraction):
            object.__setattr__(self, "declared_opt", as_fraction(self.declared_opt))
        for pos, job in enumerate(self.jobs, start=1):
            if job.index != pos:
                raise ValueError(
                    f"job indices must be 1..n in order; position {pos} has {job.index}"
                )

    @property
    def total_size(self) -> Fraction:
        return sum((job.size for job in self.jobs), ZERO)

    @property
    def gos1_total(self) -> Fraction:
        return sum((job.size for job in self.jobs if job.gos == 1), ZERO)

    def normalized(self) -> "Instance":
        """Rescale sizes by 1/declared_opt so the declared optimum is 1."""
        if self.declared_opt == 1:
            return self
        if self.declared_opt <= 0:
            raise ValueError("cannot normalize with a non-positive declared optimum")
        scale = 1 / self.declared_opt
        jobs = tuple(
            Job(job.index, job.size * scale, job.gos) for job in self.jobs
        )
        return Instance(jobs=jobs, declared_opt=ONE)

    def to_json_dict(self) -> dict:
        return {
            "declared_opt": fraction_str(self.declared_opt),
            "jobs": [
                {"p": fraction_str(job.size), "g": job.gos} for job in self.jobs
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def jobs_from_pairs(pairs: Iterable[tuple[RationalLike, int]]) -> tuple[Job, ...]:
    """Build an indexed job tuple from (size, gos) pairs in arrival order."""
    return tuple(
        Job(i, as_fraction(p), g) for i, (p, g) in enumerate(pairs, start=1)
    )


def instance_from_json_dict(data: dict) -> Instance:
    if not isinstance(data, dict):
        raise ParseError("instance must be a JSON object")
    try:
        declared_opt = as_fraction(data["declared_opt"])
        raw_jobs = data["jobs"]
    except KeyError as exc:
        raise ParseError(f"instance missing field {exc}") from exc
    if not isinstance(raw_jobs, list):
        raise ParseError("'jobs' must be a list")
    jobs = []
    for pos, entry in enumerate(raw_jobs, start=1):
        if not isinstance(entry, dict) or "p" not in entry or "g" not in entry:
            raise ParseError(f"job {pos} must be an object with 'p' and 'g'")
        size = as_fraction(entry["p"])
        gos = entry["g"]
        if size <= 0:
            raise ParseError(f"job {pos} has non-positive size {size}")
        if gos not in (1, 2):
            raise ParseError(f"job {pos} has bad grade of service {gos!r}")
        jobs.append(Job(pos, size, gos))
    if declared_opt <= 0:
        raise ParseError(f"declared_opt must be positive, got {declared_opt}")
    return Instance(jobs=tuple(jobs), declared_opt=declared_opt)


def load_instance(path: str) -> Instance:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read instance {path!r}: {exc}") from exc
    return instance_from_json_dict(data)


def dump_instance(instance: Instance, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(instance.to_json())
        handle.write("\n")


@dataclass
class ValidationReport:
    """Outcome of structural (and optionally oracle) instance checks."""

    failures: list[str] = field(default_factory=list)
    oracle_opt: Fraction | None = None

    @property
    def valid(self) -> bool:
        return not self.failures


def validate_instance(
    instance: Instance,
    check_opt: bool = False,
    oracle_cap: int | None = None,
) -> ValidationReport:
    """Check the bin-stretching invariants of an instance.

    Structural checks: positive sizes (enforced at parse already), total
    size at most twice the declared optimum, and grade-1 total at most the
    declared optimum.  With ``check_opt``, the brute-force oracle must
    reproduce the declared optimum exactly.
    """
    report = ValidationReport()
    if instance.declared_opt <= 0:
        report.failures.append(
            f"declared_opt must be positive, got {instance.declared_opt}"
        )
        return report
    total = instance.total_size
    if total > 2 * instance.declared_opt:
        report.failures.append(
            f"total size {total} exceeds twice the declared optimum "
            f"{instance.declared_opt}"
        )
    gos1 = instance.gos1_total
    if gos1 > instance.declared_opt:
        report.failures.append(
            f"grade-1 total {gos1} exceeds the declared optimum "
            f"{instance.declared_opt}"
        )
    if check_opt:
        from .oracle import EXHAUSTIVE_CAP, brute_opt

        cap = EXHAUSTIVE_CAP if oracle_cap is None else oracle_cap
        opt = brute_opt(instance.jobs, cap=cap)
        report.oracle_opt = opt
        if opt != instance.declared_opt:
            report.failures.append(
                f"brute-force optimum {opt} differs from declared "
                f"{instance.declared_opt}"
            )
    return report
