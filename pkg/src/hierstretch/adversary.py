"""Adaptive lower-bound opponents and the duel harness.

Each adversary watches the scheduler's placements (after migrations have
settled) and either emits the next job or stops with a certified optimal
makespan and the ratio it claims to force against any scheduler that
respects the migration budget.  Adversaries are pure functions of the
observed state and the jobs already issued, so duels replay exactly.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Protocol, Union

from .core import (
    AssignmentDecision,
    Job,
    MachineId,
    MigrationLedger,
    ScheduleState,
    ZERO,
    apply_decision,
    as_fraction,
    fraction_str,
    ratio_bound,
)
from .errors import (
    BadEps,
    BadGamma,
    BadTheta,
    BudgetExceeded,
    HierarchyViolation,
    RegimeMismatch,
    UnknownJob,
)
from .oracle import EXHAUSTIVE_CAP, brute_opt


@dataclass(frozen=True)
class Stop:
    """End of the input, with the adversary's certificate."""

    certified_opt: Fraction
    claimed_min_ratio: Fraction


NextMove = Union[Job, Stop]


class Adversary(Protocol):
    name: str

    def params(self) -> dict: ...

    def next(self, state: ScheduleState, issued: tuple[Job, ...]) -> NextMove: ...

    def migration_proof_checks(self) -> list[tuple[str, bool]]: ...


def _machine(state: ScheduleState, index: int) -> MachineId:
    return state.assignment[index]


class AdvHigh:
    """Forces ratio 1 + gamma for m >= 5/2 and any 0 < gamma < mu.

    Opens with two large jobs 1-gamma and 1-2*gamma.  If they end up on
    the same machine, six grains of sand of size gamma/2 make the optimum
    1 while the co-located pair already weighs 2-3*gamma.  Otherwise one
    or two closing jobs of grade chosen by the observed split leave some
    machine at 1+gamma.
    """

    name = "high"

    def __init__(self, m, gamma) -> None:
        self.m = as_fraction(m)
        self.gamma = as_fraction(gamma)
        if self.m < Fraction(5, 2):
            raise RegimeMismatch(f"high adversary needs m >= 5/2, got {self.m}")
        mu = ratio_bound(self.m).mu
        assert mu is not None
        if not 0 < self.gamma < mu:
            raise BadGamma(
                f"gamma must satisfy 0 < gamma < mu = {mu}, got {self.gamma}"
            )
        # the co-located pair must weigh at least 1 + mu
        assert 2 - 3 * self.gamma >= 1 + mu
        self.mu = mu

    def params(self) -> dict:
        return {"gamma": self.gamma}

    def next(self, state: ScheduleState, issued: tuple[Job, ...]) -> NextMove:
        g = self.gamma
        n = len(issued)
        if n == 0:
            return Job(1, 1 - g, 2)
        if n == 1:
            return Job(2, 1 - 2 * g, 2)
        claimed = 1 + g
        if n == 2:
            first, second = _machine(state, 1), _machine(state, 2)
            if first == second:
                return Job(3, g / 2, 2)  # sand branch
            if first is MachineId.M1:
                return Job(3, 2 * g, 1)
            return Job(3, 2 * g, 2)
        # the third job's shape encodes which branch was taken
        third = issued[2]
        if third.size == g / 2:
            if n < 8:
                return Job(n + 1, g / 2, 2)
            return Stop(Fraction(1), claimed)
        if third.gos == 1:
            return Stop(Fraction(1), claimed)
        if n == 3:
            return Job(4, g, 1)
        return Stop(Fraction(1), claimed)

    def migration_proof_checks(self) -> list[tuple[str, bool]]:
        m, g = self.m, self.gamma
        pair = (1 - g) + (1 - 2 * g)
        return [
            (
                "sand budget cannot move even the smaller large job",
                m * (g / 2) < 1 - 2 * g,
            ),
            (
                "no later arrival can move both large jobs together",
                m * (2 * g) < pair and m * g < pair,
            ),
        ]


class AdvMid:
    """Forces ratio 2 - m - eps for 1/2 <= m < 3/4.

    Opens with a job of size m + eps, which no later arrival can migrate.
    Depending on its machine, a grade-1 or grade-2 unit job (and possibly
    a grade-1 filler) pins some machine at 2 - m - eps or worse.
    """

    name = "mid"

    def __init__(self, m, eps) -> None:
        self.m = as_fraction(m)
        self.eps = as_fraction(eps)
        if not Fraction(1, 2) <= self.m < Fraction(3, 4):
            raise RegimeMismatch(
                f"mid adversary needs 1/2 <= m < 3/4, got {self.m}"
            )
        if not 0 < self.eps < Fraction(1, 10):
            raise BadEps(f"eps must be in (0, 1/10), got {self.eps}")
        if self.eps.numerator != 1:
            raise BadEps(f"1/eps must be an integer, got {self.eps}")
        if self.m + self.eps >= 1:
            raise BadEps(f"m + eps must stay below 1, got {self.m + self.eps}")

    def params(self) -> dict:
        return {"eps": self.eps}

    def next(self, state: ScheduleState, issued: tuple[Job, ...]) -> NextMove:
        m, eps = self.m, self.eps
        n = len(issued)
        claimed = 2 - m - eps
        if n == 0:
            return Job(1, m + eps, 2)
        if n == 1:
            if _machine(state, 1) is MachineId.M1:
                return Job(2, Fraction(1), 1)
            return Job(2, Fraction(1), 2)
        if n == 2:
            if issued[1].gos == 1:
                return Stop(Fraction(1), claimed)
            if _machine(state, 2) is MachineId.M2:
                return Stop(Fraction(1), claimed)
            return Job(3, 1 - m - eps, 1)
        return Stop(Fraction(1), claimed)

    def migration_proof_checks(self) -> list[tuple[str, bool]]:
        m, eps = self.m, self.eps
        return [
            ("the unit job cannot move the opener", m * 1 < m + eps),
            (
                "the filler moves neither earlier job",
                m * (1 - m - eps) < m + eps and m * (1 - m - eps) < 1,
            ),
        ]


class AdvLow:
    """Forces ratio 3/2 for m < 1/2; migration never helps here."""

    name = "low"

    def __init__(self, m) -> None:
        self.m = as_fraction(m)
        if self.m < 0:
            raise RegimeMismatch(f"m must be >= 0, got {self.m}")
        if self.m >= Fraction(1, 2):
            raise RegimeMismatch(f"low adversary needs m < 1/2, got {self.m}")

    def params(self) -> dict:
        return {}

    def next(self, state: ScheduleState, issued: tuple[Job, ...]) -> NextMove:
        n = len(issued)
        half = Fraction(1, 2)
        claimed = Fraction(3, 2)
        if n == 0:
            return Job(1, half, 2)
        if n == 1:
            if _machine(state, 1) is MachineId.M1:
                return Job(2, Fraction(1), 1)
            return Job(2, Fraction(1), 2)
        if n == 2:
            if issued[1].gos == 1:
                return Stop(Fraction(1), claimed)
            return Job(3, half, 1)
        return Stop(Fraction(1), claimed)

    def migration_proof_checks(self) -> list[tuple[str, bool]]:
        m = self.m
        half = Fraction(1, 2)
        return [
            ("the unit job cannot move the opener", m * 1 < half),
            (
                "the closer moves neither earlier job",
                m * half < half and m * half < 1,
            ),
        ]


THETA_TOLERANCE = Fraction(1, 10**8)


def refine_theta(
    start: Fraction = Fraction(59307, 100000), steps: int = 1
) -> Fraction:
    """Newton steps on 4*t^2 + t - 2 with exact rationals.

    One step from 0.59307 already lands within 1e-8 of the positive root
    (sqrt(33) - 1) / 8, close enough for the known-total-size adversary.
    """
    t = as_fraction(start)
    for _ in range(steps):
        t = t - (4 * t * t + t - 2) / (8 * t + 1)
    return t


class AdvTotalSize:
    """Known-total-size opponent: ratio stays near 1.186 for every m > 0.

    Declares total size 2, then issues two jobs of size theta (the root of
    4*t^2 + t - 2, so 2*theta = (2 - theta) / (2*theta)) followed by sand
    too fine for any arrival's budget to move a large job.  Sand grade
    depends on whether both large jobs sit on machine 2.
    """

    name = "totalsize"

    def __init__(self, m, theta_hat) -> None:
        self.m = as_fraction(m)
        if self.m <= 0:
            raise RegimeMismatch(
                f"total-size adversary needs m > 0, got {self.m}"
            )
        self.theta = as_fraction(theta_hat)
        residual = 4 * self.theta * self.theta + self.theta - 2
        if abs(residual) >= THETA_TOLERANCE:
            raise BadTheta(
                f"|4*t^2 + t - 2| = {float(abs(residual)):.3e} is not below 1e-8"
            )
        if not Fraction(1, 2) < self.theta < Fraction(2, 3):
            raise BadTheta(f"theta must lie in (1/2, 2/3), got {self.theta}")

        sand_total = 2 - 2 * self.theta
        step = min(self.theta / (2 * self.m), sand_total / 10)
        count = -((-sand_total) // step)  # ceil division on Fractions
        count = int(count)
        if count % 2:
            count += 1  # an even count lets the optimum split the sand evenly
        self.sand_count = count
        self.sand_size = sand_total / count

    def params(self) -> dict:
        return {"theta": self.theta}

    @property
    def claimed(self) -> Fraction:
        return min(2 * self.theta, (2 - self.theta) / (2 * self.theta))

    def next(self, state: ScheduleState, issued: tuple[Job, ...]) -> NextMove:
        n = len(issued)
        if n == 0:
            return Job(1, self.theta, 2)
        if n == 1:
            return Job(2, self.theta, 2)
        if n == 2:
            both_on_m2 = (
                _machine(state, 1) is MachineId.M2
                and _machine(state, 2) is MachineId.M2
            )
            sand_gos = 2 if both_on_m2 else 1
            return Job(3, self.sand_size, sand_gos)
        if n < 2 + self.sand_count:
            return Job(n + 1, self.sand_size, issued[2].gos)
        if issued[2].gos == 2:
            certified = Fraction(1)  # split one large job plus half the sand
        else:
            certified = 2 * self.theta  # grade-1 sand pins machine 1
        return Stop(certified, self.claimed)

    def migration_proof_checks(self) -> list[tuple[str, bool]]:
        return [
            (
                "no sand arrival can move a large job",
                self.m * self.sand_size < self.theta,
            ),
        ]


def adv_high(m, gamma) -> AdvHigh:
    return AdvHigh(m, gamma)


def adv_mid(m, eps) -> AdvMid:
    return AdvMid(m, eps)


def adv_low(m) -> AdvLow:
    return AdvLow(m)


def adv_totalsize(m, theta_hat) -> AdvTotalSize:
    return AdvTotalSize(m, theta_hat)


ADVERSARIES = {
    "high": adv_high,
    "mid": adv_mid,
    "low": adv_low,
    "totalsize": adv_totalsize,
}


@dataclass
class DuelTranscript:
    """Complete record of one adversary-versus-scheduler game."""

    adversary: str
    adversary_params: dict
    scheduler: str
    m: Fraction
    jobs: list[Job] = field(default_factory=list)
    decisions: list[AssignmentDecision] = field(default_factory=list)
    ledger: MigrationLedger = field(default_factory=MigrationLedger)
    final_loads: tuple[Fraction, Fraction] = (ZERO, ZERO)
    certified_opt: Fraction | None = None
    claimed_min_ratio: Fraction | None = None
    achieved_ratio: Fraction | None = None
    bound: Fraction | None = None
    oracle_checked: bool = False
    proof_checks: list[tuple[str, bool]] = field(default_factory=list)
    illegal: str | None = None

    @property
    def makespan(self) -> Fraction:
        return max(self.final_loads)

    def to_json_dict(self) -> dict:
        return {
            "adversary": self.adversary,
            "adversary_params": {
                key: fraction_str(value)
                for key, value in self.adversary_params.items()
            },
            "scheduler": self.scheduler,
            "m": fraction_str(self.m),
            "jobs": [
                {"p": fraction_str(job.size), "g": job.gos} for job in self.jobs
            ],
            "decisions": [
                {
                    "target": int(dec.target),
                    "migrations": [
                        [idx, int(mach)] for idx, mach in dec.migrations
                    ],
                    "step": dec.step,
                }
                for dec in self.decisions
            ],
            "ledger": [
                {
                    "job": entry.job_index,
                    "p": fraction_str(entry.job_size),
                    "migrated": fraction_str(entry.migrated_total),
                    "budget": fraction_str(entry.budget),
                }
                for entry in self.ledger.entries
            ],
            "final_loads": [fraction_str(load) for load in self.final_loads],
            "makespan": fraction_str(self.makespan),
            "certified_opt": (
                fraction_str(self.certified_opt)
                if self.certified_opt is not None
                else None
            ),
            "claimed_min_ratio": (
                fraction_str(self.claimed_min_ratio)
                if self.claimed_min_ratio is not None
                else None
            ),
            "achieved_ratio": (
                fraction_str(self.achieved_ratio)
                if self.achieved_ratio is not None
                else None
            ),
            "bound": fraction_str(self.bound) if self.bound is not None else None,
            "oracle_checked": self.oracle_checked,
            "proof_checks": [
                {"check": text, "holds": holds}
                for text, holds in self.proof_checks
            ],
            "illegal": self.illegal,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def play_duel(
    adversary,
    scheduler_name: str,
    scheduler_fn,
    m,
    oracle_cap: int = EXHAUSTIVE_CAP,
) -> DuelTranscript:
    """Run the interactive game to completion.

    The adversary observes the post-migration schedule before every move.
    An illegal scheduler decision (budget, hierarchy, or unknown job) ends
    the duel as a scheduler loss, recorded on the transcript.  When the
    emitted stream is small enough, the certificate is confirmed against
    the brute-force oracle.
    """
    m = as_fraction(m)
    transcript = DuelTranscript(
        adversary=adversary.name,
        adversary_params=adversary.params(),
        scheduler=scheduler_name,
        m=m,
        bound=ratio_bound(m).bound,
    )
    state = ScheduleState.empty()
    issued: tuple[Job, ...] = ()
    while True:
        move = adversary.next(state, issued)
        if isinstance(move, Stop):
            transcript.certified_opt = move.certified_opt
            transcript.claimed_min_ratio = move.claimed_min_ratio
            break
        job = move
        issued = issued + (job,)
        transcript.jobs.append(job)
        try:
            decision = scheduler_fn(state, job, m)
            state = apply_decision(state, job, decision, transcript.ledger, m)
        except (BudgetExceeded, HierarchyViolation, UnknownJob) as exc:
            transcript.illegal = f"{type(exc).__name__}: {exc}"
            break
        transcript.decisions.append(decision)

    transcript.final_loads = (state.load1, state.load2)
    transcript.proof_checks = adversary.migration_proof_checks()
    if transcript.illegal is None and transcript.certified_opt is not None:
        transcript.achieved_ratio = transcript.makespan / transcript.certified_opt
        gos2_count = sum(1 for job in transcript.jobs if job.gos == 2)
        if gos2_count <= oracle_cap:
            opt = brute_opt(transcript.jobs, cap=oracle_cap)
            if opt != transcript.certified_opt:
                raise AssertionError(
                    f"adversary {adversary.name} certified optimum "
                    f"{transcript.certified_opt} but the oracle found {opt}"
                )
            transcript.oracle_checked = True
    return transcript
