"""Brute-force offline optimum and prefix loads, used as ground truth.

The search is exact over rationals: every assignment of grade-2 jobs is
enumerated (grade-1 jobs are pinned to machine 1), with branch-and-bound
pruning on the partial loads.  Deliberately a different computation path
from any scheduler, so tests can use it as an independent oracle.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import Job, MachineId, ZERO
from .errors import SizeLimit

EXHAUSTIVE_CAP = 24


def _split_jobs(jobs: Sequence[Job]) -> tuple[Fraction, list[Job]]:
    base1 = sum((job.size for job in jobs if job.gos == 1), ZERO)
    gos2 = [job for job in jobs if job.gos == 2]
    return base1, gos2


def _check_cap(gos2: Sequence[Job], cap: int) -> None:
    if len(gos2) > cap:
        raise SizeLimit(
            f"{len(gos2)} grade-2 jobs exceed the exhaustive cap of {cap}"
        )


def brute_opt(jobs: Sequence[Job], cap: int = EXHAUSTIVE_CAP) -> Fraction:
    """Minimum makespan over all feasible assignments, exact.

    Grade-1 jobs are forced onto machine 1; the 2^k placements of the k
    grade-2 jobs are searched with pruning.  Empty input gives 0.
    """
    base1, gos2 = _split_jobs(jobs)
    _check_cap(gos2, cap)
    sizes = [job.size for job in gos2]
    n = len(sizes)
    best = base1 + sum(sizes, ZERO)  # everything on machine 1

    def search(i: int, z: Fraction, y: Fraction) -> None:
        nonlocal best
        # partial loads only grow, so max(load1, y) bounds the subtree
        if max(base1 + z, y) >= best:
            return
        if i == n:
            best = max(base1 + z, y)
            return
        search(i + 1, z, y + sizes[i])
        search(i + 1, z + sizes[i], y)

    search(0, ZERO, ZERO)
    return best


@dataclass(frozen=True)
class OptimalPrefixLoads:
    """Loads of one fixed optimal assignment restricted to each prefix.

    ``loads[j-1]`` is (machine-1 load, machine-2 load) after the first j
    jobs of that assignment; ``machines`` maps job index to its machine.
    """

    loads: tuple[tuple[Fraction, Fraction], ...]
    machines: dict[int, MachineId]
    opt: Fraction


def opt_prefix_loads(
    jobs: Sequence[Job], cap: int = EXHAUSTIVE_CAP
) -> OptimalPrefixLoads:
    """Pick one optimal full assignment and report cumulative prefix loads.

    Deterministic tie-break among optima: smallest final machine-2 load,
    then the lexicographically smallest machine vector over grade-2 jobs
    in arrival order (machine 1 before machine 2).
    """
    base1, gos2 = _split_jobs(jobs)
    _check_cap(gos2, cap)
    sizes = [job.size for job in gos2]
    n = len(sizes)

    best_key: tuple | None = None
    best_vector: tuple[MachineId, ...] = ()

    def search(i: int, z: Fraction, y: Fraction, vec: tuple[MachineId, ...]) -> None:
        nonlocal best_key, best_vector
        if best_key is not None and max(base1 + z, y) > best_key[0]:
            return
        if i == n:
            key = (max(base1 + z, y), y, vec)
            if best_key is None or key < best_key:
                best_key = key
                best_vector = vec
            return
        # machine 1 first so the first hit among ties is lexicographically least
        search(i + 1, z + sizes[i], y, vec + (MachineId.M1,))
        search(i + 1, z, y + sizes[i], vec + (MachineId.M2,))

    search(0, ZERO, ZERO, ())
    machines: dict[int, MachineId] = {}
    pos = 0
    for job in jobs:
        if job.gos == 1:
            machines[job.index] = MachineId.M1
        else:
            machines[job.index] = best_vector[pos]
            pos += 1

    loads = []
    load1 = ZERO
    load2 = ZERO
    for job in jobs:
        if machines[job.index] is MachineId.M1:
            load1 += job.size
        else:
            load2 += job.size
        loads.append((load1, load2))
    opt = max(load1, load2) if jobs else ZERO
    return OptimalPrefixLoads(loads=tuple(loads), machines=machines, opt=opt)


@dataclass
class PrefixMonotoneReport:
    prefix_opts: list[Fraction]
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def prefix_opt_monotone_check(
    jobs: Sequence[Job], cap: int = EXHAUSTIVE_CAP
) -> PrefixMonotoneReport:
    """Assert the brute-force optimum is non-decreasing over prefixes and
    never exceeds the optimum of the full input."""
    prefix_opts: list[Fraction] = []
    failures: list[str] = []
    for j in range(1, len(jobs) + 1):
        prefix_opts.append(brute_opt(jobs[:j], cap=cap))
    for j in range(1, len(prefix_opts)):
        if prefix_opts[j] < prefix_opts[j - 1]:
            failures.append(
                f"prefix optimum drops at job {j + 1}: "
                f"{prefix_opts[j - 1]} -> {prefix_opts[j]}"
            )
    if prefix_opts and prefix_opts[-1] != max(prefix_opts):
        failures.append("full-input optimum is below a prefix optimum")
    return PrefixMonotoneReport(prefix_opts=prefix_opts, failures=failures)
