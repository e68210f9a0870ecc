#!/usr/bin/env python3
"""The lower bounds as playable games.

Each adversary watches where the scheduler puts its jobs (after all
migrations settle) and picks the next job to hurt it most.  Played
against the matching scheduler, the forced ratio creeps up to the tight
bound; played against naive schedulers, it only gets worse for them.
"""
from fractions import Fraction

from hierstretch import (
    SCHEDULERS,
    adv_high,
    adv_low,
    adv_mid,
    adv_totalsize,
    play_duel,
    ratio_bound,
    refine_theta,
)


def show(adversary, scheduler_name):
    transcript = play_duel(
        adversary, scheduler_name, SCHEDULERS[scheduler_name], adversary.m
    )
    sizes = ", ".join(f"({job.size}, g{job.gos})" for job in transcript.jobs[:6])
    if len(transcript.jobs) > 6:
        sizes += f", ... {len(transcript.jobs) - 6} more"
    print(f"  vs {scheduler_name:<12} issued [{sizes}]")
    print(
        f"     forced ratio {transcript.achieved_ratio} "
        f"(~{float(transcript.achieved_ratio):.5f}), "
        f"claimed at least {float(transcript.claimed_min_ratio):.5f}, "
        f"optimum {transcript.certified_opt}"
        + (" [oracle-checked]" if transcript.oracle_checked else "")
    )


m = Fraction(3)
mu = ratio_bound(m).mu
gamma = mu * Fraction(999, 1000)
print(f"high-budget game at m = {m} (bound {ratio_bound(m).bound}):")
show(adv_high(m, gamma), "A")
show(adv_high(m, gamma), "greedy-m2")
print()

m = Fraction(3, 5)
print(f"mid game at m = {m} (bound {ratio_bound(m).bound}):")
show(adv_mid(m, Fraction(1, 1000)), "C")
show(adv_mid(m, Fraction(1, 1000)), "all-m1")
print()

m = Fraction(1, 4)
print(f"no-migration game at m = {m} (bound {ratio_bound(m).bound}):")
show(adv_low(m), "baseline")
show(adv_low(m), "least-loaded")
print()

theta = refine_theta()
print(
    "known-total-size game: even huge budgets stay above "
    f"{float(min(2 * theta, (2 - theta) / (2 * theta))):.5f}"
)
for m in (Fraction(1), Fraction(100)):
    print(f"at m = {m}:")
    show(adv_totalsize(m, theta), "baseline")
    show(adv_totalsize(m, theta), "greedy-m2")
