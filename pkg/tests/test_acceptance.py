"""Acceptance criteria, one test per criterion, each printing a verdict line.

Every comparison is exact rational arithmetic; the only decimals are the
stated tolerances themselves (2/1000 tightness windows and the 1.18604
floor), which are exact fractions here too.
"""
from __future__ import annotations

import csv
import io
import time
from fractions import Fraction

from hierstretch import (
    SCHEDULERS,
    adv_high,
    adv_low,
    adv_mid,
    adv_totalsize,
    brute_opt,
    opt_prefix_loads,
    play_duel,
    ratio_bound,
    refine_theta,
    run_stream,
    scheduler_for_regime,
)
from hierstretch.harness import (
    ACCEPTANCE_M_VALUES,
    LOWER_BOUND_STREAMS,
    guarantee_suite,
    iter_suite_instances,
    main,
)
from hierstretch.core import Job

SEED = 20260809
GUARANTEE_COUNT = 10_000

_guarantee_cache: dict = {}


def _verdict(criterion: str, ok: bool, detail: str) -> None:
    print(f"[{criterion}] {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


def _full_guarantee_summary():
    if "summary" not in _guarantee_cache:
        start = time.monotonic()
        summary = guarantee_suite(seed=SEED, count=GUARANTEE_COUNT)
        _guarantee_cache["summary"] = summary
        _guarantee_cache["elapsed"] = time.monotonic() - start
    return _guarantee_cache["summary"], _guarantee_cache["elapsed"]


def test_criterion_1_bound_table(capsys):
    grid = ["0", "1/4", "1/2", "3/5", "2/3", "7/10", "3/4", "1", "5/2", "3", "10"]
    expected = [
        Fraction(3, 2), Fraction(3, 2), Fraction(3, 2), Fraction(7, 5),
        Fraction(4, 3), Fraction(13, 10), Fraction(5, 4), Fraction(5, 4),
        Fraction(5, 4), Fraction(11, 9), Fraction(25, 23),
    ]
    start = time.monotonic()
    code = main(["curve", *grid, "--csv"])
    elapsed = time.monotonic() - start
    out = capsys.readouterr().out
    rows = list(csv.reader(io.StringIO(out)))[1:]
    got = [Fraction(int(num), int(den)) for _, _, num, den, _ in rows]
    with capsys.disabled():
        _verdict(
            "criterion 1: bound table",
            code == 0 and got == expected and elapsed < 1.0,
            f"11 grid points exact in {elapsed:.3f}s",
        )


def test_criterion_2_guarantee_suite(capsys):
    summary, elapsed = _full_guarantee_summary()
    ok = summary.ok and summary.runs == GUARANTEE_COUNT * len(ACCEPTANCE_M_VALUES)
    ok = ok and elapsed < 300.0
    detail = (
        f"{summary.runs} runs (10000 instances x {len(ACCEPTANCE_M_VALUES)} m "
        f"values) in {elapsed:.1f}s, violations: {len(summary.violations)}"
    )
    with capsys.disabled():
        _verdict("criterion 2: guarantee suite", ok, detail)


def test_criterion_3_once_only(capsys):
    summary, _ = _full_guarantee_summary()
    fires = {
        name: summary.notes.get(f"max rebalances per run ({name})", "0")
        for name in ("B", "C", "D")
    }
    ok = summary.ok and all(int(v) <= 1 for v in fires.values())
    with capsys.disabled():
        _verdict(
            "criterion 3: once-only rebalancing",
            ok,
            f"max step-4/5 fires per run: {fires}",
        )


def test_criterion_4_adversary_tightness(capsys):
    shave = 1 - Fraction(1, 1000)
    eps = Fraction(1, 1000)
    window = Fraction(2, 1000)
    duels = []
    for m in (Fraction(5, 2), Fraction(3), Fraction(5)):
        duels.append((adv_high(m, ratio_bound(m).mu * shave), "A"))
    for m in (Fraction(1, 2), Fraction(3, 5)):
        duels.append((adv_mid(m, eps), "C"))
    for m in (Fraction(2, 3), Fraction(7, 10)):
        duels.append((adv_mid(m, eps), "D"))
    for m in (Fraction(0), Fraction(1, 4), Fraction(49, 100)):
        duels.append((adv_low(m), "baseline"))

    start = time.monotonic()
    failures = []
    for adv, algorithm in duels:
        transcript = play_duel(adv, algorithm, SCHEDULERS[algorithm], adv.m)
        tag = f"{adv.name} vs {algorithm} @ m={adv.m}"
        bound = ratio_bound(adv.m).bound
        if transcript.illegal or not transcript.oracle_checked:
            failures.append(f"{tag}: not certified")
            continue
        if not bound - window <= transcript.achieved_ratio <= bound:
            failures.append(
                f"{tag}: ratio {transcript.achieved_ratio} outside "
                f"[{bound - window}, {bound}]"
            )
        if brute_opt(transcript.jobs) != transcript.certified_opt:
            failures.append(f"{tag}: certificate mismatch")
    elapsed = time.monotonic() - start
    ok = not failures and elapsed < 10.0
    with capsys.disabled():
        _verdict(
            "criterion 4: adversary tightness",
            ok,
            failures[0] if failures else f"{len(duels)} duels within "
            f"[bound - 1/500, bound], oracle-certified, in {elapsed:.2f}s",
        )


def test_criterion_5_adversary_soundness(capsys):
    shave = 1 - Fraction(1, 1000)
    eps = Fraction(1, 1000)
    theta = refine_theta()
    adversaries = []
    for m in (Fraction(5, 2), Fraction(3), Fraction(5)):
        adversaries.append(adv_high(m, ratio_bound(m).mu * shave))
    for m in (Fraction(1, 2), Fraction(3, 5), Fraction(2, 3), Fraction(7, 10)):
        adversaries.append(adv_mid(m, eps))
    for m in (Fraction(0), Fraction(1, 4), Fraction(49, 100)):
        adversaries.append(adv_low(m))
    for m in (Fraction(1), Fraction(10), Fraction(100)):
        adversaries.append(adv_totalsize(m, theta))

    failures = []
    count = 0
    for adv in adversaries:
        for name in ("greedy-m2", "least-loaded", "all-m1"):
            transcript = play_duel(adv, name, SCHEDULERS[name], adv.m)
            count += 1
            if transcript.illegal is not None:
                continue  # an illegal scheduler is a loss, not a counterexample
            if transcript.achieved_ratio < transcript.claimed_min_ratio:
                failures.append(
                    f"{adv.name}@m={adv.m} vs {name}: "
                    f"{transcript.achieved_ratio} < {transcript.claimed_min_ratio}"
                )
    with capsys.disabled():
        _verdict(
            "criterion 5: adversary soundness",
            not failures,
            failures[0] if failures else
            f"{count} duels vs naive schedulers all meet the claimed ratio",
        )


def test_criterion_6_known_total_size_separation(capsys):
    theta = refine_theta()
    floor = Fraction("1.18604")
    failures = []
    count = 0
    for m in (Fraction(1), Fraction(10), Fraction(100)):
        auto_name, _ = scheduler_for_regime(m)
        names = [auto_name, "baseline", "greedy-m2", "least-loaded", "all-m1"]
        for name in names:
            transcript = play_duel(adv_totalsize(m, theta), name, SCHEDULERS[name], m)
            count += 1
            if transcript.illegal is not None:
                failures.append(f"{name}@m={m}: illegal play")
                continue
            if transcript.achieved_ratio < floor:
                failures.append(
                    f"{name}@m={m}: ratio {float(transcript.achieved_ratio):.6f} "
                    f"below 1.18604"
                )
    # meanwhile the known-makespan bound keeps collapsing toward 1
    if not ratio_bound(100).bound < Fraction("1.01"):
        failures.append("ratio_bound(100) is not below 1.01")
    with capsys.disabled():
        _verdict(
            "criterion 6: known-total-size separation",
            not failures,
            failures[0] if failures else
            f"{count} duels at m in {{1, 10, 100}} all forced above 1.18604 "
            f"while ratio_bound(100) = {ratio_bound(100).bound} < 1.01",
        )


def test_criterion_7_prefix_load_floor(capsys):
    m = Fraction(3)
    mu = ratio_bound(m).mu
    floor_cap = 1 - mu
    violations = []
    runs = 0
    for _, instance in iter_suite_instances(seed=SEED + 7, count=1000):
        result = run_stream(
            instance.jobs, SCHEDULERS["A"], m, collect_states=True
        )
        prefix = opt_prefix_loads(instance.jobs)
        runs += 1
        for j, state in enumerate(result.states[1:], start=1):
            o_j2 = prefix.loads[j - 1][1]
            if state.y < min(floor_cap, o_j2):
                violations.append(
                    f"run {runs} arrival {j}: y={state.y} < "
                    f"min(1-mu, o_j2)={min(floor_cap, o_j2)}"
                )
    with capsys.disabled():
        _verdict(
            "criterion 7: machine-2 floor on scheduler A",
            not violations and runs == 1000,
            violations[0] if violations else
            "1000 runs at m=3: y_j >= min(1 - mu, o_j2) after every arrival",
        )


def test_criterion_8_oracle_sanity(capsys):
    import random

    from hierstretch import FillMode, GenConfig, generate, prefix_opt_monotone_check

    rng = random.Random(SEED + 8)
    failures = []
    count = 0
    for i in range(500):
        config = GenConfig(
            seed=rng.getrandbits(64),
            n_gos2=rng.randint(2, 8),
            n_gos1=rng.randint(0, 4),
            fill_mode=FillMode.EXACT,
        )
        instance = generate(config)
        count += 1
        if brute_opt(instance.jobs) != 1:
            failures.append(f"exact-fill instance {i}: optimum not 1")
        report = prefix_opt_monotone_check(instance.jobs)
        if not report.ok:
            failures.append(f"exact-fill instance {i}: {report.failures[0]}")
    for name, stream in LOWER_BOUND_STREAMS.items():
        jobs = tuple(Job(i, p, g) for i, (p, g) in enumerate(stream, start=1))
        if brute_opt(jobs) != 1:
            failures.append(f"lower-bound stream {name!r} has optimum != 1")
    with capsys.disabled():
        _verdict(
            "criterion 8: oracle sanity",
            not failures,
            failures[0] if failures else
            f"{count} exact-fill optima = 1 with monotone prefix chains, "
            "3 explicit lower-bound streams certified",
        )
