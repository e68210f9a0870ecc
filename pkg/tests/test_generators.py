"""Planted-optimum instance generation."""
from __future__ import annotations

import random

import pytest

from hierstretch import (
    FillMode,
    GenConfig,
    InfeasibleConfig,
    brute_opt,
    generate,
    prefix_opt_monotone_check,
    random_config,
    validate_instance,
)


class TestExactFill:
    def test_planted_optimum_is_one(self):
        config = GenConfig(seed=1, n_gos2=4, n_gos1=2, fill_mode=FillMode.EXACT)
        instance = generate(config)
        assert instance.total_size == 2
        assert brute_opt(instance.jobs) == 1
        assert validate_instance(instance, check_opt=True).valid

    def test_many_seeds(self):
        for seed in range(40):
            config = GenConfig(
                seed=seed, n_gos2=5, n_gos1=1, fill_mode=FillMode.EXACT
            )
            instance = generate(config)
            assert brute_opt(instance.jobs) == 1
            assert len(instance.jobs) == 6

    def test_needs_gos2(self):
        with pytest.raises(InfeasibleConfig):
            generate(GenConfig(seed=0, n_gos2=0, n_gos1=3, fill_mode=FillMode.EXACT))

    def test_needs_job_for_machine_one(self):
        with pytest.raises(InfeasibleConfig):
            generate(GenConfig(seed=0, n_gos2=1, n_gos1=0, fill_mode=FillMode.EXACT))


class TestSlackFill:
    def test_all_gos1_degenerate(self):
        config = GenConfig(seed=3, n_gos2=0, n_gos1=3, fill_mode=FillMode.SLACK)
        instance = generate(config)
        assert all(job.gos == 1 for job in instance.jobs)
        total = instance.total_size
        assert total <= 1
        assert brute_opt(instance.jobs) == total

    def test_optimum_pinned_to_one(self):
        for seed in range(30):
            config = GenConfig(
                seed=seed, n_gos2=4, n_gos1=2, fill_mode=FillMode.SLACK
            )
            instance = generate(config)
            assert brute_opt(instance.jobs) == 1
            assert validate_instance(instance, check_opt=True).valid

    def test_pure_gos2(self):
        config = GenConfig(seed=11, n_gos2=5, n_gos1=0, fill_mode=FillMode.SLACK)
        instance = generate(config)
        assert brute_opt(instance.jobs) == 1
        assert max(job.size for job in instance.jobs) == 1

    def test_empty_is_infeasible(self):
        with pytest.raises(InfeasibleConfig):
            generate(GenConfig(seed=0, n_gos2=0, n_gos1=0, fill_mode=FillMode.SLACK))


class TestDeterminismAndLimits:
    def test_same_seed_same_instance(self):
        config = GenConfig(seed=999, n_gos2=6, n_gos1=3)
        assert generate(config) == generate(config)

    def test_different_seeds_differ(self):
        a = generate(GenConfig(seed=1, n_gos2=6, n_gos1=3))
        b = generate(GenConfig(seed=2, n_gos2=6, n_gos1=3))
        assert a != b

    def test_denominators_respect_bound(self):
        config = GenConfig(seed=5, n_gos2=6, n_gos1=2, denominator_bound=64)
        instance = generate(config)
        assert all(job.size.denominator <= 64 for job in instance.jobs)

    def test_denominator_bound_too_small(self):
        with pytest.raises(InfeasibleConfig):
            generate(GenConfig(seed=0, n_gos2=5, n_gos1=0, denominator_bound=3))

    def test_prefix_validity(self):
        config = GenConfig(seed=21, n_gos2=6, n_gos1=2, fill_mode=FillMode.EXACT)
        instance = generate(config)
        report = prefix_opt_monotone_check(instance.jobs)
        assert report.ok
        assert all(opt <= 1 for opt in report.prefix_opts)


class TestRandomConfig:
    def test_always_feasible(self):
        rng = random.Random(123)
        for _ in range(200):
            config = random_config(rng)
            instance = generate(config)
            assert 1 <= len(instance.jobs) <= 14
            assert validate_instance(instance).valid

    def test_respects_requested_caps(self):
        rng = random.Random(5)
        for _ in range(100):
            config = random_config(rng, max_gos2=10, max_gos1=4)
            assert config.n_gos2 <= 10
            assert config.n_gos1 <= 4
            assert config.denominator_bound == 1000
