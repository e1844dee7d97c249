import math
import random
import statistics

import pytest

from factorbench.errors import BudgetExceeded, NotComposite
from factorbench.pollard import RhoConfig, pollard_factor, rho_step
from factorbench.primegen import random_semiprime


def trial_division_factor(n):
    """Oracle: smallest prime factor by scanning upward."""
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


class TestRhoStep:
    def test_examples(self):
        assert rho_step(2, 1, 5) == 0
        assert rho_step(0, 7, 11) == 7
        assert rho_step(632, 1, 400289) == 399425  # 632**2 + 1, directly


class TestPollardFactor:
    def test_8051(self):
        d, trace = pollard_factor(8051, RhoConfig(seed=7))
        assert d in {83, 97}
        assert d * (8051 // d) == 8051
        assert trial_division_factor(8051) == 83

    def test_paper_cited_44_bit(self):
        n = 11752700814259
        d, _ = pollard_factor(n, RhoConfig(seed=0), budget_seconds=10.0)
        assert 1 < d < n and n % d == 0

    def test_prime_input(self):
        with pytest.raises(NotComposite):
            pollard_factor(613, RhoConfig(seed=0))

    def test_small_prime_precheck(self):
        d, trace = pollard_factor(35, RhoConfig(seed=0))
        assert d == 5
        assert trace.iterations == 0
        assert trace.c_values == []

    def test_below_two_rejected(self):
        with pytest.raises(ValueError):
            pollard_factor(1, RhoConfig(seed=0))

    def test_factor_always_divides(self):
        rng = random.Random(31337)
        for _ in range(60):
            sp = random_semiprime(11, 13, 24, rng)
            d, _ = pollard_factor(sp.n, RhoConfig(seed=5), budget_seconds=10.0)
            assert 1 < d < sp.n and sp.n % d == 0
            assert d in {sp.p, sp.q}

    def test_deterministic_trace(self):
        n = 1000003 * 1000033
        a = pollard_factor(n, RhoConfig(seed=99))
        b = pollard_factor(n, RhoConfig(seed=99))
        assert a[0] == b[0]
        assert a[1].iterations == b[1].iterations
        assert a[1].c_values == b[1].c_values

    def test_trace_restart_invariant(self):
        rng = random.Random(8)
        for _ in range(20):
            sp = random_semiprime(10, 12, 22, rng)
            _, trace = pollard_factor(sp.n, RhoConfig(seed=3), budget_seconds=10.0)
            if trace.c_values:
                assert trace.restarts == len(trace.c_values) - 1

    def test_budget_exceeded(self):
        # 60-bit semiprime with balanced factors cannot finish in 1 microsecond
        sp = random_semiprime(30, 30, 60, random.Random(12))
        with pytest.raises(BudgetExceeded):
            pollard_factor(sp.n, RhoConfig(seed=1, deadline_check_interval=64), 1e-6)

    def test_500_semiprimes_within_budget(self):
        rng = random.Random(2024)
        for _ in range(500):
            p_bits = rng.randrange(10, 21)
            q_bits = rng.randrange(10, 21)
            sp = random_semiprime(p_bits, q_bits, p_bits + q_bits, rng)
            d, _ = pollard_factor(sp.n, RhoConfig(seed=77), budget_seconds=10.0)
            assert sp.n % d == 0 and 1 < d < sp.n

    def test_iteration_scaling_with_factor_size(self):
        # median iteration count should grow with the smaller factor's size:
        # positive slope of log(median iters) against log(p bits)
        rng = random.Random(55)
        sizes = [12, 16, 20, 24]
        medians = []
        for p_bits in sizes:
            iters = []
            for _ in range(15):
                sp = random_semiprime(p_bits, 28, p_bits + 28, rng)
                _, trace = pollard_factor(sp.n, RhoConfig(seed=13), budget_seconds=30.0)
                iters.append(max(trace.iterations, 1))
            medians.append(statistics.median(iters))
        xs = [math.log(s) for s in sizes]
        ys = [math.log(m) for m in medians]
        mean_x, mean_y = statistics.fmean(xs), statistics.fmean(ys)
        slope = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys)) / sum(
            (x - mean_x) ** 2 for x in xs
        )
        assert slope > 0, medians


class TestRhoConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            RhoConfig(seed=0, max_restarts=0)
        with pytest.raises(ValueError):
            RhoConfig(seed=0, deadline_check_interval=0)
