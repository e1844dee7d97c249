"""Pollard-rho factorization with Floyd cycle detection.

The sequence x_{i+1} = x_i^2 + c (mod n) is walked at single and double
speed; gcd(|x - y|, n) exposes a factor once the two walkers collide modulo
a prime divisor of n. Two pre-checks run first: a primality test (a prime
input would loop forever) and trial division by the ten smallest primes.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .arith import abs_diff, first_ten_primes, gcd, is_probable_prime
from .errors import BudgetExceeded, NotComposite, RestartsExhausted


@dataclass(frozen=True)
class RhoConfig:
    seed: int
    max_restarts: int = 20
    deadline_check_interval: int = 1024

    def __post_init__(self):
        if self.max_restarts < 1:
            raise ValueError("max_restarts must be >= 1")
        if self.deadline_check_interval < 1:
            raise ValueError("deadline_check_interval must be >= 1")


@dataclass
class RhoTrace:
    """Counters for one pollard_factor call; iterations accumulate across restarts."""

    iterations: int = 0
    restarts: int = 0
    c_values: list[int] = field(default_factory=list)


def rho_step(x: int, c: int, n: int) -> int:
    """One application of the iteration polynomial: (x*x + c) mod n."""
    return (x * x + c) % n


def pollard_factor(
    n: int, cfg: RhoConfig, budget_seconds: float | None = None
) -> tuple[int, RhoTrace]:
    """Find a nontrivial factor of composite n.

    Raises NotComposite for (probable) primes, BudgetExceeded when the time
    budget runs out, and RestartsExhausted when every restart ended with
    gcd = n. Identical (n, seed) pairs produce identical traces.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    deadline = None if budget_seconds is None else time.monotonic() + budget_seconds
    trace = RhoTrace()
    if is_probable_prime(n):
        raise NotComposite(f"{n} is probably prime")
    for p in first_ten_primes():
        if p < n and n % p == 0:
            return p, trace
    rng = random.Random(cfg.seed)
    interval = cfg.deadline_check_interval
    for attempt in range(cfg.max_restarts):
        c = rng.randrange(1, n)
        x = rng.randrange(1, n)
        trace.c_values.append(c)
        trace.restarts = attempt
        y = (x * x + c) % n
        since_check = 0
        while True:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            trace.iterations += 1
            d = gcd(abs_diff(x, y), n)
            if d != 1:
                if d != n:
                    return d, trace
                break  # walkers met; restart with fresh c and x0
            since_check += 1
            if since_check >= interval:
                since_check = 0
                if deadline is not None and time.monotonic() > deadline:
                    raise BudgetExceeded(
                        f"pollard budget of {budget_seconds}s exceeded on {n}", trace=trace
                    )
    raise RestartsExhausted(
        f"no nontrivial factor of {n} in {cfg.max_restarts} restarts", trace=trace
    )
