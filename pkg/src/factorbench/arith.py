"""Arbitrary-precision number-theory primitives shared by every algorithm.

All functions are pure and operate on Python's native big integers; nothing
here touches global RNG state.
"""

from __future__ import annotations

import math
import random

FIRST_TEN_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)

# Trial-division bound for the deterministic small-number shortcut in
# is_probable_prime: answers are exact below _SMALL_LIMIT**2.
_SMALL_LIMIT = 1000


def _sieve_upto(bound: int) -> list[int]:
    if bound < 2:
        return []
    flags = bytearray(b"\x01") * (bound + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(bound) + 1):
        if flags[p]:
            flags[p * p :: p] = b"\x00" * ((bound - p * p) // p + 1)
    return [i for i, f in enumerate(flags) if f]


_SMALL_PRIMES = tuple(_sieve_upto(_SMALL_LIMIT))


def gcd(a: int, b: int) -> int:
    """Greatest common divisor of two non-negative integers."""
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    return math.gcd(a, b)


def abs_diff(a: int, b: int) -> int:
    """|a - b| for non-negative integers."""
    return a - b if a >= b else b - a


def mod_pow(base: int, exp: int, modulus: int) -> int:
    """base**exp mod modulus via square-and-multiply."""
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    return pow(base, exp, modulus)


def isqrt(n: int) -> int:
    """Floor square root: the unique r with r*r <= n < (r+1)*(r+1)."""
    if n < 0:
        raise ValueError("isqrt of a negative number")
    return math.isqrt(n)


def _miller_rabin(n: int, rounds: int, rng: random.Random) -> bool:
    """Strong-pseudoprime test for odd n >= 5.

    Returns False only for certain composites; a True answer is wrong with
    probability at most 4**-rounds.
    """
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_probable_prime(n: int, rounds: int = 40, rng: random.Random | None = None) -> bool:
    """Probabilistic primality test.

    Small inputs (below _SMALL_LIMIT**2) are decided exactly by trial
    division. Larger inputs go through Miller-Rabin with `rounds` random
    witnesses; when no generator is supplied, witnesses are drawn from a
    generator seeded by n itself, so repeated calls agree.
    """
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < _SMALL_LIMIT * _SMALL_LIMIT:
        # no prime factor below _SMALL_LIMIT, and n < _SMALL_LIMIT**2
        return True
    if rng is None:
        rng = random.Random(n)
    return _miller_rabin(n, rounds, rng)


def first_ten_primes() -> list[int]:
    """The ten smallest primes, used as a cheap pre-check before rho."""
    return list(FIRST_TEN_PRIMES)
