"""Basic quadratic sieve: factor base, relation collection, matrix step,
congruence-of-squares extraction, and the bound/window retry loop.

Candidates b = ceil(sqrt(n)), ceil(sqrt(n))+1, ... give residues
a = b*b mod n; the ones that factor completely over the prime base become
relations. A subset of relations whose exponent parities cancel yields
x*x = y*y (mod n), and gcd(|x-y|, n) then splits n unless the congruence
is degenerate. When no split falls out, the smooth bound and the scan
window both grow by fixed increments and the process repeats.

`collect_relations` is the plain reference scan for one (base, window)
setting. `qs_factor` runs the retry loop on top of an incremental scanner
that caches each candidate's undivided residual between rounds, dividing
only by newly admitted primes; the per-round relation sets are identical
to fresh rescans (the tests check this), only cheaper.
"""

from __future__ import annotations

import bisect
import time
from dataclasses import dataclass

from .arith import abs_diff, gcd, isqrt
from .errors import BudgetExceeded, PerfectSquare, RoundsExhausted
from .gf2 import BitMatrix, Dependency, eliminate


@dataclass(frozen=True)
class FactorBase:
    """All primes up to and including the smooth bound, ascending."""

    bound: int
    primes: tuple[int, ...]


@dataclass(frozen=True)
class Relation:
    """One candidate b with b*b = a (mod n) and a fully smooth over the base."""

    b: int
    a: int
    exponents: tuple[int, ...]
    parity: tuple[int, ...]

    def __post_init__(self):
        if len(self.exponents) != len(self.parity):
            raise ValueError("exponent and parity vectors must have equal length")


@dataclass(frozen=True)
class QsParams:
    b_bound: int = 10
    m_count: int = 100
    b_increment: int = 10
    m_increment: int = 100
    max_rounds: int = 500

    def __post_init__(self):
        if self.b_bound < 2:
            raise ValueError("b_bound must be >= 2")
        if self.m_count < 1:
            raise ValueError("m_count must be >= 1")
        if self.b_increment < 1 or self.m_increment < 1:
            raise ValueError("increments must be >= 1")
        if self.max_rounds < 1:
            raise ValueError("max_rounds must be >= 1")


@dataclass
class QsTrace:
    rounds: int = 0
    relations_found: int = 0
    dependencies_tried: int = 0
    final_b: int = 0
    final_m: int = 0
    via_small_factor: bool = False


def build_factor_base(bound: int) -> FactorBase:
    """Sieve of Eratosthenes up to the smooth bound."""
    if bound < 2:
        raise ValueError("bound must be >= 2")
    flags = bytearray(b"\x01") * (bound + 1)
    flags[0] = flags[1] = 0
    for p in range(2, isqrt(bound) + 1):
        if flags[p]:
            flags[p * p :: p] = b"\x00" * ((bound - p * p) // p + 1)
    return FactorBase(bound, tuple(i for i, f in enumerate(flags) if f))


def smooth_decompose(a: int, fb: FactorBase) -> list[int] | None:
    """Exponent vector of a over the base, or None if a residual survives."""
    if a < 1:
        raise ValueError("a must be >= 1")
    primes = fb.primes
    exps = [0] * len(primes)
    rem = a
    for i, p in enumerate(primes):
        if rem == 1:
            return exps
        if p * p > rem:
            # the residual is prime; smooth iff it sits in the remaining base
            j = bisect.bisect_left(primes, rem, i)
            if j < len(primes) and primes[j] == rem:
                exps[j] += 1
                return exps
            return None
        while rem % p == 0:
            rem //= p
            exps[i] += 1
    return exps if rem == 1 else None


def _ceil_sqrt(n: int) -> int:
    r = isqrt(n)
    return r + 1 if r * r < n else r


def collect_relations(
    n: int, fb: FactorBase, m_count: int, deadline: float | None = None
) -> list[Relation]:
    """Scan m_count consecutive candidates from ceil(sqrt(n)) and keep the
    smooth ones, in scan order.

    `deadline` is an absolute time.monotonic() timestamp; crossing it raises
    BudgetExceeded and the partial scan is discarded.
    """
    relations = []
    b = _ceil_sqrt(n)
    for _ in range(m_count):
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceeded(f"relation scan over {n} ran past its deadline")
        a = b * b % n
        if a != 0:
            exps = smooth_decompose(a, fb)
            if exps is not None:
                relations.append(
                    Relation(b=b, a=a, exponents=tuple(exps), parity=tuple(e & 1 for e in exps))
                )
        b += 1
    return relations


def extract_factor(
    n: int, fb: FactorBase, relations: list[Relation], dep: Dependency
) -> int | None:
    """Turn one dependency into a factor via the congruence of squares.

    x is the product of the selected b values mod n; y is rebuilt from the
    halved sum of exponent vectors. Tries gcd(|x-y|, n) and then
    gcd(x+y, n); returns None when both come out trivial.
    """
    indices = sorted(dep.row_indices)
    width = len(fb.primes)
    total = [0] * width
    x = 1
    for i in indices:
        if not 0 <= i < len(relations):
            raise IndexError(f"relation index {i} out of range")
        rel = relations[i]
        if len(rel.exponents) != width:
            raise ValueError("relation exponent vector does not match the base")
        x = x * rel.b % n
        for j, e in enumerate(rel.exponents):
            total[j] += e
    if any(e & 1 for e in total):
        raise ValueError("selected relations do not have even combined exponents")
    y = 1
    for j, e in enumerate(total):
        if e:
            y = y * pow(fb.primes[j], e >> 1, n) % n
    g = gcd(abs_diff(x, y), n)
    if 1 < g < n:
        return g
    g = gcd(x + y, n)
    if 1 < g < n:
        return g
    return None


class _RelationScanner:
    """Incremental candidate scan shared across retry rounds.

    Every candidate keeps the residual of a after dividing out all primes
    admitted so far, so growing the base only costs divisions by the new
    primes. Promoted relations are stored in candidate order with their
    exponent vector frozen at promotion width (later primes cannot divide
    an already-smooth residue, so the tail is always zero padding).
    """

    def __init__(self, n: int):
        self.n = n
        self.start_b = _ceil_sqrt(n)
        self.next_b = self.start_b
        self.pending: list[list] = []  # [b, a, rem, fac] with rem > 1
        self.smooth: list[list] = []  # [b, a, fac, exps, parity_mask], b ascending
        self.primes_done = 0

    def advance(self, primes: tuple[int, ...], m_count: int, deadline: float | None) -> None:
        n = self.n
        new_primes = primes[self.primes_done :]
        index = {p: i for i, p in enumerate(primes)}
        if new_primes and self.pending:
            still = []
            ticker = 0
            for entry in self.pending:
                ticker += 1
                if ticker >= 256:
                    ticker = 0
                    self._check(deadline)
                rem = entry[2]
                fac = entry[3]
                for p in new_primes:
                    if rem == 1:
                        break
                    while rem % p == 0:
                        rem //= p
                        fac[p] = fac.get(p, 0) + 1
                entry[2] = rem
                if rem == 1:
                    self._promote(entry[0], entry[1], fac, index, len(primes))
                else:
                    still.append(entry)
            self.pending = still
        target_b = self.start_b + m_count
        b = self.next_b
        while b < target_b:
            self._check(deadline)
            a = b * b % n
            if a != 0:
                rem = a
                fac: dict[int, int] = {}
                for p in primes:
                    if rem == 1:
                        break
                    if p * p > rem:
                        # prime residual: either a base prime or a dead end for now
                        j = index.get(rem)
                        if j is not None:
                            fac[rem] = fac.get(rem, 0) + 1
                            rem = 1
                        break
                    while rem % p == 0:
                        rem //= p
                        fac[p] = fac.get(p, 0) + 1
                if rem == 1:
                    self._promote(b, a, fac, index, len(primes))
                else:
                    self.pending.append([b, a, rem, fac])
            b += 1
        self.next_b = b
        self.primes_done = len(primes)

    def _check(self, deadline: float | None) -> None:
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceeded(f"relation scan over {self.n} ran past its deadline")

    def _promote(self, b: int, a: int, fac: dict, index: dict, width: int) -> None:
        exps = [0] * width
        mask = 0
        for p, e in fac.items():
            i = index[p]
            exps[i] = e
            if e & 1:
                mask |= 1 << i
        bisect.insort(self.smooth, [b, a, fac, exps, mask], key=lambda e: e[0])

    def parity_masks(self) -> list[int]:
        return [entry[4] for entry in self.smooth]

    def relations(self, fb: FactorBase) -> list[Relation]:
        width = len(fb.primes)
        out = []
        for b, a, _, exps, _ in self.smooth:
            exp_t = tuple(exps) + (0,) * (width - len(exps))
            out.append(Relation(b=b, a=a, exponents=exp_t, parity=tuple(e & 1 for e in exp_t)))
        return out


def qs_factor(
    n: int, params: QsParams | None = None, budget_seconds: float | None = None
) -> tuple[int, QsTrace]:
    """Factor composite n with the retry loop over (bound, window) settings.

    Returns (factor, trace). Raises PerfectSquare when n = k*k (the sieve's
    congruences all degenerate there), BudgetExceeded at a polling point
    past the budget, and RoundsExhausted after max_rounds fruitless rounds.
    A first-round base prime dividing n is returned straight away and
    flagged in the trace. Dependencies already seen to produce a trivial
    congruence are not retried on later rounds (the outcome cannot change),
    so dependencies_tried counts distinct attempts.
    """
    if n < 4:
        raise ValueError("n must be >= 4")
    params = params if params is not None else QsParams()
    root = isqrt(n)
    if root * root == n:
        raise PerfectSquare(n, root)
    deadline = None if budget_seconds is None else time.monotonic() + budget_seconds
    trace = QsTrace()
    b_bound = params.b_bound
    m_count = params.m_count
    scanner = _RelationScanner(n)
    tried_trivial: set[frozenset[int]] = set()
    for round_no in range(1, params.max_rounds + 1):
        trace.rounds = round_no
        trace.final_b = b_bound
        trace.final_m = m_count
        fb = build_factor_base(b_bound)
        if round_no == 1:
            for p in fb.primes:
                if p < n and n % p == 0:
                    trace.via_small_factor = True
                    return p, trace
        try:
            scanner.advance(fb.primes, m_count, deadline)
        except BudgetExceeded as exc:
            exc.trace = trace
            raise
        trace.relations_found = len(scanner.smooth)
        masks = scanner.parity_masks()
        relations: list[Relation] | None = None

        def attempt(dep: Dependency) -> int | None:
            nonlocal relations
            signature = frozenset(scanner.smooth[i][0] for i in dep.row_indices)
            if signature in tried_trivial:
                return None
            if relations is None:
                relations = scanner.relations(fb)
            trace.dependencies_tried += 1
            g = extract_factor(n, fb, relations, dep)
            if g is None:
                tried_trivial.add(signature)
            return g

        # a relation with all-even exponents is a congruence of squares by itself
        for i, mask in enumerate(masks):
            if mask == 0:
                g = attempt(Dependency(frozenset([i])))
                if g is not None:
                    return g, trace
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceeded(f"sieve budget exceeded on {n}", trace=trace)
        for dep in eliminate(BitMatrix(len(fb.primes), masks)):
            g = attempt(dep)
            if g is not None:
                return g, trace
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceeded(f"sieve budget exceeded on {n}", trace=trace)
        b_bound += params.b_increment
        m_count += params.m_increment
    raise RoundsExhausted(f"no factor of {n} within {params.max_rounds} rounds", trace=trace)
