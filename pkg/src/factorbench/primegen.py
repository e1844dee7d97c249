"""Seeded generation of probable primes and semiprime benchmark datasets.

Datasets are described by a DatasetSpec (loadable from JSON) and serialized
as CSV. Generation is fully deterministic for a fixed spec: each group gets
its own generator derived from the base seed, so groups can be produced in
any order or in parallel without changing the output.
"""

from __future__ import annotations

import csv
import hashlib
import json
import random
from dataclasses import dataclass, field
from pathlib import Path

from .arith import is_probable_prime
from .errors import GenerationError

# Resampling cap for exact product bit lengths. The product of a-bit and
# b-bit integers has a+b or a+b-1 bits, so per-attempt success probability
# is far above 1/2 and the cap is only ever hit on unsatisfiable requests.
MAX_RESAMPLE_ATTEMPTS = 10_000

PRIMALITY_ROUNDS = 40

DATASET_CSV_HEADER = ["n", "p", "q", "p_bits", "q_bits", "n_bits"]


def derive_seed(base: int, *parts) -> int:
    """Fold identifying parts into a base seed, stably across platforms."""
    text = ":".join([str(base), *(str(p) for p in parts)])
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


@dataclass(frozen=True)
class Semiprime:
    """A generated test composite with its two known prime factors."""

    n: int
    p: int
    q: int
    p_bits: int
    q_bits: int
    n_bits: int

    def __post_init__(self):
        if self.p > self.q:
            raise ValueError("factors must be ordered p <= q")
        if self.p * self.q != self.n:
            raise ValueError("p * q != n")
        if (self.p.bit_length(), self.q.bit_length(), self.n.bit_length()) != (
            self.p_bits,
            self.q_bits,
            self.n_bits,
        ):
            raise ValueError("recorded bit lengths disagree with the values")

    @property
    def bit_difference(self) -> int:
        return abs(self.p_bits - self.q_bits)


def make_semiprime(p: int, q: int) -> Semiprime:
    """Canonicalize factor order and fill in the bit-length fields."""
    if p > q:
        p, q = q, p
    return Semiprime(p * q, p, q, p.bit_length(), q.bit_length(), (p * q).bit_length())


@dataclass(frozen=True)
class FixedGroup:
    count: int
    p_bits: int
    q_bits: int
    n_bits: int

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.p_bits + self.q_bits != self.n_bits:
            raise ValueError(
                f"p_bits + q_bits must equal n_bits (got {self.p_bits}+{self.q_bits} != {self.n_bits})"
            )
        if min(self.p_bits, self.q_bits) < 2:
            raise ValueError("prime bit lengths must be >= 2")


@dataclass(frozen=True)
class RandomGroup:
    count: int
    max_product_bits: int

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.max_product_bits < 4:
            raise ValueError("max_product_bits must be >= 4")


@dataclass(frozen=True)
class DatasetSpec:
    seed: int
    groups: tuple[FixedGroup, ...] = field(default_factory=tuple)
    random_groups: tuple[RandomGroup, ...] = field(default_factory=tuple)

    def total_count(self) -> int:
        return sum(g.count for g in self.groups) + sum(g.count for g in self.random_groups)


def random_prime(bits: int, rng: random.Random) -> int:
    """A probable prime with exactly `bits` bits.

    Candidates have the top bit forced to 1 (exact width) and the low bit
    forced to 1 (odd), and are retried until one passes the primality test.
    """
    if bits < 2:
        raise ValueError("bits must be >= 2")
    while True:
        candidate = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if is_probable_prime(candidate, PRIMALITY_ROUNDS):
            return candidate


def random_semiprime(p_bits: int, q_bits: int, n_bits: int, rng: random.Random) -> Semiprime:
    """A semiprime whose product has exactly n_bits bits.

    Both primes are resampled together until the product carries into the
    requested width; the factors are always distinct.
    """
    if p_bits + q_bits != n_bits:
        raise ValueError("p_bits + q_bits must equal n_bits")
    for _ in range(MAX_RESAMPLE_ATTEMPTS):
        p = random_prime(p_bits, rng)
        q = random_prime(q_bits, rng)
        if p == q:
            continue
        if (p * q).bit_length() == n_bits:
            return make_semiprime(p, q)
    raise GenerationError(
        f"no {n_bits}-bit product of distinct {p_bits}/{q_bits}-bit primes "
        f"after {MAX_RESAMPLE_ATTEMPTS} attempts"
    )


def _random_semiprime_loose(p_bits: int, q_bits: int, rng: random.Random) -> Semiprime:
    """Distinct primes of the requested widths; the product width falls where it may."""
    while True:
        p = random_prime(p_bits, rng)
        q = random_prime(q_bits, rng)
        if p != q:
            return make_semiprime(p, q)


def _admissible_pairs(max_product_bits: int) -> list[tuple[int, int]]:
    """(p_bits, q_bits) pairs whose product can never exceed max_product_bits."""
    return [
        (pb, qb)
        for pb in range(2, max_product_bits - 1)
        for qb in range(2, max_product_bits - 1)
        if pb + qb <= max_product_bits
    ]


def generate_dataset(spec: DatasetSpec) -> list[Semiprime]:
    """All groups in spec order, deterministic for a fixed spec."""
    out: list[Semiprime] = []
    for gi, group in enumerate(spec.groups):
        rng = random.Random(derive_seed(spec.seed, "group", gi))
        for _ in range(group.count):
            out.append(random_semiprime(group.p_bits, group.q_bits, group.n_bits, rng))
    for gi, group in enumerate(spec.random_groups):
        rng = random.Random(derive_seed(spec.seed, "random", gi))
        pairs = _admissible_pairs(group.max_product_bits)
        for _ in range(group.count):
            pb, qb = pairs[rng.randrange(len(pairs))]
            out.append(_random_semiprime_loose(pb, qb, rng))
    return out


def load_dataset_spec(path: str | Path, seed_override: int | None = None) -> DatasetSpec:
    """Parse a DatasetSpec from its JSON document form."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    return dataset_spec_from_dict(doc, seed_override=seed_override)


def dataset_spec_from_dict(doc: dict, seed_override: int | None = None) -> DatasetSpec:
    if not isinstance(doc, dict):
        raise ValueError("dataset spec must be a JSON object")
    unknown = set(doc) - {"seed", "groups", "random_groups"}
    if unknown:
        raise ValueError(f"unknown dataset spec keys: {sorted(unknown)}")
    seed = seed_override if seed_override is not None else doc.get("seed")
    if not isinstance(seed, int):
        raise ValueError("dataset spec needs an integer 'seed'")
    groups = tuple(
        FixedGroup(g["count"], g["p_bits"], g["q_bits"], g["n_bits"])
        for g in doc.get("groups", [])
    )
    random_groups = tuple(
        RandomGroup(g["count"], g["max_product_bits"]) for g in doc.get("random_groups", [])
    )
    return DatasetSpec(seed=seed, groups=groups, random_groups=random_groups)


def write_dataset_csv(path: str | Path, semiprimes: list[Semiprime]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(DATASET_CSV_HEADER)
        for s in semiprimes:
            writer.writerow([s.n, s.p, s.q, s.p_bits, s.q_bits, s.n_bits])


def read_dataset_csv(path: str | Path) -> list[Semiprime]:
    out = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != DATASET_CSV_HEADER:
            raise ValueError(f"unexpected dataset header: {reader.fieldnames}")
        for row in reader:
            out.append(
                Semiprime(
                    n=int(row["n"]),
                    p=int(row["p"]),
                    q=int(row["q"]),
                    p_bits=int(row["p_bits"]),
                    q_bits=int(row["q_bits"]),
                    n_bits=int(row["n_bits"]),
                )
            )
    return out
