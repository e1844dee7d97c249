"""Factorization toolkit: pollard-rho, basic quadratic sieve, and a seeded
benchmark harness for comparing the two on semiprime datasets."""

from .arith import first_ten_primes, gcd, is_probable_prime, isqrt, mod_pow
from .bench import BenchConfig, BenchRecord, FactorOutcome, run_bench, verify_outcomes
from .errors import (
    BudgetExceeded,
    GenerationError,
    NotComposite,
    PerfectSquare,
    RestartsExhausted,
    RoundsExhausted,
)
from .gf2 import BitMatrix, Dependency, eliminate, row_xor_check
from .pollard import RhoConfig, RhoTrace, pollard_factor, rho_step
from .primegen import (
    DatasetSpec,
    Semiprime,
    generate_dataset,
    random_prime,
    random_semiprime,
)
from .report import complexity_models, head_to_head, render_report
from .sieve import (
    FactorBase,
    QsParams,
    QsTrace,
    Relation,
    build_factor_base,
    collect_relations,
    extract_factor,
    qs_factor,
    smooth_decompose,
)

__all__ = [
    "BenchConfig",
    "BenchRecord",
    "BitMatrix",
    "BudgetExceeded",
    "DatasetSpec",
    "Dependency",
    "FactorBase",
    "FactorOutcome",
    "GenerationError",
    "NotComposite",
    "PerfectSquare",
    "QsParams",
    "QsTrace",
    "Relation",
    "RestartsExhausted",
    "RhoConfig",
    "RhoTrace",
    "RoundsExhausted",
    "Semiprime",
    "build_factor_base",
    "collect_relations",
    "complexity_models",
    "eliminate",
    "extract_factor",
    "first_ten_primes",
    "gcd",
    "generate_dataset",
    "head_to_head",
    "is_probable_prime",
    "isqrt",
    "mod_pow",
    "pollard_factor",
    "qs_factor",
    "random_prime",
    "random_semiprime",
    "render_report",
    "rho_step",
    "row_xor_check",
    "run_bench",
    "smooth_decompose",
    "verify_outcomes",
]

__version__ = "0.1.0"
