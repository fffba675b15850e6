"""Exact counts and diagnostics for primes of the form [n^c]."""

from ._pslab import (
    ResourceError,
    bilinear_exponents,
    count,
    decompose_by_z,
    eval_word,
    floor_pow,
    hb_lambda,
    main_term_sqfree,
    prime_expsum,
    run_cli,
    sigma_constant,
    vaaler_scan,
    von_mangoldt,
)

__all__ = [
    "ResourceError",
    "bilinear_exponents",
    "count",
    "decompose_by_z",
    "eval_word",
    "floor_pow",
    "hb_lambda",
    "main_term_sqfree",
    "prime_expsum",
    "run_cli",
    "sigma_constant",
    "vaaler_scan",
    "von_mangoldt",
]
