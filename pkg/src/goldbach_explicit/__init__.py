"""Numerical verification toolkit for an explicit short-interval Goldbach bound.

Modules: zeta_numerics (zeta and its log derivative on Re s >= 1/2),
prime_engine (sieve, prime sums, Selberg integrals, Goldbach scans),
zero_lab (zero tables and sums over zeros), moment_quadrature (adaptive
quadrature and mean-square bounds), constants_pipeline (the constant chain)
and cli.
"""
from . import registry
from .report import Check, Report

__version__ = "0.1.0"
__all__ = ["registry", "Check", "Report", "__version__"]
