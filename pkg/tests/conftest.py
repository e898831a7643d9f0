import os
from pathlib import Path

import pytest

from goldbach_explicit import prime_engine as pe
from goldbach_explicit import zero_lab as zl

CACHE = Path(os.environ.get("GOLDBACH_EXPLICIT_CACHE", Path.home() / ".cache" / "goldbach-explicit"))

# criterion id -> (passed, detail), filled by test_acceptance
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def cache_dir():
    CACHE.mkdir(parents=True, exist_ok=True)
    return CACHE


@pytest.fixture(scope="session")
def sieve_small():
    return pe.build_sieve(10 ** 7)


@pytest.fixture(scope="session")
def sieve_big(cache_dir):
    # reaches p_26355867 = 499999993 and covers every 1e8-scale check
    return pe.cached_sieve(500_000_000, cache_dir)


@pytest.fixture(scope="session")
def zeros(cache_dir):
    return zl.load_zeros(cache_dir=cache_dir)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k)):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {detail}")
