import logging

import numpy as np
import pytest
import sympy

from revsieve.core.config import DEFAULT_SEED, SieveConfig
from revsieve.core.digits import DigitContext, reverse_digits
from revsieve.core.engine import SieveEngine

@pytest.fixture
def sieve_config() -> SieveConfig:
    # smallest segments, so even small windows span several of them
    return SieveConfig(segment_bytes=2**12)

@pytest.fixture
def engine(sieve_config: SieveConfig) -> SieveEngine:
    return SieveEngine(sieve_config)

@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(DEFAULT_SEED)

@pytest.fixture(autouse=True)
def reset_cli_logging():
    # the CLI attaches a handler to the package logger; later tests expect the default
    yield
    package_logger = logging.getLogger("revsieve")
    package_logger.handlers.clear()
    package_logger.propagate = True
    package_logger.setLevel(logging.NOTSET)

# Brute-force oracles

class Oracle:

    @staticmethod
    def b_n(n: int) -> list[int]:
        return list(range(2 ** (n - 1) + 1, 2**n, 2))

    @staticmethod
    def reversible_primes(base: int, n: int) -> list[int]:
        ctx = DigitContext(base=base, n=n)
        return [
            p
            for p in sympy.primerange(ctx.lo, ctx.hi)
            if sympy.isprime(reverse_digits(p, base, n))
        ]

    @staticmethod
    def big_omega(k: int) -> int:
        return sum(sympy.factorint(k).values())

    @staticmethod
    def squarefree(k: int) -> bool:
        return k > 0 and all(e == 1 for e in sympy.factorint(k).values())

@pytest.fixture
def oracle() -> Oracle:
    return Oracle()

# Markers for test categorization

def pytest_configure(config):
    config.addinivalue_line("markers", "unit: mark test as a unit test (fast, pure computation)")
    config.addinivalue_line(
        "markers", "integration: mark test as an integration test (table reproduction, CLI)"
    )
    config.addinivalue_line("markers", "slow: mark test as slow running")
