from __future__ import annotations

import math
from collections.abc import Iterator
from functools import lru_cache

import numpy as np
import sympy

from .errors import DomainError

# Strong-pseudoprime bases that are deterministic below 3.317e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981

def _strong_probable_prime(n: int, a: int) -> bool:
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False

def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n >= _MR_LIMIT:
        raise DomainError(f"Deterministic primality test is valid below {_MR_LIMIT}, got {n}")
    return all(_strong_probable_prime(n, a) for a in _MR_BASES)

@lru_cache(maxsize=32)
def _small_primes_cached(limit: int) -> np.ndarray:
    if limit <= 2:
        return np.zeros(0, dtype=np.int64)
    # odd-only table, index i stands for 2i + 1
    size = limit // 2
    table = np.ones(size, dtype=bool)
    table[0] = False
    for i in range(1, min(size, (math.isqrt(limit - 1) + 1) // 2 + 1)):
        if table[i]:
            p = 2 * i + 1
            table[p * p // 2 :: p] = False
    odd = 2 * np.flatnonzero(table).astype(np.int64) + 1
    primes = np.concatenate((np.array([2], dtype=np.int64), odd))
    primes.setflags(write=False)
    return primes

def small_primes(limit: int) -> np.ndarray:
    """Primes strictly below `limit`, as a read-only int64 array."""
    return _small_primes_cached(int(limit))

def sieving_primes(hi: int) -> np.ndarray:
    # Primes p with p * p < hi
    return small_primes(math.isqrt(max(hi - 1, 0)) + 1)

def iter_prime_blocks(limit: int, block: int = 1 << 22) -> Iterator[np.ndarray]:
    """Primes below `limit` in ascending blocks, without holding them all at once."""
    base = sieving_primes(limit)
    for start in range(0, limit, block):
        stop = min(start + block, limit)
        flags = np.ones(stop - start, dtype=bool)
        for p in base:
            p = int(p)
            if p * p >= stop:
                break
            first = max(p * p, -(-start // p) * p)
            flags[first - start :: p] = False
        if start == 0:
            flags[: min(2, stop)] = False
        yield start + np.flatnonzero(flags).astype(np.int64)

def factorize(d: int) -> dict[int, int]:
    if d < 1:
        raise DomainError(f"Factorisation needs a positive integer, got {d}")
    return {int(p): int(e) for p, e in sympy.factorint(d).items()}

def omega(d: int) -> int:
    return len(factorize(d))

def big_omega(d: int) -> int:
    return sum(factorize(d).values())

def is_squarefree(d: int) -> bool:
    return all(e == 1 for e in factorize(d).values())

def mobius(d: int) -> int:
    factors = factorize(d)
    if any(e > 1 for e in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1
