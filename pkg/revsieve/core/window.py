from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .digits import DigitContext
from .errors import DomainError
from .primes import is_probable_prime, is_squarefree

_POPCOUNT8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)

class WindowKind(str, Enum):

    PRIME = "prime"
    SQUAREFREE = "squarefree"
    ROUGH = "rough"

def first_multiple_index(first: int, step: int, q: int, *, at_least: int = 0) -> int:
    """Index of the first term of first + step*i that is divisible by q and >= at_least.

    `q` must be coprime to `step`.
    """
    i = (-first * pow(step, -1, q)) % q if q > 1 else 0
    value = first + step * i
    if value < at_least:
        i += -(-(at_least - value) // (step * q)) * q
    return i

def sieve_progression(first: int, step: int, count: int, primes: np.ndarray) -> np.ndarray:
    """Primality flags of first + step*i for 0 <= i < count.

    `primes` must contain every prime p with p*p below the last term. Primes dividing
    `step` are skipped, so callers pass progressions whose terms avoid them.
    """
    flags = np.ones(count, dtype=bool)
    last = first + step * (count - 1)
    for p in primes:
        p = int(p)
        if p * p > last:
            break
        if step % p == 0:
            continue
        i = first_multiple_index(first, step, p, at_least=p * p)
        flags[i::p] = False
    for small in (0, 1):
        offset = small - first
        if offset >= 0 and offset % step == 0 and offset // step < count:
            flags[offset // step] = False
    return flags

def squarefree_progression(first: int, count: int, primes: np.ndarray) -> np.ndarray:
    # Consecutive integers first .. first + count - 1
    flags = np.ones(count, dtype=bool)
    last = first + count - 1
    for p in primes:
        q = int(p) * int(p)
        if q > last:
            break
        flags[first_multiple_index(first, 1, q) :: q] = False
    if first == 0 and count:
        flags[0] = False
    return flags

def rough_progression(first: int, step: int, count: int, primes: np.ndarray) -> np.ndarray:
    # True where no listed prime divides the term, the prime itself included
    flags = np.ones(count, dtype=bool)
    for p in primes:
        p = int(p)
        if step % p == 0:
            if first % p == 0:
                flags[:] = False
            continue
        flags[first_multiple_index(first, step, p) :: p] = False
    return flags

def omega_progression(first: int, step: int, count: int, primes: np.ndarray) -> np.ndarray:
    """Big omega of first + step*i, by dividing out prime powers in place.

    `primes` must contain every prime p with p*p at most the last term.
    """
    residual = np.uint64(first) + np.uint64(step) * np.arange(count, dtype=np.uint64)
    counts = np.zeros(count, dtype=np.uint8)
    last = first + step * (count - 1)
    for p in primes:
        p = int(p)
        if p * p > last:
            break
        if step % p == 0:
            continue
        pk = p
        while pk <= last:
            i = first_multiple_index(first, step, pk)
            counts[i::pk] += 1
            residual[i::pk] //= np.uint64(p)
            pk *= p
    counts += (residual > 1).astype(np.uint8)
    return counts

@dataclass
class SieveWindow:

    ctx: DigitContext
    kind: WindowKind
    start: int
    stride: int
    size: int
    bits: np.ndarray = field(repr=False)

    # Base 10 prime windows store odd values only, so 2 is tracked here
    includes_two: bool = False
    strict_ndigit_reverse: bool = False

    @property
    def stop(self) -> int:
        return self.start + self.stride * self.size

    @property
    def nbytes(self) -> int:
        return int(self.bits.nbytes)

    def popcount(self) -> int:
        return int(_POPCOUNT8[self.bits].sum()) + int(self.includes_two)

    def flags_at(self, values: np.ndarray) -> np.ndarray:
        """Membership flags for arbitrary values; values outside the window read False."""
        v = np.asarray(values, dtype=np.uint64).astype(np.int64)
        offset = v - self.start
        inside = (offset >= 0) & (offset % self.stride == 0) & (v < self.stop)
        idx = np.where(inside, offset // self.stride, 0)
        bit = (self.bits[idx >> 3] >> (idx & 7).astype(np.uint8)) & 1
        return inside & (bit == 1)

    def contains_prime(self, values: np.ndarray) -> np.ndarray:
        if self.kind is not WindowKind.PRIME:
            raise DomainError(f"contains_prime needs a prime window, got {self.kind.value}")
        v = np.asarray(values, dtype=np.uint64)
        found = self.flags_at(v)
        if self.includes_two:
            found |= v == 2
        if not self.strict_ndigit_reverse:
            # Reversals can leave the window from below when the last digit is 0
            below = np.flatnonzero(v < self.ctx.lo)
            for i in below:
                found[i] = is_probable_prime(int(v[i]))
        return found

    def values(self, lo_index: int = 0, hi_index: int | None = None) -> np.ndarray:
        """Flagged values with index in [lo_index, hi_index), lo_index a multiple of 8.

        The untracked prime 2 is reported with the chunk starting at index 0.
        """
        hi_index = self.size if hi_index is None else min(hi_index, self.size)
        if lo_index % 8:
            raise DomainError(f"lo_index must be byte aligned, got {lo_index}")
        chunk = np.unpackbits(self.bits[lo_index // 8 : (hi_index + 7) // 8], bitorder="little")
        idx = np.flatnonzero(chunk[: hi_index - lo_index]).astype(np.uint64) + np.uint64(lo_index)
        values = np.uint64(self.start) + np.uint64(self.stride) * idx
        if self.includes_two and lo_index == 0:
            values = np.concatenate((np.array([2], dtype=np.uint64), values))
        return values

    def iter_values(self, chunk: int = 1 << 22) -> Iterator[np.ndarray]:
        chunk -= chunk % 8
        for lo_index in range(0, self.size, chunk):
            yield self.values(lo_index, lo_index + chunk)

    def spot_check(self, samples: int, rng: np.random.Generator) -> list[int]:
        """Sample window entries and return those whose flag disagrees with an independent oracle."""
        if self.size == 0:
            return []
        idx = rng.integers(0, self.size, size=min(samples, self.size))
        values = self.start + self.stride * idx.astype(np.int64)
        flags = self.flags_at(values.astype(np.uint64))
        oracle = _ORACLES.get(self.kind)
        if oracle is None:
            raise DomainError(f"No independent oracle for {self.kind.value} windows")
        return [int(v) for v, f in zip(values, flags) if oracle(int(v)) != bool(f)]

_ORACLES = {
    WindowKind.PRIME: is_probable_prime,
    WindowKind.SQUAREFREE: is_squarefree,
}

def pack(flags: np.ndarray) -> np.ndarray:
    return np.packbits(flags, bitorder="little")
