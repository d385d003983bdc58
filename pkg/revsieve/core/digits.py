from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

SUPPORTED_BASES = (2, 10)

# Largest digit count whose window still fits in an unsigned 64-bit word
MAX_DIGITS = {2: 63, 10: 18}

_BITREV8 = np.array([int(f"{i:08b}"[::-1], 2) for i in range(256)], dtype=np.uint64)

@dataclass(frozen=True)
class DigitContext:

    base: int
    n: int

    def __post_init__(self) -> None:
        if self.base not in SUPPORTED_BASES:
            raise DomainError(f"Base must be one of {SUPPORTED_BASES}, got {self.base}")
        if not 1 <= self.n <= MAX_DIGITS[self.base]:
            raise DomainError(
                f"Digit count for base {self.base} must be in [1, {MAX_DIGITS[self.base]}], got {self.n}"
            )

    @property
    def lo(self) -> int:
        return self.base ** (self.n - 1)

    @property
    def hi(self) -> int:
        return self.base**self.n

    def __contains__(self, k: int) -> bool:
        return self.lo <= k < self.hi

    def require(self, k: int) -> None:
        if k not in self:
            raise DomainError(
                f"{k} is not a {self.n}-digit integer in base {self.base} "
                f"(window [{self.lo}, {self.hi}))"
            )

def binary(n: int) -> DigitContext:
    return DigitContext(base=2, n=n)

def bn_size(n: int) -> int:
    if n < 2:
        raise DomainError(f"B_n is defined for n >= 2, got {n}")
    return 1 << (n - 2)

def in_bn(a: int, n: int) -> bool:
    return a & 1 == 1 and (1 << (n - 1)) <= a < (1 << n)

def reverse_digits(value: int, base: int, width: int) -> int:
    # Reversal of the low `width` digits, leading zeros included
    result = 0
    for _ in range(width):
        value, digit = divmod(value, base)
        result = result * base + digit
    return result

def reverse(k: int, ctx: DigitContext) -> int:
    ctx.require(k)
    return reverse_digits(k, ctx.base, ctx.n)

def is_palindrome(k: int, ctx: DigitContext) -> bool:
    return reverse(k, ctx) == k

def mirror_congruence_check(a: int, ctx: DigitContext) -> bool:
    if ctx.base != 2:
        raise DomainError(f"The mod 3 mirror congruence holds in base 2 only, got base {ctx.base}")
    if not in_bn(a, ctx.n):
        raise DomainError(f"{a} is not in B_{ctx.n}")
    sign = 1 if ctx.n % 2 == 1 else -1
    return (reverse(a, ctx) - sign * a) % 3 == 0

def reverse_array(values: np.ndarray, ctx: DigitContext) -> np.ndarray:
    """Elementwise `reverse` over an array of n-digit integers.

    Inputs are not range checked; values outside the window give the reversal of
    their low n digits.
    """
    v = np.asarray(values, dtype=np.uint64)
    if ctx.base == 2:
        return _bit_reverse(v, ctx.n)

    out = np.zeros_like(v)
    ten = np.uint64(10)
    for _ in range(ctx.n):
        v, digit = np.divmod(v, ten)
        out = out * ten + digit
    return out

def _bit_reverse(v: np.ndarray, n: int) -> np.ndarray:
    nbytes = (n + 7) // 8
    out = np.zeros_like(v)
    mask = np.uint64(0xFF)
    for i in range(nbytes):
        byte = (v >> np.uint64(8 * i)) & mask
        out |= _BITREV8[byte] << np.uint64(8 * (nbytes - 1 - i))
    return out >> np.uint64(8 * nbytes - n)

def b_n_chunks(ctx: DigitContext, chunk: int = 1 << 20) -> Iterator[np.ndarray]:
    if ctx.base != 2:
        raise DomainError(f"B_n is a base 2 set, got base {ctx.base}")
    if ctx.n < 2:
        raise DomainError(f"B_n is defined for n >= 2, got {ctx.n}")
    start, stop = ctx.lo + 1, ctx.hi
    step = 2 * chunk
    for begin in range(start, stop, step):
        yield np.arange(begin, min(begin + step, stop), 2, dtype=np.uint64)
