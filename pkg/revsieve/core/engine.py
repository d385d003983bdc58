from __future__ import annotations

import logging
import time
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import TypeVar

import numpy as np
import sympy

from ..utils.formatters import Formatter
from .blocked import BlockGeometry, ResidueClassSieve, choose_residue_digits
from .config import Settings, SieveConfig, Strategy, get_settings
from .digits import DigitContext, binary, reverse_array
from .errors import ConsistencyError, DomainError, ResourceError
from .primes import sieving_primes, small_primes
from .tables import CountMethod, CountRow, CountTable
from .window import (
    SieveWindow,
    WindowKind,
    omega_progression,
    pack,
    rough_progression,
    sieve_progression,
    squarefree_progression,
)

logger = logging.getLogger(__name__)

T = TypeVar("T")

# Largest digit counts sieved without allow_large
DESK_LIMITS = {2: 36, 10: 9}
THETA_Z_LIMIT = 30
OMEGA_LIMIT = 28

_OMEGA_CHUNK = 1 << 20

class SieveEngine:

    def __init__(self, config: SieveConfig | None = None, *, settings: Settings | None = None) -> None:
        self.config = config or SieveConfig()
        self.settings = settings or get_settings()

    def _check_scale(self, ctx: DigitContext, limit: int | None = None) -> None:
        limit = DESK_LIMITS[ctx.base] if limit is None else limit
        if ctx.n > limit and not self.config.allow_large:
            raise ResourceError(
                f"n={ctx.n} in base {ctx.base} exceeds the desk-scale limit (set allow_large to override)",
                required=ctx.n,
                available=limit,
            )

    def _check_memory(self, required: int, what: str) -> None:
        if required > self.settings.mem_cap_bytes:
            raise ResourceError(
                f"{what} does not fit the memory cap (raise REVSIEVE_MEM_CAP_BYTES)",
                required=required,
                available=self.settings.mem_cap_bytes,
            )

    def _segments(self, size: int, span: int | None = None) -> list[tuple[int, int]]:
        span = span or self.config.segment_span
        return [(i, min(i + span, size)) for i in range(0, size, span)]

    def _map(self, fn: Callable[[T], object], items: Sequence[T]) -> list:
        # Executor.map yields in submission order, so merges never depend on scheduling
        if self.config.threads == 1 or len(items) <= 1:
            return [fn(item) for item in items]
        with ThreadPoolExecutor(max_workers=self.config.threads) as pool:
            return list(pool.map(fn, items))

    def _packed_window(
        self,
        ctx: DigitContext,
        kind: WindowKind,
        start: int,
        stride: int,
        size: int,
        segment: Callable[[int, int], np.ndarray],
    ) -> SieveWindow:
        self._check_memory((size + 7) // 8, f"{kind.value} window for base {ctx.base}, n={ctx.n}")
        parts = self._map(lambda bounds: pack(segment(*bounds)), self._segments(size))
        bits = np.concatenate(parts) if parts else np.zeros(0, dtype=np.uint8)
        return SieveWindow(
            ctx=ctx,
            kind=kind,
            start=start,
            stride=stride,
            size=size,
            bits=bits,
            strict_ndigit_reverse=self.config.strict_ndigit_reverse,
        )

    def sieve_window(self, ctx: DigitContext) -> SieveWindow:
        self._check_scale(ctx)
        start = ctx.lo | 1
        size = (ctx.hi - start + 1) // 2
        primes = sieving_primes(ctx.hi)

        def segment(i0: int, i1: int) -> np.ndarray:
            return sieve_progression(start + 2 * i0, 2, i1 - i0, primes)

        window = self._packed_window(ctx, WindowKind.PRIME, start, 2, size, segment)
        window.includes_two = ctx.lo <= 2 < ctx.hi
        logger.debug("prime window base=%d n=%d: %s", ctx.base, ctx.n, Formatter.format_bytes(window.nbytes))
        return window

    def sieve_squarefree(self, ctx: DigitContext, *, from_one: bool = False) -> SieveWindow:
        start = 1 if from_one else ctx.lo
        size = ctx.hi - start
        primes = sieving_primes(ctx.hi)

        def segment(i0: int, i1: int) -> np.ndarray:
            return squarefree_progression(start + i0, i1 - i0, primes)

        return self._packed_window(ctx, WindowKind.SQUAREFREE, start, 1, size, segment)

    def rough_window(self, ctx: DigitContext, primes: np.ndarray) -> SieveWindow:
        # B_n entries free of every listed prime
        start = ctx.lo | 1
        size = (ctx.hi - start + 1) // 2

        def segment(i0: int, i1: int) -> np.ndarray:
            return rough_progression(start + 2 * i0, 2, i1 - i0, primes)

        return self._packed_window(ctx, WindowKind.ROUGH, start, 2, size, segment)

    def omega_table(self, ctx: DigitContext) -> tuple[int, np.ndarray]:
        """(start, counts) with counts[i] the big omega of start + 2i over B_n."""
        start = ctx.lo | 1
        size = (ctx.hi - start + 1) // 2
        self._check_memory(size, f"omega table for n={ctx.n}")
        primes = sieving_primes(ctx.hi)
        span = min(self.config.segment_span, _OMEGA_CHUNK)
        parts = self._map(
            lambda b: omega_progression(start + 2 * b[0], 2, b[1] - b[0], primes),
            self._segments(size, span),
        )
        return start, np.concatenate(parts)

    def _reversible_hits(self, window: SieveWindow, *, collect: bool) -> tuple[int, np.ndarray | None]:
        def count_chunk(bounds: tuple[int, int]) -> tuple[int, np.ndarray | None]:
            values = window.values(*bounds)
            hits = window.contains_prime(reverse_array(values, window.ctx))
            return int(np.count_nonzero(hits)), values[hits] if collect else None

        results = self._map(count_chunk, self._segments(window.size))
        total = sum(count for count, _ in results)
        if not collect:
            return total, None
        return total, np.concatenate([v for _, v in results])

    def _bitset_pass(self, ctx: DigitContext, *, collect: bool = False) -> tuple[int, np.ndarray | None]:
        return self._reversible_hits(self.sieve_window(ctx), collect=collect)

    def _blocked_pass(self, ctx: DigitContext, *, collect: bool = False) -> tuple[int, np.ndarray | None]:
        if ctx.n < 2:
            logger.debug("blocked pass needs n >= 2, using the bitset pass for n=%d", ctx.n)
            return self._bitset_pass(ctx, collect=collect)
        self._check_scale(ctx)
        k = choose_residue_digits(ctx, self.config.segment_span, self.config.residue_digits)
        geometry = BlockGeometry(ctx=ctx, k=k)
        classes = geometry.classes()
        logger.debug(
            "blocked pass base=%d n=%d: k=%d, %d classes of %d candidates",
            ctx.base, ctx.n, k, len(classes), geometry.t_hi - geometry.t_lo,
        )
        sieve = ResidueClassSieve(geometry)
        results = self._map(lambda w: sieve.count_class(w, collect=collect), classes)
        total = sum(count for count, _ in results)
        if not collect:
            return total, None
        return total, np.sort(np.concatenate([v for _, v in results]))

    def reversible_primes(self, ctx: DigitContext, strategy: Strategy = Strategy.BITSET) -> np.ndarray:
        if strategy is Strategy.BLOCKED:
            _, values = self._blocked_pass(ctx, collect=True)
        else:
            _, values = self._bitset_pass(ctx, collect=True)
        return np.sort(values)

    def count_theta(self, ctx: DigitContext) -> int:
        strategy = self.config.strategy
        if strategy is Strategy.BITSET:
            return self._bitset_pass(ctx)[0]
        if strategy is Strategy.BLOCKED:
            return self._blocked_pass(ctx)[0]

        bitset = self._bitset_pass(ctx)[0]
        blocked = self._blocked_pass(ctx)[0]
        if bitset != blocked:
            first = _first_difference(
                self.reversible_primes(ctx, Strategy.BITSET),
                self.reversible_primes(ctx, Strategy.BLOCKED),
            )
            raise ConsistencyError(
                f"Strategies disagree for base {ctx.base}, n={ctx.n}: bitset {bitset}, blocked {blocked}",
                first_difference=first,
            )
        return bitset

    def count_palindromic_primes(self, ctx: DigitContext) -> int:
        window = self.sieve_window(ctx)
        return sum(
            int(np.count_nonzero(reverse_array(values, ctx) == values))
            for values in window.iter_values()
        )

    def count_theta_z(self, n: int, gamma: Fraction | str | float) -> int:
        if n < 2:
            raise DomainError(f"B_n is defined for n >= 2, got {n}")
        ctx = binary(n)
        self._check_scale(ctx, THETA_Z_LIMIT)
        primes = primes_below_power(n, gamma)
        window = self.rough_window(ctx, primes)
        total = 0
        for values in window.iter_values():
            total += int(np.count_nonzero(window.flags_at(reverse_array(values, ctx))))
        return total

    def count_almost_prime_pairs(self, n: int, k: int) -> int:
        if k < 1:
            raise DomainError(f"k must be >= 1, got {k}")
        if n < 2:
            raise DomainError(f"B_n is defined for n >= 2, got {n}")
        ctx = binary(n)
        self._check_scale(ctx, OMEGA_LIMIT)
        start, counts = self.omega_table(ctx)
        total = 0
        for i0, i1 in self._segments(counts.size):
            values = np.uint64(start) + np.uint64(2) * np.arange(i0, i1, dtype=np.uint64)
            rev_idx = ((reverse_array(values, ctx) - np.uint64(start)) // np.uint64(2)).astype(np.int64)
            pair_max = np.maximum(counts[i0:i1], counts[rev_idx])
            total += int(np.count_nonzero(pair_max <= k))
        return total

    def theta_table(self, base: int, ns: Sequence[int], *, timing: bool = False) -> CountTable:
        method = CountMethod(self.config.strategy.value)
        table = CountTable(base=base, provenance=f"exact sieve, strategy {method.value}")
        for n in ns:
            began = time.perf_counter()
            count = self.count_theta(DigitContext(base=base, n=n))
            elapsed = time.perf_counter() - began
            logger.info("theta base=%d n=%d: %d (%s, %.3fs)", base, n, count, method.value, elapsed)
            table.add(CountRow(n=n, count=count, method=method, seconds=elapsed if timing else None))
        return table

def parse_gamma(gamma: Fraction | str | float) -> Fraction:
    try:
        value = Fraction(gamma).limit_denominator(10**6) if isinstance(gamma, float) else Fraction(gamma)
    except (ValueError, ZeroDivisionError) as e:
        raise DomainError(f"Invalid exponent gamma: {gamma!r}") from e
    if not 0 < value < Fraction(1, 2):
        raise DomainError(f"gamma must satisfy 0 < gamma < 1/2, got {value}")
    return value

def primes_below_power(n: int, gamma: Fraction | str | float) -> np.ndarray:
    """Odd primes p < 2^(gamma*n), decided exactly as p^den < 2^(num*n)."""
    g = parse_gamma(gamma)
    root, exact = sympy.integer_nthroot(2 ** (g.numerator * n), g.denominator)
    limit = int(root) if exact else int(root) + 1
    primes = small_primes(limit)
    return primes[primes > 2]

def _first_difference(left: np.ndarray, right: np.ndarray) -> int | None:
    diff = np.setxor1d(left, right)
    return int(diff[0]) if diff.size else None

def sieve_window(ctx: DigitContext, cfg: SieveConfig | None = None) -> SieveWindow:
    return SieveEngine(cfg).sieve_window(ctx)

def count_theta(ctx: DigitContext, cfg: SieveConfig | None = None) -> int:
    return SieveEngine(cfg).count_theta(ctx)

def count_palindromic_primes(ctx: DigitContext, cfg: SieveConfig | None = None) -> int:
    return SieveEngine(cfg).count_palindromic_primes(ctx)

def count_theta_z(n: int, gamma: Fraction | str | float, cfg: SieveConfig | None = None) -> int:
    return SieveEngine(cfg).count_theta_z(n, gamma)

def count_almost_prime_pairs(n: int, k: int, cfg: SieveConfig | None = None) -> int:
    return SieveEngine(cfg).count_almost_prime_pairs(n, k)
