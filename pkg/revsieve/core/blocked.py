from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .digits import DigitContext, reverse_array, reverse_digits
from .primes import sieving_primes
from .window import sieve_progression

logger = logging.getLogger(__name__)

_LAST_DIGITS = {2: (1,), 10: (1, 3, 7, 9)}

@dataclass(frozen=True)
class BlockGeometry:
    """Residue-class blocking of the n-digit window.

    Candidates a = w + M*t share their low k digits w, so their reversals
    share their top k digits and fall in one contiguous strip of length base^(n-k).
    """

    ctx: DigitContext
    k: int

    @property
    def modulus(self) -> int:
        return self.ctx.base**self.k

    @property
    def t_lo(self) -> int:
        return self.ctx.base ** (self.ctx.n - 1 - self.k)

    @property
    def t_hi(self) -> int:
        return self.ctx.base ** (self.ctx.n - self.k)

    @property
    def strip_length(self) -> int:
        return self.ctx.base ** (self.ctx.n - self.k)

    def classes(self) -> list[int]:
        last = _LAST_DIGITS[self.ctx.base]
        return [w for w in range(self.modulus) if w % self.ctx.base in last]

    def strip_start(self, w: int) -> int:
        return reverse_digits(w, self.ctx.base, self.k) * self.strip_length

def choose_residue_digits(ctx: DigitContext, span: int, requested: int | None = None) -> int:
    upper = ctx.n - 1
    if requested is not None:
        if requested > upper:
            logger.debug("residue digits %d clamped to %d for n=%d", requested, upper, ctx.n)
        return max(1, min(requested, upper))
    if ctx.base == 2:
        # class length 2^(n-1-k) at most one segment
        k = ctx.n - 1 - int(math.log2(span))
    else:
        # strip length 10^(n-k) at most one segment
        k = ctx.n - int(math.log10(span))
    return max(1, min(k, upper))

class ResidueClassSieve:

    def __init__(self, geometry: BlockGeometry) -> None:
        self.geometry = geometry
        self.primes = sieving_primes(geometry.ctx.hi)
        self._inner = DigitContext(base=geometry.ctx.base, n=geometry.ctx.n - geometry.k)

    def count_class(self, w: int, *, collect: bool = False) -> tuple[int, np.ndarray | None]:
        g = self.geometry
        base = g.ctx.base
        class_flags = sieve_progression(w + g.modulus * g.t_lo, g.modulus, g.t_hi - g.t_lo, self.primes)

        strip_lo = g.strip_start(w)
        if base == 2:
            # every reversal is odd, so the strip keeps odd values only
            strip_flags = sieve_progression(strip_lo + 1, 2, g.strip_length // 2, self.primes)
        else:
            strip_flags = sieve_progression(strip_lo, 1, g.strip_length, self.primes)

        t = np.flatnonzero(class_flags).astype(np.uint64) + np.uint64(g.t_lo)
        offsets = reverse_array(t, self._inner)
        idx = (offsets - np.uint64(1)) // np.uint64(2) if base == 2 else offsets
        hits = strip_flags[idx.astype(np.int64)]
        count = int(np.count_nonzero(hits))
        if not collect:
            return count, None
        return count, np.uint64(w) + np.uint64(g.modulus) * t[hits]
