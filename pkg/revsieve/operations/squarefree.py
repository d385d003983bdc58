from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from ..core.config import SieveConfig
from ..core.digits import DigitContext, binary, bn_size, reverse_array
from ..core.engine import SieveEngine
from ..core.errors import ConsistencyError, DomainError, ResourceError
from ..core.window import SieveWindow

logger = logging.getLogger(__name__)

SQUAREFREE_WINDOW_LIMIT = 34
Q_LIMIT = 30
MIRRORED_LIMIT = 26

SquarefreeWindow = SieveWindow

def q_limit_density() -> float:
    return 66 / math.pi**4

def q_tilde_limit_density() -> float:
    return 99 / (2 * math.pi**4)

def mod9_density() -> Fraction:
    # 9 ∤ a and 9 ∤ mirror(a); both divisibilities hold together on a class of density 1/27
    return 1 - Fraction(1, 9) - Fraction(1, 9) + Fraction(1, 27)

def heuristic_constant() -> float:
    """Density of a in B_n with a and mirror(a) both squarefree, from its local factors."""
    local = float(mod9_density()) * (4 / 3) ** 2 * (9 / 8) ** 2
    value = local * (6 / math.pi**2) ** 2
    closed = q_limit_density()
    zeta_form = float(mpmath.mpf(11) / 6 / mpmath.zeta(2) ** 2)
    if abs(value - closed) > 1e-14 or abs(value - zeta_form) > 1e-14:
        raise ConsistencyError(
            f"Squarefree density {value!r} disagrees with 66/pi^4={closed!r} or (11/6)/zeta(2)^2={zeta_form!r}"
        )
    return value

def _guard(n: int, limit: int, cfg: SieveConfig, *, lowest: int = 2) -> None:
    if n < lowest:
        raise DomainError(f"n must be >= {lowest}, got {n}")
    if n > limit and not cfg.allow_large:
        raise ResourceError(
            f"n={n} exceeds the desk-scale limit for squarefree counting", required=n, available=limit
        )

def sieve_squarefree(ctx: DigitContext, cfg: SieveConfig | None = None) -> SquarefreeWindow:
    cfg = cfg or SieveConfig()
    if ctx.base != 2:
        raise DomainError(f"Squarefree windows are base 2 only, got base {ctx.base}")
    _guard(ctx.n, SQUAREFREE_WINDOW_LIMIT, cfg, lowest=1)
    return SieveEngine(cfg).sieve_squarefree(ctx)

def _count_pairs(window: SieveWindow, ctx: DigitContext, *, odd_only: bool) -> int:
    total = 0
    for values in window.iter_values():
        values = values[values >= np.uint64(ctx.lo)]
        if odd_only:
            values = values[(values & np.uint64(1)) == 1]
        total += int(np.count_nonzero(window.flags_at(reverse_array(values, ctx))))
    return total

def count_q(n: int, cfg: SieveConfig | None = None) -> int:
    cfg = cfg or SieveConfig()
    _guard(n, Q_LIMIT, cfg)
    ctx = binary(n)
    return _count_pairs(SieveEngine(cfg).sieve_squarefree(ctx), ctx, odd_only=True)

def count_q_mirrored(n: int, cfg: SieveConfig | None = None) -> int:
    """Q(n) as the size of S ∩ mirror(S), S the squarefree part of B_n."""
    cfg = cfg or SieveConfig()
    _guard(n, MIRRORED_LIMIT, cfg)
    ctx = binary(n)
    window = SieveEngine(cfg).sieve_squarefree(ctx)
    squarefree = np.concatenate(list(window.iter_values()))
    squarefree = squarefree[(squarefree & np.uint64(1)) == 1]
    mirrored = np.sort(reverse_array(squarefree, ctx))
    return int(np.intersect1d(squarefree, mirrored, assume_unique=True).size)

def count_q_tilde(n: int, cfg: SieveConfig | None = None, *, check_identity: bool = True) -> int:
    cfg = cfg or SieveConfig()
    _guard(n, Q_LIMIT, cfg, lowest=3)
    ctx = binary(n)
    # mirrors of even a are shorter, so the window starts at 1
    window = SieveEngine(cfg).sieve_squarefree(ctx, from_one=True)
    q_tilde = _count_pairs(window, ctx, odd_only=False)
    if check_identity:
        split = count_q(n, cfg) + count_q(n - 1, cfg)
        if split != q_tilde:
            raise ConsistencyError(f"Q~({n})={q_tilde} but Q({n}) + Q({n - 1})={split}")
    return q_tilde

@dataclass(frozen=True)
class SquarefreeRow:

    n: int
    q: int
    q_tilde: int | None
    q_ratio: float
    q_tilde_ratio: float | None
    deviation: float

def squarefree_series(ns: Sequence[int], cfg: SieveConfig | None = None) -> list[SquarefreeRow]:
    cfg = cfg or SieveConfig()
    rows = []
    limit = q_limit_density()
    cache: dict[int, int] = {}

    def q_of(m: int) -> int:
        if m not in cache:
            cache[m] = count_q(m, cfg)
        return cache[m]

    for n in ns:
        q = q_of(n)
        q_ratio = q / bn_size(n)
        q_tilde = None
        if n >= 3:
            q_tilde = count_q_tilde(n, cfg, check_identity=False)
            if q_tilde != q + q_of(n - 1):
                raise ConsistencyError(f"Q~({n})={q_tilde} but Q({n}) + Q({n - 1})={q + q_of(n - 1)}")
        rows.append(
            SquarefreeRow(
                n=n,
                q=q,
                q_tilde=q_tilde,
                q_ratio=q_ratio,
                q_tilde_ratio=None if q_tilde is None else q_tilde / 2 ** (n - 1),
                deviation=abs(q_ratio - limit),
            )
        )
        logger.info("squarefree n=%d: Q=%d Q~=%s", n, q, q_tilde)
    return rows
