from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum

import mpmath
import numpy as np

from ..core.config import SieveConfig
from ..core.digits import binary
from ..core.engine import SieveEngine
from ..core.errors import DomainError, ResourceError
from ..core.registry import reference_table

logger = logging.getLogger(__name__)

THETA_EXP_LIMIT = 60
SIEVE_LIMIT = 30
LI_TOLERANCE = 1e-13

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(20)
_MAX_PANELS = 1 << 16

class ThetaSource(str, Enum):

    SIEVE = "sieve"
    REFERENCE = "reference"

def _panel(lo: float, hi: float) -> float:
    # integral of e^s / s over [lo, hi]
    half = 0.5 * (hi - lo)
    s = lo + half * (_NODES + 1)
    return half * float(np.dot(_WEIGHTS, np.exp(s) / s))

def _log_integral(lo: float, hi: float) -> float:
    """Integral of dt/log t over [e^lo, e^hi], adaptive in s = log t."""
    total = 0.0
    stack = [(lo, hi, _panel(lo, hi))]
    panels = 0
    while stack:
        a, b, whole = stack.pop()
        mid = 0.5 * (a + b)
        left, right = _panel(a, mid), _panel(mid, b)
        panels += 1
        if abs(left + right - whole) <= LI_TOLERANCE * abs(left + right) or panels > _MAX_PANELS:
            total += left + right
        else:
            stack.extend([(a, mid, left), (mid, b, right)])
    if panels > _MAX_PANELS:
        logger.warning("Li quadrature hit the panel limit on [%g, %g]", math.exp(lo), math.exp(hi))
    return total

def li_difference(a: float, b: float) -> float:
    """Integral of dt/log t from a to b, taken directly so close endpoints do not cancel."""
    if a <= 1:
        raise DomainError(f"The lower endpoint must exceed 1, got {a}")
    if b < a:
        return -li_difference(b, a)
    if b == a:
        return 0.0
    return _log_integral(math.log(a), math.log(b))

def li(x: float) -> float:
    if x < 2:
        raise DomainError(f"Li(x) is defined for x >= 2, got {x}")
    return li_difference(2, x)

def li_reference(x: float) -> float:
    if x < 2:
        raise DomainError(f"Li(x) is defined for x >= 2, got {x}")
    return float(mpmath.li(x, offset=True))

def theta_exp(n: int) -> float:
    if not 2 <= n <= THETA_EXP_LIMIT:
        raise DomainError(f"theta_exp is defined for 2 <= n <= {THETA_EXP_LIMIT}, got {n}")
    return 3 * li_difference(2 ** (n - 1), 2**n) ** 2 / 2 ** (n - 1)

def normalised_theta_exp(n: int) -> float:
    """theta_exp(n) (log 2^n)^2 / 2^(n-1), which tends to 3."""
    return theta_exp(n) * (n * math.log(2)) ** 2 / 2 ** (n - 1)

@dataclass(frozen=True)
class HeuristicRow:

    n: int
    theta: int
    theta_source: ThetaSource
    theta_exp: float
    ratio: float

    def __post_init__(self) -> None:
        if self.ratio <= 0:
            raise DomainError(f"Ratio for n={self.n} must be positive, got {self.ratio}")

def conjecture_series(
    n_max: int, cfg: SieveConfig | None = None, *, n_min: int = 2, sieve_limit: int = SIEVE_LIMIT
) -> list[HeuristicRow]:
    """Rows of theta(n) / theta_exp(n); counts come from the sieve up to sieve_limit and the bundled table beyond."""
    if n_min < 2:
        raise DomainError(f"n_min must be >= 2, got {n_min}")
    engine = SieveEngine(cfg)
    table = reference_table(2)
    rows = []
    for n in range(n_min, n_max + 1):
        if n <= sieve_limit:
            theta, source = engine.count_theta(binary(n)), ThetaSource.SIEVE
        elif n in table:
            theta, source = table.get(n).count, ThetaSource.REFERENCE
        else:
            raise ResourceError(
                f"No reference count for n={n} and the sieve stops at n={sieve_limit}",
                required=n,
                available=max(sieve_limit, max(table.counts())),
            )
        expected = theta_exp(n)
        rows.append(HeuristicRow(n=n, theta=theta, theta_source=source, theta_exp=expected, ratio=theta / expected))
        logger.info("heuristic n=%d: theta=%d (%s), ratio %.4f", n, theta, source.value, theta / expected)
    return rows
