from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ..core.digits import b_n_chunks, binary, bn_size, reverse_array
from ..core.errors import AdvisoryError, DomainError, ResourceError
from ..core.primes import factorize, is_squarefree, iter_prime_blocks, omega, small_primes
from ..core.window import first_multiple_index
from .expsum import e, fn_product_grid

logger = logging.getLogger(__name__)

V_LIMIT = 10**9
H_BRUTE_LIMIT = 5000
H_MATRIX_LIMIT = 2000
T_ENUMERATION_LIMIT = 26
T_WINDOW_LIMIT = 34
R_TILDE_D_LIMIT = 200
R_TILDE_N_LIMIT = 40
MU_SUM_LIMIT = 10**9
SIEVE_ERROR_N_LIMIT = 22
SIEVE_ERROR_D_LIMIT = 500

# c in the exp(-c sqrt n) saving of the sieve error term
SIEVE_ERROR_C = 0.0439

# B_n pairs up to this n stay cached in memory
_PAIR_CACHE_LIMIT = 22
_CHUNK = 1 << 20

class SumMode(str, Enum):

    PLAIN = "plain"
    OVER_N = "over_n"

class SieveWeight(str, Enum):

    FOUR_OMEGA = "four_omega"

def f_eval(d: int) -> Fraction:
    if d < 1:
        raise DomainError(f"f is defined for d >= 1, got {d}")
    value = Fraction(1)
    for p, exponent in factorize(d).items():
        if exponent > 1 or p == 2:
            return Fraction(0)
        if p != 3:
            value *= Fraction(2 * p - 1, p)
    return value

def divides_p_of_z(d: int, z: float) -> bool:
    """Whether d divides the product of the primes 3 <= p < z."""
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    factors = factorize(d)
    return all(e == 1 and p != 2 and p < z for p, e in factors.items())

def v_product(w: float) -> float:
    if w < 2:
        raise DomainError(f"V(w) is defined for w >= 2, got {w}")
    if w > V_LIMIT:
        raise ResourceError(f"V({w}) needs primes beyond the sieving limit", required=int(w), available=V_LIMIT)
    if w <= 3:
        return 1.0
    log_sum = 0.0
    for block in iter_prime_blocks(math.ceil(w)):
        block = block[(block > 3) & (block < w)]
        log_sum += float(np.sum(np.log1p(-1.0 / block.astype(np.float64))))
    return 2 / 3 * math.exp(2 * log_sum)

def mertens_band(ws: Iterable[float]) -> list[tuple[float, float]]:
    """(w, V(w) * log(w)^2) for each w."""
    band = [(float(w), v_product(w) * math.log(w) ** 2) for w in ws]
    for w, scaled in band:
        logger.debug("V(%g) log^2 w = %.6f", w, scaled)
    return band

def h_brute(d: int, h1: int, h2: int) -> complex:
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    if d > H_BRUTE_LIMIT:
        raise ResourceError(f"h_brute is limited to d <= {H_BRUTE_LIMIT}, got d={d}", required=d, available=H_BRUTE_LIMIT)
    # for fixed u the v with d | uv are the multiples of d/g, g = gcd(u, d);
    # their phases e(h2 v/d) sum to g when g | h2 and cancel otherwise
    u = np.arange(d, dtype=np.int64)
    g = np.gcd(u, d)
    inner = np.where(h2 % g == 0, g, 0)
    return complex(np.sum(inner * e((h1 * u % d) / d)))

def h_multiplicative(d: int, h1: int, h2: int) -> int:
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    factors = factorize(d)
    if any(exponent > 1 for exponent in factors.values()):
        logger.warning("H(%d, %d, %d): d is not squarefree, falling back to the direct sum", d, h1, h2)
        value = h_brute(d, h1, h2)
        nearest = round(value.real)
        if abs(value - nearest) > 1e-6:
            raise AdvisoryError(f"H({d}, {h1}, {h2}) = {value} is not an integer", alternative="h_brute")
        return nearest
    result = 1
    for p in factors:
        result *= p * (h1 % p == 0) + p * (h2 % p == 0) - 1
    return result

def h_matrix(d: int) -> np.ndarray:
    """H(d, h1, h2) for all 0 <= h1, h2 < d, indexed [h1, h2]."""
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    if d > H_MATRIX_LIMIT:
        raise ResourceError(f"H matrix holds d^2 entries, got d={d}", required=d, available=H_MATRIX_LIMIT)
    if not is_squarefree(d):
        raise DomainError(f"h_matrix needs squarefree d, got {d}")
    h = np.arange(d, dtype=np.int64)
    result = np.ones((d, d), dtype=np.int64)
    for p in factorize(d):
        divisible = p * (h % p == 0).astype(np.int64)
        result *= divisible[:, None] + divisible[None, :] - 1
    return result

@lru_cache(maxsize=8)
def _cached_pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    ctx = binary(n)
    a = np.concatenate(list(b_n_chunks(ctx))).astype(np.int64)
    m = reverse_array(a, ctx).astype(np.int64)
    a.setflags(write=False)
    m.setflags(write=False)
    return a, m

def _bn_pairs(n: int) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """(a, mirror a) over B_n in chunks, as int64."""
    if n <= _PAIR_CACHE_LIMIT:
        yield _cached_pairs(n)
        return
    ctx = binary(n)
    for a in b_n_chunks(ctx, _CHUNK):
        yield a.astype(np.int64), reverse_array(a, ctx).astype(np.int64)

def _check_t_args(n: int, d: int) -> None:
    if n < 2:
        raise DomainError(f"B_n is defined for n >= 2, got {n}")
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")

def _t_table(n: int, ds: Iterable[int]) -> dict[int, int]:
    # one pass over B_n for every modulus
    ds = sorted(set(ds))
    totals = dict.fromkeys(ds, 0)
    for a, m in _bn_pairs(n):
        for d in ds:
            totals[d] += int(np.count_nonzero((a % d) * (m % d) % d == 0))
    return totals

def t_n(n: int, d: int) -> int:
    _check_t_args(n, d)
    if n <= T_ENUMERATION_LIMIT:
        return _t_table(n, [d])[d]
    if n <= T_WINDOW_LIMIT:
        return t_n_window(n, d)
    raise ResourceError(f"T_n(d) is counted up to n={T_WINDOW_LIMIT}, got n={n}", required=n, available=T_WINDOW_LIMIT)

def t_n_window(n: int, d: int) -> int:
    """T_n(d) from per-prime divisibility flags of a and of mirror a."""
    _check_t_args(n, d)
    if n > T_WINDOW_LIMIT:
        raise ResourceError(f"Window pipeline stops at n={T_WINDOW_LIMIT}, got n={n}", required=n, available=T_WINDOW_LIMIT)
    if not is_squarefree(d):
        raise DomainError(f"The window pipeline needs squarefree d, got {d}")
    if d % 2 == 0:
        return 0
    ctx = binary(n)
    size = bn_size(n)
    if d == 1:
        return size
    start = ctx.lo + 1
    primes = list(factorize(d))
    # index i holds start + 2i; p | (start + 2i) exactly on one class of i mod p
    offsets = {p: first_multiple_index(start, 2, p) for p in primes}
    total = 0
    for i0 in range(0, size, _CHUNK):
        i1 = min(i0 + _CHUNK, size)
        values = np.uint64(start) + np.uint64(2) * np.arange(i0, i1, dtype=np.uint64)
        mirror_idx = ((reverse_array(values, ctx) - np.uint64(start)) // np.uint64(2)).astype(np.int64)
        hits = np.ones(i1 - i0, dtype=bool)
        for p in primes:
            divides = np.zeros(i1 - i0, dtype=bool)
            divides[first_multiple_index(start + 2 * i0, 2, p) :: p] = True
            divides |= mirror_idx % p == offsets[p]
            hits &= divides
        total += int(np.count_nonzero(hits))
    return total

def r_n(n: int, d: int) -> Fraction:
    return _remainder(n, d, t_n(n, d))

def _remainder(n: int, d: int, t: int) -> Fraction:
    return Fraction(t) - f_eval(d) / d * bn_size(n)

def _check_r_tilde_args(n: int, d: int, j: int) -> None:
    if j not in (0, 1):
        raise DomainError(f"j must be 0 or 1, got {j}")
    if d < 1 or math.gcd(d, 6) != 1:
        raise DomainError(f"R~ needs d coprime to 6, got {d}")
    if not is_squarefree(d):
        raise DomainError(f"R~ needs squarefree d, got {d}")
    if d > R_TILDE_D_LIMIT:
        raise ResourceError(f"R~ sums over d^2 frequency pairs, got d={d}", required=d, available=R_TILDE_D_LIMIT)
    if not 2 <= n <= R_TILDE_N_LIMIT:
        raise DomainError(f"R~ is evaluated for 2 <= n <= {R_TILDE_N_LIMIT}, got {n}")

def r_tilde(n: int, d: int, j: int) -> complex:
    _check_r_tilde_args(n, d, j)
    if d == 1:
        return 0j
    three = 3**j
    q = three * d
    h = np.arange(1, d, dtype=np.int64)
    ell = np.arange(three, dtype=np.int64)
    # axes [ell, h1, h2]; alpha = h2/d and theta = -(h1/d + ell/3^j) over the common denominator q
    alpha_num = np.broadcast_to((h * three)[None, None, :], (three, d - 1, d - 1))
    theta_num = np.broadcast_to(-(h[None, :, None] * three + ell[:, None, None] * d), (three, d - 1, d - 1))
    inner = fn_product_grid(n, alpha_num, theta_num, q).sum(axis=0)
    weights = np.conj(h_matrix(d)[1:, 1:].astype(np.complex128))
    return complex(bn_size(n) / (three * d * d) * np.sum(weights * inner))

def residue_pair_counts(n: int, d: int, j: int) -> np.ndarray:
    """Counts of a in B_n with 3^j | a, indexed [a mod d, mirror a mod d]."""
    _check_t_args(n, d)
    if n > T_ENUMERATION_LIMIT:
        raise ResourceError(f"Residue counts enumerate B_n, got n={n}", required=n, available=T_ENUMERATION_LIMIT)
    three = 3**j
    counts = np.zeros(d * d, dtype=np.int64)
    for a, m in _bn_pairs(n):
        keep = a % three == 0
        counts += np.bincount((a[keep] % d) * d + m[keep] % d, minlength=d * d)
    return counts.reshape(d, d)

def r_tilde_from_counts(n: int, d: int, j: int) -> complex:
    """R~_n(d, j) as a discrete Fourier transform of residue_pair_counts."""
    _check_r_tilde_args(n, d, j)
    if d == 1:
        return 0j
    sums = np.conj(np.fft.fft2(residue_pair_counts(n, d, j)))
    weights = np.conj(h_matrix(d)[1:, 1:].astype(np.complex128))
    return complex(np.sum(weights * sums[1:, 1:]) / (d * d))

def coprime_squarefree(d_max: int) -> list[int]:
    """Squarefree d <= d_max with gcd(d, 6) = 1."""
    return [d for d in range(1, d_max + 1) if math.gcd(d, 6) == 1 and is_squarefree(d)]

@dataclass(frozen=True)
class ArithSumRecord:

    n: int
    d: int
    j: int
    T: int
    R: Fraction
    Rtilde: complex
    f_d: Fraction

    def __post_init__(self) -> None:
        if self.T < 0:
            raise DomainError(f"T must be non-negative, got {self.T}")

    @property
    def modulus(self) -> int:
        return 3**self.j * self.d

    @property
    def discrepancy(self) -> float:
        return abs(float(self.R) - self.Rtilde)

def record_grid(ns: Sequence[int], ds: Sequence[int], js: Sequence[int] = (0, 1)) -> list[ArithSumRecord]:
    records = []
    for n in ns:
        moduli = [3**j * d for d in ds for j in js]
        table = _t_table(n, moduli) if n <= T_ENUMERATION_LIMIT else {m: t_n(n, m) for m in moduli}
        for d in ds:
            for j in js:
                modulus = 3**j * d
                t = table[modulus]
                records.append(
                    ArithSumRecord(
                        n=n,
                        d=d,
                        j=j,
                        T=t,
                        R=_remainder(n, modulus, t),
                        Rtilde=r_tilde(n, d, j),
                        f_d=f_eval(modulus),
                    )
                )
        logger.info("arith grid n=%d: %d records", n, len(ds) * len(js))
    return records

@dataclass
class ConsistencyReport:

    sup_ratio: float
    worst_case: dict = field(default_factory=dict)
    records: int = 0
    bound: float = 4.0

    @property
    def passed(self) -> bool:
        return math.isfinite(self.sup_ratio) and self.sup_ratio <= self.bound

def r_consistency_report(ns: Sequence[int] = range(12, 21), d_max: int = 50) -> ConsistencyReport:
    """sup of |R_n(3^j d) - R~_n(d, j)| / max(f(d), 1) over the grid, with where it is attained."""
    report = ConsistencyReport(sup_ratio=0.0)
    for record in record_grid(ns, coprime_squarefree(d_max)):
        ratio = record.discrepancy / max(float(f_eval(record.d)), 1.0)
        report.records += 1
        if ratio > report.sup_ratio:
            report.sup_ratio = ratio
            report.worst_case = {"n": record.n, "d": record.d, "j": record.j}
    logger.info("R consistency: sup ratio %.6f at %s over %d records", report.sup_ratio, report.worst_case, report.records)
    return report

def mu_z_omega_sum(x: float, z: float, mode: SumMode = SumMode.PLAIN) -> float:
    """Sum over squarefree m <= x of z^omega(m), or of z^omega(m)/m."""
    if z <= 0:
        raise DomainError(f"z must be positive, got {z}")
    if x > MU_SUM_LIMIT:
        raise ResourceError(f"x={x} exceeds the segmented sieve limit", required=int(x), available=MU_SUM_LIMIT)
    top = math.floor(x)
    if top < 1:
        return 0.0
    primes = small_primes(math.isqrt(top) + 1)
    total = 0.0
    for lo in range(1, top + 1, _CHUNK):
        hi = min(lo + _CHUNK, top + 1)
        values = np.arange(lo, hi, dtype=np.int64)
        residual = values.copy()
        omegas = np.zeros(hi - lo, dtype=np.int64)
        squarefree = np.ones(hi - lo, dtype=bool)
        for p in primes:
            p = int(p)
            if p * p >= hi:
                break
            first = (-lo) % p
            omegas[first::p] += 1
            residual[first::p] //= p
            squarefree[(-lo) % (p * p) :: p * p] = False
        # a squarefree residual above 1 is one prime beyond sqrt
        omegas += residual > 1
        weights = np.power(float(z), omegas[squarefree])
        if mode is SumMode.OVER_N:
            weights = weights / values[squarefree]
        total += float(np.sum(weights))
    return total

def mu_z_omega_ratio(x: float, z: float, mode: SumMode = SumMode.PLAIN) -> float:
    """The sum divided by x (log x)^(z-1), or by (log x)^z for the 1/m weights."""
    if x <= 1:
        raise DomainError(f"The normalised sum needs x > 1, got {x}")
    total = mu_z_omega_sum(x, z, mode)
    log_x = math.log(x)
    if mode is SumMode.OVER_N:
        return total / log_x**z
    return total / (x * log_x ** (z - 1))

@dataclass(frozen=True)
class SieveErrorReport:

    n: int
    D: int
    total: Fraction
    ratio: float

def sieve_error_sum(n: int, D: int, weight: SieveWeight = SieveWeight.FOUR_OMEGA) -> SieveErrorReport:
    """Sum over odd squarefree d < D of 4^omega(d) |R_n(d)|, against 2^n exp(-c sqrt n)."""
    if n < 2:
        raise DomainError(f"B_n is defined for n >= 2, got {n}")
    if n > SIEVE_ERROR_N_LIMIT:
        raise ResourceError(f"Sieve error sums enumerate B_n, got n={n}", required=n, available=SIEVE_ERROR_N_LIMIT)
    if D > SIEVE_ERROR_D_LIMIT:
        raise ResourceError(f"D={D} exceeds the sieve error limit", required=D, available=SIEVE_ERROR_D_LIMIT)
    if weight is not SieveWeight.FOUR_OMEGA:
        raise DomainError(f"Unsupported weight {weight!r}")
    ds = [d for d in range(1, D, 2) if is_squarefree(d)]
    table = _t_table(n, ds)
    total = sum((4 ** omega(d) * abs(_remainder(n, d, table[d])) for d in ds), Fraction(0))
    ratio = float(total) / (2**n * math.exp(-SIEVE_ERROR_C * math.sqrt(n)))
    return SieveErrorReport(n=n, D=D, total=total, ratio=ratio)

def sieve_error_series(ns: Iterable[int], exponent: float = 0.3) -> list[SieveErrorReport]:
    reports = []
    for n in ns:
        report = sieve_error_sum(n, max(2, math.floor(2 ** (exponent * n))))
        logger.info("sieve error n=%d D=%d: ratio %.6g", n, report.D, report.ratio)
        reports.append(report)
    return reports
