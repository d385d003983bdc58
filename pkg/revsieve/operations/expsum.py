from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import numpy as np

from ..core.digits import DigitContext, b_n_chunks, bn_size, reverse_array
from ..core.errors import AdvisoryError, DomainError, ResourceError

logger = logging.getLogger(__name__)

FN_DIRECT_LIMIT = 24
GN_INTEGRAL_LIMIT = 16
M_AVERAGE_LIMIT = 200
QUADRATURE_TOLERANCE = 1e-9

# Binary digits of a float fraction run out after this many doublings
_FLOAT_DOUBLINGS = 1100

@dataclass(frozen=True)
class ExactRational:
    """The angle h/d + ell/3^j, kept as integers."""

    h: int
    d: int
    ell: int = 0
    j: int = 0

    def __post_init__(self) -> None:
        if self.d < 1:
            raise DomainError(f"Denominator must be positive, got {self.d}")
        if self.j not in (0, 1):
            raise DomainError(f"j must be 0 or 1, got {self.j}")
        h = self.h % self.d
        g = math.gcd(h, self.d)
        object.__setattr__(self, "h", h // g)
        object.__setattr__(self, "d", self.d // g)
        object.__setattr__(self, "ell", self.ell % 3**self.j)

    @property
    def denominator(self) -> int:
        return self.d * 3**self.j

    @property
    def numerator(self) -> int:
        return (self.h * 3**self.j + self.ell * self.d) % self.denominator

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def scaled(self, ks: Sequence[int] | np.ndarray, factor: int = 1) -> np.ndarray:
        # frac(factor * 2^k * angle), reduced before conversion to float
        q = self.denominator
        num = self.numerator * factor % q
        return np.array([num * pow(2, int(k), q) % q / q for k in ks], dtype=np.float64)

    def doubled(self, k: int) -> ExactRational:
        return ExactRational(
            h=self.h * pow(2, k, self.d), d=self.d, ell=self.ell * pow(2, k, 3**self.j), j=self.j
        )

    def __neg__(self) -> ExactRational:
        return ExactRational(h=-self.h, d=self.d, ell=-self.ell, j=self.j)

@dataclass(frozen=True)
class Real:

    x: float

    def scaled(self, ks: Sequence[int] | np.ndarray, factor: int = 1) -> np.ndarray:
        ks = np.asarray(ks, dtype=np.int64)
        base = self.x % 1.0
        with np.errstate(over="ignore", invalid="ignore"):
            fracs = np.ldexp(base, np.minimum(ks, _FLOAT_DOUBLINGS)) % 1.0
        fracs = np.where(ks >= _FLOAT_DOUBLINGS, 0.0, fracs)
        return (fracs * factor) % 1.0

    def doubled(self, k: int) -> Real:
        return Real(float(self.scaled([k])[0]))

    def __neg__(self) -> Real:
        return Real(-self.x)

Angle = Union[ExactRational, Real]

def as_angle(value: Angle | Fraction | float | int) -> Angle:
    if isinstance(value, (ExactRational, Real)):
        return value
    if isinstance(value, Fraction):
        return ExactRational(h=value.numerator, d=value.denominator)
    if isinstance(value, int):
        return ExactRational(h=0, d=1)
    return Real(float(value))

@dataclass(frozen=True)
class ExpSumPoint:

    alpha: Angle
    theta: Angle

    @classmethod
    def of(cls, alpha: Angle | Fraction | float, theta: Angle | Fraction | float) -> ExpSumPoint:
        return cls(alpha=as_angle(alpha), theta=as_angle(theta))

    @property
    def exact(self) -> bool:
        return isinstance(self.alpha, ExactRational) and isinstance(self.theta, ExactRational)

    def swapped(self) -> ExpSumPoint:
        return ExpSumPoint(alpha=self.theta, theta=self.alpha)

    def __neg__(self) -> ExpSumPoint:
        return ExpSumPoint(alpha=-self.alpha, theta=-self.theta)

@dataclass(frozen=True)
class ProductFactors:

    n: int
    factors: np.ndarray = field(repr=False)

    @property
    def product(self) -> float:
        return float(np.prod(self.factors))

@dataclass(frozen=True)
class MajorantParams:

    N: int
    kappa: float

    def __post_init__(self) -> None:
        if self.N < 1:
            raise DomainError(f"N must be >= 1, got {self.N}")
        if not 0 < self.kappa <= 1:
            raise DomainError(f"kappa must lie in (0, 1], got {self.kappa}")

    @property
    def c_kappa(self) -> float:
        return c_kappa(self.kappa)

    @property
    def eta0(self) -> float:
        return eta0()

    @property
    def bound(self) -> float:
        return self.c_kappa**self.N

def c_kappa(kappa: float) -> float:
    return (math.sqrt(2) / 8 + 3 / 4) ** kappa

def eta0() -> float:
    return -math.log2(c_kappa(2 / 3))

def c0() -> float:
    return math.log(8 / 7) * math.log(2) / 3

def e(x: np.ndarray | float) -> np.ndarray | complex:
    return np.exp(2j * np.pi * np.asarray(x))

def u_abs(x: np.ndarray | float) -> np.ndarray | float:
    return np.abs(np.cos(np.pi * np.asarray(x)))

def _product_angles(n: int, p: ExpSumPoint) -> np.ndarray:
    # frac(alpha 2^(n-1-j) - theta 2^j) for j = 1 .. n-2
    js = np.arange(1, n - 1)
    return (p.alpha.scaled(n - 1 - js) - p.theta.scaled(js)) % 1.0

def product_factors(n: int, p: ExpSumPoint) -> ProductFactors:
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    return ProductFactors(n=n, factors=u_abs(_product_angles(n, p)))

def fn_product_magnitude(n: int, p: ExpSumPoint) -> float:
    return product_factors(n, p).product

def fn_product(n: int, p: ExpSumPoint) -> complex:
    """F_n(alpha, theta) from its product form; exact angles keep full accuracy for any n."""
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    top = p.alpha.scaled([n - 1, 0]).sum() - p.theta.scaled([n - 1, 0]).sum()
    phase = complex(e(top % 1.0))
    return phase * complex(np.prod((1 + e(_product_angles(n, p))) / 2))

def fn_product_grid(n: int, alpha_num: np.ndarray, theta_num: np.ndarray, q: int) -> np.ndarray:
    """F_n(A/q, T/q) for integer arrays A, T of one shape, by exact residues mod q."""
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    a = np.asarray(alpha_num, dtype=np.int64) % q
    t = np.asarray(theta_num, dtype=np.int64) % q
    pow2 = [pow(2, k, q) for k in range(n)]
    top = (a - t) * ((pow2[n - 1] + 1) % q) % q
    result = e(top / q).astype(np.complex128)
    for j in range(1, n - 1):
        x = (a * pow2[n - 1 - j] - t * pow2[j]) % q
        result *= (1 + e(x / q)) / 2
    return result

def _bits(values: np.ndarray, n: int) -> np.ndarray:
    shifts = np.arange(n, dtype=np.uint64)
    return ((values[:, None] >> shifts) & np.uint64(1)).astype(np.float64)

def fn_direct(n: int, p: ExpSumPoint) -> complex:
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    if n > FN_DIRECT_LIMIT:
        raise AdvisoryError(
            f"Direct summation over B_{n} needs 2^{n - 2} terms", alternative="fn_product_magnitude"
        )
    ctx = DigitContext(base=2, n=n)
    # phases as sums of per-bit fractions keep the error near n ulps
    fa = p.alpha.scaled(range(n))
    ft = p.theta.scaled(range(n))
    total = 0j
    for a in b_n_chunks(ctx, chunk=1 << 16):
        mirror = reverse_array(a, ctx)
        phase = (_bits(mirror, n) @ fa - _bits(a, n) @ ft) % 1.0
        total += complex(e(phase).sum())
    return total / bn_size(n)

def _gn_from_fracs(fracs: np.ndarray) -> np.ndarray | float:
    return np.prod(0.25 * u_abs(fracs) + 0.75, axis=-1)

def gn_eval(N: int, theta: float | np.ndarray) -> float | np.ndarray:
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    thetas = np.asarray(theta, dtype=np.float64)
    result = np.ones_like(thetas)
    base = thetas % 1.0
    for j in range(N):
        result = result * (0.25 * u_abs(np.ldexp(base, j) % 1.0) + 0.75)
    return float(result) if result.ndim == 0 else result

def check_u_triple(x: float, y: float, z: float) -> tuple[float, float]:
    lhs = float(u_abs(x) * u_abs(y) * u_abs(z))
    rhs = 0.25 * float(u_abs(x + y + z)) + 0.75
    return lhs, rhs

def majorant(n: int, theta: Angle) -> float:
    # G_{n-3}(6 theta)^(1/3) with factors frac(3 theta 2^j), j = 1 .. n-3
    return float(_gn_from_fracs(theta.scaled(np.arange(1, n - 2), factor=3))) ** (1 / 3)

def check_majorant(n: int, p: ExpSumPoint) -> tuple[float, float]:
    if n < 4:
        raise DomainError(f"The majorant needs n >= 4, got {n}")
    return fn_product_magnitude(n, p), majorant(n, p.theta)

@dataclass(frozen=True)
class DecayReport:

    value: float
    bound_exponent: float

    @property
    def ratio(self) -> float:
        return self.value / math.exp(self.bound_exponent)

def decay_bound_report(n: int, d: int, h: int, ell: int, alpha: float | Angle) -> DecayReport:
    if n < 4:
        raise DomainError(f"n must be >= 4, got {n}")
    if d < 5 or d % 2 == 0:
        raise DomainError(f"d must be odd and >= 5, got {d}")
    if (3 * h) % d == 0:
        raise DomainError(f"d={d} divides 3h={3 * h}")
    p = ExpSumPoint(alpha=as_angle(alpha), theta=ExactRational(h=h, d=d, ell=ell, j=1))
    value = fn_product_magnitude(n, p)
    return DecayReport(value=value, bound_exponent=-c0() * n / math.log(4 * d / 3))

def circle_norm(x: float) -> float:
    return abs(x - round(x))

def large_norm_index(q: int, theta: float) -> int:
    if q < 2:
        raise DomainError(f"q must be >= 2, got {q}")
    norm = circle_norm(theta)
    if norm <= 1e-9:
        raise DomainError(f"theta={theta!r} is within 1e-9 of an integer")
    j = max(0, math.floor(math.log(q / ((q + 1) * norm)) / math.log(q)))
    # the formula puts q^j * norm in (1/(q+1), q/(q+1)]; repair float rounding at the edges
    while q**j * norm <= 1 / (q + 1):
        j += 1
    while j > 0 and q**j * norm > q / (q + 1):
        j -= 1
    return j

def _gauss_legendre(f, panels: int, order: int) -> float:
    x, w = np.polynomial.legendre.leggauss(order)
    half = 0.5 / panels
    total = 0.0
    # bounded memory for 2^16 panels
    for first in range(0, panels, 4096):
        left = np.arange(first, min(first + 4096, panels)) / panels
        nodes = left[:, None] + half * (x + 1)
        total += float((f(nodes) @ w).sum()) * half
    return total

def gn_integral(N: int, kappa: float) -> float:
    """Integral of G_N^kappa over [0, 1] by Gauss-Legendre on dyadic panels of width 2^-N.

    Every kink of G_N sits on that grid, so each panel integrand is smooth; the order
    doubles until successive values agree to within 1e-9.
    """
    if N > GN_INTEGRAL_LIMIT:
        raise ResourceError(f"gn_integral supports N <= {GN_INTEGRAL_LIMIT}", required=N, available=GN_INTEGRAL_LIMIT)
    params = MajorantParams(N=N, kappa=kappa)
    panels = 2**N

    def integrand(nodes: np.ndarray) -> np.ndarray:
        return gn_eval(N, nodes) ** params.kappa

    order = 4
    previous = _gauss_legendre(integrand, panels, order)
    while order < 64:
        order *= 2
        current = _gauss_legendre(integrand, panels, order)
        if abs(current - previous) < QUADRATURE_TOLERANCE:
            return current
        previous = current
    logger.warning("gn_integral(N=%d, kappa=%r) stopped at order %d", N, kappa, order)
    return previous

def variation_bound(N: int, kappa: float, integral: float | None = None) -> float:
    integral = gn_integral(N, kappa) if integral is None else integral
    return kappa * math.pi / 3 * 2**N * integral

def check_spacing(points: Sequence[float], delta: float) -> None:
    if len(points) < 2:
        return
    fracs = np.sort(np.asarray(points, dtype=np.float64) % 1.0)
    gaps = np.diff(np.append(fracs, fracs[0] + 1.0))
    worst = int(np.argmin(gaps))
    if gaps[worst] < delta - 1e-15:
        raise DomainError(
            f"Points are not {delta!r}-spaced mod 1: gap {gaps[worst]!r} after {fracs[worst]!r}"
        )

def sobolev_gallagher_check(N: int, kappa: float, points: Sequence[float], delta: float) -> tuple[float, float]:
    if delta <= 0:
        raise DomainError(f"delta must be positive, got {delta}")
    check_spacing(points, delta)
    lhs = float(np.sum(gn_eval(N, np.asarray(points, dtype=np.float64)) ** kappa)) if len(points) else 0.0
    integral = gn_integral(N, kappa)
    rhs = integral / delta + 0.5 * variation_bound(N, kappa, integral)
    return lhs, rhs

def splitting_check(n: int, m: int, p: ExpSumPoint) -> tuple[float, float]:
    if not 3 <= m <= n - 1:
        raise DomainError(f"Splitting needs 3 <= m <= n - 1, got m={m}, n={n}")
    lhs = fn_product_magnitude(n, p)
    left = fn_product_magnitude(m, ExpSumPoint(alpha=p.alpha.doubled(n - m), theta=p.theta))
    right = fn_product_magnitude(n - m + 2, ExpSumPoint(alpha=p.alpha, theta=p.theta.doubled(m - 2)))
    return lhs, left * right

def mean_square(n: int, alpha: float | Angle) -> tuple[float, float]:
    """Average of |F_n(alpha, k/2^n)|^2 over k, against its exact value 1/|B_n|."""
    if not 2 <= n <= 16:
        raise DomainError(f"mean_square supports 2 <= n <= 16, got {n}")
    a = as_angle(alpha)
    js = np.arange(1, n - 1)
    fa = a.scaled(n - 1 - js)
    thetas = np.arange(2**n, dtype=np.float64) / 2**n
    ft = np.ldexp(thetas[:, None], js[None, :]) % 1.0
    mags = np.prod(u_abs(fa[None, :] - ft), axis=1)
    return float(np.mean(mags**2)), 1 / bn_size(n)

def m_average(n: int, D1: int, D2: int, D3: int, ell1: int, ell2: int, r: int) -> float:
    if r not in (1, 2):
        raise DomainError(f"r must be 1 or 2, got {r}")
    if n < 3:
        raise DomainError(f"n must be >= 3, got {n}")
    if min(D1, D2, D3) < 1:
        raise DomainError(f"Dyadic scales must be positive, got {(D1, D2, D3)}")
    if D1 * D2 * D3 > M_AVERAGE_LIMIT:
        raise ResourceError(
            "m_average is a brute-force sum", required=D1 * D2 * D3, available=M_AVERAGE_LIMIT
        )
    total = 0.0
    for d1 in range(D1, 2 * D1):
        for d2 in range(D2, 2 * D2):
            for d3 in range(D3, 2 * D3):
                if math.gcd(d1 * d2 * d3, 6) != 1:
                    continue
                for h1 in range(1, d2 * d3):
                    if math.gcd(h1, d2 * d3) != 1:
                        continue
                    theta = ExactRational(h=-h1, d=d2 * d3, ell=-ell2, j=1)
                    for h2 in range(1, d1 * d3):
                        if math.gcd(h2, d1 * d3) != 1:
                            continue
                        alpha = ExactRational(h=h2, d=d1 * d3, ell=ell1, j=1)
                        total += fn_product_magnitude(n, ExpSumPoint(alpha=alpha, theta=theta)) ** r
    return total
