from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..core.config import DEFAULT_SEED
from ..core.errors import DomainError
from .expsum import (
    ExactRational,
    ExpSumPoint,
    Real,
    c_kappa,
    check_majorant,
    check_u_triple,
    circle_norm,
    decay_bound_report,
    fn_direct,
    fn_product,
    fn_product_magnitude,
    gn_integral,
    large_norm_index,
    mean_square,
    sobolev_gallagher_check,
    splitting_check,
    u_abs,
)

logger = logging.getLogger(__name__)

INEQUALITY_TOLERANCE = 1e-12
QUADRATURE_SLACK = 1e-6
IDENTITY_TOLERANCE = 1e-10
KAPPAS = (1 / 3, 2 / 3, 1.0)

# direct sums cost 2^(n-2) terms each
_DIRECT_SAMPLES = 500
_MEAN_SQUARE_SAMPLES = 200
_FAREY_ORDER = 50
_FAREY_DELTA = 1 / 2500

@dataclass
class LemmaReport:

    lemma: str
    samples: int = 0
    violations: int = 0
    max_ratio: float = 0.0
    max_error: float = 0.0
    worst_case_input: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def observe(self, case: dict, *, ratio: float = 0.0, error: float = 0.0, violated: bool = False) -> None:
        self.samples += 1
        self.violations += int(violated)
        if ratio > self.max_ratio or error > self.max_error:
            self.worst_case_input = case
        self.max_ratio = max(self.max_ratio, ratio)
        self.max_error = max(self.max_error, error)

def _ratio(lhs: float, rhs: float) -> float:
    return lhs / rhs if rhs > 0 else math.inf

def _random_exact(rng: np.random.Generator, d_max: int = 200) -> ExactRational:
    d = int(rng.integers(1, d_max + 1))
    return ExactRational(h=int(rng.integers(0, d)), d=d, ell=int(rng.integers(0, 3)), j=int(rng.integers(0, 2)))

def _random_point(rng: np.random.Generator, *, exact: bool) -> ExpSumPoint:
    if exact:
        return ExpSumPoint(alpha=_random_exact(rng), theta=_random_exact(rng))
    return ExpSumPoint(alpha=Real(float(rng.random())), theta=Real(float(rng.random())))

def _describe(p: ExpSumPoint) -> dict:
    def angle(a):
        return str(a.as_fraction()) if isinstance(a, ExactRational) else a.x

    return {"alpha": angle(p.alpha), "theta": angle(p.theta)}

def check_u_triples(rng: np.random.Generator, samples: int) -> LemmaReport:
    report = LemmaReport(lemma="u_triple")
    x, y, z = rng.random((3, samples))
    lhs = u_abs(x) * u_abs(y) * u_abs(z)
    rhs = 0.25 * u_abs(x + y + z) + 0.75
    worst = int(np.argmax(lhs - rhs))
    violations = int(np.count_nonzero(lhs > rhs + INEQUALITY_TOLERANCE))
    # the scalar check confirms the worst vectorised sample
    w_lhs, w_rhs = check_u_triple(float(x[worst]), float(y[worst]), float(z[worst]))
    report.samples = samples
    report.violations = violations
    report.max_ratio = float(np.max(lhs / rhs))
    report.max_error = max(0.0, w_lhs - w_rhs)
    report.worst_case_input = {"x": float(x[worst]), "y": float(y[worst]), "z": float(z[worst])}
    return report

def check_majorants(rng: np.random.Generator, samples: int) -> LemmaReport:
    report = LemmaReport(lemma="majorant")
    for i in range(samples):
        n = int(rng.integers(5, 41))
        p = _random_point(rng, exact=i % 2 == 1)
        lhs, rhs = check_majorant(n, p)
        report.observe(
            {"n": n, **_describe(p)},
            ratio=_ratio(lhs, rhs),
            violated=lhs > rhs + INEQUALITY_TOLERANCE,
        )
    return report

def check_large_norms(rng: np.random.Generator, samples: int) -> LemmaReport:
    report = LemmaReport(lemma="large_norm")
    for _ in range(samples):
        q = int(rng.integers(2, 11))
        theta = float(rng.uniform(1e-6, 1 - 1e-6))
        j = large_norm_index(q, theta)
        norm = circle_norm(q**j * theta)
        floor = 1 / (q + 1)
        report.observe(
            {"q": q, "theta": theta, "j": j},
            ratio=_ratio(floor, norm),
            violated=j < 0 or norm < floor - INEQUALITY_TOLERANCE,
        )
    return report

def check_gn_integrals(rng: np.random.Generator, samples: int, *, n_max: int = 12) -> LemmaReport:
    report = LemmaReport(lemma="gn_integral")
    for N in range(1, n_max + 1):
        for kappa in KAPPAS:
            value = gn_integral(N, kappa)
            bound = c_kappa(kappa) ** N
            report.observe(
                {"N": N, "kappa": kappa},
                ratio=_ratio(value, bound),
                violated=value > bound + QUADRATURE_SLACK,
            )
    return report

def farey_points(order: int) -> list[float]:
    fractions = {Fraction(h, d) for d in range(1, order + 1) for h in range(d)}
    return [float(f) for f in sorted(fractions)]

def check_sobolev_gallagher(rng: np.random.Generator, samples: int) -> LemmaReport:
    report = LemmaReport(lemma="sobolev_gallagher")
    points = farey_points(_FAREY_ORDER)
    for N in (4, 8, 12):
        for kappa in KAPPAS:
            lhs, rhs = sobolev_gallagher_check(N, kappa, points, _FAREY_DELTA)
            report.observe(
                {"N": N, "kappa": kappa, "points": len(points), "delta": _FAREY_DELTA},
                ratio=_ratio(lhs, rhs),
                violated=lhs > rhs,
            )
    return report

def check_product_formula(rng: np.random.Generator, samples: int) -> LemmaReport:
    report = LemmaReport(lemma="product_vs_direct")
    for _ in range(min(samples, _DIRECT_SAMPLES)):
        n = int(rng.integers(4, 19))
        p = _random_point(rng, exact=False)
        direct = fn_direct(n, p)
        error = max(abs(abs(direct) - fn_product_magnitude(n, p)), abs(direct - fn_product(n, p)))
        report.observe({"n": n, **_describe(p)}, error=error, violated=error > IDENTITY_TOLERANCE)
    return report

def check_conjugation(rng: np.random.Generator, samples: int) -> LemmaReport:
    report = LemmaReport(lemma="conjugation")
    for _ in range(min(samples, _MEAN_SQUARE_SAMPLES)):
        n = int(rng.integers(2, 15))
        p = _random_point(rng, exact=False)
        error = abs(fn_direct(n, p).conjugate() - fn_direct(n, -p))
        report.observe({"n": n, **_describe(p)}, error=error, violated=error > INEQUALITY_TOLERANCE)
    return report

def check_splitting(rng: np.random.Generator, samples: int) -> LemmaReport:
    report = LemmaReport(lemma="splitting")
    for _ in range(samples):
        n = int(rng.integers(4, 31))
        m = int(rng.integers(3, n))
        p = _random_point(rng, exact=False)
        lhs, rhs = splitting_check(n, m, p)
        error = abs(lhs - rhs)
        report.observe({"n": n, "m": m, **_describe(p)}, error=error, violated=error > IDENTITY_TOLERANCE)
    return report

def check_decay(rng: np.random.Generator, samples: int) -> LemmaReport:
    """Records the largest K with |F_n| <= K exp(-c0 n / log(4d/3)); the constant is not bounded a priori."""
    report = LemmaReport(lemma="decay")
    for _ in range(samples):
        n = int(rng.integers(4, 61))
        d = 2 * int(rng.integers(2, 100)) + 1
        h = int(rng.integers(1, d))
        if (3 * h) % d == 0:
            h = 1
        ell = int(rng.integers(0, 3))
        alpha = float(rng.random())
        result = decay_bound_report(n, d, h, ell, alpha)
        report.observe(
            {"n": n, "d": d, "h": h, "ell": ell, "alpha": alpha},
            ratio=result.ratio,
            violated=not math.isfinite(result.ratio),
        )
    return report

def check_mean_square(rng: np.random.Generator, samples: int) -> LemmaReport:
    report = LemmaReport(lemma="mean_square")
    for _ in range(min(samples, _MEAN_SQUARE_SAMPLES)):
        n = int(rng.integers(2, 13))
        alpha = float(rng.random())
        value, expected = mean_square(n, alpha)
        error = abs(value - expected)
        report.observe({"n": n, "alpha": alpha}, error=error, violated=error > INEQUALITY_TOLERANCE)
    return report

HARNESSES: dict[str, Callable[[np.random.Generator, int], LemmaReport]] = {
    "u_triple": check_u_triples,
    "majorant": check_majorants,
    "large_norm": check_large_norms,
    "gn_integral": check_gn_integrals,
    "sobolev_gallagher": check_sobolev_gallagher,
    "product_vs_direct": check_product_formula,
    "conjugation": check_conjugation,
    "splitting": check_splitting,
    "decay": check_decay,
    "mean_square": check_mean_square,
}

def verify_lemmas(
    samples: int = 10_000, seed: int = DEFAULT_SEED, *, only: list[str] | None = None
) -> list[LemmaReport]:
    if samples < 1:
        raise DomainError(f"samples must be >= 1, got {samples}")
    names = list(HARNESSES) if only is None else only
    unknown = [name for name in names if name not in HARNESSES]
    if unknown:
        raise DomainError(f"Unknown harness(es): {', '.join(unknown)}")
    # one stream per harness, so adding a harness never shifts another's samples
    streams = dict(zip(HARNESSES, np.random.SeedSequence(seed).spawn(len(HARNESSES))))
    reports = []
    for name in names:
        report = HARNESSES[name](np.random.default_rng(streams[name]), samples)
        logger.info(
            "%s: %d samples, %d violations, max ratio %.6g, max error %.3g",
            name, report.samples, report.violations, report.max_ratio, report.max_error,
        )
        reports.append(report)
    return reports
