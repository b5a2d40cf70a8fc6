"""Closed-form size bounds for NC-maximum classes, heavy teaching sets and the Chernoff tail."""
import logging
import math
from fractions import Fraction
from math import comb
from typing import Optional, Tuple, Union

import numpy as np
from scipy import stats

from teachlab import fields, models
from teachlab.budget import InconclusiveSearchError
from teachlab.johnson import KSetFamily, h_ratio
from teachlab.teachers import NCTeacher, TeacherNotNormalizedError

logger = logging.getLogger(__name__)

AUTO_EXACT_LIMIT = 36
FACTOR_TOLERANCE = 1e-12


def sauer_phi(d: int, m: int) -> int:
    """Sum of binomial(m, i) for i = 0..d."""
    if not 0 <= d <= m:
        raise ValueError(f'Sauer function needs 0 <= d <= m, got d={d}, m={m}.')
    return sum(comb(m, i) for i in range(d + 1))


def ksz_bound(n: int, d: int) -> int:
    if not 0 <= d <= n:
        raise ValueError(f'Need 0 <= d <= n, got n={n}, d={d}.')
    return (1 << d) * comb(n, d)


def improved_factor(d: int) -> float:
    """2 * sqrt(2 / (d + 1)) - 2 / (d + 1); equals 1 at d = 1 and decreases from there."""
    if d < 1:
        raise ValueError(f'The improved factor is defined for d >= 1, got {d}.')
    return 2 * math.sqrt(2 / (d + 1)) - 2 / (d + 1)


def default_t(d: int) -> int:
    """floor(sqrt(2(d + 1)))."""
    return math.isqrt(2 * (d + 1))


def _check_t(n: int, d: int, t: int):
    if not 2 <= t <= d <= n:
        raise ValueError(f'Need 2 <= t <= d <= n, got n={n}, d={d}, t={t}.')


def resolve_h(n: int, d: int, t: int, limit: int = AUTO_EXACT_LIMIT) -> Tuple[Fraction, str]:
    """The h to plug into the bound, with its provenance: 'exact' or 'upper-bound'.

    At n = d the only family is a single vertex, so h = 1 exactly.
    """
    _check_t(n, d, t)
    if n == d:
        return Fraction(1), 'exact'
    ceiling = Fraction(t, d + 1)
    if comb(n, d) <= limit:
        try:
            exact = h_ratio(n, d, t, limit=limit)
        except InconclusiveSearchError as e:
            logger.info(f'Exact h_{t}({n},{d}) unavailable ({e}); using t/(d+1)')
        else:
            return min(exact, ceiling), 'exact' if exact <= ceiling else 'upper-bound'
    return ceiling, 'upper-bound'


def gub_bound(n: int, d: int, t: int, h: Union[Fraction, int, str] = 'auto') -> Fraction:
    """(h + (1 - h) * 2 / (t + 1)) * 2^d * binomial(n, d), in exact arithmetic."""
    _check_t(n, d, t)
    if h == 'auto':
        h, _ = resolve_h(n, d, t)
    h = Fraction(h)
    if not 0 <= h <= 1:
        raise ValueError(f'h must lie in [0, 1], got {h}.')
    return (h + (1 - h) * Fraction(2, t + 1)) * ksz_bound(n, d)


def corollary_d2_bound(n: int) -> Fraction:
    """(5n - 4) n / 3."""
    if n < 2:
        raise ValueError(f'The d = 2 bound needs n >= 2, got {n}.')
    return Fraction((5 * n - 4) * n, 3)


def heavy_sets(t_teacher: NCTeacher, t: int) -> KSetFamily:
    """Teaching sets F used by more than 2^(d+1) / (t + 1) concepts."""
    if not t_teacher.is_normalized:
        raise TeacherNotNormalizedError('Heavy sets are defined for normalized teachers only.')
    d = t_teacher.order
    n = t_teacher.k.n
    _check_t(n, d, t)
    heavy = [f for f, m in t_teacher.multiplicities().items() if m * (t + 1) > 1 << (d + 1)]
    return KSetFamily(n, d, heavy)


def _check_chernoff(p, m: int, gamma):
    if not 0 < p <= 1:
        raise ValueError(f'p must lie in (0, 1], got {p}.')
    if m < 1:
        raise ValueError(f'm must be positive, got {m}.')
    if not 0 <= gamma <= 1:
        raise ValueError(f'gamma must lie in [0, 1], got {gamma}.')


def chernoff_bound(p: float, m: int, gamma: float) -> float:
    """exp(-p m gamma^2 / 2), an upper bound on Pr[Z < (1 - gamma) p m] for Z ~ Binomial(m, p)."""
    _check_chernoff(p, m, gamma)
    return math.exp(-p * m * gamma ** 2 / 2)


def binomial_tail(p, m: int, gamma) -> Fraction:
    """Pr[Z < (1 - gamma) p m] by exact summation; float arguments are read as their decimal text."""
    p = Fraction(str(p)) if isinstance(p, float) else Fraction(p)
    gamma = Fraction(str(gamma)) if isinstance(gamma, float) else Fraction(gamma)
    _check_chernoff(p, m, gamma)
    threshold = (1 - gamma) * p * m
    return sum(
        (comb(m, z) * p ** z * (1 - p) ** (m - z) for z in range(m + 1) if z < threshold),
        Fraction(0),
    )


def binomial_tail_float(p: float, m: int, gamma: float) -> float:
    """Same tail through scipy's binomial CDF."""
    _check_chernoff(p, m, gamma)
    threshold = (1 - gamma) * p * m
    below = math.ceil(threshold) - 1
    return float(stats.binom.cdf(below, m, p)) if below >= 0 else 0.0


def chernoff_monte_carlo(p: float, m: int, gamma: float, samples: int, seed: int) -> Tuple[float, float]:
    """Empirical Pr[Z < (1 - gamma) p m] and its standard error from `samples` binomial draws."""
    _check_chernoff(p, m, gamma)
    rng = np.random.default_rng(seed)
    draws = rng.binomial(m, p, size=samples)
    estimate = float(np.mean(draws < (1 - gamma) * p * m))
    return estimate, math.sqrt(estimate * (1 - estimate) / samples)


class BoundReport(models.Model):
    n = fields.IntegerField(required=True, min_value=1)
    d = fields.IntegerField(required=True, min_value=1)
    t = fields.IntegerField(min_value=2)
    ksz = fields.IntegerField(required=True)
    gub = fields.RationalField(required=True)
    factor = fields.FloatField(required=True)
    h_used = fields.RationalField()
    h_kind = fields.CharField(choices=('exact', 'upper-bound'))


def bound_report(n: int, d: int, t: Optional[int] = None, limit: int = AUTO_EXACT_LIMIT) -> BoundReport:
    """Every bound for (n, d) side by side. At d = 1 no t is admissible and the bound is 2n."""
    if not 1 <= d <= n:
        raise ValueError(f'Need 1 <= d <= n, got n={n}, d={d}.')
    ksz = ksz_bound(n, d)
    if d == 1:
        if t is not None:
            raise ValueError('No t satisfies 2 <= t <= d when d = 1.')
        return BoundReport(n=n, d=d, ksz=ksz, gub=Fraction(ksz), factor=improved_factor(d))
    t = default_t(d) if t is None else t
    h, kind = resolve_h(n, d, t, limit)
    gub = gub_bound(n, d, t, h)
    assert gub <= ksz, 'improved bound exceeds 2^d binomial(n, d)'
    return BoundReport(n=n, d=d, t=t, ksz=ksz, gub=gub, factor=improved_factor(d), h_used=h, h_kind=kind)
