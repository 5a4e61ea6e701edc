"""Power and relative sample size for replication studies.

The replication test statistic ``t_r`` is normal with mean
``sqrt(c) |t_o|`` and variance 1 under a point design prior at the
original estimate (conditional power), or variance ``1 + c`` under a
normal design prior centred there with the original variance
(predictive power). The unit variance of a single observation cancels
throughout, so every quantity depends on ``(t_o, c, alpha)`` only.
"""
from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass, replace

import numpy as np

from .credibility import critical_value
from .distributions import (
    ScaledNoncentralChiSq1,
    noncentral_chisq1_sf,
    std_normal_sf,
    z_from_two_sided_p,
)
from .exceptions import DomainError, NotAchievableError

__all__ = [
    "C_MAX",
    "C_MIN",
    "CurveRow",
    "DesignPrior",
    "DesignQuery",
    "SampleSizeResult",
    "Target",
    "curve_to_csv",
    "power",
    "power_curve",
    "power_replication_success",
    "power_significance",
    "replication_t_squared_distribution",
    "required_relative_sample_size",
    "sample_size_curve",
    "success_threshold",
]

C_MIN = 1e-3
C_MAX = 1e3


class DesignPrior(str, enum.Enum):
    POINT = "point"
    NORMAL = "normal"


class Target(str, enum.Enum):
    SIGNIFICANCE = "significance"
    SUCCESS = "success"


def replication_t_squared_distribution(t_o, c, prior="point") -> ScaledNoncentralChiSq1:
    """Design-prior distribution of ``t_r**2``."""
    prior = DesignPrior(prior)
    if c <= 0:
        raise DomainError("c must be positive")
    if prior is DesignPrior.POINT:
        return ScaledNoncentralChiSq1(c * t_o * t_o, 1.0)
    return ScaledNoncentralChiSq1(t_o * t_o / (1.0 + 1.0 / c), 1.0 + c)


def _t_r_law(t_o, c, prior):
    mean = math.sqrt(c) * abs(t_o)
    sd = 1.0 if DesignPrior(prior) is DesignPrior.POINT else math.sqrt(1.0 + c)
    return mean, sd


def success_threshold(t_o_sq, c, z):
    """Smallest ``t_r**2`` giving replication success at critical value ``z``.

    Raises
    ------
    NotAchievableError
        If ``t_o_sq <= z**2``: no sceptical prior exists, so no replication
        result can succeed.
    """
    ratio = t_o_sq / (z * z)
    if ratio <= 1.0:
        raise NotAchievableError("original study not significant at this level")
    return z * z * (1.0 + c / (ratio - 1.0))


def power_significance(t_o, c, alpha=0.05, sided=2, prior="point", count_wrong_sign=False):
    """Probability that the replication is significant in the original direction.

    Two-sided tests use ``z_{alpha/2}``. Rejections with the opposite
    sign are ignored unless ``count_wrong_sign`` is set, in which case the
    two-sided power is ``P(t_r**2 >= z**2)``; that version has size
    ``alpha`` at ``t_o = 0``.
    """
    z = critical_value(alpha, sided)
    if sided == 2 and count_wrong_sign:
        return noncentral_chisq1_sf(z * z, replication_t_squared_distribution(t_o, c, prior))
    mean, sd = _t_r_law(t_o, c, prior)
    return std_normal_sf((z - mean) / sd)


def power_replication_success(t_o, c, alpha=0.05, sided=2, prior="point"):
    """Probability that the replication yields ``p_S <= alpha``.

    Two-sided success is a function of ``t_r**2`` alone, so both tails
    count. One-sided success (``alpha`` is the one-sided level) requires
    ``t_r`` beyond the threshold in the original direction. Returns 0 if
    the original is not significant at ``alpha``.
    """
    z = critical_value(alpha, sided)
    try:
        threshold = success_threshold(t_o * t_o, c, z)
    except NotAchievableError:
        return 0.0
    if sided == 2:
        return noncentral_chisq1_sf(threshold, replication_t_squared_distribution(t_o, c, prior))
    mean, sd = _t_r_law(t_o, c, prior)
    return std_normal_sf((math.sqrt(threshold) - mean) / sd)


@dataclass(frozen=True)
class DesignQuery:
    """A power or sample-size question for one original study.

    Give either ``t_o`` or the two-sided original p-value ``p_o``.
    """

    t_o: float | None = None
    p_o: float | None = None
    c: float = 1.0
    alpha: float = 0.05
    sided: int = 2
    prior: DesignPrior = DesignPrior.POINT
    target: Target = Target.SUCCESS

    def __post_init__(self):
        if (self.t_o is None) == (self.p_o is None):
            raise DomainError("give exactly one of t_o and p_o")
        if self.t_o is None:
            object.__setattr__(self, "t_o", z_from_two_sided_p(self.p_o))
        object.__setattr__(self, "prior", DesignPrior(self.prior))
        object.__setattr__(self, "target", Target(self.target))
        if not 0 < self.alpha < 1:
            raise DomainError("alpha must lie in (0, 1)")
        if self.sided not in (1, 2):
            raise DomainError("sided must be 1 or 2")
        if not self.c > 0:
            raise DomainError("c must be positive")


def power(query: DesignQuery, c=None):
    """Power of ``query``, optionally at a different relative sample size."""
    c = query.c if c is None else c
    fn = power_significance if query.target is Target.SIGNIFICANCE else power_replication_success
    return fn(query.t_o, c, alpha=query.alpha, sided=query.sided, prior=query.prior)


@dataclass(frozen=True)
class SampleSizeResult:
    """``c_required`` is None when the target power is not achievable."""

    c_required: float | None
    power_at_c: float

    @property
    def achievable(self):
        return self.c_required is not None


def required_relative_sample_size(query: DesignQuery, target_power=0.8, rtol=1e-6, scan_points=50):
    """Smallest ``c`` in ``[C_MIN, C_MAX]`` whose power reaches ``target_power``.

    A log-spaced scan locates the first grid point with enough power; the
    crossing is then bisected in ``log c`` between it and its predecessor.
    Power is monotone in ``c`` in every configuration examined, but the
    scan keeps the answer correct (to grid resolution) if it is not.
    """
    if not 0 < target_power < 1:
        raise DomainError("target power must lie in (0, 1)")
    grid = np.geomspace(C_MIN, C_MAX, scan_points)
    values = [power(query, c) for c in grid]
    hits = [i for i, v in enumerate(values) if v >= target_power]
    if not hits:
        return SampleSizeResult(None, values[-1])
    i = hits[0]
    if i == 0:
        return SampleSizeResult(C_MIN, values[0])
    lo, hi = math.log(grid[i - 1]), math.log(grid[i])
    p_hi = values[i]
    while hi - lo > rtol:
        mid = 0.5 * (lo + hi)
        p_mid = power(query, math.exp(mid))
        if p_mid >= target_power:
            hi, p_hi = mid, p_mid
        else:
            lo = mid
    return SampleSizeResult(math.exp(hi), p_hi)


@dataclass(frozen=True)
class CurveRow:
    p_o: float
    value: float | None
    status: str = "ok"


def power_curve(p_grid, query: DesignQuery):
    """Power at each two-sided original p-value in ``p_grid``."""
    return [CurveRow(p, power(replace(query, t_o=None, p_o=p))) for p in p_grid]


def sample_size_curve(p_grid, query: DesignQuery, target_power=0.8):
    rows = []
    for p in p_grid:
        res = required_relative_sample_size(replace(query, t_o=None, p_o=p), target_power)
        if res.achievable:
            rows.append(CurveRow(p, res.c_required))
        else:
            rows.append(CurveRow(p, None, "not_achievable"))
    return rows


def curve_to_csv(rows) -> str:
    """Render curve rows as CSV with header ``p_o,value,status``."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["p_o", "value", "status"])
    for row in rows:
        value = "" if row.value is None else repr(float(row.value))
        writer.writerow([repr(float(row.p_o)), value, row.status])
    return buf.getvalue()
