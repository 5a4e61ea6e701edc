"""Reverse-Bayes analysis of credibility with a prior-predictive check.

The original study fixes the variance of a zero-mean "sufficiently
sceptical" prior: the smallest amount of scepticism that would push the
posterior credible limit onto zero. The replication succeeds at level
``alpha`` when its estimate conflicts with that prior, measured by Box's
prior-predictive tail probability.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .distributions import std_normal_quantile, std_normal_sf, two_sided_p
from .exceptions import DomainError, NotSignificantError

__all__ = [
    "ConfidenceInterval",
    "CredibilityResult",
    "StudySummary",
    "box_assessment",
    "critical_value",
    "replication_success_at_level",
    "sceptical_prior_variance",
    "scepticism_limit",
]


def critical_value(alpha, sided=2):
    """``z_{alpha/2}`` for two-sided, ``z_alpha`` for one-sided levels."""
    if not 0 < alpha < 1:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    if sided not in (1, 2):
        raise DomainError(f"sided must be 1 or 2, got {sided!r}")
    return std_normal_quantile(1.0 - alpha / sided)


@dataclass(frozen=True)
class StudySummary:
    """Effect estimate and standard error on an approximately normal scale."""

    estimate: float
    standard_error: float

    def __post_init__(self):
        if not math.isfinite(self.estimate):
            raise DomainError("estimate must be finite")
        if not (math.isfinite(self.standard_error) and self.standard_error > 0):
            raise DomainError(f"standard error must be positive, got {self.standard_error}")

    @classmethod
    def from_ci(cls, lower, upper, level=0.95, estimate=None):
        """Build from a symmetric normal confidence interval.

        The estimate defaults to the interval midpoint.
        """
        ci = ConfidenceInterval(lower, upper, level)
        return cls(ci.midpoint if estimate is None else estimate, ci.standard_error)

    @property
    def t(self):
        return self.estimate / self.standard_error

    @property
    def p_value(self):
        return two_sided_p(self.t)

    def confidence_interval(self, level=0.95):
        z = std_normal_quantile(0.5 + level / 2.0)
        half = z * self.standard_error
        return ConfidenceInterval(self.estimate - half, self.estimate + half, level)


@dataclass(frozen=True)
class ConfidenceInterval:
    lower: float
    upper: float
    level: float = 0.95

    def __post_init__(self):
        if not self.lower < self.upper:
            raise DomainError(f"need lower < upper, got ({self.lower}, {self.upper})")
        if not 0 < self.level < 1:
            raise DomainError(f"level must lie in (0, 1), got {self.level}")

    @property
    def midpoint(self):
        return 0.5 * (self.lower + self.upper)

    @property
    def standard_error(self):
        z = std_normal_quantile(0.5 + self.level / 2.0)
        return (self.upper - self.lower) / (2.0 * z)

    @property
    def scepticism_limit(self):
        return scepticism_limit(self.lower, self.upper)


def scepticism_limit(lower, upper):
    """Scepticism limit ``(U - L)**2 / (4 sqrt(U L))``.

    Negative intervals are reflected onto the positive half-line.

    Raises
    ------
    NotSignificantError
        If the interval contains zero.
    """
    if lower * upper <= 0:
        raise NotSignificantError(
            f"interval ({lower}, {upper}) includes zero: no sufficiently sceptical prior"
        )
    if upper < 0:
        lower, upper = -upper, -lower
    return (upper - lower) ** 2 / (4.0 * math.sqrt(upper * lower))


def sceptical_prior_variance(sigma_o, t_o, z):
    """Variance ``sigma_o**2 / (t_o**2 / z**2 - 1)`` of the sufficiently sceptical prior.

    ``z`` is the critical value of the level, ``z_{alpha/2}`` or ``z_alpha``.
    """
    if sigma_o <= 0:
        raise DomainError("sigma_o must be positive")
    ratio = t_o * t_o / (z * z)
    if ratio <= 1.0:
        raise NotSignificantError(
            f"original study not significant: t_o^2 = {t_o * t_o:.6g} <= z^2 = {z * z:.6g}"
        )
    return sigma_o * sigma_o / (ratio - 1.0)


def box_assessment(estimate_r, se_r, prior_variance):
    """Box's check of the replication estimate against the sceptical prior.

    Returns ``(t_box, p_box)`` with ``t_box = est_r / sqrt(tau2 + se_r**2)``
    and ``p_box`` the upper chi-squared(1) tail of ``t_box**2``.
    """
    if se_r <= 0 or prior_variance <= 0:
        raise DomainError("se_r and prior variance must be positive")
    t_box = estimate_r / math.sqrt(prior_variance + se_r * se_r)
    return t_box, two_sided_p(t_box)


@dataclass(frozen=True)
class CredibilityResult:
    scepticism_limit: float
    sceptical_prior_variance: float
    box_statistic: float
    box_tail_probability: float
    success: bool
    alpha: float
    sided: int


def replication_success_at_level(
    original: StudySummary, replication: StudySummary, alpha=0.05, sided=2
) -> CredibilityResult:
    """Assess replication success at a fixed level.

    Two-sided: success iff ``p_box <= alpha``. One-sided (``alpha`` is the
    one-sided level, not halved here): success iff the replication
    estimate, measured in the direction of the original effect, gives
    ``t_box >= z_alpha``; ``box_tail_probability`` is then the upper tail
    ``1 - Phi(t_box)`` in that direction.
    """
    z = critical_value(alpha, sided)
    tau2 = sceptical_prior_variance(original.standard_error, original.t, z)
    half = z * original.standard_error
    limit = scepticism_limit(original.estimate - half, original.estimate + half)
    t_box, p_box = box_assessment(replication.estimate, replication.standard_error, tau2)
    if sided == 2:
        success = p_box <= alpha
    else:
        directed = math.copysign(1.0, original.estimate) * t_box
        p_box = std_normal_sf(directed)
        success = directed >= z
    return CredibilityResult(limit, tau2, t_box, p_box, bool(success), alpha, sided)
