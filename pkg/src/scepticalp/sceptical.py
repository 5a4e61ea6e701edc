"""The sceptical p-value and intrinsic credibility.

Everything here works on test statistics ``t = estimate / se`` and the
variance ratio ``c = se_o**2 / se_r**2`` (the relative sample size
``n_r / n_o``).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import _out, std_normal_quantile, std_normal_sf, two_sided_p
from .exceptions import DomainError

__all__ = [
    "ScepticalOutcome",
    "TestPair",
    "intrinsic_credibility_p",
    "intrinsic_threshold",
    "matthews_limit_z_sq",
    "sceptical_analysis",
    "sceptical_p_one_sided",
    "sceptical_p_two_sided",
    "z_s_squared",
]


def z_s_squared(t_o_sq, t_r_sq, c):
    """Squared sceptical quantile ``z_S**2``.

    Solves ``(c - 1) z**4 + 2 z**2 tA2 = tA2 tH2`` for the root in
    ``[0, min(t_o_sq, t_r_sq))``, where ``tA2`` and ``tH2`` are the
    arithmetic and harmonic means of the squared test statistics. The
    root is evaluated as ``tA2 tH2 / (tA2 + sqrt(tA2 (tA2 + (c - 1) tH2)))``,
    which is the usual two-branch solution with the numerator
    rationalised, so it is continuous through ``c == 1``.

    Broadcasts over array arguments. Returns 0 where either statistic
    is 0.
    """
    t_o_sq = np.asarray(t_o_sq, dtype=float)
    t_r_sq = np.asarray(t_r_sq, dtype=float)
    c = np.asarray(c, dtype=float)
    if np.any(c <= 0):
        raise DomainError("variance ratio c must be positive")
    if np.any(t_o_sq < 0) or np.any(t_r_sq < 0):
        raise DomainError("squared test statistics must be non-negative")

    t_sum = t_o_sq + t_r_sq
    t_a = 0.5 * t_sum
    prod = t_o_sq * t_r_sq
    with np.errstate(divide="ignore", invalid="ignore"):
        t_h = np.where(prod > 0, 2.0 * prod / t_sum, 0.0)
        # tA2 + (c-1) tH2 written as (tA2 - tH2) + c tH2 to avoid cancellation
        spread = np.where(prod > 0, 0.5 * (t_o_sq - t_r_sq) ** 2 / t_sum, 0.0)
        disc = t_a * (spread + c * t_h)
        z2 = np.where(prod > 0, t_a * t_h / (t_a + np.sqrt(disc)), 0.0)
    return _out(z2)


def sceptical_p_two_sided(t_o, t_r, c):
    """Two-sided sceptical p-value ``p_S = 2 (1 - Phi(z_S))``."""
    z2 = z_s_squared(np.square(t_o), np.square(t_r), c)
    return two_sided_p(np.sqrt(z2))


def sceptical_p_one_sided(t_o, t_r, c, direction_agrees):
    """One-sided sceptical p-value.

    Half the two-sided value when original and replication effects
    point the same way, ``1 - p_S / 2`` otherwise.
    """
    p_s = np.asarray(sceptical_p_two_sided(t_o, t_r, c))
    return _out(np.where(direction_agrees, 0.5 * p_s, 1.0 - 0.5 * p_s))


def matthews_limit_z_sq(t_o_sq, d):
    """Limit of ``z_S**2`` when the replication variance vanishes.

    ``d`` is the squared effect ratio ``(est_r / est_o)**2``.
    """
    d = np.asarray(d, dtype=float)
    if np.any(d < 0):
        raise DomainError("d must be non-negative")
    return _out(0.5 * (np.sqrt(d * (d + 4.0)) - d) * np.asarray(t_o_sq, dtype=float))


def intrinsic_credibility_p(t_o):
    """p-value for intrinsic credibility, ``2 (1 - Phi(|t_o| / sqrt(2)))``."""
    return two_sided_p(np.abs(np.asarray(t_o, dtype=float)) / np.sqrt(2.0))


def intrinsic_threshold(alpha):
    """Largest two-sided ``p_o`` that is intrinsically credible at ``alpha``."""
    a = np.asarray(alpha, dtype=float)
    if not np.all((a > 0) & (a < 1)):
        raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")
    z = std_normal_quantile(1.0 - np.asarray(alpha, dtype=float) / 2.0)
    return _out(2.0 * np.asarray(std_normal_sf(np.sqrt(2.0) * z)))


@dataclass(frozen=True)
class TestPair:
    """Original and replication test statistics with their variance ratio."""

    __test__ = False  # keep pytest from collecting this class

    t_o: float
    t_r: float
    c: float

    def __post_init__(self):
        if not (np.isfinite(self.t_o) and np.isfinite(self.t_r)):
            raise DomainError("test statistics must be finite")
        if not np.isfinite(self.c) or self.c <= 0:
            raise DomainError(f"variance ratio must be positive, got {self.c}")

    @classmethod
    def from_estimates(cls, est_o, se_o, est_r, se_r):
        if se_o <= 0 or se_r <= 0:
            raise DomainError("standard errors must be positive")
        return cls(est_o / se_o, est_r / se_r, se_o**2 / se_r**2)

    @property
    def t_a_sq(self):
        return 0.5 * (self.t_o**2 + self.t_r**2)

    @property
    def t_h_sq(self):
        if self.t_o == 0 or self.t_r == 0:
            return 0.0
        return 2.0 / (1.0 / self.t_o**2 + 1.0 / self.t_r**2)

    @property
    def direction_agrees(self):
        return self.t_o * self.t_r > 0

    @property
    def p_o(self):
        return two_sided_p(self.t_o)

    @property
    def p_r(self):
        return two_sided_p(self.t_r)


@dataclass(frozen=True)
class ScepticalOutcome:
    z_s_squared: float
    p_two_sided: float
    p_one_sided: float
    direction_agrees: bool

    def success(self, alpha, sided=2):
        p = self.p_two_sided if sided == 2 else self.p_one_sided
        return p <= alpha


def sceptical_analysis(pair: TestPair, direction_agrees=None) -> ScepticalOutcome:
    """Sceptical p-values for ``pair``.

    ``direction_agrees`` defaults to comparing the signs of the two test
    statistics.
    """
    if direction_agrees is None:
        direction_agrees = pair.direction_agrees
    z2 = z_s_squared(pair.t_o**2, pair.t_r**2, pair.c)
    p_s = two_sided_p(np.sqrt(z2))
    p_one = 0.5 * p_s if direction_agrees else 1.0 - 0.5 * p_s
    return ScepticalOutcome(z2, p_s, p_one, bool(direction_agrees))
