"""Normal and one-degree-of-freedom non-central chi-squared kernels.

All functions accept scalars or numpy arrays. Scalar input returns a
Python float.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special

from .exceptions import DomainError

__all__ = [
    "ScaledNoncentralChiSq1",
    "noncentral_chisq1_cdf",
    "noncentral_chisq1_sf",
    "std_normal_cdf",
    "std_normal_pdf",
    "std_normal_quantile",
    "std_normal_sf",
    "two_sided_p",
    "z_from_two_sided_p",
]

_INV_SQRT_2PI = 0.3989422804014327


def _out(value):
    if np.ndim(value) == 0:
        return float(value)
    return value


def std_normal_cdf(x):
    """Standard normal distribution function."""
    return _out(special.ndtr(x))


def std_normal_sf(x):
    """Upper tail ``1 - Phi(x)`` without cancellation for large ``x``."""
    return _out(special.ndtr(np.negative(x)))


def std_normal_pdf(x):
    x = np.asarray(x, dtype=float)
    return _out(_INV_SQRT_2PI * np.exp(-0.5 * x * x))


def std_normal_quantile(p):
    """Inverse of :func:`std_normal_cdf`.

    Raises
    ------
    DomainError
        If any ``p`` lies outside the open interval (0, 1).
    """
    p_arr = np.asarray(p, dtype=float)
    if not np.all((p_arr > 0.0) & (p_arr < 1.0)):
        raise DomainError(f"quantile requires 0 < p < 1, got {p!r}")
    return _out(special.ndtri(p_arr))


def two_sided_p(t):
    """Two-sided normal p-value ``2 * (1 - Phi(|t|))``."""
    return _out(2.0 * special.ndtr(-np.abs(t)))


def z_from_two_sided_p(p):
    """Absolute test statistic whose two-sided p-value is ``p``."""
    p_arr = np.asarray(p, dtype=float)
    if not np.all((p_arr > 0.0) & (p_arr <= 1.0)):
        raise DomainError(f"two-sided p-value must lie in (0, 1], got {p!r}")
    return _out(-special.ndtri(p_arr / 2.0))


@dataclass(frozen=True)
class ScaledNoncentralChiSq1:
    """Law of ``scale * (Z + sqrt(noncentrality))**2`` with Z standard normal.

    The plain non-central chi-squared with one degree of freedom is the
    case ``scale == 1``.
    """

    noncentrality: float
    scale: float = 1.0

    def __post_init__(self):
        if not np.isfinite(self.noncentrality) or self.noncentrality < 0:
            raise DomainError(f"noncentrality must be >= 0, got {self.noncentrality}")
        if not np.isfinite(self.scale) or self.scale <= 0:
            raise DomainError(f"scale must be > 0, got {self.scale}")

    def cdf(self, x):
        return noncentral_chisq1_cdf(x, self)

    def sf(self, x):
        return noncentral_chisq1_sf(x, self)

    def rvs(self, size, rng: np.random.Generator):
        z = rng.standard_normal(size)
        return self.scale * (z + np.sqrt(self.noncentrality)) ** 2


def _root_terms(x, dist):
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("chi-squared support is x >= 0")
    return np.sqrt(x / dist.scale), np.sqrt(dist.noncentrality)


def noncentral_chisq1_cdf(x, dist: ScaledNoncentralChiSq1):
    """``P(X <= x)`` by the exact identity ``Phi(r - m) - Phi(-r - m)``.

    Here ``r = sqrt(x / scale)`` and ``m = sqrt(noncentrality)``.
    """
    r, m = _root_terms(x, dist)
    return _out(special.ndtr(r - m) - special.ndtr(-r - m))


def noncentral_chisq1_sf(x, dist: ScaledNoncentralChiSq1):
    """``P(X > x)``, summed from both tails to keep precision near 1."""
    r, m = _root_terms(x, dist)
    return _out(special.ndtr(m - r) + special.ndtr(-r - m))
