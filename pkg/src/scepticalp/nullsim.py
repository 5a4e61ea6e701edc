"""Monte Carlo distribution of the sceptical p-value under no effect.

Draws are split into fixed-size chunks. Chunk ``k`` always uses the
Philox stream keyed by ``(seed, k)``, and the integer histogram and tail
counts are summed in chunk order, so reports do not depend on how many
workers ran the chunks.
"""
from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .distributions import _out, std_normal_pdf, std_normal_quantile, two_sided_p
from .exceptions import DomainError
from .sceptical import z_s_squared

__all__ = [
    "NullSimConfig",
    "NullSimReport",
    "density_p_ic",
    "null_tail_bound",
    "simulate_null",
]

DEFAULT_ALPHAS = (0.001, 0.005, 0.01, 0.05, 0.1)
_U53 = 2.0**-53


@dataclass(frozen=True)
class NullSimConfig:
    c: float = 1.0
    n_samples: int = 1_000_000
    seed: int = 0
    alpha_grid: tuple = DEFAULT_ALPHAS
    histogram_bins: int = 200
    chunk_size: int = 1 << 20

    def __post_init__(self):
        if not self.c > 0:
            raise DomainError("c must be positive")
        if self.n_samples < 1:
            raise DomainError("n_samples must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be an unsigned 64-bit integer")
        alphas = tuple(float(a) for a in self.alpha_grid)
        if any(not 0 < a < 1 for a in alphas) or any(b <= a for a, b in zip(alphas, alphas[1:])):
            raise DomainError("alpha grid must be strictly increasing inside (0, 1)")
        object.__setattr__(self, "alpha_grid", alphas)
        if self.histogram_bins < 1 or self.chunk_size < 1:
            raise DomainError("histogram_bins and chunk_size must be positive")


@dataclass
class NullSimReport:
    config: NullSimConfig
    tail_counts: dict
    bin_edges: np.ndarray
    counts: np.ndarray
    tail_estimates: dict = field(init=False)

    def __post_init__(self):
        n = self.config.n_samples
        self.tail_estimates = {}
        for alpha, k in self.tail_counts.items():
            est = k / n
            self.tail_estimates[alpha] = (est, math.sqrt(est * (1.0 - est) / n))

    def to_dict(self):
        cfg = self.config
        return {
            "c": cfg.c,
            "n_samples": cfg.n_samples,
            "seed": cfg.seed,
            "tail_estimates": [
                {"alpha": a, "estimate": est, "mcse": se, "count": self.tail_counts[a]}
                for a, (est, se) in self.tail_estimates.items()
            ],
        }

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)

    def histogram_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["bin_lo", "bin_hi", "count"])
        for lo, hi, k in zip(self.bin_edges[:-1], self.bin_edges[1:], self.counts):
            writer.writerow([repr(float(lo)), repr(float(hi)), int(k)])
        return buf.getvalue()


def _chunk_generator(seed, index):
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(index,))))


def null_test_statistics(seed, index, size):
    """Independent standard normal ``(t_o, t_r)`` for chunk ``index``.

    Uniforms on the open grid ``(k + 0.5) / 2**53`` go through the normal
    quantile, so no draw is infinite.
    """
    rng = _chunk_generator(seed, index)
    u = (rng.integers(0, 2**53, size=(2, size), dtype=np.int64) + 0.5) * _U53
    t = std_normal_quantile(u)
    return t[0], t[1]


def _run_chunk(config: NullSimConfig, index, edges):
    start = index * config.chunk_size
    size = min(config.chunk_size, config.n_samples - start)
    t_o, t_r = null_test_statistics(config.seed, index, size)
    p_s = np.atleast_1d(two_sided_p(np.sqrt(z_s_squared(t_o * t_o, t_r * t_r, config.c))))
    tails = [int(np.count_nonzero(p_s <= a)) for a in config.alpha_grid]
    counts, _ = np.histogram(p_s, bins=edges)
    return tails, counts


def simulate_null(config: NullSimConfig, workers=1) -> NullSimReport:
    """Simulate ``p_S`` with both true effects zero."""
    edges = np.linspace(0.0, 1.0, config.histogram_bins + 1)
    n_chunks = -(-config.n_samples // config.chunk_size)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda k: _run_chunk(config, k, edges), range(n_chunks)))
    else:
        parts = [_run_chunk(config, k, edges) for k in range(n_chunks)]
    tails = np.zeros(len(config.alpha_grid), dtype=np.int64)
    counts = np.zeros(config.histogram_bins, dtype=np.int64)
    for t, h in parts:
        tails += t
        counts += h
    tail_counts = {a: int(k) for a, k in zip(config.alpha_grid, tails)}
    return NullSimReport(config, tail_counts, edges, counts)


def null_tail_bound(alpha):
    """``alpha**2``, the ``c -> 0`` tail ``P(max(p_o, p_r) <= alpha)`` under no effect."""
    if not 0 < alpha <= 1:
        raise DomainError("alpha must lie in (0, 1]")
    return alpha * alpha


def density_p_ic(p):
    """Null density of the intrinsic-credibility p-value, ``2 sqrt(pi) phi(Phi^-1(1 - p/2))``."""
    p_arr = np.asarray(p, dtype=float)
    if not np.all((p_arr > 0) & (p_arr <= 1)):
        raise DomainError("p must lie in (0, 1]")
    t = -np.asarray(std_normal_quantile(p_arr / 2.0))
    return _out(2.0 * math.sqrt(math.pi) * np.asarray(std_normal_pdf(t)))
