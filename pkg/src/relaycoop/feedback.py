"""Monte Carlo check of the relay's iterative state-refinement scheme (N0 = 0).

The source sends a grid point theta(w) on [-1, 1] in one channel use, where it
arrives as y_1 = theta + s_1.  Over the next n uses the relay transmits scaled
innovations of its own estimate of s_1, so the destination's error on s_1
shrinks geometrically and theta can be read off y_1.  The second source
sub-message is not simulated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .info import gauss_c

MAX_INDEX_BITS = 52


def mse_recursion(p_r: float, p_s: float, n: int) -> list[float]:
    """Error variances V_1..V_n of the MMSE estimate of s_1; V_0 = p_s."""
    if not p_s > 0:
        raise ValueError(f"p_s must be > 0, got {p_s}")
    if not p_r >= 0:
        raise ValueError(f"p_r must be >= 0, got {p_r}")
    shrink = p_s / (p_s + p_r)
    return [p_s * shrink**k for k in range(1, n + 1)]


@dataclass(frozen=True)
class SimConfig:
    p_r: float
    p_s: float
    n: int
    rate_s1: float
    trials: int = 10_000
    seed: int = 0

    def __post_init__(self):
        if not (self.p_r > 0 and self.p_s > 0):
            raise ValueError("p_r and p_s must be > 0")
        if int(self.n) != self.n or self.n < 1:
            raise ValueError("n must be an integer >= 1")
        if int(self.trials) != self.trials or self.trials < 1:
            raise ValueError("trials must be an integer >= 1")
        if not (math.isfinite(self.rate_s1) and self.rate_s1 >= 0):
            raise ValueError("rate_s1 must be finite and >= 0")
        if self.index_bits > MAX_INDEX_BITS:
            raise ValueError(f"n * rate_s1 = {self.index_bits} exceeds {MAX_INDEX_BITS} bits")
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must be a 64-bit unsigned value")

    @property
    def index_bits(self) -> float:
        # rounded so that e.g. 30 * 0.4 counts as exactly 12 bits
        return round(self.n * self.rate_s1, 9)

    @property
    def codebook_size(self) -> int:
        return math.floor(2.0**self.index_bits)


@dataclass(frozen=True)
class SimReport:
    empirical_mse: list[float]
    analytic_mse: list[float]
    mse_stderr: list[float]
    error_rate: float
    trials: int


def decode_midpoint(theta_hat: np.ndarray, m: int) -> np.ndarray:
    """Index of the nearest of the m subinterval midpoints of [-1, 1]; ties go low."""
    u = (np.asarray(theta_hat, float) + 1.0) * (m / 2.0) - 0.5
    return np.clip(np.ceil(u - 0.5), 0, m - 1).astype(np.int64)


def midpoints(idx: np.ndarray, m: int) -> np.ndarray:
    return -1.0 + (2.0 * np.asarray(idx, float) + 1.0) / m


def simulate_refinement(cfg: SimConfig) -> SimReport:
    """Run all trials at once (vectorized); the same seed gives the same report."""
    rng = np.random.default_rng(cfg.seed)
    m = cfg.codebook_size
    w = rng.integers(0, m, size=cfg.trials)
    theta = midpoints(w, m)
    s1 = rng.normal(0.0, math.sqrt(cfg.p_s), size=cfg.trials)
    y1 = theta + s1

    analytic = mse_recursion(cfg.p_r, cfg.p_s, cfg.n)
    s_hat = np.zeros(cfg.trials)
    var = cfg.p_s
    emp, se = [], []
    for k in range(cfg.n):
        err = s1 - s_hat
        x_r = math.sqrt(cfg.p_r / var) * err
        y_t = x_r + rng.normal(0.0, math.sqrt(cfg.p_s), size=cfg.trials)
        s_hat = s_hat + math.sqrt(cfg.p_r * var) / (cfg.p_r + cfg.p_s) * y_t
        var = analytic[k]
        sq = (s1 - s_hat) ** 2
        emp.append(float(sq.mean()))
        se.append(float(sq.std(ddof=1) / math.sqrt(cfg.trials)) if cfg.trials > 1 else math.inf)

    w_hat = decode_midpoint(y1 - s_hat, m)
    return SimReport(emp, analytic, se, float(np.mean(w_hat != w)), cfg.trials)


def rate_decomposition_check(p: float, p_r: float, p_s: float) -> tuple[float, float, float]:
    """(C(p_r/p_s), C(p/(p_r+p_s)), C((p+p_r)/p_s)); the first two add up to the third."""
    if not p_s > 0:
        raise ValueError(f"p_s must be > 0, got {p_s}")
    if p < 0 or p_r < 0:
        raise ValueError("powers must be >= 0")
    return gauss_c(p_r / p_s), gauss_c(p / (p_r + p_s)), gauss_c((p + p_r) / p_s)
