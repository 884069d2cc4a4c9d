"""Closed-form rates for the Gaussian model Y = X + X_R + S + Z.

Powers are linear, rates are bits per channel use.  The compression-noise
variance P_Q of the relay is carried as ``d = P_S P_Q / (P_S + P_Q)``, the
effective noise floor on the state once the destination holds V = S + Q:
d = 0 is perfect compression and d = P_S means no compression at all.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from scipy.optimize import brentq

from .dm import RateBreakdown
from .info import gauss_c

INF = math.inf
FEAS_TOL = 1e-12


def _nonneg(value: float, name: str) -> float:
    value = float(value)
    if not (math.isfinite(value) and value >= 0):
        raise ValueError(f"{name} must be finite and >= 0, got {value}")
    return value


@dataclass(frozen=True)
class GaussianChannelSpec:
    p: float
    p_r: float
    p_s: float
    n0: float
    c_sr: float = 0.0
    c_rs: float = 0.0

    def __post_init__(self):
        for name in ("p", "p_r", "p_s", "n0", "c_sr", "c_rs"):
            object.__setattr__(self, name, _nonneg(getattr(self, name), name))

    def replace(self, **changes) -> "GaussianChannelSpec":
        return replace(self, **changes)


@dataclass(frozen=True)
class GaussianPolicy:
    alpha: float
    beta: float
    d: float

    def __post_init__(self):
        for name in ("alpha", "beta"):
            v = float(getattr(self, name))
            if not (0.0 <= v <= 1.0):
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
            object.__setattr__(self, name, v)
        object.__setattr__(self, "d", _nonneg(self.d, "d"))

    @classmethod
    def from_pq(cls, alpha: float, beta: float, p_q: float, p_s: float) -> "GaussianPolicy":
        if math.isinf(p_q):
            return cls(alpha, beta, p_s)
        return cls(alpha, beta, p_s * p_q / (p_s + p_q) if p_s + p_q > 0 else 0.0)

    def p_q(self, p_s: float) -> float:
        """Compression-noise variance corresponding to d."""
        if self.d >= p_s:
            return INF
        return self.d * p_s / (p_s - self.d)


@dataclass(frozen=True)
class UpperBoundPolicy:
    rho: float

    def __post_init__(self):
        if not (0.0 <= self.rho <= 1.0):
            raise ValueError(f"rho must lie in [0, 1], got {self.rho}")


def db_to_n0(gamma_db: float) -> float:
    """Noise power for state-to-noise ratio gamma = 10 log10(1 / N0), unit powers."""
    return 10.0 ** (-gamma_db / 10.0)


def snr(num: float, den: float) -> float:
    """num/den with 0/0 = 0 (no signal) and x/0 = inf."""
    if num <= 0:
        return 0.0
    if den <= 0:
        return INF
    return num / den


def _log_ratio(num: float, den: float) -> float:
    """1/2 log2(num/den), with the limits at zero numerator or denominator."""
    if num <= 0:
        return -INF
    if den <= 0:
        return INF
    return 0.5 * math.log2(num / den)


def coherent_power(spec: GaussianChannelSpec, alpha: float, beta: float) -> float:
    """Received signal power P + P_R + 2 sqrt(alpha beta P P_R)."""
    return spec.p + spec.p_r + 2.0 * math.sqrt(alpha * beta * spec.p * spec.p_r)


def sigma_threshold(spec: GaussianChannelSpec, alpha: float, beta: float) -> float:
    """Least compression-noise variance for which the scheme-1 Wyner-Ziv index fits."""
    if spec.p_s == 0:
        return 0.0
    g = coherent_power(spec, alpha, beta)
    base = spec.p_s + spec.n0
    inner = min(
        2.0 ** (2.0 * spec.c_rs) * (1.0 + (1.0 - beta) * spec.p_r / base) - 1.0,
        g / base,
    )
    if inner <= 0:
        return INF
    return spec.p_s * (g + spec.n0) / ((g + spec.p_s + spec.n0) * inner)


def d_min(spec: GaussianChannelSpec, alpha: float, beta: float) -> float:
    """Smallest admissible d for scheme 1 other than the no-compression point d = P_S."""
    sig = sigma_threshold(spec, alpha, beta)
    if math.isinf(sig):
        return spec.p_s
    if sig == 0:
        return 0.0
    return spec.p_s * sig / (spec.p_s + sig)


def scheme1_feasible(spec: GaussianChannelSpec, policy: GaussianPolicy) -> bool:
    if policy.d >= spec.p_s * (1 - FEAS_TOL):
        return True
    return policy.d >= d_min(spec, policy.alpha, policy.beta) * (1 - FEAS_TOL)


def _wz_penalty(spec: GaussianChannelSpec, g: float, d: float) -> float:
    """Wyner-Ziv rate C((G + N0) P_S / ((G + P_S + N0) P_Q)) written in terms of d."""
    if d >= spec.p_s:
        return 0.0
    return gauss_c(snr((g + spec.n0) * (spec.p_s - d), (g + spec.p_s + spec.n0) * d))


def scheme1_terms(spec: GaussianChannelSpec, policy: GaussianPolicy) -> RateBreakdown:
    """A1, A2, A3 of the block-Markov scheme with Gaussian signalling."""
    a, b, d = policy.alpha, policy.beta, min(policy.d, spec.p_s)
    g = coherent_power(spec, a, b)
    floor = spec.n0 + d
    t = (1 - a) * spec.p + (1 - b) * spec.p_r
    if d == 0 and spec.p_s > 0:
        # perfect compression: the penalty diverges, use the limits of the differences
        if spec.n0 > 0:
            a2 = a3 = -INF
        else:
            a2 = _log_ratio(g + spec.p_s, spec.p_s)
            a3 = _log_ratio(t * (g + spec.p_s), spec.p_s * g)
    else:
        pen = _wz_penalty(spec, g, d)
        a2 = gauss_c(snr(g, floor)) - pen
        a3 = gauss_c(snr(t, floor)) - pen
    terms = (
        gauss_c(snr((1 - a) * spec.p, floor)) + spec.c_sr,
        a2,
        a3 + spec.c_sr + spec.c_rs,
    )
    return RateBreakdown(("A1", "A2", "A3"), terms, scheme1_feasible(spec, policy))


def scheme2_terms(spec: GaussianChannelSpec, policy: GaussianPolicy) -> RateBreakdown:
    """B1, B2, B3 of the noisy-network-coding scheme with Gaussian signalling."""
    a, b, d = policy.alpha, policy.beta, min(policy.d, spec.p_s)
    g = coherent_power(spec, a, b)
    n0, p_s = spec.n0, spec.p_s
    floor = n0 + d
    sigma2 = g + p_s + n0
    sigma3 = (1 - a) * spec.p + (1 - b) * spec.p_r + p_s + n0
    if p_s == 0:
        # no state: V carries nothing and the C(P_S/P_Q) cost vanishes
        b2 = _log_ratio(sigma2, n0)
        b3 = _log_ratio(sigma3, n0)
    elif d == 0 and n0 == 0:
        b2 = _log_ratio(sigma2, p_s)
        b3 = _log_ratio(sigma3, p_s)
    else:
        b2 = _log_ratio(sigma2 * d, floor * p_s)
        b3 = _log_ratio(sigma3 * d, floor * p_s)
    terms = (
        gauss_c(snr((1 - a) * spec.p, floor)) + spec.c_sr,
        b2,
        b3 + spec.c_sr + spec.c_rs,
    )
    return RateBreakdown(("B1", "B2", "B3"), terms, True)


def _maxmin_monotone(dec, inc, lo: float = 0.0, hi: float = 1.0) -> tuple[float, float]:
    """max over t in [lo, hi] of min(dec(t), inc(t)) for dec nonincreasing and inc nondecreasing.

    Returns (value, argmax).
    """
    if dec(lo) <= inc(lo):
        return min(dec(lo), inc(lo)), lo
    if dec(hi) >= inc(hi):
        return min(dec(hi), inc(hi)), hi
    t = brentq(lambda u: dec(u) - inc(u), lo, hi, xtol=1e-15, rtol=1e-15, maxiter=500)
    return min(dec(t), inc(t)), t


def no_si_terms(spec: GaussianChannelSpec, alpha: float) -> tuple[float, float]:
    base = spec.n0 + spec.p_s
    return (
        gauss_c(snr((1 - alpha) * spec.p, base)) + spec.c_sr,
        gauss_c(snr(spec.p + spec.p_r + 2 * math.sqrt(alpha * spec.p * spec.p_r), base)),
    )


def no_si_rate(spec: GaussianChannelSpec, return_alpha: bool = False):
    """Rate when the relay ignores the state and spends all power on the message."""
    val, alpha = _maxmin_monotone(lambda a: no_si_terms(spec, a)[0],
                                  lambda a: no_si_terms(spec, a)[1])
    return (val, alpha) if return_alpha else val


def upper_bound_terms(spec: GaussianChannelSpec, rho: float) -> tuple[float, float]:
    """(MAC cut, broadcast cut + C_SR) for jointly Gaussian inputs with correlation rho."""
    cross = 2 * rho * math.sqrt(spec.p * spec.p_r)
    return (
        gauss_c(snr(spec.p + spec.p_r + cross, spec.p_s + spec.n0)),
        gauss_c(snr((1 - rho * rho) * spec.p, spec.n0)) + spec.c_sr,
    )


def gaussian_upper_bound(spec: GaussianChannelSpec, return_rho: bool = False):
    """Cut-set bound evaluated with jointly Gaussian inputs, maximized over correlation.

    With N0 = 0 the broadcast cut is infinite for every rho < 1, so the value is
    the supremum approached as rho -> 1.  For N0 > 0 this is the Gaussian-input
    evaluation, not a proven capacity upper bound.
    """
    if spec.n0 == 0 and spec.p > 0:
        val, rho = upper_bound_terms(spec, 1.0)[0], 1.0
    else:
        val, rho = _maxmin_monotone(lambda r: upper_bound_terms(spec, r)[1],
                                    lambda r: upper_bound_terms(spec, r)[0])
    return (val, rho) if return_rho else val


def _require_noiseless(spec: GaussianChannelSpec):
    if spec.n0 != 0:
        raise ValueError("closed-form capacity requires N0 = 0")
    if spec.p_s <= 0:
        raise ValueError("closed-form capacity requires P_S > 0")


def no_coop_capacity(spec: GaussianChannelSpec) -> float:
    """Capacity C((P + P_R)/P_S) with N0 = 0 and no conferencing."""
    _require_noiseless(spec)
    if spec.c_sr != 0 or spec.c_rs != 0:
        raise ValueError("no-cooperation capacity requires c_sr = c_rs = 0")
    return gauss_c((spec.p + spec.p_r) / spec.p_s)


def full_coop_capacity(spec: GaussianChannelSpec) -> float:
    """Full-cooperation value C((P + P_R + 2 sqrt(P P_R))/P_S) with N0 = 0."""
    _require_noiseless(spec)
    return gauss_c(coherent_power(spec, 1.0, 1.0) / spec.p_s)
