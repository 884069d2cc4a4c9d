"""Deterministic max-min optimization of the Gaussian rates and figure sweeps."""

from __future__ import annotations

import io
import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import brentq, minimize

from . import gaussian as gs
from .dm import RateBreakdown
from .gaussian import GaussianChannelSpec, GaussianPolicy

SCHEMES = ("1", "2", "no_si")


@dataclass(frozen=True)
class GridConfig:
    steps_alpha: int = 65
    steps_beta: int = 65
    d_linear: int = 33
    d_log: int = 16
    d_min_frac: float = 1e-6
    refine_iters: int = 200
    tol: float = 1e-9
    n_starts: int = 4

    def __post_init__(self):
        if self.steps_alpha < 2 or self.steps_beta < 2 or self.d_linear < 2:
            raise ValueError("grid step counts must be >= 2")
        if self.n_starts < 1:
            raise ValueError("n_starts must be >= 1")
        if not (0 < self.d_min_frac <= 1e-3):
            raise ValueError("d_min_frac must lie in (0, 1e-3]")
        if self.tol <= 0:
            raise ValueError("tol must be positive")

    def d_grid(self, p_s: float) -> np.ndarray:
        """Ascending grid on [0, P_S]: endpoints, linear points and log-spaced points near 0."""
        if p_s == 0:
            return np.zeros(1)
        lin = np.linspace(0.0, p_s, self.d_linear)
        logs = p_s * np.logspace(math.log10(self.d_min_frac), 0.0, self.d_log)
        return np.unique(np.concatenate([lin, logs, [0.0, p_s]]))

    def scaled(self, factor: int) -> "GridConfig":
        """Grid with every resolution multiplied by `factor` (nested in this one)."""
        return GridConfig((self.steps_alpha - 1) * factor + 1, (self.steps_beta - 1) * factor + 1,
                          (self.d_linear - 1) * factor + 1, (self.d_log - 1) * factor + 1, self.d_min_frac,
                          self.refine_iters, self.tol, self.n_starts)


@dataclass(frozen=True)
class OptResult:
    rate: float
    argmax: GaussianPolicy
    breakdown: RateBreakdown
    grid_used: GridConfig = field(repr=False)
    scheme: str = "2"


# ---------------------------------------------------------------------------
# vectorized objectives (same formulas as gaussian.scheme*_terms)


def _snr(num, den):
    num, den = np.broadcast_arrays(np.asarray(num, float), np.asarray(den, float))
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        out = np.where(den > 0, num / np.where(den > 0, den, 1.0), np.inf)
    return np.where(num <= 0, 0.0, out)


def _c(x):
    return 0.5 * np.log2(1.0 + x)


def _log_ratio(num, den):
    num, den = np.broadcast_arrays(np.asarray(num, float), np.asarray(den, float))
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.where((num > 0) & (den > 0), num / np.where(den > 0, den, 1.0), 1.0)
        out = 0.5 * np.log2(r)
    out = np.where(den <= 0, np.inf, out)
    return np.where(num <= 0, -np.inf, out)


def d_min_vec(spec: GaussianChannelSpec, a, b):
    a, b = np.broadcast_arrays(np.asarray(a, float), np.asarray(b, float))
    if spec.p_s == 0:
        return np.zeros(a.shape)
    g = spec.p + spec.p_r + 2.0 * np.sqrt(a * b * spec.p * spec.p_r)
    base = spec.p_s + spec.n0
    inner = np.minimum(2.0 ** (2.0 * spec.c_rs) * (1.0 + (1.0 - b) * spec.p_r / base) - 1.0,
                       g / base)
    with np.errstate(divide="ignore", invalid="ignore"):
        sig = spec.p_s * (g + spec.n0) / ((g + spec.p_s + spec.n0) * np.where(inner > 0, inner, 1.0))
        dm = spec.p_s * sig / (spec.p_s + sig)
    dm = np.where(sig == 0, 0.0, dm)
    return np.where(inner <= 0, spec.p_s, dm)


def _crossing(num, den, n0, p_s):
    """d solving (N0 + d) * den = num, clipped to [0, P_S]; P_S when den <= 0 (no crossing)."""
    with np.errstate(divide="ignore", invalid="ignore"):
        d = num / np.where(den > 0, den, 1.0) - n0
    return np.where(den > 0, np.clip(d, 0.0, p_s), p_s)


def d_profile_vec(spec: GaussianChannelSpec, a, b):
    """Best d for scheme 2 at fixed (alpha, beta).

    The first term decreases in d while the other two increase, so the
    optimum is the larger of the two crossing points; each crossing is linear
    in N0 + d.
    """
    a, b = np.broadcast_arrays(np.asarray(a, float), np.asarray(b, float))
    p, pr, ps, n0 = spec.p, spec.p_r, spec.p_s, spec.n0
    if ps == 0:
        return np.zeros(a.shape)
    g = p + pr + 2.0 * np.sqrt(a * b * p * pr)
    sig2 = g + ps + n0
    sig3 = (1 - a) * p + (1 - b) * pr + ps + n0
    k = 2.0 ** (2.0 * spec.c_sr)
    el = 2.0 ** (2.0 * spec.c_rs)
    priv = (1 - a) * p * ps
    d12 = _crossing(sig2 * n0 + k * priv, sig2 - k * ps, n0, ps)
    d13 = _crossing(el * sig3 * n0 + priv, el * sig3 - ps, n0, ps)
    return np.maximum(d12, d13)


def terms_vec(spec: GaussianChannelSpec, scheme: str, a, b, d):
    """Vectorized (term1, term2, term3, feasible); terms include the link capacities."""
    a, b, d = np.broadcast_arrays(np.asarray(a, float), np.asarray(b, float),
                                  np.minimum(np.asarray(d, float), spec.p_s))
    p, pr, ps, n0 = spec.p, spec.p_r, spec.p_s, spec.n0
    g = p + pr + 2.0 * np.sqrt(a * b * p * pr)
    t = (1 - a) * p + (1 - b) * pr
    floor = n0 + d
    t1 = _c(_snr((1 - a) * p, floor)) + spec.c_sr
    links = spec.c_sr + spec.c_rs
    if scheme == "2":
        if ps == 0:
            t2 = _log_ratio(g + n0, n0)
            t3 = _log_ratio(t + n0, n0)
        else:
            zero = (d == 0) & (n0 == 0)
            t2 = np.where(zero, _log_ratio(g + ps + n0, ps), _log_ratio((g + ps + n0) * d, floor * ps))
            t3 = np.where(zero, _log_ratio(t + ps + n0, ps), _log_ratio((t + ps + n0) * d, floor * ps))
        feasible = np.ones(a.shape, dtype=bool)
    elif scheme == "1":
        with np.errstate(divide="ignore", invalid="ignore"):
            pen = np.where(d >= ps, 0.0,
                           _c(_snr((g + n0) * (ps - d), (g + ps + n0) * d)))
            t2 = _c(_snr(g, floor)) - pen
            t3 = _c(_snr(t, floor)) - pen
        if ps > 0:
            zero = d == 0
            if n0 > 0:
                t2 = np.where(zero, -np.inf, t2)
                t3 = np.where(zero, -np.inf, t3)
            else:
                t2 = np.where(zero, _log_ratio(g + ps, ps), t2)
                t3 = np.where(zero, _log_ratio(t * (g + ps), ps * g), t3)
        feasible = (d >= ps * (1 - gs.FEAS_TOL)) | (d >= d_min_vec(spec, a, b) * (1 - gs.FEAS_TOL))
    else:
        raise ValueError(f"unknown scheme {scheme!r}")
    return t1, t2, t3 + links, feasible


def rate_vec(spec: GaussianChannelSpec, scheme: str, a, b, d) -> np.ndarray:
    """min of the scheme's three terms at each (alpha, beta, d); -inf where scheme 1 is infeasible."""
    t1, t2, t3, feasible = terms_vec(spec, scheme, a, b, d)
    out = np.where(feasible, np.minimum(np.minimum(t1, t2), t3), -np.inf)
    return np.where(np.isnan(out), -np.inf, out)


def d_bisect_vec(spec: GaussianChannelSpec, scheme: str, a, b, lo, iters: int = 60):
    """Smallest d in [lo, P_S] where term1 <= min(term2, term3), by bisection.

    Valid because term1 decreases and the other two increase in d.
    """
    a, b, lo = np.broadcast_arrays(np.asarray(a, float), np.asarray(b, float), np.asarray(lo, float))
    lo = lo.copy()
    hi = np.full(a.shape, spec.p_s)

    def above(d):
        t1, t2, t3, _ = terms_vec(spec, scheme, a, b, d)
        return t1 > np.minimum(t2, t3)

    done = ~above(lo)
    hi = np.where(done, lo, hi)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        up = above(mid)
        lo = np.where(up, mid, lo)
        hi = np.where(up, hi, mid)
    return hi


def _d_profile(spec: GaussianChannelSpec, a: float, b: float) -> float:
    """Scalar version of d_profile_vec."""
    p, pr, ps, n0 = spec.p, spec.p_r, spec.p_s, spec.n0
    if ps == 0:
        return 0.0
    g = gs.coherent_power(spec, a, b)
    sig2 = g + ps + n0
    sig3 = (1 - a) * p + (1 - b) * pr + ps + n0
    k = 2.0 ** (2.0 * spec.c_sr)
    el = 2.0 ** (2.0 * spec.c_rs)
    priv = (1 - a) * p * ps

    def cross(num, den):
        return min(max(num / den - n0, 0.0), ps) if den > 0 else ps

    return max(cross(sig2 * n0 + k * priv, sig2 - k * ps), cross(el * sig3 * n0 + priv, el * sig3 - ps))


def _d_candidates(spec: GaussianChannelSpec, scheme: str, a, b) -> list[np.ndarray]:
    """Structured d values tried at every (alpha, beta) besides the d grid."""
    if scheme == "2":
        return [d_profile_vec(spec, a, b)]
    dmin = d_min_vec(spec, a, b)
    # the feasibility boundary, and the best d above it
    return [dmin, d_bisect_vec(spec, scheme, a, b, dmin)]


def _terms(spec: GaussianChannelSpec, scheme: str, policy: GaussianPolicy) -> RateBreakdown:
    if scheme == "1":
        return gs.scheme1_terms(spec, policy)
    if scheme == "2":
        return gs.scheme2_terms(spec, policy)
    t = gs.no_si_terms(spec, policy.alpha)
    return RateBreakdown(("R1", "R2"), t, True)


# ---------------------------------------------------------------------------


def _pick(vals, a, b, d) -> int:
    """Index of the maximum, ties broken toward the lexicographically smallest (alpha, beta, d)."""
    best = vals.max()
    idx = np.flatnonzero(vals == best)
    if len(idx) == 1:
        return int(idx[0])
    order = np.lexsort((d[idx], b[idx], a[idx]))
    return int(idx[order[0]])


def _refine(spec, scheme, cfg: GridConfig, x0: tuple[float, float, float], v0: float):
    """Pattern search around the incumbent: alpha/beta steps, multiplicative and additive d steps.

    All steps are halved whenever no neighbour strictly improves.
    """
    ps = spec.p_s
    a, b, d = x0
    best = v0
    ha = 1.0 / (cfg.steps_alpha - 1)
    hb = 1.0 / (cfg.steps_beta - 1)
    hd = ps / (cfg.d_linear - 1) if ps > 0 else 0.0
    hl = 1.0
    dirs = [s for s in itertools.product((-1, 0, 1), repeat=3) if s != (0, 0, 0)]
    da = np.array([s[0] for s in dirs], float)
    db = np.array([s[1] for s in dirs], float)
    dk = np.array([s[2] for s in dirs], float)
    for _ in range(cfg.refine_iters):
        if ha < 1e-13 and hb < 1e-13 and hl < 1e-13:
            break
        ca = np.clip(a + ha * da, 0.0, 1.0)
        cb = np.clip(b + hb * db, 0.0, 1.0)
        cd = np.clip(d * 2.0 ** (hl * dk), 0.0, ps)
        # additive d moves, alone and paired with alpha/beta moves
        ca = np.concatenate([ca, ca, [a, a]])
        cb = np.concatenate([cb, cb, [b, b]])
        cd = np.concatenate([cd, np.clip(d + hd * dk, 0.0, ps), np.clip([d - hd, d + hd], 0.0, ps)])
        vals = rate_vec(spec, scheme, ca, cb, cd)
        k = _pick(vals, ca, cb, cd)
        if vals[k] > best:
            best = float(vals[k])
            a, b, d = float(ca[k]), float(cb[k]), float(cd[k])
        else:
            ha, hb, hd, hl = ha / 2, hb / 2, hd / 2, hl / 2
    return (a, b, d), best


def _scheme1_profile(spec: GaussianChannelSpec, a: float, b: float):
    """Scalar best-d evaluation of scheme 1 at fixed (alpha, beta)."""
    lo = gs.d_min(spec, a, b)

    def val(d):
        bd = gs.scheme1_terms(spec, GaussianPolicy(a, b, d))
        return bd.rate if bd.feasible else -math.inf

    def gap(d):
        t = gs.scheme1_terms(spec, GaussianPolicy(a, b, d)).terms
        return t[0] - min(t[1], t[2])

    cands = [lo]
    if lo < spec.p_s and gap(lo) > 0:
        g_hi = gap(spec.p_s)
        if g_hi > 0 or not math.isfinite(g_hi):
            cands.append(spec.p_s)
        else:
            cands.append(brentq(gap, lo, spec.p_s, xtol=1e-15, rtol=1e-15, maxiter=200))
    vals = [val(d) for d in cands]
    k = int(np.argmax(vals))
    return vals[k], (a, b, float(cands[k]))


def _polish(spec, scheme, cfg: GridConfig, x0: tuple[float, float, float], v0: float):
    """Nelder-Mead over (alpha, beta), d chosen from the structured candidates.

    The max over d leaves narrow diagonal ridges in (alpha, beta) that a fixed
    pattern cannot follow; the adaptive simplex can.
    """
    def profile(ab):
        a = min(max(float(ab[0]), 0.0), 1.0)
        b = min(max(float(ab[1]), 0.0), 1.0)
        if scheme == "2":
            d = _d_profile(spec, a, b)
            return gs.scheme2_terms(spec, GaussianPolicy(a, b, d)).rate, (a, b, d)
        return _scheme1_profile(spec, a, b)

    def neg(ab):
        v = profile(ab)[0]
        return -v if math.isfinite(v) else 1e300

    h = 2.0 / (cfg.steps_alpha - 1)
    start = np.array(x0[:2])
    simplex = [start]
    for i in range(2):
        e = np.zeros(2)
        e[i] = h if start[i] + h <= 1.0 else -h
        simplex.append(start + e)
    res = minimize(neg, start, method="Nelder-Mead",
                   options={"initial_simplex": np.array(simplex), "xatol": 1e-13, "fatol": 1e-15,
                            "maxfev": 2000, "adaptive": True})
    v, x = profile(res.x)
    if v > v0:
        return x, v
    return x0, v0


def optimize_scheme(spec: GaussianChannelSpec, scheme: str = "2", cfg: GridConfig | None = None,
                    warm_start: Sequence[GaussianPolicy] = ()) -> OptResult:
    """Maximize the min-term of scheme "1", "2" or "no_si" over (alpha, beta, d).

    Exhaustive grid evaluation (scheme-1 infeasible points skipped), then from
    the best few points a pattern search and a simplex polish.  Besides the d
    grid, every (alpha, beta) is tried at its structured d values.  Warm-start
    policies join the candidate set.  The result is a lower bound on the true
    supremum.
    """
    cfg = cfg or GridConfig()
    scheme = str(scheme)
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}; choose from {SCHEMES}")
    if scheme == "no_si":
        rate, alpha = gs.no_si_rate(spec, return_alpha=True)
        pol = GaussianPolicy(alpha, 1.0, spec.p_s)
        return OptResult(rate, pol, _terms(spec, scheme, pol), cfg, scheme)

    al = np.linspace(0.0, 1.0, cfg.steps_alpha)
    be = np.linspace(0.0, 1.0, cfg.steps_beta)
    dg = cfg.d_grid(spec.p_s)
    A, B, D = (m.ravel() for m in np.meshgrid(al, be, dg, indexing="ij"))
    cands_a, cands_b, cands_d = [A], [B], [D]
    a2, b2 = (m.ravel() for m in np.meshgrid(al, be, indexing="ij"))
    for dc in _d_candidates(spec, scheme, a2, b2):
        cands_a.append(a2)
        cands_b.append(b2)
        cands_d.append(dc)
    # both schemes contain the relay-ignores-state policy (beta = 1, d = P_S)
    warm = [optimize_scheme(spec, "no_si").argmax, *warm_start]
    cands_a.append(np.array([w.alpha for w in warm]))
    cands_b.append(np.array([w.beta for w in warm]))
    cands_d.append(np.array([min(w.d, spec.p_s) for w in warm]))
    A, B, D = (np.concatenate(c) for c in (cands_a, cands_b, cands_d))
    vals = rate_vec(spec, scheme, A, B, D)
    k = _pick(vals, A, B, D)
    x, best = (float(A[k]), float(B[k]), float(D[k])), float(vals[k])
    if cfg.refine_iters > 0 and math.isfinite(best):
        # refine from the best few distinct points: the top one often sits on a ridge
        order = np.lexsort((D, B, A, -vals))
        starts: list[tuple[float, float, float]] = []
        for j in order:
            if len(starts) == cfg.n_starts or not math.isfinite(vals[j]):
                break
            pt = (float(A[j]), float(B[j]), float(D[j]))
            if pt in starts:
                continue
            starts.append(pt)
            xj, vj = _refine(spec, scheme, cfg, pt, float(vals[j]))
            xj, vj = _polish(spec, scheme, cfg, xj, vj)
            if vj > best or (vj == best and xj < x):
                x, best = xj, vj
    pol = GaussianPolicy(*x)
    bd = _terms(spec, scheme, pol)
    rate = bd.rate if bd.feasible else best
    return OptResult(rate, pol, bd, cfg, scheme)


# ---------------------------------------------------------------------------
# sweeps

VARY = ("c_sr", "c_rs", "gamma_db", "c_sum_split")
ACHIEVABLE = ("scheme1", "scheme2", "nosi", "nocoop", "r2m", "r2s", "r2ms")
BOUNDS = ("upper", "fullcoop")


def parse_series(series_id: str) -> tuple[str, dict[str, float]]:
    """'scheme2@c_sr=0.2;c_rs=1' -> ('scheme2', {'c_sr': 0.2, 'c_rs': 1.0})."""
    name, _, rest = series_id.partition("@")
    if name not in ACHIEVABLE + BOUNDS:
        raise ValueError(f"unknown series {series_id!r}")
    params: dict[str, float] = {}
    if rest:
        for item in rest.split(";"):
            key, eq, val = item.partition("=")
            if not eq:
                raise ValueError(f"bad series parameter {item!r} in {series_id!r}")
            params[key.strip()] = float(val)
    allowed = {"split"} if name == "r2ms" else set()
    allowed |= {"p", "p_r", "p_s", "n0", "c_sr", "c_rs"}
    bad = set(params) - allowed
    if bad:
        raise ValueError(f"unknown parameters {sorted(bad)} in series {series_id!r}")
    if name == "r2ms" and "split" not in params:
        raise ValueError("r2ms needs a split, e.g. r2ms@split=0.5")
    return name, params


def series_spec(row: GaussianChannelSpec, series_id: str) -> GaussianChannelSpec:
    """Channel that the series evaluates at this row (link split applied for r2*)."""
    name, params = parse_series(series_id)
    spec = row.replace(**{k: v for k, v in params.items() if k != "split"})
    c_sum = spec.c_sr + spec.c_rs
    if name == "r2m":
        return spec.replace(c_sr=c_sum, c_rs=0.0)
    if name == "r2s":
        return spec.replace(c_sr=0.0, c_rs=c_sum)
    if name == "r2ms":
        s = params["split"]
        return spec.replace(c_sr=s * c_sum, c_rs=(1 - s) * c_sum)
    return spec


def _share(series_id: str) -> float:
    name, params = parse_series(series_id)
    return {"r2s": 0.0, "r2m": 1.0}.get(name, params.get("split", 0.0))


def cooperation_split_rates(spec: GaussianChannelSpec, splits: Sequence[float],
                            cfg: GridConfig | None = None) -> dict[float, OptResult]:
    """Scheme-2 rates with C_sum = c_sr + c_rs split as c_sr = s C_sum, for each s.

    Evaluated in increasing s with each optimization warm-started from all earlier
    maximizers, so rates are nondecreasing in s exactly (the rate at a fixed
    policy is nondecreasing in s).
    """
    c_sum = spec.c_sr + spec.c_rs
    out: dict[float, OptResult] = {}
    seen: list[GaussianPolicy] = []
    for s in sorted(set(splits)):
        res = optimize_scheme(spec.replace(c_sr=s * c_sum, c_rs=(1 - s) * c_sum), "2", cfg, seen)
        out[s] = res
        seen.append(res.argmax)
    return out


@dataclass
class SweepTable:
    vary: str
    x: list[float]
    series: list[str]
    values: list[list[float]]
    argmax: dict[tuple[int, str], GaussianPolicy] = field(default_factory=dict)

    def column(self, series_id: str) -> list[float]:
        j = self.series.index(series_id)
        return [row[j] for row in self.values]

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(",".join(["x"] + self.series) + "\n")
        for x, row in zip(self.x, self.values):
            buf.write(",".join(fmt(v) for v in [x] + row) + "\n")
        return buf.getvalue()


def fmt(v: float) -> str:
    return f"{v:.6g}"


def row_spec(template: GaussianChannelSpec, vary: str, value: float) -> GaussianChannelSpec:
    if vary == "c_sr":
        return template.replace(c_sr=value)
    if vary == "c_rs":
        return template.replace(c_rs=value)
    if vary == "gamma_db":
        return template.replace(n0=gs.db_to_n0(value))
    if vary == "c_sum_split":
        if not (0.0 <= value <= 1.0):
            raise ValueError("split fraction must lie in [0, 1]")
        c_sum = template.c_sr + template.c_rs
        return template.replace(c_sr=value * c_sum, c_rs=(1 - value) * c_sum)
    raise ValueError(f"unknown sweep parameter {vary!r}; choose from {VARY}")


def sweep(template: GaussianChannelSpec, vary: str, values: Sequence[float],
          series: Sequence[str], cfg: GridConfig | None = None) -> SweepTable:
    """Evaluate each series at each value of the varied parameter.

    Optimized series are warm-started from the previous row's maximizer, scheme 2
    additionally from scheme 1's maximizer in the same row, and the r2* family
    is evaluated jointly by `cooperation_split_rates`.
    """
    cfg = cfg or GridConfig()
    if vary not in VARY:
        raise ValueError(f"unknown sweep parameter {vary!r}; choose from {VARY}")
    parsed = {s: parse_series(s) for s in series}
    table = SweepTable(vary, [float(v) for v in values], list(series), [])
    prev: dict[str, GaussianPolicy] = {}
    # scheme 1 first so scheme 2 can start from its maximizer
    order = sorted(series, key=lambda s: parsed[s][0] != "scheme1")
    for i, value in enumerate(table.x):
        row = row_spec(template, vary, value)
        results: dict[str, float] = {}
        row_pols: list[GaussianPolicy] = []
        split_groups: dict[tuple, list[str]] = {}
        for sid in order:
            name, params = parsed[sid]
            if name.startswith("r2"):
                base = {k: v for k, v in params.items() if k != "split"}
                split_groups.setdefault(tuple(sorted(base.items())), []).append(sid)
                continue
            spec = series_spec(row, sid)
            if name in ("scheme1", "scheme2"):
                warm = ([prev[sid]] if sid in prev else []) + (row_pols if name == "scheme2" else [])
                res = optimize_scheme(spec, name[-1], cfg, warm)
                results[sid] = res.rate
                prev[sid] = res.argmax
                row_pols.append(res.argmax)
                table.argmax[(i, sid)] = res.argmax
            elif name == "nosi":
                results[sid] = gs.no_si_rate(spec)
            elif name == "nocoop":
                results[sid] = gs.no_coop_capacity(spec.replace(c_sr=0.0, c_rs=0.0))
            elif name == "fullcoop":
                results[sid] = gs.full_coop_capacity(spec)
            elif name == "upper":
                results[sid] = gs.gaussian_upper_bound(spec)
        for base, sids in split_groups.items():
            spec = row.replace(**dict(base))
            shares = {sid: _share(sid) for sid in sids}
            res = cooperation_split_rates(spec, list(shares.values()), cfg)
            for sid, s in shares.items():
                results[sid] = res[s].rate
                table.argmax[(i, sid)] = res[s].argmax
        table.values.append([results[s] for s in series])
    return table


def _frange(start: float, stop: float, step: float) -> list[float]:
    n = int(round((stop - start) / step))
    return [round(start + k * step, 10) for k in range(n + 1)]


GAMMA_DB = _frange(-5.0, 30.0, 2.5)
UNIT = GaussianChannelSpec(1.0, 1.0, 1.0, 0.0)

PRESETS: dict[str, tuple[GaussianChannelSpec, str, list[float], list[str]]] = {
    # message cooperation only, N0 = 0
    "fig3": (UNIT, "c_sr", _frange(0.0, 1.6, 0.1), ["scheme1", "scheme2", "nosi", "upper"]),
    # state cooperation only, N0 = 0
    "fig4": (UNIT, "c_rs", _frange(0.0, 2.0, 0.1), ["scheme1", "scheme2", "nocoop", "upper"]),
    # message cooperation only versus gamma
    "fig5": (UNIT, "gamma_db", GAMMA_DB,
             [f"{k}@c_sr={c}" for c in (0.2, 0.5, 0.8, 1.2) for k in ("scheme2", "nosi", "upper")]),
    # state cooperation only versus gamma
    "fig6": (UNIT, "gamma_db", GAMMA_DB,
             [f"scheme2@c_rs={c:g}" for c in (0.0, 0.2, 0.5, 0.8, 100.0)] + ["upper"]),
    # fixed total conferencing capacity C_sum = 1
    "fig7": (UNIT.replace(c_sr=1.0), "gamma_db", GAMMA_DB,
             ["r2m", "r2s", "r2ms@split=0.25", "r2ms@split=0.5", "r2ms@split=0.75", "upper"]),
}


def run_preset(name: str, cfg: GridConfig | None = None) -> SweepTable:
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    template, vary, values, series = PRESETS[name]
    return sweep(template, vary, values, series, cfg)
