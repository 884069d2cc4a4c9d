"""Achievable rates and bounds for the discrete memoryless relay channel.

Variables are labelled S (state), V (compressed state), U (shared codeword),
X (source input), XR (relay input) and Y (destination output).  A channel
transition table has shape (|S|, |X|, |X_R|, |Y|).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .info import (
    JointPmf,
    bernoulli_convolve,
    binary_entropy,
    entropy,
    mutual_information,
)

ROW_TOL = 1e-12
MAX_UPPER_BOUND_ALPHABET = 16
MAX_GRID_POINTS = 4_000_000


def _rows_ok(table: np.ndarray, name: str) -> np.ndarray:
    table = np.asarray(table, dtype=float)
    if np.any(table < 0):
        raise ValueError(f"{name} has negative entries")
    if np.any(np.abs(table.sum(axis=-1) - 1.0) > ROW_TOL):
        raise ValueError(f"rows of {name} do not sum to 1")
    return table


def _capacity_ok(c: float, name: str) -> float:
    c = float(c)
    if not (math.isfinite(c) and c >= 0):
        raise ValueError(f"{name} must be finite and >= 0, got {c}")
    return c


@dataclass(frozen=True, eq=False)
class DmChannelSpec:
    state_pmf: np.ndarray
    transition: np.ndarray
    c_sr: float = 0.0
    c_rs: float = 0.0

    def __post_init__(self):
        pmf = _rows_ok(self.state_pmf, "state_pmf")
        trans = _rows_ok(self.transition, "transition")
        if pmf.ndim != 1 or trans.ndim != 4 or trans.shape[0] != pmf.shape[0]:
            raise ValueError(
                f"transition must have shape (|S|, |X|, |X_R|, |Y|) matching "
                f"state_pmf; got {trans.shape} and {pmf.shape}")
        object.__setattr__(self, "state_pmf", pmf)
        object.__setattr__(self, "transition", trans)
        object.__setattr__(self, "c_sr", _capacity_ok(self.c_sr, "c_sr"))
        object.__setattr__(self, "c_rs", _capacity_ok(self.c_rs, "c_rs"))

    @property
    def n_s(self) -> int:
        return self.transition.shape[0]

    @property
    def n_x(self) -> int:
        return self.transition.shape[1]

    @property
    def n_xr(self) -> int:
        return self.transition.shape[2]

    @property
    def n_y(self) -> int:
        return self.transition.shape[3]

    @classmethod
    def modulo_additive(cls, p_s: float, c_sr: float = 0.0, c_rs: float = 0.0):
        """Binary channel Y = X xor X_R xor S with S ~ Bernoulli(p_s)."""
        trans = np.zeros((2, 2, 2, 2))
        for s, x, xr in itertools.product(range(2), repeat=3):
            trans[s, x, xr, s ^ x ^ xr] = 1.0
        return cls(np.array([1.0 - p_s, p_s]), trans, c_sr, c_rs)

    def with_links(self, c_sr: float, c_rs: float) -> "DmChannelSpec":
        return DmChannelSpec(self.state_pmf, self.transition, c_sr, c_rs)


@dataclass(frozen=True, eq=False)
class Scheme1DmPolicy:
    """p(v|s) p(u) p(x|u) p(x_R|u)."""

    p_v_given_s: np.ndarray
    p_u: np.ndarray
    p_x_given_u: np.ndarray
    p_xr_given_u: np.ndarray

    def __post_init__(self):
        for name in ("p_v_given_s", "p_u", "p_x_given_u", "p_xr_given_u"):
            object.__setattr__(self, name, _rows_ok(getattr(self, name), name))

    def embed(self) -> "Scheme2DmPolicy":
        """The same distribution seen as a scheme-2 policy, p(v|s,x_R,u) := p(v|s)."""
        n_s, n_v = self.p_v_given_s.shape
        n_u, n_xr = self.p_u.shape[0], self.p_xr_given_u.shape[1]
        p_v = np.broadcast_to(self.p_v_given_s[:, None, None, :], (n_s, n_xr, n_u, n_v))
        return Scheme2DmPolicy(p_v.copy(), self.p_u, self.p_x_given_u, self.p_xr_given_u)


@dataclass(frozen=True, eq=False)
class Scheme2DmPolicy:
    """p(v|s,x_R,u) p(u) p(x|u) p(x_R|u); the V table has shape (|S|, |X_R|, |U|, |V|)."""

    p_v_given_s_xr_u: np.ndarray
    p_u: np.ndarray
    p_x_given_u: np.ndarray
    p_xr_given_u: np.ndarray

    def __post_init__(self):
        for name in ("p_v_given_s_xr_u", "p_u", "p_x_given_u", "p_xr_given_u"):
            object.__setattr__(self, name, _rows_ok(getattr(self, name), name))


@dataclass(frozen=True)
class RateBreakdown:
    """Per-term rates of a max-min expression at one fixed distribution or policy."""

    names: tuple[str, ...]
    terms: tuple[float, ...]
    feasible: bool = True

    @property
    def rate(self) -> float | None:
        if not self.feasible:
            return None
        return min(self.terms)

    @property
    def binding(self) -> int:
        return int(np.argmin(self.terms))

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.names, self.terms))


LABELS = ("S", "V", "U", "X", "XR", "Y")


def _check_policy_dims(spec: DmChannelSpec, p_u, p_x_given_u, p_xr_given_u):
    n_u = p_u.shape[0]
    if p_x_given_u.shape != (n_u, spec.n_x) or p_xr_given_u.shape != (n_u, spec.n_xr):
        raise ValueError(
            f"policy shapes {p_x_given_u.shape}, {p_xr_given_u.shape} do not match "
            f"|U|={n_u}, |X|={spec.n_x}, |X_R|={spec.n_xr}")


def scheme1_joint(spec: DmChannelSpec, policy: Scheme1DmPolicy) -> JointPmf:
    if policy.p_v_given_s.shape[0] != spec.n_s:
        raise ValueError("p_v_given_s rows must match |S|")
    _check_policy_dims(spec, policy.p_u, policy.p_x_given_u, policy.p_xr_given_u)
    probs = np.einsum("s,sv,u,ux,ur,sxry->svuxry", spec.state_pmf, policy.p_v_given_s,
                      policy.p_u, policy.p_x_given_u, policy.p_xr_given_u, spec.transition)
    return JointPmf(LABELS, probs / probs.sum())


def scheme2_joint(spec: DmChannelSpec, policy: Scheme2DmPolicy) -> JointPmf:
    _check_policy_dims(spec, policy.p_u, policy.p_x_given_u, policy.p_xr_given_u)
    n_u = policy.p_u.shape[0]
    if policy.p_v_given_s_xr_u.shape[:3] != (spec.n_s, spec.n_xr, n_u):
        raise ValueError(f"p_v_given_s_xr_u must have shape (|S|, |X_R|, |U|, |V|), "
                         f"got {policy.p_v_given_s_xr_u.shape}")
    probs = np.einsum("s,sruv,u,ux,ur,sxry->svuxry", spec.state_pmf, policy.p_v_given_s_xr_u,
                      policy.p_u, policy.p_x_given_u, policy.p_xr_given_u, spec.transition)
    return JointPmf(LABELS, probs / probs.sum())


def _mi(j: JointPmf, a: str, b: str, c: str = "") -> float:
    return mutual_information(j, a.split(), b.split(), c.split())


def scheme1_dm_rate(spec: DmChannelSpec, policy: Scheme1DmPolicy) -> RateBreakdown:
    """Block-Markov scheme: three rate terms plus the Wyner-Ziv feasibility test."""
    j = scheme1_joint(spec, policy)
    wz = _mi(j, "V", "S", "Y")
    terms = (
        _mi(j, "X", "Y", "XR V U") + spec.c_sr,
        _mi(j, "X XR", "Y", "V") - wz,
        _mi(j, "X XR", "Y", "V U") + spec.c_sr + spec.c_rs - wz,
    )
    support = _mi(j, "XR", "Y", "X U") + min(spec.c_rs, _mi(j, "X U", "Y"))
    feasible = support >= wz - ROW_TOL
    return RateBreakdown(("A1", "A2", "A3"), terms, feasible)


def scheme2_dm_rate(spec: DmChannelSpec, policy: Scheme2DmPolicy) -> RateBreakdown:
    """Noisy-network-coding style scheme; no separate feasibility condition."""
    j = scheme2_joint(spec, policy)
    cost = _mi(j, "V", "S", "XR U")
    terms = (
        _mi(j, "X", "Y", "XR V U") + spec.c_sr,
        _mi(j, "X XR V U", "Y") - cost,
        _mi(j, "X XR V", "Y", "U") + spec.c_sr + spec.c_rs - cost,
    )
    return RateBreakdown(("B1", "B2", "B3"), terms, True)


# ---------------------------------------------------------------------------
# grid machinery


def simplex_grid(n: int, k: int) -> np.ndarray:
    """All points of the probability simplex in R^n with coordinates in (1/k)Z.

    Rows are in lexicographic order.
    """
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    count = math.comb(k + n - 1, n - 1)
    if count > MAX_GRID_POINTS:
        raise ValueError(f"simplex grid with n={n}, k={k} has {count} points")
    pts = []
    for bars in itertools.combinations(range(k + n - 1), n - 1):
        prev = -1
        comp = []
        for b in bars:
            comp.append(b - prev - 1)
            prev = b
        comp.append(k + n - 2 - prev)
        pts.append(comp)
    pts = np.array(pts, dtype=float) / k
    order = np.lexsort(pts.T[::-1])
    return pts[order]


def _row_entropy(t: np.ndarray) -> np.ndarray:
    """Entropy in bits along the last axis."""
    with np.errstate(divide="ignore", invalid="ignore"):
        logs = np.where(t > 1e-15, np.log2(np.where(t > 1e-15, t, 1.0)), 0.0)
    return -(t * logs).sum(axis=-1)


def _cond_entropy(joint_m: np.ndarray) -> np.ndarray:
    """H(Y|context) from unnormalized masses m[..., y] summed over leading context axes.

    joint_m has shape (K, ..., |Y|) with K the batch axis.
    """
    tot = joint_m.sum(axis=-1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(joint_m > 1e-15, joint_m / np.where(tot > 0, tot, 1.0), 1.0)
        h = -np.where(joint_m > 1e-15, joint_m * np.log2(ratio), 0.0)
    return h.reshape(h.shape[0], -1).sum(axis=1)


def _joint_input_terms(spec: DmChannelSpec, q: np.ndarray):
    """Vectorized MI terms over a batch of input joints q[k, x, xr].

    Returns (I(X,X_R;Y), I(X;Y|X_R,S), H(Y|X_R,S)) as arrays over k.
    """
    ps, w = spec.state_pmf, spec.transition
    # m_sxry[k, s, x, xr, y] = p(s) q(x, xr) p(y|s, x, xr)
    m = np.einsum("s,kar,sary->ksary", ps, q, w)
    p_y = m.sum(axis=(1, 2, 3))
    h_y = _row_entropy(p_y)
    h_y_given_xxr = _cond_entropy(m.sum(axis=1))
    h_y_given_xxrs = _cond_entropy(m)
    h_y_given_xrs = _cond_entropy(m.sum(axis=2))
    i_mac = h_y - h_y_given_xxr
    i_bc = h_y_given_xrs - h_y_given_xxrs
    return np.maximum(i_mac, 0.0), np.maximum(i_bc, 0.0), h_y_given_xrs


def _refine_simplex(objective, start: np.ndarray, step: float, feasible=None,
                    min_step: float = 1e-7) -> tuple[np.ndarray, float]:
    """Local search moving probability mass between coordinate pairs, halving the step."""
    x = start.copy()
    best = float(objective(x[None])[0])
    n = x.size
    moves = [(i, j) for i in range(n) for j in range(n) if i != j]
    h = step / 2
    while h >= min_step:
        cands = []
        for i, j in moves:
            y = x.copy()
            amount = min(h, y[j])
            if amount <= 0:
                continue
            y[i] += amount
            y[j] -= amount
            if feasible is None or feasible(y):
                cands.append(y)
        improved = False
        if cands:
            cands = np.array(cands)
            vals = objective(cands)
            k = int(np.argmax(vals))
            if vals[k] > best:
                best, x, improved = float(vals[k]), cands[k], True
        if not improved:
            h /= 2
    return x, best


def dm_upper_bound(spec: DmChannelSpec, grid: int = 64, refine: bool = True) -> float:
    """Cut-set bound: max over joint p(x, x_R) of min(I(X,X_R;Y), I(X;Y|X_R,S) + C_SR).

    Searched on the simplex grid of resolution 1/grid, then optionally refined.
    """
    n = spec.n_x * spec.n_xr
    if n > MAX_UPPER_BOUND_ALPHABET:
        raise ValueError(f"|X|*|X_R| = {n} exceeds {MAX_UPPER_BOUND_ALPHABET}")
    pts = simplex_grid(n, grid)

    def objective(flat):
        i_mac, i_bc, _ = _joint_input_terms(spec, flat.reshape(-1, spec.n_x, spec.n_xr))
        return np.minimum(i_mac, i_bc + spec.c_sr)

    vals = objective(pts)
    k = int(np.argmax(vals))
    best = float(vals[k])
    if refine:
        _, best = _refine_simplex(objective, pts[k], 1.0 / grid)
    return best


def check_conditions_47_48(spec: DmChannelSpec) -> tuple[bool, bool]:
    """(Y is a function of (X, X_R, S); S is recoverable from (X, X_R, Y)).

    Checked on the table over the support of p(s), which is what matters for
    every full-support product input distribution.
    """
    live = spec.state_pmf > 0
    w = spec.transition[live]
    nonzero = w > ROW_TOL
    deterministic = bool(np.all(nonzero.sum(axis=-1) == 1))
    # number of live states compatible with each (x, x_R, y)
    recoverable = bool(np.all(nonzero.sum(axis=0) <= 1))
    return deterministic, recoverable


def _cost_ok(p: np.ndarray, cost: float | None) -> np.ndarray:
    """Rows of p (batch of PMFs over symbols 0..n-1) with E[symbol] <= cost."""
    if cost is None:
        return np.ones(p.shape[0], dtype=bool)
    mean = p @ np.arange(p.shape[1])
    return mean <= cost + 1e-12


def _marginal_grid(n: int, k: int, cost: float | None) -> np.ndarray:
    pts = simplex_grid(n, k)
    if n == 2 and cost is not None and 0 < cost < 1:
        # the cost boundary is where binary optima sit
        pts = np.vstack([pts, [[1.0 - cost, cost]]])
        pts = pts[np.lexsort(pts.T[::-1])]
    return pts[_cost_ok(pts, cost)]


def capacity_no_coop(spec: DmChannelSpec, grid: int = 64, cost_x: float | None = None,
                     cost_xr: float | None = None, refine: bool = True) -> float:
    """max over p(x)p(x_R) of min(H(Y|X_R,S), I(X,X_R;Y)) for deterministic channels.

    Optional per-letter costs bound E[X] and E[X_R] (symbols valued 0, 1, ...).
    """
    det, rec = check_conditions_47_48(spec)
    if not (det and rec):
        raise ValueError("channel violates the deterministic/recoverable-state conditions")
    if spec.c_sr != 0 or spec.c_rs != 0:
        raise ValueError("capacity without cooperation requires c_sr = c_rs = 0")
    gx = _marginal_grid(spec.n_x, grid, cost_x)
    gr = _marginal_grid(spec.n_xr, grid, cost_xr)
    if len(gx) == 0 or len(gr) == 0:
        raise ValueError("cost constraints leave no admissible input distribution")

    def objective(flat):
        px, pr = flat[:, :spec.n_x], flat[:, spec.n_x:]
        q = px[:, :, None] * pr[:, None, :]
        i_mac, _, h_bc = _joint_input_terms(spec, q)
        return np.minimum(h_bc, i_mac)

    best, best_pt = -np.inf, None
    for px in gx:
        flat = np.hstack([np.broadcast_to(px, (len(gr), spec.n_x)), gr])
        vals = objective(flat)
        k = int(np.argmax(vals))
        if vals[k] > best:
            best, best_pt = float(vals[k]), flat[k]
    if not refine:
        return best

    # coordinate-wise refinement of each marginal in turn
    def feasible(pt):
        return bool(_cost_ok(pt[None, :spec.n_x], cost_x)[0]
                    and _cost_ok(pt[None, spec.n_x:], cost_xr)[0])

    x = best_pt
    for _ in range(3):
        px, pr = x[:spec.n_x], x[spec.n_x:]
        px, _ = _refine_simplex(
            lambda c: objective(np.hstack([c, np.broadcast_to(pr, (len(c), spec.n_xr))])),
            px, 1.0 / grid, lambda c: feasible(np.concatenate([c, pr])))
        pr, val = _refine_simplex(
            lambda c: objective(np.hstack([np.broadcast_to(px, (len(c), spec.n_x)), c])),
            pr, 1.0 / grid, lambda c: feasible(np.concatenate([px, c])))
        x = np.concatenate([px, pr])
        best = max(best, val)
    return best


# ---------------------------------------------------------------------------
# binary modulo-additive example


def _half_range(p: float, name: str) -> float:
    p = float(p)
    if not (0.0 <= p <= 0.5):
        raise ValueError(f"{name} must lie in [0, 1/2], got {p}")
    return p


def binary_capacity(p: float, p_r: float, p_s: float) -> float:
    """Capacity of Y = X xor X_R xor S with costs E[X] <= p, E[X_R] <= p_r, no cooperation."""
    p = _half_range(p, "p")
    p_r = _half_range(p_r, "p_r")
    conv = bernoulli_convolve(bernoulli_convolve(p, p_r), p_s)
    return min(binary_entropy(p), binary_entropy(conv) - binary_entropy(p_s))


def binary_no_si_rate(p: float, p_s: float) -> float:
    """Best rate when the relay ignores its state information."""
    p = _half_range(p, "p")
    return binary_entropy(bernoulli_convolve(p, p_s)) - binary_entropy(p_s)


def _hb(q: np.ndarray) -> np.ndarray:
    return _row_entropy(np.stack([q, 1.0 - q], axis=-1))


def binary_capacity_bruteforce(p: float, p_r: float, p_s: float, grid: float = 1e-3) -> float:
    """Grid search over Bernoulli inputs q <= p, q_r <= p_r (endpoints included)."""
    p = _half_range(p, "p")
    p_r = _half_range(p_r, "p_r")
    if not (0.0 <= p_s <= 1.0):
        raise ValueError(f"p_s must lie in [0, 1], got {p_s}")
    qs = np.union1d(np.arange(0.0, p, grid), [p])
    qrs = np.union1d(np.arange(0.0, p_r, grid), [p_r])
    q, qr = np.meshgrid(qs, qrs, indexing="ij")
    conv = q * (1 - qr) + qr * (1 - q)
    conv = conv * (1 - p_s) + p_s * (1 - conv)
    vals = np.minimum(_hb(q), _hb(conv) - binary_entropy(p_s))
    return float(vals.max())


# ---------------------------------------------------------------------------
# random instances


def _dirichlet_rows(rng: np.random.Generator, shape: Sequence[int]) -> np.ndarray:
    return rng.dirichlet(np.ones(shape[-1]), size=tuple(shape[:-1]))


def random_dm_instance(rng: np.random.Generator, n_s=2, n_x=2, n_xr=2, n_y=2, n_v=2, n_u=2,
                       max_link: float = 1.0) -> tuple[DmChannelSpec, Scheme1DmPolicy]:
    """Random channel and scheme-1 policy with Dirichlet(1) rows and uniform link capacities."""
    spec = DmChannelSpec(
        rng.dirichlet(np.ones(n_s)),
        _dirichlet_rows(rng, (n_s, n_x, n_xr, n_y)),
        float(rng.uniform(0, max_link)),
        float(rng.uniform(0, max_link)),
    )
    policy = Scheme1DmPolicy(
        _dirichlet_rows(rng, (n_s, n_v)),
        rng.dirichlet(np.ones(n_u)),
        _dirichlet_rows(rng, (n_u, n_x)),
        _dirichlet_rows(rng, (n_u, n_xr)),
    )
    return spec, policy


def random_scheme2_policy(rng: np.random.Generator, spec: DmChannelSpec, n_v=2, n_u=2) -> Scheme2DmPolicy:
    return Scheme2DmPolicy(
        _dirichlet_rows(rng, (spec.n_s, spec.n_xr, n_u, n_v)),
        rng.dirichlet(np.ones(n_u)),
        _dirichlet_rows(rng, (n_u, spec.n_x)),
        _dirichlet_rows(rng, (n_u, spec.n_xr)),
    )
