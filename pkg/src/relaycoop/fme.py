"""Exact small linear programs over the split-rate polytopes of both schemes.

The closed-form rate expressions come from eliminating the split rates by
Fourier-Motzkin.  Here the elimination is skipped: the message rate is
maximized directly over the codebook-rate polytope, so agreement with the
closed forms checks the elimination end to end.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import astuple, dataclass, fields

import numpy as np

from .dm import DmChannelSpec, Scheme1DmPolicy, Scheme2DmPolicy, scheme1_joint, scheme2_joint
from .info import mutual_information

SLACK = 1e-12


def _check_nonneg(obj):
    for f in fields(obj):
        v = getattr(obj, f.name)
        if not (math.isfinite(v) and v >= 0):
            raise ValueError(f"{f.name} must be finite and >= 0, got {v}")


@dataclass(frozen=True)
class AppendixAMi:
    """Mutual informations entering the block-Markov rate polytope."""

    i_v_s: float
    i_v_y: float
    i_xr_y_g_xu: float
    i_xxru_y: float
    i_x_y_g_xruv: float
    i_xxr_y_g_uv: float
    i_xxr_y_g_v: float
    i_xu_y: float
    i_v_s_g_y: float

    def __post_init__(self):
        _check_nonneg(self)


@dataclass(frozen=True)
class AppendixBMi:
    """Mutual informations entering the noisy-network-coding rate polytope."""

    i_v_s_g_xru: float
    i_xxrvu_y: float
    i_x_y_g_xrvu: float
    i_xxrv_y_g_u: float

    def __post_init__(self):
        _check_nonneg(self)


@dataclass(frozen=True)
class RatePoint:
    r_c: float
    r_p: float
    rt_c: float
    rt_p: float
    r_v: float

    @property
    def rate(self) -> float:
        return self.r_c + self.r_p


@dataclass(frozen=True)
class LpSolution:
    feasible: bool
    rate: float | None
    point: RatePoint | None


def mi_values_appendix_a(spec: DmChannelSpec, policy: Scheme1DmPolicy) -> AppendixAMi:
    j = scheme1_joint(spec, policy)

    def mi(a, b, c=""):
        return mutual_information(j, a.split(), b.split(), c.split())

    return AppendixAMi(
        i_v_s=mi("V", "S"),
        i_v_y=mi("V", "Y"),
        i_xr_y_g_xu=mi("XR", "Y", "X U"),
        i_xxru_y=mi("X XR U", "Y"),
        i_x_y_g_xruv=mi("X", "Y", "XR U V"),
        i_xxr_y_g_uv=mi("X XR", "Y", "U V"),
        i_xxr_y_g_v=mi("X XR", "Y", "V"),
        i_xu_y=mi("X U", "Y"),
        i_v_s_g_y=mi("V", "S", "Y"),
    )


def mi_values_appendix_b(spec: DmChannelSpec, policy: Scheme2DmPolicy) -> AppendixBMi:
    j = scheme2_joint(spec, policy)

    def mi(a, b, c=""):
        return mutual_information(j, a.split(), b.split(), c.split())

    return AppendixBMi(
        i_v_s_g_xru=mi("V", "S", "XR U"),
        i_xxrvu_y=mi("X XR V U", "Y"),
        i_x_y_g_xrvu=mi("X", "Y", "XR V U"),
        i_xxrv_y_g_u=mi("X XR V", "Y", "U"),
    )


def vertex_lp(c, a_ub, b_ub, slack: float = SLACK):
    """max c.x subject to a_ub x <= b_ub, by enumerating every basic solution.

    The polytope must be pointed and the objective bounded on it (true for the
    rate polytopes here).  Returns (value, x) or (None, None) when empty.
    Ties go to the first vertex in row-subset order, so the result is
    deterministic.
    """
    c = np.asarray(c, float)
    a_ub = np.asarray(a_ub, float)
    b_ub = np.asarray(b_ub, float)
    m, n = a_ub.shape
    subsets = np.array(list(itertools.combinations(range(m), n)))
    mats = a_ub[subsets]
    rhs = b_ub[subsets]
    dets = np.linalg.det(mats)
    ok = np.abs(dets) > 1e-12
    if not ok.any():
        return None, None
    xs = np.linalg.solve(mats[ok], rhs[ok][..., None])[..., 0]
    resid = xs @ a_ub.T - b_ub
    feas = np.all(resid <= slack * (1.0 + np.abs(b_ub)), axis=1)
    if not feas.any():
        return None, None
    xs = xs[feas]
    vals = xs @ c
    k = int(np.argmax(vals))
    return float(vals[k]), xs[k]


# variable order for the scheme-1 LP: r_c, r_p, rt_c, rt_p, r_v
def _system_a(mi: AppendixAMi, c_sr: float, c_rs: float, include_redundant: bool):
    rows = [
        ([1, 0, 0, 0, 0], c_sr),
        ([0, 0, 1, 0, 0], c_rs),
        ([0, 0, 0, 0, -1], -mi.i_v_s),
        ([0, 0, 0, 1, 0], mi.i_xr_y_g_xu),
        ([0, 0, 1, 1, 0], mi.i_xxru_y),
        ([0, 0, -1, -1, 1], mi.i_v_y),
        ([0, 1, 0, 0, 0], mi.i_x_y_g_xruv),
        ([0, 1, 0, 1, 0], mi.i_xxr_y_g_uv),
        ([1, 1, 1, 1, 0], mi.i_xxr_y_g_v),
    ]
    if include_redundant:
        rows.append(([0, 0, 1, 0, 0], mi.i_xxru_y))
    rows += [([-1 if i == j else 0 for i in range(5)], 0.0) for j in range(5)]
    return np.array([r for r, _ in rows], float), np.array([b for _, b in rows], float)


def lp_max_rate_a(mi: AppendixAMi, c_sr: float, c_rs: float,
                  include_redundant: bool = False) -> LpSolution:
    """Largest r_c + r_p in the block-Markov split-rate polytope (all rates >= 0)."""
    for name, v in (("c_sr", c_sr), ("c_rs", c_rs)):
        if not v >= 0:
            raise ValueError(f"{name} must be >= 0")
    a, b = _system_a(mi, c_sr, c_rs, include_redundant)
    val, x = vertex_lp([1, 1, 0, 0, 0], a, b)
    if val is None:
        return LpSolution(False, None, None)
    return LpSolution(True, val, RatePoint(*(float(v) for v in x)))


# variable order for the scheme-2 LP: r_c, r_p, rt_c, rt_p (r_v = rt_c + rt_p)
def _system_b(mi: AppendixBMi, c_sr: float, c_rs: float, relax_private: bool):
    rows = [
        ([1, 0, 0, 0], c_sr),
        ([0, 0, 1, 0], c_rs),
        ([0, 0, -1, -1], -mi.i_v_s_g_xru),
        ([1, 1, 1, 1], mi.i_xxrvu_y),
        ([0, 1, 0, 0], mi.i_x_y_g_xrvu),
        ([0, 1, 0, 1], mi.i_xxrv_y_g_u),
    ]
    signs = (0, 2, 3) if relax_private else (0, 1, 2, 3)
    rows += [([-1 if i == j else 0 for i in range(4)], 0.0) for j in signs]
    return np.array([r for r, _ in rows], float), np.array([b for _, b in rows], float)


def lp_max_rate_b(mi: AppendixBMi, c_sr: float, c_rs: float,
                  relax_private: bool = True) -> LpSolution:
    """Largest r_c + r_p in the noisy-network-coding split-rate polytope, clamped at 0.

    With `relax_private` (default) the private message rate may go negative
    inside the LP.  The polytope is then never empty and its maximum is exactly
    the three-term closed form.  With every rate forced nonnegative the polytope
    can be empty when I(X,X_R,V;Y|U) + c_rs < I(V;S|X_R,U); such policies are
    dominated by the one with a constant V, so nothing is lost by the relaxation.
    """
    for name, v in (("c_sr", c_sr), ("c_rs", c_rs)):
        if not v >= 0:
            raise ValueError(f"{name} must be >= 0")
    a, b = _system_b(mi, c_sr, c_rs, relax_private)
    val, x = vertex_lp([1, 1, 0, 0], a, b)
    if val is None:
        return LpSolution(False, None, None)
    pt = RatePoint(float(x[0]), float(x[1]), float(x[2]), float(x[3]), float(x[2] + x[3]))
    return LpSolution(True, max(val, 0.0), pt)


def closed_form_a(mi: AppendixAMi, c_sr: float, c_rs: float) -> tuple[bool, float]:
    """(feasibility test, min of the three terms) for the block-Markov scheme."""
    wz = mi.i_v_s_g_y
    feasible = mi.i_xr_y_g_xu + min(c_rs, mi.i_xu_y) >= wz - SLACK
    rate = min(mi.i_x_y_g_xruv + c_sr,
               mi.i_xxr_y_g_v - wz,
               mi.i_xxr_y_g_uv + c_sr + c_rs - wz)
    return feasible, rate


def closed_form_b(mi: AppendixBMi, c_sr: float, c_rs: float) -> float:
    k = mi.i_v_s_g_xru
    return min(mi.i_x_y_g_xrvu + c_sr, mi.i_xxrvu_y - k, mi.i_xxrv_y_g_u + c_sr + c_rs - k)


def as_tuple(mi) -> tuple[float, ...]:
    return astuple(mi)
