"""Acceptance checks with fixed seeds; output is deterministic (no timings)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import dm, fme
from . import gaussian as gs
from . import optimize as opt
from .feedback import SimConfig, rate_decomposition_check, simulate_refinement

HALF_LOG2_3 = 0.5 * math.log2(3.0)
HALF_LOG2_5 = 0.5 * math.log2(5.0)
SEED = 20240611


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


def _unit(**kw) -> gs.GaussianChannelSpec:
    return gs.GaussianChannelSpec(1.0, 1.0, 1.0, 0.0).replace(**kw)


def check_binary() -> CheckResult:
    c = dm.binary_capacity(0.15, 0.15, 0.1)
    r = dm.binary_no_si_rate(0.15, 0.1)
    ok = abs(c - 0.4171) <= 1e-3 and abs(r - 0.2912) <= 5e-4 and c > r
    return CheckResult("binary", ok, f"C={c:.5f} (0.4171 +/- 1e-3), no-SI={r:.5f} (0.2912 +/- 5e-4), gap={c - r:.5f}")


def check_bruteforce(samples: int = 20) -> CheckResult:
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(samples):
        p, p_r = rng.uniform(0.0, 0.5, size=2)
        p_s = rng.uniform(0.0, 1.0)
        worst = max(worst, abs(dm.binary_capacity_bruteforce(p, p_r, p_s, 1e-3)
                               - dm.binary_capacity(p, p_r, p_s)))
    return CheckResult("bruteforce", worst <= 2e-3, f"{samples} triples, max |grid - closed| = {worst:.2e} (<= 2e-3)")


def check_cor3() -> CheckResult:
    r = opt.optimize_scheme(_unit(), "2").rate
    return CheckResult("cor3", abs(r - HALF_LOG2_3) <= 1e-3, f"scheme 2 = {r:.6f} (0.79248 +/- 1e-3)")


def check_cor4() -> CheckResult:
    parts, ok = [], True
    for c_sr, c_rs in ((0.0, 2.0), (1.2, 0.0)):
        spec = _unit(c_sr=c_sr, c_rs=c_rs)
        r = opt.optimize_scheme(spec, "2").rate
        ub = gs.gaussian_upper_bound(spec)
        ok &= abs(r - HALF_LOG2_5) <= 1e-3 and abs(ub - HALF_LOG2_5) <= 1e-6
        parts.append(f"(c_sr={c_sr:g}, c_rs={c_rs:g}) scheme 2 = {r:.6f}, bound = {ub:.6f}")
    return CheckResult("cor4", ok, "; ".join(parts) + " (1.16096 +/- 1e-3 / 1e-6)")


def check_gap() -> CheckResult:
    spec = _unit(c_rs=100.0)
    r1 = opt.optimize_scheme(spec, "1").rate
    r2 = opt.optimize_scheme(spec, "2").rate
    ok = r1 <= HALF_LOG2_5 - 0.01 and r2 >= HALF_LOG2_5 - 1e-3
    return CheckResult("gap", ok, f"c_rs=100: scheme 1 = {r1:.6f} (<= 1.15096), scheme 2 = {r2:.6f} (>= 1.15996)")


def random_gaussian_specs(rng: np.random.Generator, count: int) -> list[gs.GaussianChannelSpec]:
    """Powers (noise included) uniform on [0.1, 4], link capacities uniform on [0, 2]."""
    out = []
    for _ in range(count):
        p, p_r, p_s, n0 = rng.uniform(0.1, 4.0, size=4)
        c_sr, c_rs = rng.uniform(0.0, 2.0, size=2)
        out.append(gs.GaussianChannelSpec(p, p_r, p_s, n0, c_sr, c_rs))
    return out


def check_prop3(samples: int = 50, dm_samples: int = 100) -> CheckResult:
    rng = np.random.default_rng(SEED + 3)
    bad, worst = 0, math.inf
    for spec in random_gaussian_specs(rng, samples):
        r1 = opt.optimize_scheme(spec, "1")
        r2 = opt.optimize_scheme(spec, "2", warm_start=[r1.argmax])
        worst = min(worst, r2.rate - r1.rate)
        bad += r2.rate < r1.rate - 1e-9
    term_bad = 0
    for _ in range(dm_samples):
        spec, pol = dm.random_dm_instance(rng)
        a = dm.scheme1_dm_rate(spec, pol).terms
        b = dm.scheme2_dm_rate(spec, pol.embed()).terms
        term_bad += any(y < x - 1e-9 for x, y in zip(a, b))
    ok = bad == 0 and term_bad == 0
    return CheckResult("prop3", ok, f"{bad} violations in {samples} Gaussian specs (min scheme2 - scheme1 = {worst:.3e}); "
                                    f"{term_bad} term-wise violations in {dm_samples} embedded DM policies")


def check_prop8(gammas: Sequence[float] = (-5, 0, 10, 20, 30), splits=(0.25, 0.5, 0.75)) -> CheckResult:
    bad = 0
    rows = []
    for gamma in gammas:
        spec = _unit(n0=gs.db_to_n0(gamma), c_sr=1.0)
        res = opt.cooperation_split_rates(spec, [0.0, *splits, 1.0])
        rs = res[0.0].rate
        rm = res[1.0].rate
        for s in splits:
            ms = res[s].rate
            bad += not (rs <= ms + 1e-9 and ms <= rm + 1e-9)
        rows.append(f"{gamma:g}dB S={rs:.4f} M={rm:.4f}")
    return CheckResult("prop8", bad == 0, f"{bad} chain violations; " + ", ".join(rows))


def check_fme(samples: int = 100) -> CheckResult:
    rng = np.random.default_rng(SEED + 8)
    eq_a = verdict_a = n_infeasible = eq_b = 0
    err_a = err_b = 0.0
    for _ in range(samples):
        spec, pol = dm.random_dm_instance(rng)
        mi = fme.mi_values_appendix_a(spec, pol)
        lp = fme.lp_max_rate_a(mi, spec.c_sr, spec.c_rs)
        closed = dm.scheme1_dm_rate(spec, pol)
        verdict_a += lp.feasible == closed.feasible
        n_infeasible += not closed.feasible
        if lp.feasible and closed.feasible:
            e = abs(lp.rate - closed.rate)
            err_a = max(err_a, e)
            eq_a += e <= 1e-9
        elif not lp.feasible and not closed.feasible:
            eq_a += 1
    for _ in range(samples):
        spec, _ = dm.random_dm_instance(rng)
        pol = dm.random_scheme2_policy(rng, spec)
        lp = fme.lp_max_rate_b(fme.mi_values_appendix_b(spec, pol), spec.c_sr, spec.c_rs)
        e = abs(lp.rate - max(dm.scheme2_dm_rate(spec, pol).rate, 0.0))
        err_b = max(err_b, e)
        eq_b += e <= 1e-9
    ok = eq_a == samples and verdict_a == samples and eq_b == samples
    return CheckResult("fme", ok, f"A: {eq_a}/{samples} LP equalities (max err {err_a:.1e}), "
                                  f"{verdict_a}/{samples} feasibility verdicts agree ({n_infeasible} infeasible); "
                                  f"B: {eq_b}/{samples} LP equalities (max err {err_b:.1e})")


def preset_tables(cfg: opt.GridConfig | None = None) -> dict[str, opt.SweepTable]:
    return {name: opt.run_preset(name, cfg) for name in sorted(opt.PRESETS)}


def check_cutset(tables: dict[str, opt.SweepTable]) -> CheckResult:
    bad = points = 0
    for name, tab in tables.items():
        template = opt.PRESETS[name][0]
        for i, x in enumerate(tab.x):
            row = opt.row_spec(template, tab.vary, x)
            for j, sid in enumerate(tab.series):
                kind, _ = opt.parse_series(sid)
                if kind not in opt.ACHIEVABLE:
                    continue
                spec = opt.series_spec(row, sid)
                if kind == "nocoop":
                    spec = spec.replace(c_sr=0.0, c_rs=0.0)
                points += 1
                bad += tab.values[i][j] > gs.gaussian_upper_bound(spec) + 1e-9
    fig5 = tables.get("fig5")
    overlap = math.nan
    if fig5 is not None:
        a = np.array(fig5.column("scheme2@c_sr=1.2"))
        b = np.array(fig5.column("upper@c_sr=1.2"))
        overlap = float(np.max(np.abs(a - b)))
    ok = bad == 0 and overlap <= 1e-3
    return CheckResult("cutset", ok, f"{bad} of {points} achievable points above the bound; "
                                     f"fig5 c_sr=1.2 max |scheme2 - bound| = {overlap:.2e} (<= 1e-3)")


def check_feedback() -> CheckResult:
    rep = simulate_refinement(SimConfig(1.0, 1.0, 30, 0.4, 10_000, seed=7))
    z = max(abs(e - a) / s for e, a, s in zip(rep.empirical_mse, rep.analytic_mse, rep.mse_stderr))
    sums = [rate_decomposition_check(*t) for t in ((1, 1, 1), (3.0, 0.5, 2.0), (0.2, 4.0, 0.7))]
    dec = max(abs(a + b - c) for a, b, c in sums)
    ok = rep.error_rate < 0.01 and z <= 3.0 and dec <= 1e-12
    return CheckResult("feedback", ok, f"error rate {rep.error_rate:.4f} (< 0.01), max MSE z-score {z:.2f} (<= 3), "
                                       f"decomposition residual {dec:.1e} (<= 1e-12)")


def check_determinism(tables: dict[str, opt.SweepTable] | None = None) -> CheckResult:
    first = tables if tables is not None else preset_tables()
    second = preset_tables()
    same = [n for n in first if first[n].to_csv() == second[n].to_csv()]
    quick = [check_binary, check_fme, check_feedback]
    same_checks = all(f().line() == f().line() for f in quick)
    ok = len(same) == len(first) and same_checks
    return CheckResult("determinism", ok, f"{len(same)}/{len(first)} preset CSVs byte-identical across runs; "
                                          f"repeated checks {'identical' if same_checks else 'differ'}")


CHECKS = ("binary", "bruteforce", "cor3", "cor4", "gap", "prop3", "prop8", "fme", "cutset",
          "feedback", "determinism")


def run_checks(only: Sequence[str] | None = None, samples: int | None = None,
               on_result: Callable[[CheckResult], None] | None = None) -> list[CheckResult]:
    """Run the named checks (all by default) in a fixed order."""
    names = list(CHECKS) if not only else list(only)
    unknown = set(names) - set(CHECKS)
    if unknown:
        raise ValueError(f"unknown checks {sorted(unknown)}; choose from {CHECKS}")
    tables = None
    out = []
    for name in CHECKS:
        if name not in names:
            continue
        if name in ("cutset", "determinism") and tables is None:
            tables = preset_tables()
        if name == "cutset":
            res = check_cutset(tables)
        elif name == "determinism":
            res = check_determinism(tables)
        elif name == "fme":
            res = check_fme(samples or 100)
        elif name == "prop3":
            res = check_prop3(samples or 50)
        elif name == "bruteforce":
            res = check_bruteforce(samples or 20)
        else:
            res = globals()[f"check_{name}"]()
        out.append(res)
        if on_result:
            on_result(res)
    return out


def format_report(results: Sequence[CheckResult]) -> str:
    lines = [r.line() for r in results]
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    return "\n".join(lines) + "\n"
