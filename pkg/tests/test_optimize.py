import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relaycoop import gaussian as gs
from relaycoop import optimize as opt
from relaycoop.gaussian import GaussianChannelSpec, GaussianPolicy
from relaycoop.verify import random_gaussian_specs

HALF_LOG2_3 = 0.5 * math.log2(3)
HALF_LOG2_5 = 0.5 * math.log2(5)
SMALL = opt.GridConfig(steps_alpha=17, steps_beta=17, d_linear=9, d_log=8)

power = st.floats(0.1, 4.0)
cap = st.floats(0.0, 2.0)
frac = st.floats(0.0, 1.0)


@st.composite
def specs(draw):
    return GaussianChannelSpec(draw(power), draw(power), draw(power), draw(st.sampled_from([0.0, 0.3, 2.0])),
                               draw(cap), draw(cap))


def unit(**kw):
    return GaussianChannelSpec(1.0, 1.0, 1.0, 0.0).replace(**kw)


def objective(spec, scheme, pol):
    bd = gs.scheme1_terms(spec, pol) if scheme == "1" else gs.scheme2_terms(spec, pol)
    return bd.rate if bd.feasible else -math.inf


def test_corner_values():
    res = opt.optimize_scheme(unit(), "2")
    assert abs(res.rate - HALF_LOG2_3) <= 1e-3
    assert res.argmax.alpha == 0.0 and res.argmax.beta == 0.0
    assert abs(opt.optimize_scheme(unit(c_rs=2.0), "2").rate - HALF_LOG2_5) <= 1e-3
    assert opt.optimize_scheme(unit(p=0.0), "1").rate == pytest.approx(0.0, abs=1e-12)


def test_unknown_scheme():
    with pytest.raises(ValueError):
        opt.optimize_scheme(unit(), "3")


def test_grid_config_validation():
    with pytest.raises(ValueError):
        opt.GridConfig(steps_alpha=1)
    with pytest.raises(ValueError):
        opt.GridConfig(d_min_frac=0.1)
    with pytest.raises(ValueError):
        opt.GridConfig(tol=0.0)
    g = opt.GridConfig().d_grid(2.0)
    assert g[0] == 0.0 and g[-1] == 2.0 and np.all(np.diff(g) > 0)
    assert g[1] == pytest.approx(2e-6)
    assert set(opt.GridConfig().d_grid(1.0)) <= set(opt.GridConfig().scaled(2).d_grid(1.0)) | {0.0}


@pytest.mark.parametrize("scheme", ["1", "2", "no_si"])
@pytest.mark.parametrize("seed", range(3))
def test_rate_equals_objective_at_argmax(scheme, seed):
    spec = random_gaussian_specs(np.random.default_rng(seed), 1)[0]
    res = opt.optimize_scheme(spec, scheme, SMALL)
    if scheme == "no_si":
        expect = min(gs.no_si_terms(spec, res.argmax.alpha))
    else:
        expect = objective(spec, scheme, res.argmax)
    assert abs(res.rate - expect) <= SMALL.tol


@pytest.mark.parametrize("seed", range(3))
def test_refinement_never_hurts(seed):
    spec = random_gaussian_specs(np.random.default_rng(100 + seed), 1)[0]
    for scheme in "12":
        raw = opt.optimize_scheme(spec, scheme, opt.GridConfig(refine_iters=0))
        ref = opt.optimize_scheme(spec, scheme)
        assert ref.rate >= raw.rate


@pytest.mark.parametrize("spec,scheme", [
    (unit(), "2"), (unit(c_rs=2.0), "2"), (unit(c_sr=1.2), "2"),
    (unit(c_rs=100.0), "1"), (unit(c_rs=100.0), "2"),
])
def test_grid_doubling_is_stable(spec, scheme):
    cfg = opt.GridConfig()
    a = opt.optimize_scheme(spec, scheme, cfg).rate
    b = opt.optimize_scheme(spec, scheme, cfg.scaled(2)).rate
    assert abs(a - b) <= 2 * cfg.tol


MONO = [("c_sr", 1), ("c_rs", 1), ("p", 1), ("p_r", 1), ("p_s", -1), ("n0", -1)]


@pytest.mark.parametrize("field,sign", MONO)
def test_monotone_in_parameters(field, sign):
    for spec in random_gaussian_specs(np.random.default_rng(11), 2):
        for scheme in "12":
            v0 = getattr(spec, field)
            bigger = v0 + 0.5 if field.startswith("c_") else 1.5 * v0
            lo = opt.optimize_scheme(spec, scheme, SMALL).rate
            hi = opt.optimize_scheme(spec.replace(**{field: bigger}), scheme, SMALL).rate
            assert sign * (hi - lo) >= -SMALL.tol


@given(specs(), frac, frac)
def test_d_profile_is_best_d(spec, a, b):
    d = float(opt.d_profile_vec(spec, a, b))
    assert d == pytest.approx(opt._d_profile(spec, a, b), abs=1e-15)
    best = objective(spec, "2", GaussianPolicy(a, b, d))
    grid = np.linspace(0.0, spec.p_s, 2001)
    oracle = max(objective(spec, "2", GaussianPolicy(a, b, x)) for x in grid)
    assert best >= oracle - 1e-12
    # the profile is where the first term stops exceeding the others
    bis = float(opt.d_bisect_vec(spec, "2", a, b, 0.0))
    assert objective(spec, "2", GaussianPolicy(a, b, bis)) == pytest.approx(best, abs=1e-9)


@given(specs(), frac, frac, st.floats(0.0, 1.0))
def test_vector_terms_match_scalar(spec, a, b, frac_d):
    d = frac_d * spec.p_s
    for scheme, fn in (("1", gs.scheme1_terms), ("2", gs.scheme2_terms)):
        t1, t2, t3, feas = opt.terms_vec(spec, scheme, a, b, d)
        bd = fn(spec, GaussianPolicy(a, b, d))
        np.testing.assert_allclose([float(t1), float(t2), float(t3)], bd.terms, rtol=1e-12, atol=1e-12)
        assert bool(feas) == bd.feasible
    assert float(opt.d_min_vec(spec, a, b)) == pytest.approx(gs.d_min(spec, a, b), rel=1e-12, abs=1e-15)


@settings(max_examples=10)
@given(st.integers(0, 2**31))
def test_beats_random_search(seed):
    rng = np.random.default_rng(seed)
    spec = random_gaussian_specs(rng, 1)[0]
    pts = rng.random((400, 3))
    for scheme in "12":
        oracle = max(objective(spec, scheme, GaussianPolicy(x, y, z * spec.p_s)) for x, y, z in pts)
        assert opt.optimize_scheme(spec, scheme, SMALL).rate >= oracle - 1e-12


def test_scheme2_dominates_scheme1_with_shared_grid():
    for spec in random_gaussian_specs(np.random.default_rng(4), 4):
        r1 = opt.optimize_scheme(spec, "1", SMALL)
        r2 = opt.optimize_scheme(spec, "2", SMALL, warm_start=[r1.argmax])
        assert r2.rate >= r1.rate - 1e-9


def test_cooperation_split_chain():
    spec = unit(n0=gs.db_to_n0(5.0), c_sr=1.0)
    res = opt.cooperation_split_rates(spec, [0.5, 0.0, 1.0, 0.25], SMALL)
    vals = [res[s].rate for s in sorted(res)]
    assert all(b >= a for a, b in zip(vals, vals[1:]))


def test_parse_series():
    assert opt.parse_series("scheme2@c_sr=0.2;c_rs=1") == ("scheme2", {"c_sr": 0.2, "c_rs": 1.0})
    assert opt.parse_series("upper") == ("upper", {})
    for bad in ("scheme3", "scheme2@split=0.5", "r2ms", "scheme2@c_sr"):
        with pytest.raises(ValueError):
            opt.parse_series(bad)


def test_series_spec_splits_links():
    row = unit(c_sr=0.4, c_rs=0.6)
    assert opt.series_spec(row, "r2m") == row.replace(c_sr=1.0, c_rs=0.0)
    assert opt.series_spec(row, "r2s") == row.replace(c_sr=0.0, c_rs=1.0)
    s = opt.series_spec(row, "r2ms@split=0.25")
    assert (s.c_sr, s.c_rs) == pytest.approx((0.25, 0.75))
    assert opt.row_spec(unit(c_sr=1.0), "c_sum_split", 0.3).c_rs == pytest.approx(0.7)
    with pytest.raises(ValueError):
        opt.row_spec(unit(), "c_sum_split", 1.5)


def test_sweep_table_and_csv():
    tab = opt.sweep(unit(), "c_sr", [0.0, 0.5], ["scheme1", "scheme2", "nosi", "upper", "fullcoop"], SMALL)
    csv = tab.to_csv()
    lines = csv.split("\n")
    assert lines[0] == "x,scheme1,scheme2,nosi,upper,fullcoop"
    assert lines[-1] == "" and "\r" not in csv
    assert len(lines) == 4
    assert all(len(row.split(",")) == 6 for row in lines[1:3])
    s1, s2 = tab.column("scheme1"), tab.column("scheme2")
    assert all(b >= a - 1e-9 for a, b in zip(s1, s2))
    assert tab.column("fullcoop") == pytest.approx([HALF_LOG2_5] * 2)
    assert opt.fmt(1 / 3) == "0.333333"


def test_sweep_errors():
    with pytest.raises(ValueError):
        opt.sweep(unit(), "p", [1.0], ["scheme2"], SMALL)
    with pytest.raises(ValueError):
        opt.sweep(unit(), "c_sr", [1.0], ["scheme9"], SMALL)
    with pytest.raises(ValueError):
        opt.run_preset("fig9")


def test_sweep_gamma_and_split_groups():
    tab = opt.sweep(unit(c_sr=1.0), "gamma_db", [0.0, 10.0], ["r2m", "r2s", "r2ms@split=0.5", "upper"], SMALL)
    for row in tab.values:
        r2m, r2s, r2ms, ub = row
        assert r2s <= r2ms <= r2m <= ub + 1e-9


def test_preset_shapes():
    assert set(opt.PRESETS) == {"fig3", "fig4", "fig5", "fig6", "fig7"}
    assert opt.GAMMA_DB[0] == -5.0 and opt.GAMMA_DB[-1] == 30.0 and len(opt.GAMMA_DB) == 15
    template, vary, values, series = opt.PRESETS["fig3"]
    assert vary == "c_sr" and values[-1] == 1.6
