import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from relaycoop import gaussian as gs
from relaycoop.gaussian import GaussianChannelSpec, GaussianPolicy

C = lambda x: 0.5 * math.log2(1 + x)  # noqa: E731
HALF_LOG2_3 = 0.5 * math.log2(3)
HALF_LOG2_5 = 0.5 * math.log2(5)

power = st.floats(0.1, 4.0)
cap = st.floats(0.0, 2.0)
frac = st.floats(0.0, 1.0)


@st.composite
def specs(draw, n0_zero=False):
    return GaussianChannelSpec(draw(power), draw(power), draw(power), 0.0 if n0_zero else draw(power),
                               draw(cap), draw(cap))


@st.composite
def policies(draw, spec):
    return GaussianPolicy(draw(frac), draw(frac), draw(st.floats(0.0, 1.0)) * spec.p_s)


def unit(**kw):
    return GaussianChannelSpec(1.0, 1.0, 1.0, 0.0).replace(**kw)


def sigma_oracle(spec, alpha, beta, hi=1e6):
    """Smallest P_Q meeting the Wyner-Ziv constraint, by bisection on the raw MI terms."""
    g = spec.p + spec.p_r + 2 * math.sqrt(alpha * beta * spec.p * spec.p_r)
    base = spec.p_s + spec.n0
    support = min(spec.c_rs + C((1 - beta) * spec.p_r / base), C(g / base))

    def ok(pq):
        return support >= C((g + spec.n0) * spec.p_s / ((g + spec.p_s + spec.n0) * pq))

    lo = 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        lo, hi = (lo, mid) if ok(mid) else (mid, hi)
    return hi


def test_sigma_examples():
    assert gs.sigma_threshold(unit(), 0, 0) == pytest.approx(2 / 3, abs=1e-9)
    assert sigma_oracle(unit(), 0, 0) == pytest.approx(2 / 3, abs=1e-9)
    assert gs.sigma_threshold(unit(c_rs=50.0), 0, 0) == pytest.approx(1 / 3, abs=1e-9)
    assert sigma_oracle(unit(c_rs=50.0), 0, 0) == pytest.approx(1 / 3, abs=1e-9)
    assert gs.sigma_threshold(unit(p_s=0.0), 0, 0) == 0.0
    assert gs.sigma_threshold(unit(p_s=1e-9), 0.3, 0.2) < 1e-8
    assert gs.sigma_threshold(unit(p=0.0, p_r=0.0), 0, 1) == math.inf


@given(specs(), frac, frac)
def test_sigma_matches_bisection(spec, a, b):
    sig = gs.sigma_threshold(spec, a, b)
    if math.isinf(sig) or sig > 1e5:
        return
    assert sig == pytest.approx(sigma_oracle(spec, a, b), rel=1e-9, abs=1e-12)


@given(specs(), frac, frac)
def test_sigma_monotone(spec, a, b):
    crs = [gs.sigma_threshold(spec.replace(c_rs=c), a, b) for c in np.linspace(0, 3, 13)]
    assert all(y <= x * (1 + 1e-12) for x, y in zip(crs, crs[1:]))
    # beta enters the coherent power too; only the alpha = 0 slice is monotone
    betas = [gs.sigma_threshold(spec, 0.0, x) for x in np.linspace(0, 1, 11)]
    assert all(y >= x * (1 - 1e-12) for x, y in zip(betas, betas[1:]))


def test_policy_reparametrization():
    pol = GaussianPolicy.from_pq(0.2, 0.3, 2.0, 1.0)
    assert pol.d == pytest.approx(2 / 3)
    assert pol.p_q(1.0) == pytest.approx(2.0)
    assert GaussianPolicy.from_pq(0, 0, math.inf, 1.0).d == 1.0
    assert GaussianPolicy(0, 0, 1.0).p_q(1.0) == math.inf
    with pytest.raises(ValueError):
        GaussianPolicy(1.2, 0, 0)
    with pytest.raises(ValueError):
        GaussianChannelSpec(1, 1, 1, -1)
    with pytest.raises(ValueError):
        GaussianChannelSpec(1, math.inf, 1, 1)
    with pytest.raises(ValueError):
        gs.UpperBoundPolicy(1.5)


def test_scheme1_examples():
    spec = GaussianChannelSpec(1, 1, 1, 1)
    assert gs.scheme1_terms(spec, GaussianPolicy(1, 1, 1)).rate == pytest.approx(0.0, abs=1e-15)
    bd = gs.scheme1_terms(unit(c_sr=1.2), GaussianPolicy(1, 1, 1))
    assert bd.rate == pytest.approx(HALF_LOG2_5, abs=1e-6)
    spec = GaussianChannelSpec(2.0, 0.0, 1.5, 0.7)
    r1 = gs.scheme1_terms(spec, GaussianPolicy(0, 0.4, 1.5)).rate
    assert r1 == pytest.approx(C(2.0 / 2.2), abs=1e-12)
    assert gs.scheme2_terms(spec, GaussianPolicy(0, 0.4, 1.5)).rate == pytest.approx(r1, abs=1e-12)


def test_scheme1_infeasible_below_dmin():
    spec = unit()
    dm = gs.d_min(spec, 0, 0)
    assert dm == pytest.approx(0.4)  # sigma = 2/3 mapped through d
    assert gs.scheme1_terms(spec, GaussianPolicy(0, 0, dm)).feasible
    bd = gs.scheme1_terms(spec, GaussianPolicy(0, 0, 0.9 * dm))
    assert not bd.feasible and bd.rate is None
    assert gs.scheme1_terms(spec, GaussianPolicy(0, 0, 1.0)).feasible


def test_scheme2_examples():
    bd = gs.scheme2_terms(unit(c_sr=1.2), GaussianPolicy(1, 1, 1))
    np.testing.assert_allclose(bd.terms, (1.2, HALF_LOG2_5, 1.2), atol=1e-12)
    bd = gs.scheme2_terms(unit(), GaussianPolicy(0, 0, 0))
    assert bd.terms[0] == math.inf
    assert bd.terms[1] == pytest.approx(HALF_LOG2_3, abs=1e-12)
    assert bd.terms[2] == pytest.approx(HALF_LOG2_3, abs=1e-12)
    bd = gs.scheme2_terms(unit(), GaussianPolicy(0, 0, 1e-9))
    assert bd.terms[1] == pytest.approx(HALF_LOG2_3, abs=1e-6)
    assert gs.scheme2_terms(unit(n0=0.5), GaussianPolicy(0, 0, 0)).terms[1] == -math.inf


@given(specs(), st.data())
def test_scheme2_stable_form_matches_textbook(spec, data):
    a, b = data.draw(frac), data.draw(frac)
    d = data.draw(st.floats(0.01, 1.0)) * spec.p_s
    pq = d * spec.p_s / (spec.p_s - d) if d < spec.p_s else math.inf
    g = spec.p + spec.p_r + 2 * math.sqrt(a * b * spec.p * spec.p_r)
    t = (1 - a) * spec.p + (1 - b) * spec.p_r
    floor = spec.n0 + (spec.p_s if math.isinf(pq) else spec.p_s * pq / (spec.p_s + pq))
    cost = 0.0 if math.isinf(pq) else C(spec.p_s / pq)
    tail = spec.p_s + spec.n0
    bd = gs.scheme2_terms(spec, GaussianPolicy(a, b, d))
    assert bd.terms[1] == pytest.approx(0.5 * math.log2((g + tail) / floor) - cost, abs=1e-11)
    assert bd.terms[2] == pytest.approx(0.5 * math.log2((t + tail) / floor) - cost + spec.c_sr + spec.c_rs,
                                        abs=1e-11)


@given(specs(), st.data())
def test_scheme_terms_relations(spec, data):
    pol = data.draw(policies(spec))
    a, b = gs.scheme1_terms(spec, pol), gs.scheme2_terms(spec, pol)
    assert a.terms[0] == b.terms[0]
    if pol.d > 0:
        assert a.terms[1] == pytest.approx(b.terms[1], abs=1e-11)
        assert b.terms[2] >= a.terms[2] - 1e-11
    if a.feasible:
        assert b.rate >= a.rate - 1e-10


@given(specs(), frac)
def test_no_compression_is_no_si(spec, alpha):
    pol = GaussianPolicy(alpha, 1.0, spec.p_s)
    expect = min(gs.no_si_terms(spec, alpha))
    assert gs.scheme2_terms(spec, pol).rate == pytest.approx(expect, abs=1e-12)
    assert gs.scheme1_terms(spec, pol).rate == pytest.approx(expect, abs=1e-12)
    assert gs.scheme2_terms(spec, pol).terms[2] >= gs.scheme2_terms(spec, pol).terms[0] - 1e-12


@given(specs(), st.data())
def test_scheme2_below_upper_bound(spec, data):
    pol = data.draw(policies(spec))
    assert gs.scheme2_terms(spec, pol).rate <= gs.gaussian_upper_bound(spec) + 1e-9


@given(specs(n0_zero=True), st.data())
def test_scheme2_below_upper_bound_noiseless(spec, data):
    pol = data.draw(policies(spec))
    assert gs.scheme2_terms(spec, pol).rate <= gs.gaussian_upper_bound(spec) + 1e-9


def grid_max(fn, n=20001):
    return max(fn(t) for t in np.linspace(0, 1, n))


def test_no_si_examples():
    spec = GaussianChannelSpec(1, 1, 1, 1)
    val, alpha = gs.no_si_rate(spec, return_alpha=True)
    assert val == pytest.approx(HALF_LOG2_3 - 0.5, abs=1e-6)
    assert alpha == 0.0
    big = spec.replace(c_sr=10.0)
    assert gs.no_si_rate(big) == pytest.approx(C(4 / 2), abs=1e-12)
    assert gs.no_si_rate(spec.replace(p=0.0)) == 0.0
    assert gs.no_si_rate(spec.replace(c_rs=5.0)) == gs.no_si_rate(spec)


@given(specs())
def test_no_si_matches_grid(spec):
    oracle = grid_max(lambda a: min(gs.no_si_terms(spec, a)))
    val = gs.no_si_rate(spec)
    assert val >= oracle - 1e-12
    assert val <= oracle + 1e-3


def test_upper_bound_examples():
    assert gs.gaussian_upper_bound(unit()) == pytest.approx(HALF_LOG2_5, abs=1e-6)
    val, rho = gs.gaussian_upper_bound(GaussianChannelSpec(1, 1, 1, 1), return_rho=True)
    assert val == pytest.approx(0.5, abs=1e-9) and rho == 0.0
    spec = GaussianChannelSpec(0.0, 2.0, 1.0, 0.5, c_sr=0.3)
    assert gs.gaussian_upper_bound(spec) == pytest.approx(min(C(2 / 1.5), 0.3), abs=1e-12)


@given(specs())
def test_upper_bound_matches_grid(spec):
    oracle = grid_max(lambda r: min(gs.upper_bound_terms(spec, r)))
    val = gs.gaussian_upper_bound(spec)
    assert oracle - 1e-12 <= val <= oracle + 1e-3


def test_closed_form_capacities():
    assert gs.no_coop_capacity(unit()) == pytest.approx(HALF_LOG2_3, abs=1e-9)
    assert gs.no_coop_capacity(unit(p=0.0, p_r=0.0)) == 0.0
    assert gs.no_coop_capacity(unit(p=3.0, p_r=0.0)) == pytest.approx(1.0, abs=1e-15)
    assert gs.full_coop_capacity(unit()) == pytest.approx(HALF_LOG2_5, abs=1e-9)
    assert gs.full_coop_capacity(unit(p_r=0.0)) == pytest.approx(C(1.0))
    assert gs.full_coop_capacity(unit(p=0.0, p_r=2.0)) == pytest.approx(C(2.0))
    with pytest.raises(ValueError):
        gs.no_coop_capacity(unit(n0=0.1))
    with pytest.raises(ValueError):
        gs.no_coop_capacity(unit(c_sr=0.1))
    with pytest.raises(ValueError):
        gs.full_coop_capacity(unit(p_s=0.0))


@given(power, power, power)
def test_rate_split_identity(p, p_r, p_s):
    # relay rate at full power plus the source rate treating it as noise
    assert C(p_r / p_s) + C(p / (p_r + p_s)) == pytest.approx(C((p + p_r) / p_s), abs=1e-12)


def test_db_conversion():
    assert gs.db_to_n0(0) == 1.0
    assert gs.db_to_n0(10) == pytest.approx(0.1)
    assert gs.db_to_n0(-5) == pytest.approx(10 ** 0.5)
