import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from relaycoop.info import (BernoulliParam, JointPmf, bernoulli_convolve, binary_entropy, entropy,
                            gauss_c, mutual_information)

probs = st.floats(0.0, 1.0, allow_nan=False)


def hb_mp(p):
    """Binary entropy at 50 digits, straight from the definition."""
    mpmath.mp.dps = 50
    p = mpmath.mpf(p)
    return float(-p * mpmath.log(p, 2) - (1 - p) * mpmath.log(1 - p, 2))


def random_joint(seed, dims=(2, 3, 2), labels=("A", "B", "C")):
    r = np.random.default_rng(seed)
    t = r.random(dims) ** 3  # skewed, with near-zero cells
    return JointPmf(labels, t / t.sum())


def test_binary_entropy_values():
    assert binary_entropy(0.5) == 1.0
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert abs(binary_entropy(0.1) - 0.46900) < 1e-5
    assert binary_entropy(0.1) == pytest.approx(hb_mp(0.1), abs=1e-14)


@given(st.floats(1e-9, 1 - 1e-9))
def test_binary_entropy_matches_high_precision(p):
    assert binary_entropy(p) == pytest.approx(hb_mp(p), abs=1e-12)


@pytest.mark.parametrize("bad", [-0.01, 1.01, math.nan])
def test_binary_entropy_domain(bad):
    with pytest.raises(ValueError):
        binary_entropy(bad)


def test_bernoulli_param():
    assert BernoulliParam(0.3).p == 0.3
    with pytest.raises(ValueError):
        BernoulliParam(1.5)


def test_convolve_values():
    assert bernoulli_convolve(0.3, 0.0) == 0.3
    assert bernoulli_convolve(0.3, 0.5) == 0.5
    assert bernoulli_convolve(0.15, 0.15) == pytest.approx(0.255, abs=1e-15)
    with pytest.raises(ValueError):
        bernoulli_convolve(0.2, 1.2)


@given(probs, probs, probs)
def test_convolve_commutative_associative(a, b, c):
    assert abs(bernoulli_convolve(a, b) - bernoulli_convolve(b, a)) <= 1e-15
    lhs = bernoulli_convolve(bernoulli_convolve(a, b), c)
    rhs = bernoulli_convolve(a, bernoulli_convolve(b, c))
    assert abs(lhs - rhs) <= 1e-15


def test_mi_examples():
    indep = JointPmf(("A", "B"), np.outer([0.3, 0.7], [0.2, 0.5, 0.3]))
    assert mutual_information(indep, "A", "B") == pytest.approx(0.0, abs=1e-15)
    ident = JointPmf(("A", "B"), np.eye(2) / 2)
    assert mutual_information(ident, "A", "B") == pytest.approx(1.0, abs=1e-15)
    e = 0.1
    bsc = JointPmf(("A", "B"), 0.5 * np.array([[1 - e, e], [e, 1 - e]]))
    # direct entropy difference H(B) - H(B|A)
    direct = 1.0 - (-(1 - e) * math.log2(1 - e) - e * math.log2(e))
    assert mutual_information(bsc, ["A"], ["B"]) == pytest.approx(direct, abs=1e-14)
    assert abs(mutual_information(bsc, "A", "B") - 0.53100) < 1e-5


def test_mi_errors():
    j = random_joint(0)
    with pytest.raises(ValueError):
        mutual_information(j, ["A"], ["A", "B"])
    with pytest.raises(KeyError):
        mutual_information(j, ["A"], ["Z"])
    with pytest.raises(ValueError):
        mutual_information(j, [], ["B"])


def test_joint_validation():
    with pytest.raises(ValueError):
        JointPmf(("A", "A"), np.full((2, 2), 0.25))
    with pytest.raises(ValueError):
        JointPmf(("A",), np.array([0.5, 0.6]))
    with pytest.raises(ValueError):
        JointPmf(("A",), np.array([1.5, -0.5]))
    with pytest.raises(ValueError):
        JointPmf(("A", "B"), np.array([0.5, 0.5]))
    j = random_joint(1)
    assert j.dims == (2, 3, 2)
    with pytest.raises(ValueError):
        j.probs[0, 0, 0] = 1.0


def test_marginal_keeps_requested_order():
    j = random_joint(2)
    m = j.marginal(["C", "A"])
    assert m.shape == (2, 2)
    np.testing.assert_allclose(m, j.probs.sum(axis=1).T)


def test_entropy_ignores_tiny_cells():
    assert entropy([1.0, 1e-17]) == 0.0


@given(st.integers(0, 10_000))
def test_mi_symmetry_and_chain_rule(seed):
    j = random_joint(seed, (2, 3, 2, 2), ("A", "B", "C", "Y"))
    assert abs(mutual_information(j, "A", "Y", "C") - mutual_information(j, "Y", "A", "C")) <= 1e-12
    lhs = mutual_information(j, ["A", "B"], ["Y"])
    rhs = mutual_information(j, ["A"], ["Y"]) + mutual_information(j, ["B"], ["Y"], ["A"])
    assert abs(lhs - rhs) <= 1e-10


@given(st.integers(0, 10_000))
def test_data_processing(seed):
    r = np.random.default_rng(seed)
    pa = r.dirichlet(np.ones(3))
    pb_a = r.dirichlet(np.ones(4), size=3)
    pc_b = r.dirichlet(np.ones(2), size=4)
    j = JointPmf(("A", "B", "C"), np.einsum("a,ab,bc->abc", pa, pb_a, pc_b))
    assert mutual_information(j, "A", "C") <= mutual_information(j, "A", "B") + 1e-12
    assert mutual_information(j, "A", "C", "B") == pytest.approx(0.0, abs=1e-12)


def test_gauss_c():
    assert gauss_c(0) == 0.0
    assert gauss_c(1) == 0.5
    assert abs(gauss_c(4) - 0.5 * math.log2(5)) < 1e-15
    assert abs(gauss_c(4) - 1.16096) < 1e-5
    assert gauss_c(math.inf) == math.inf
    with pytest.raises(ValueError):
        gauss_c(-1e-9)
