"""Discrete information measures over dense joint PMFs, in bits."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

# p*log(p) terms with p below this are treated as exact zeros
ZERO_PROB = 1e-15
MAX_TABLE_SIZE = 10**6


def _check_prob(p: float, name: str = "p") -> float:
    p = float(p)
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"{name} must lie in [0, 1], got {p}")
    return p


@dataclass(frozen=True)
class BernoulliParam:
    p: float

    def __post_init__(self):
        _check_prob(self.p)


@dataclass(frozen=True, eq=False)
class JointPmf:
    """A joint distribution stored as a dense table, one axis per named variable."""

    axis_labels: tuple[str, ...]
    probs: np.ndarray

    def __post_init__(self):
        labels = tuple(self.axis_labels)
        probs = np.asarray(self.probs, dtype=float)
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate axis labels in {labels}")
        if probs.ndim != len(labels):
            raise ValueError(f"{len(labels)} labels for a {probs.ndim}-d table")
        if probs.size > MAX_TABLE_SIZE:
            raise ValueError(f"table of size {probs.size} exceeds {MAX_TABLE_SIZE}")
        if np.any(probs < 0):
            raise ValueError("negative probability")
        if abs(probs.sum() - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {probs.sum()!r}, not 1")
        probs = probs.copy()
        probs.setflags(write=False)
        object.__setattr__(self, "axis_labels", labels)
        object.__setattr__(self, "probs", probs)

    @property
    def dims(self) -> tuple[int, ...]:
        return self.probs.shape

    def axes(self, labels: Iterable[str]) -> tuple[int, ...]:
        out = []
        for lab in labels:
            if lab not in self.axis_labels:
                raise KeyError(f"unknown variable {lab!r}; have {self.axis_labels}")
            out.append(self.axis_labels.index(lab))
        return tuple(out)

    def marginal(self, labels: Sequence[str]) -> np.ndarray:
        """Marginal table over `labels`, axes in the order given."""
        keep = self.axes(labels)
        drop = tuple(i for i in range(self.probs.ndim) if i not in keep)
        m = self.probs.sum(axis=drop)
        # after summation the kept axes appear in ascending original order
        order = sorted(keep)
        return np.transpose(m, [order.index(k) for k in keep])

    def entropy(self, labels: Iterable[str]) -> float:
        labels = list(labels)
        if not labels:
            return 0.0
        return entropy(self.marginal(labels))


def entropy(probs) -> float:
    """Shannon entropy in bits of a table of probabilities."""
    p = np.asarray(probs, dtype=float).ravel()
    p = p[p > ZERO_PROB]
    return float(-np.sum(p * np.log2(p)))


def binary_entropy(p: float) -> float:
    p = _check_prob(p)
    return entropy([p, 1.0 - p])


def bernoulli_convolve(p1: float, p2: float) -> float:
    """Parameter of the XOR of independent Bernoulli(p1) and Bernoulli(p2)."""
    p1 = _check_prob(p1, "p1")
    p2 = _check_prob(p2, "p2")
    return p1 * (1.0 - p2) + p2 * (1.0 - p1)


def mutual_information(joint: JointPmf, group_a, group_b, group_c=()) -> float:
    """I(A;B|C) in bits, by marginalization of the joint table.

    Each group is an iterable of axis labels; `group_c` may be empty.
    """
    a, b, c = (tuple(g) if not isinstance(g, str) else (g,) for g in (group_a, group_b, group_c))
    if not a or not b:
        raise ValueError("group_a and group_b must be non-empty")
    seen: set[str] = set()
    for g in (a, b, c):
        if seen & set(g):
            raise ValueError(f"overlapping groups {a}, {b}, {c}")
        seen |= set(g)
    joint.axes(seen)
    val = (joint.entropy(a + c) + joint.entropy(b + c)
           - joint.entropy(a + b + c) - joint.entropy(c))
    return max(val, 0.0)


def gauss_c(x: float) -> float:
    """C(x) = 1/2 log2(1 + x); C(inf) = inf."""
    x = float(x)
    if math.isnan(x) or x < 0:
        raise ValueError(f"SNR must be non-negative, got {x}")
    if math.isinf(x):
        return math.inf
    return 0.5 * math.log2(1.0 + x)
