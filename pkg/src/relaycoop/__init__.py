"""Achievable rates for a state-dependent relay channel with conferencing links.

Information measures, discrete and Gaussian rate expressions, deterministic
max-min optimization, LP cross-checks of the rate polytopes and a feedback
refinement simulator.
"""

from .dm import DmChannelSpec, RateBreakdown, Scheme1DmPolicy, Scheme2DmPolicy
from .gaussian import GaussianChannelSpec, GaussianPolicy
from .info import JointPmf, binary_entropy, mutual_information
from .optimize import GridConfig, OptResult, optimize_scheme, sweep

__all__ = [
    "DmChannelSpec", "RateBreakdown", "Scheme1DmPolicy", "Scheme2DmPolicy",
    "GaussianChannelSpec", "GaussianPolicy", "JointPmf", "binary_entropy",
    "mutual_information", "GridConfig", "OptResult", "optimize_scheme", "sweep",
]
