"""Exact similarity solution of a two-phase Stefan problem with a mushy zone."""

from mushy_stefan.errors import (
    BracketError,
    ConvergenceError,
    DomainError,
    MushyStefanError,
    NoRoot,
    NoSolution,
    RangeError,
    StencilCrossesFront,
    ThresholdBypassed,
)
from mushy_stefan.model import ConvectiveBC, DirichletBC, MaterialParams, validate
from mushy_stefan.numerics import BACKEND, RootConfig
from mushy_stefan.solver import SimilaritySolution, solve_convective, solve_dirichlet
from mushy_stefan.transcendental import ThresholdReport, compute_threshold

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BracketError",
    "ConvectiveBC",
    "ConvergenceError",
    "DirichletBC",
    "DomainError",
    "MaterialParams",
    "MushyStefanError",
    "NoRoot",
    "NoSolution",
    "RangeError",
    "RootConfig",
    "SimilaritySolution",
    "StencilCrossesFront",
    "ThresholdBypassed",
    "ThresholdReport",
    "compute_threshold",
    "solve_convective",
    "solve_dirichlet",
    "validate",
]
