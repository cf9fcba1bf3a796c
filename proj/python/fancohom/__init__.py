"""Cohomology of rational fans with exact integer arithmetic."""

from fancohom._core import (
    ComplexError,
    Fan,
    FanError,
    IoError,
    betti,
    cohomology,
    euler,
    gamma,
    graph,
    hermite,
    hirzebruch,
    kernel,
    product,
    projective_space,
    rank,
    saturate,
    smith,
    verify,
)

__all__ = [
    "ComplexError",
    "Fan",
    "FanError",
    "IoError",
    "betti",
    "cohomology",
    "euler",
    "gamma",
    "graph",
    "hermite",
    "hirzebruch",
    "kernel",
    "product",
    "projective_space",
    "rank",
    "saturate",
    "smith",
    "verify",
]
