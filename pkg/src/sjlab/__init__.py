"""Exact computations in finite-dimensional Jordan superalgebras."""

from .algebra import GradedLinearMap, SuperAlgebra, check_super_jordan, multiply
from .catalog import build
from .derivations import (
    solve_der,
    solve_delta_der,
    solve_gder,
    solve_gder_eq5,
    solve_tder,
    standard_decompose_gder,
    standard_decompose_tder,
)
from .exact import GF, QQ, null_space
from .structure import center, centroid, middle_nucleus, peirce

__version__ = "0.1.0"
