"""Fredholm and Browder theory for banded eventually-Toeplitz operators.

Classifies operators, builds completions ``C`` of upper-triangular operator
matrices ``[[A, C], [0, B]]`` with certificates, and scans the spectral set
left over by all completions.
"""

from .classify import OperatorClass, Tri, classify, membership
from .completion import (
    construct_browder_C,
    construct_invertible_C,
    corner_tests,
    exists_completion,
    left_decompose,
    operator_info,
    right_decompose,
    verify_certificate,
)
from .errors import (
    BrowderError,
    CircleZero,
    ClosedRangeUnknown,
    DimensionCheckFailed,
    DimensionMismatch,
    NotLeftSemiBrowder,
    NotRightSemiBrowder,
    PrecisionExhausted,
    PreconditionFailed,
    SpecParseError,
    ZeroSymbol,
)
from .expoly import ExpPolyVector
from .fredholm import ExtNat, FredholmData, asc_des, fredholm_data, kernel_data
from .gauss import Gauss
from .linalg import RationalMatrix
from .operator import (
    BetOperator,
    assemble_MC,
    bet_add,
    bet_adjoint,
    bet_compose,
    identity,
    load_operator,
    parse_operator,
    rank_one,
    toeplitz,
    translate,
)
from .spectra import classify_point, scan
from .symbol import LaurentSymbol, MatrixSymbol, circle_zero_test, det_symbol, multiply, winding_number

__version__ = "0.1.0"
