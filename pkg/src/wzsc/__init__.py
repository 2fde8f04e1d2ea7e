"""Exact WZ-pair construction and supercongruence verification."""

from .exact import INF, NotPadicInteger, PadicResidue, Rational, padic_val, residue_mod
from .padic import a0, gamma_p, gk_extract
from .parse import NonLinearIndex, ParseError, parse_term
from .poly import Poly, RationalFunction, split_linear_factors
from .summation import DifferenceOperator, OrderExceeded, creative_telescoping, gosper
from .term import POLE, HyperTerm, LinearIndex
from .wzengine import WZPair, build_pair, build_q, certify_pair, degree_collapse, is_wz_device, phi

__version__ = "0.1.0"
