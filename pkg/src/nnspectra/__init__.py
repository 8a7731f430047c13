"""Exact parameters of nonnegative matrices and their Kronecker asymptotics."""

from .asymptotic import AsymptoticSandwich, asymptotic_report
from .congruence import CongruenceWitness, MonomialTransform, is_congruent, is_equivalent
from .cover import (CoverSolution, Rectangle, enumerate_maximal_rectangles, fractional_cover,
                    fstar_estimate, tfold_cover)
from .errors import (BudgetExceeded, DomainError, InfeasibleLP, MatrixParseError,
                     NNSpectraError, PreconditionError, UnboundedLP, WitnessError)
from .laws import spectral_point_check, strassen_axiom_check
from .linalg import RankResult, rank
from .lp import LPResult, solve_lp_exact
from .matching import MatchingResult, is_induced_matching, subrank, subrank_bruteforce
from .matrix import (NonnegativeMatrix, SupportPattern, direct_sum, format_matrix, kron_power,
                     kronecker, parse_matrix, strip_zero_lines, support)
from .nnrank import NnrankBounds, nnrank_block_decompose, nnrank_bounds
from .triangular import TriangularCertificate, triangular_certificate
from .witnesses import RestrictionWitness, compose_witness_product, compose_witness_sum

__version__ = "0.1.0"

__all__ = [
    "AsymptoticSandwich", "asymptotic_report",
    "CongruenceWitness", "MonomialTransform", "is_congruent", "is_equivalent",
    "CoverSolution", "Rectangle", "enumerate_maximal_rectangles", "fractional_cover",
    "fstar_estimate", "tfold_cover",
    "BudgetExceeded", "DomainError", "InfeasibleLP", "MatrixParseError", "NNSpectraError",
    "PreconditionError", "UnboundedLP", "WitnessError",
    "spectral_point_check", "strassen_axiom_check",
    "RankResult", "rank",
    "LPResult", "solve_lp_exact",
    "MatchingResult", "is_induced_matching", "subrank", "subrank_bruteforce",
    "NonnegativeMatrix", "SupportPattern", "direct_sum", "format_matrix", "kron_power",
    "kronecker", "parse_matrix", "strip_zero_lines", "support",
    "NnrankBounds", "nnrank_block_decompose", "nnrank_bounds",
    "TriangularCertificate", "triangular_certificate",
    "RestrictionWitness", "compose_witness_product", "compose_witness_sum",
]
