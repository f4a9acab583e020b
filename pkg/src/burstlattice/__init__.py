"""Perfect lattice codes for a single burst of limited-magnitude errors.

Error balls, finite Abelian groups and fields, explicit splitting
constructions, a syndrome codec and an exhaustive splitting search.
"""
from .codec import LatticeCode, code_from_splitting, decode, encode, inject_burst, is_codeword
from .constructions import (construct_cyclic_2_10, construct_noncyclic_2_10, construct_ralpha,
                            construct_salpha, check_condition, find_primitive)
from .errorball import BallSpec, ball_size, contains, e_param, enumerate_ball
from .errors import (BurstLatticeError, InternalError, ParameterError, ParseError, PreconditionError,
                     ResourceError, UnsupportedParameterError)
from .gf import FieldCtx, dlog, field_new, field_of_order, is_primitive, is_qr
from .groups import (AbelianGroup, SplittingSequence, cyclic, direct_sum, enumerate_abelian_groups,
                     field_additive, is_perfect_splitting, is_splitting, parse_group)
from .search import SearchOptions, SearchReport, prove_nonexistence, search_splitting

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup", "BallSpec", "BurstLatticeError", "FieldCtx", "InternalError", "LatticeCode",
    "ParameterError", "ParseError", "PreconditionError", "ResourceError", "SearchOptions", "SearchReport",
    "SplittingSequence", "UnsupportedParameterError", "ball_size", "check_condition", "code_from_splitting",
    "construct_cyclic_2_10", "construct_noncyclic_2_10", "construct_ralpha", "construct_salpha", "contains",
    "cyclic", "decode", "direct_sum", "dlog", "e_param", "encode", "enumerate_abelian_groups",
    "enumerate_ball", "field_additive", "field_new", "field_of_order", "find_primitive", "inject_burst",
    "is_codeword", "is_perfect_splitting", "is_primitive", "is_qr", "is_splitting", "parse_group",
    "prove_nonexistence", "search_splitting",
]
