"""Extended 1-perfect bitrades in Hamming graphs H(n, q)."""

from .checkers import Status, Verdict, check, check_all
from .codes import GF, extended_perfect_code, hamming_code, shifted_bitrade
from .hamming import ParameterError, Params, SignedPair, project_pair
from .search import SearchConfig, backtrack_search, brute_force_enumerate, feasible_params

__all__ = [
    "Status",
    "Verdict",
    "check",
    "check_all",
    "GF",
    "extended_perfect_code",
    "hamming_code",
    "shifted_bitrade",
    "ParameterError",
    "Params",
    "SignedPair",
    "project_pair",
    "SearchConfig",
    "backtrack_search",
    "brute_force_enumerate",
    "feasible_params",
]
