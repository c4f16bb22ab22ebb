"""Decide well-formedness of linear quantum cellular automata."""

from .core import (
    Alphabet,
    Configuration,
    Interval,
    LocalSuperposition,
    Lqca,
    Neighborhood,
    NormalizedLqca,
    ext,
    idom,
    inner_product,
    neighborhood_word,
    squared_norm,
)
from .decider import (
    Verdict,
    check_orthogonality,
    check_trivial,
    check_unit_norms,
    decide,
    normalize,
    simplify,
    trivial_inverse,
)
from .errors import ConsistencyError, ContractError, DimensionError, LqcaError, ParseError, ResourceError
from .exact import ExactComplex, ScaledComplex
from .io import parse_config, parse_lqca, parse_plqca, render_config, render_lqca

__version__ = "0.1.0"

__all__ = [
    "Alphabet", "Configuration", "Interval", "LocalSuperposition", "Lqca", "Neighborhood",
    "NormalizedLqca", "ext", "idom", "inner_product", "neighborhood_word", "squared_norm",
    "Verdict", "check_orthogonality", "check_trivial", "check_unit_norms", "decide",
    "normalize", "simplify", "trivial_inverse",
    "ConsistencyError", "ContractError", "DimensionError", "LqcaError", "ParseError", "ResourceError",
    "ExactComplex", "ScaledComplex",
    "parse_config", "parse_lqca", "parse_plqca", "render_config", "render_lqca",
]
