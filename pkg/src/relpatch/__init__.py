"""Exact computations with relative root subschemes of split classical groups
and the constructive patching of cocycles over semi-local Dedekind bases."""

from .errors import AlgebraError, ParseError
from .groups import SL, GroupDescriptor, Sp
from .relroots import RelativeRootDatum, relative_projection
from .roots import build_root_system
from .subschemes import RelGroupContext, RelRootWord, borel_context, get_context

__all__ = [
    "AlgebraError",
    "GroupDescriptor",
    "ParseError",
    "RelGroupContext",
    "RelRootWord",
    "RelativeRootDatum",
    "SL",
    "Sp",
    "borel_context",
    "build_root_system",
    "get_context",
    "relative_projection",
]
