"""Explicit norm-one elements of universal rings over finite groups."""

from .groups import build_group, parse_spec
from .formula import Formula

__version__ = "0.1.0"
__all__ = ["build_group", "parse_spec", "Formula", "__version__"]
