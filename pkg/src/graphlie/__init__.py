"""Restricted Lie algebras of graphs over fields of characteristic two."""

from graphlie.gf2k import GF, GF2, GF4, field_from_name

__version__ = "0.1.0"

__all__ = ["GF", "GF2", "GF4", "field_from_name", "__version__"]
