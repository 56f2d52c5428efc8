"""Exact zeta tables and blow-Nash classification for Nash germ normal forms."""

from __future__ import annotations

from .engine import EngineOutcome, beta_of, build_system, decompose
from .germs import (
    Cell,
    CrossCheckError,
    GermSpec,
    ZetaTable,
    analytic_equiv,
    canonicalize,
    corank_index,
    germ_poly,
    zeta_table,
)
from .quadric import beta_Y, beta_Y_compl, beta_Y_fiber, beta_Y_star
from .upoly import UPoly, geom_sum, u_pow

__all__ = [
    "Cell",
    "CrossCheckError",
    "EngineOutcome",
    "GermSpec",
    "UPoly",
    "ZetaTable",
    "analytic_equiv",
    "beta_Y",
    "beta_Y_compl",
    "beta_Y_fiber",
    "beta_Y_star",
    "beta_of",
    "build_system",
    "canonicalize",
    "corank_index",
    "decompose",
    "geom_sum",
    "germ_poly",
    "u_pow",
    "zeta_table",
]

__version__ = "0.1.0"
