"""Exact computer algebra for finite-dimensional Hom-(quasi-)bialgebras."""

from __future__ import annotations

from .scalar import Scalar, ScalarContext, format_scalar, parse_scalar
from .tensor import ComulMap, LinMap, MulMap, Space, TensorElement, perm_legs
from .structures import (
    AxiomEntry,
    AxiomReport,
    HomAlgebra,
    HomBialgebra,
    HomCoalgebra,
    HQBialgebra,
    QTHQBialgebra,
)
from .checks import check_hq, check_morphism, check_qt, check_qthq, check_structure, search_morphisms
from .quantum import FiniteGroup, build_dw_double, cyclic_group, z3_cocycle

__all__ = [
    "Scalar", "ScalarContext", "format_scalar", "parse_scalar",
    "ComulMap", "LinMap", "MulMap", "Space", "TensorElement", "perm_legs",
    "AxiomEntry", "AxiomReport", "HomAlgebra", "HomBialgebra", "HomCoalgebra", "HQBialgebra", "QTHQBialgebra",
    "check_hq", "check_morphism", "check_qt", "check_qthq", "check_structure", "search_morphisms",
    "FiniteGroup", "build_dw_double", "cyclic_group", "z3_cocycle",
]

__version__ = "0.1.0"
