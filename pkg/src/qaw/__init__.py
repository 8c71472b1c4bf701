"""Finite-dimensional quotients of path algebras: rewriting, structure and periodicity checks."""

from .algebra import FDAlgebra, build, cartan, socle, symmetrizing_form
from .coefficients import QQ, Field, field_make
from .dsl import dump, dumps, load, loads
from .families import FamilyParams, almost_spherical, from_params, hsa, spherical, substitute, wsa
from .groebner import Presentation, complete, dimension_matrix, minimal_relations, normal_form, quotient_basis
from .oracle import path_space_dimensions
from .paths import PathElement, parse_element
from .quiver import Quiver, TriangulationQuiver
from .resolve import RightModule, isomorphic, period, projective, projective_cover, simple, syzygy

__all__ = [
    "QQ", "Field", "field_make",
    "Quiver", "TriangulationQuiver",
    "PathElement", "parse_element",
    "Presentation", "complete", "normal_form", "quotient_basis", "dimension_matrix", "minimal_relations",
    "path_space_dimensions",
    "FDAlgebra", "build", "cartan", "socle", "symmetrizing_form",
    "RightModule", "simple", "projective", "projective_cover", "syzygy", "isomorphic", "period",
    "FamilyParams", "spherical", "almost_spherical", "hsa", "wsa", "substitute", "from_params",
    "load", "loads", "dump", "dumps",
]
