"""Depths of rank-one local systems on complements of plane curves.

The library computes the depth of torsion characters of finitely presented
groups by Fox calculus and through Alexander-invariant presentations, builds
groups of line arrangements and of Fermat-curve covers, and checks marked
orbifold pencils.
"""

from .arrangements import parse_line_file, presentation_from_lines, wiring_diagram
from .covers import FiniteAbelianQuotient, SchreierCover, fermat_group, load_ceva_group, tietze_simplify
from .dsl import DSLParseError, parse_group_dsl, render_group_dsl
from .engine import DepthReport, classify_coordinate, depth, torsion_scan
from .invariant import invariant_matrix, zariski_form
from .orbifold import C22, Orbicurve, independence_check, orbifold_depth, orbifold_group
from .words import Character, GroupHom, GroupPresentation, Word, abelianization, free_group

__version__ = "0.1.0"

__all__ = [
    "parse_line_file", "presentation_from_lines", "wiring_diagram",
    "FiniteAbelianQuotient", "SchreierCover", "fermat_group", "load_ceva_group", "tietze_simplify",
    "DSLParseError", "parse_group_dsl", "render_group_dsl",
    "DepthReport", "classify_coordinate", "depth", "torsion_scan",
    "invariant_matrix", "zariski_form",
    "C22", "Orbicurve", "independence_check", "orbifold_depth", "orbifold_group",
    "Character", "GroupHom", "GroupPresentation", "Word", "abelianization", "free_group",
]
