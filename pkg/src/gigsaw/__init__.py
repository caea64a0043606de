"""Exact toric computations for G-Hilb of abelian subgroups of SL(3).

Triangulation by a cone walk over G-graphs, Reid's recipe, total G-igsaw
pieces by unlocking, and the walls of the chamber defining G-Hilb.
"""

from .chamber import WallReport, chamber
from .groups import Group, GroupSpecError, cyclic, parse_group_spec
from .recipe import Recipe, reids_recipe
from .triangulation import Triangulation, triangulate
from .unlocking import GigsawPiece, Unlocker, unlock

__all__ = [
    "GigsawPiece",
    "Group",
    "GroupSpecError",
    "Recipe",
    "Triangulation",
    "Unlocker",
    "WallReport",
    "chamber",
    "cyclic",
    "parse_group_spec",
    "reids_recipe",
    "triangulate",
    "unlock",
]
