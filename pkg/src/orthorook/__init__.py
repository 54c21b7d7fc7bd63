"""Orthogonal rook placements, battleship polarizations and coadjoint orbits
of the unipotent radical in types B and D, with exact character checks."""

from __future__ import annotations

from .placement import (
    BattleshipDiagram,
    Mark,
    RookPlacement,
    battleship,
    dim_via_diagram,
    dim_via_weyl,
    enumerate_placements,
    placement_from_tokens,
    polarization_roots,
    render_diagram,
    validate_placement,
)
from .roots import Family, Root, RootSystem, build_root_system, parse_root, parse_roots
from .weyl import SignedPermutation, involution_stats

__version__ = "0.1.0"

__all__ = [
    "BattleshipDiagram",
    "Family",
    "Mark",
    "Root",
    "RookPlacement",
    "RootSystem",
    "SignedPermutation",
    "battleship",
    "build_root_system",
    "dim_via_diagram",
    "dim_via_weyl",
    "enumerate_placements",
    "involution_stats",
    "parse_root",
    "parse_roots",
    "placement_from_tokens",
    "polarization_roots",
    "render_diagram",
    "validate_placement",
]
