"""Discrete and continuous double bubbles for the l1 (taxicab) perimeter."""
from __future__ import annotations

from .closed_forms import emin, f, planar_energy, planar_minimizer, theorem_minimizer
from .geometry import Configuration, GridSet, double_bubble_energy
from .gridio import read_grid, write_grid
from .slicing import best_direction, lower_bound, slicing_lemma_check

__version__ = "0.1.0"

__all__ = [
    "Configuration",
    "GridSet",
    "best_direction",
    "double_bubble_energy",
    "emin",
    "f",
    "lower_bound",
    "planar_energy",
    "planar_minimizer",
    "read_grid",
    "slicing_lemma_check",
    "theorem_minimizer",
    "write_grid",
]
