"""Finite Dehn surgery classification for (-2, p, q) pretzel knots."""

from .slopes import BoundarySlopeTable, KnotSpec, MERIDIAN, Slope, boundary_slopes, distance

__version__ = "0.1.0"

__all__ = ["BoundarySlopeTable", "KnotSpec", "MERIDIAN", "Slope", "boundary_slopes", "distance"]
