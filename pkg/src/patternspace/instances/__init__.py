from .base import ElementPattern
from .points import PointSet
from .tiles import Tile, Patch, LabeledPatch, box_tile, sqcap
from .maps import (MapPattern, DensityMeasure, MapValue, Representation, Atom, Piece,
                   TENT, EXP, KRONECKER, CONST, tent, exp_bump, indicator, kronecker,
                   eval_map, map_pattern)
from .measures import DiracComb, dirac_comb, density_measure
from .plans import Plan
from .misc import Product, PeriodicFamily, ContinuumFamily, materialize_window, validate

__all__ = [
    "ElementPattern", "PointSet", "Tile", "Patch", "LabeledPatch", "box_tile", "sqcap",
    "MapPattern", "DensityMeasure", "MapValue", "Representation", "Atom", "Piece",
    "TENT", "EXP", "KRONECKER", "CONST", "tent", "exp_bump", "indicator", "kronecker",
    "eval_map", "map_pattern", "DiracComb", "dirac_comb", "density_measure", "Plan",
    "Product", "PeriodicFamily", "ContinuumFamily", "materialize_window", "validate",
]
