"""Exact abstract pattern spaces over R^d (d = 1, 2) and over Euclidean groups."""
from .exact import frac, Surd
from .geometry import (Isometry, GroupSpec, Ball, GammaBall, Window, ALL, EMPTY,
                       gamma_metric_sq, isometry_algebra)
from .lattice import Lattice
from .shapes import Polygon, Disk
from .core import (AbstractPattern, Verdict, PASS, FAIL, UNDECIDED, PatternError,
                   NotPairwiseCompatible, NotLocallyFinite, UnboundedRequest, KindMismatch,
                   Undecided, GroupError, cut, act, is_leq, are_compatible, supremum, zero_of,
                   support, bounded_component_radius)
from .instances import *  # noqa: F401,F403

__version__ = "0.1.0"
