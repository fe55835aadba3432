"""Small named examples used by tests, scripts and the shipped documents."""
from __future__ import annotations

from fractions import Fraction

from .geometry import GroupSpec, Isometry
from .lattice import Lattice
from .instances import PointSet, LabeledPatch, Patch, box_tile, Tile
from .shapes import Polygon


def group(d: int, name: str = "translations") -> GroupSpec:
    return {"translations": GroupSpec.translations, "inversion": GroupSpec.inversion,
            "hyperoctahedral": GroupSpec.hyperoctahedral}[name](d)


def lattice_points(d: int, name: str = "translations") -> PointSet:
    """Z^d."""
    return PointSet.lattice_points(group(d, name))


def fifth_shifted(name: str = "translations") -> PointSet:
    """D = {±1/5 + n : n in Z}."""
    return PointSet.periodic(group(1, name), [(1,)], [(Fraction(1, 5),), (Fraction(-1, 5),)])


def checkerboard(d: int, name: str = "translations") -> LabeledPatch:
    """Unit cells labelled B / W by the parity of the coordinate sum."""
    g = group(d, name)
    if d == 1:
        tiles = [box_tile((0,), (1,), label="B"), box_tile((1,), (2,), label="W")]
        L = Lattice(((2,),))
    else:
        tiles = [box_tile((0, 0), (1, 1), label="B"), box_tile((1, 0), (2, 1), label="W")]
        L = Lattice(((1, 1), (1, -1)))
    return LabeledPatch(g, tiles, L).normalized()


def two_letter(name: str = "inversion") -> LabeledPatch:
    """...A B A B... with |A| = 1, |B| = 2, period 3."""
    g = group(1, name)
    tiles = [Tile(Polygon.interval(0, 1), (), "A"), Tile(Polygon.interval(1, 3), (), "B")]
    return LabeledPatch(g, tiles, Lattice(((3,),))).normalized()


def two_letter_centroids(name: str = "inversion") -> PointSet:
    return PointSet.periodic(group(1, name), [(3,)], [(Fraction(1, 2),), (Fraction(2),)])


def unit_square_tiling(d: int = 2) -> Patch:
    g = group(d)
    return Patch(g, [box_tile((0,) * d, (1,) * d)], Lattice.standard(d))


def random_periodic_delone(rng, d: int, max_motif: int = 6, den: int = 8) -> PointSet:
    """Z^d-periodic point set with 1..max_motif motif points on a 1/den grid."""
    k = rng.randint(1, max_motif)
    pts = set()
    while len(pts) < k:
        pts.add(tuple(Fraction(rng.randrange(den), den) for _ in range(d)))
    return PointSet.periodic(group(d), [tuple(1 if i == j else 0 for j in range(d)) for i in range(d)], sorted(pts))
