"""Regenerate the example documents in data/ (deterministic)."""
import copy
import json
import os
import sys
from fractions import Fraction

from patternspace import catalog as cat
from patternspace.instances import PointSet, MapPattern, Piece, tent, dirac_comb, Representation
from patternspace.io import encode, encode_obj
from patternspace.decompose import components_and_plan, plan_mld_witness
from patternspace.voronoi import punctured_voronoi_tiling, voronoi_mld_witness, vertex_augmented
from patternspace.peq import bump_companion
from patternspace.derivability import derive_rule, MLDWitness
from patternspace.lattice import Lattice

OUT = sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..", "data")


def put(name, obj, **meta):
    with open(os.path.join(OUT, name), "w", encoding="utf-8") as fh:
        fh.write(encode(obj, meta or None))


def main():
    os.makedirs(OUT, exist_ok=True)
    z, zsq = cat.lattice_points(1), cat.lattice_points(2)
    put("z.json", z, description="the integers")
    put("zsq.json", zsq, description="the square lattice")
    put("zsq_inversion.json", cat.lattice_points(2, "inversion"), description="square lattice, group R^2 x {±I}")
    put("fifth_shift.json", cat.fifth_shifted(), description="{±1/5 + n}")
    put("checkerboard_1d.json", cat.checkerboard(1))
    put("checkerboard_2d.json", cat.checkerboard(2))
    put("checkerboard_2d_inversion.json", cat.checkerboard(2, "inversion"))
    put("two_letter.json", cat.two_letter(), description="A (length 1) B (length 2), period 3")
    put("two_letter_centroids.json", cat.two_letter_centroids())
    put("unit_squares.json", cat.unit_square_tiling())

    put("zsq_voronoi.json", punctured_voronoi_tiling(zsq))
    put("zsq_voronoi_witness.json", voronoi_mld_witness(zsq))
    mu, wit = dirac_comb(zsq)
    put("zsq_dirac.json", mu)
    put("zsq_dirac_witness.json", wit)
    put("zsq_dirac_forward_rule.json", wit.forward)
    f, wit = bump_companion(z)
    put("z_bump.json", f, description="tent atoms of radius 1/4")
    put("z_bump_witness.json", wit)
    f, wit = bump_companion(cat.fifth_shifted())
    put("fifth_shift_bump.json", f)
    put("fifth_shift_vertices.json", vertex_augmented(cat.fifth_shifted()),
        description="D together with its Voronoi vertices")

    p = cat.checkerboard(2)
    dec = components_and_plan(p, zsq, Fraction(3, 2))
    put("checkerboard_2d_plan.json", dec.plan)
    w = plan_mld_witness(dec, p)
    put("checkerboard_2d_plan_witness.json", w)

    # negative control: backward rule places the wrong component
    bad = encode_obj(w)
    comps = bad["witness"]["backward"]["params"]["map"]["components"]
    comps[0], comps[1] = comps[1], comps[0]
    with open(os.path.join(OUT, "bad_plan_witness.json"), "w", encoding="utf-8") as fh:
        fh.write(json.dumps(bad, indent=2, sort_keys=True, ensure_ascii=False) + "\n")

    # twisted example: odd field on the checkerboard (parity representation)
    g = cat.group(2, "inversion")
    c = Fraction(1, 2)
    pieces = []
    for (cx, cy), v in (((c, c), 1), ((c + 1, c), 2)):
        pieces.append(Piece(tent((cx + Fraction(1, 4), cy), Fraction(1, 8), (v,))))
        pieces.append(Piece(tent((cx - Fraction(1, 4), cy), Fraction(1, 8), (-v,))))
    odd = MapPattern(g, pieces, Lattice(((1, 1), (1, -1))), rep=Representation.parity(g))
    put("checkerboard_odd_field.json", odd, description="odd under -I; parity representation")


if __name__ == "__main__":
    main()
