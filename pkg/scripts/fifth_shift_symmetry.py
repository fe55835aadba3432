"""Voronoi tilings of D = {±1/5 + n}: closed cells forget the points, punctured cells keep them.

Prints the symmetry lattices and the outcome of deriving D back from each
tiling; optionally writes SVGs of both tilings to a directory."""
import argparse
import os
from fractions import Fraction

from patternspace import catalog
from patternspace.derivability import symmetry_group, check_local_derivation
from patternspace.render import render_svg, Box
from patternspace.voronoi import punctured_voronoi_tiling, delone_parameters, voronoi_mld_witness


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--svg-dir")
    a = ap.parse_args()
    D = catalog.fifth_shifted()
    P = delone_parameters(D)
    R = P.covering
    m = voronoi_mld_witness(D).backward.margin
    print(f"r^2 = {P.min_sep_sq}  R = {R}")
    for label, p in (("D", D), ("closed cells", punctured_voronoi_tiling(D, punctured=False)),
                     ("punctured cells", punctured_voronoi_tiling(D))):
        S = symmetry_group(p)
        line = f"{label:16s} translations {S.translations.basis}"
        if p is not D:
            v = check_local_derivation(p, D, m, [R, 2 * R, 4 * R])
            line += f"  derives D at margin {m}: {v.status}"
        print(line)
    if a.svg_dir:
        os.makedirs(a.svg_dir, exist_ok=True)
        box = Box((-2,), (2,))
        for name, punct in (("closed", False), ("punctured", True)):
            with open(os.path.join(a.svg_dir, f"fifth_{name}.svg"), "w") as fh:
                fh.write(render_svg(punctured_voronoi_tiling(D, punctured=punct), box))


if __name__ == "__main__":
    main()
