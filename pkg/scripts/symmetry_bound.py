"""Local stabiliser cardinalities against the bound C1 on random periodic Delone sets."""
import argparse
import random

from patternspace import catalog
from patternspace.decompose import symmetry_bound
from patternspace.derivability import stabilizer
from patternspace.exact import sqrt_lower
from patternspace.geometry import GroupSpec, Window
from patternspace.instances import PointSet
from patternspace.voronoi import delone_parameters


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-n", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    rng = random.Random(a.seed)
    G = GroupSpec.hyperoctahedral(2)
    for i in range(a.n):
        D0 = catalog.random_periodic_delone(rng, 2, max_motif=4)
        D = PointSet.periodic(G, D0.lattice.basis, sorted(D0.motif_in(D0.lattice)))
        P = delone_parameters(D)
        Rp, C1 = symmetry_bound(sqrt_lower(P.min_sep_sq), P.covering, 2)
        x = rng.choice(sorted(D.motif_in(D.lattice)))
        card = len(stabilizer(D.cut(Window.ball(x, Rp)), x))
        print(f"{i}: motif={len(D.motif_in(D.lattice))} R'={float(Rp):.3f} card={card} "
              f"log10 C1={len(str(C1)) - 1} ok={card < C1}")


if __name__ == "__main__":
    main()
