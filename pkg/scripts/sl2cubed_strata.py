"""Orbit types on the SL2^3/SL2 slice against the faces of the valuation cone."""
import argparse

import numpy as np

from orbitcone.examples import build_sl2cubed, random_sum_zero_triple, sample_sl2cubed_orbit
from orbitcone.experiments import sl2cubed_sampling
from orbitcone.spherical import valuation_cone


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    summary = sl2cubed_sampling(args.samples, args.seed)
    print(f"generic samples: {summary['samples']}, triangle violations: {summary['violations']}")
    rng = np.random.default_rng(args.seed)
    classes = {}
    for kind in ("generic", "collinear", "zero"):
        s = sample_sl2cubed_orbit(*random_sum_zero_triple(rng, kind))
        classes[s.stratum_class] = s.stabilizer_dim
        print(f"{kind:<10} stabilizer dim {s.stabilizer_dim}  stratum {s.stratum_class:<9} "
              f"cone face {s.cone_face}")
    faces = len(valuation_cone(build_sl2cubed().datum).faces())
    print(f"orbit-type strata: {len(classes)}   faces of Val: {faces}")


if __name__ == "__main__":
    main()
