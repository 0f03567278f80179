"""Invert the toric moment map on a rational grid inside several weight hulls."""
import argparse
from fractions import Fraction

from orbitcone.experiments import (
    TORIC_CONFIGURATIONS, ToricGridConfig, random_hull_weights, toric_grid_run,
)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pitch", type=Fraction, default=Fraction(1, 20))
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = ToricGridConfig(pitch=args.pitch, seed=args.seed)
    configs = dict(TORIC_CONFIGURATIONS, random3=random_hull_weights(args.seed))
    print(f"{'hull':<10}{'points':>8}{'fail':>6}{'max resid':>12}{'max it':>8}"
          f"{'vertices':>10}{'roundtrip':>12}")
    for name, weights in configs.items():
        r = toric_grid_run(name, weights, cfg)
        print(f"{name:<10}{r.interior_points:>8}{len(r.failures):>6}{r.max_residual:>12.2e}"
              f"{r.max_iterations:>8}{r.vertex_boundary_hits:>5}/{r.vertices:<4}"
              f"{r.max_roundtrip_error:>12.2e}")


if __name__ == "__main__":
    main()
