"""Compare Kempf-Ness minimisation with the exact hull criterion on random torus data."""
import argparse

import numpy as np

from orbitcone.experiments import kempf_ness_run, random_kempf_ness_case


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cases", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    agree = 0
    for i in range(args.cases):
        r = kempf_ness_run(random_kempf_ness_case(rng), rng)
        agree += r.matches
        shape = "x".join(map(str, r.case.weights.shape))
        detail = f"|m|={r.moment_norm:.1e} gap={r.norm_gap:.1e}" if r.found else ""
        print(f"case {i:>2} weights {shape:<4} expected={'closed' if r.case.expected_found else 'open':<6}"
              f" found={'closed' if r.found else 'open':<6} {detail}")
    print(f"agreement {agree}/{args.cases}")


if __name__ == "__main__":
    main()
