"""Max isometry residual per lemma and dimension tuple on seeded Hermitian spaces.

    python3 scripts/isometry_residuals.py --seeds 100 --dims-max 4
"""

import argparse
import time
from collections import defaultdict

from azumaya_chow import checks


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seeds", type=int, default=100, help="instances per dimension tuple")
    p.add_argument("--dims-max", type=int, default=4)
    p.add_argument("--lemma", action="append", choices=checks.LEMMAS)
    args = p.parse_args()

    worst = 0.0
    for lemma in args.lemma or checks.LEMMAS:
        start = time.perf_counter()
        by_dims = defaultdict(float)
        for dims in checks.dims_grid(lemma, args.dims_max):
            for seed in range(args.seeds):
                r = checks.lemma_residual(lemma, checks.instance_spaces(lemma, dims, seed))
                by_dims[dims] = max(by_dims[dims], r)
        top = max(by_dims, key=by_dims.get)
        worst = max(worst, by_dims[top])
        print(f"{lemma:7} {len(by_dims):3} dim tuples  max {by_dims[top]:.2e} at dims={top}"
              f"  ({time.perf_counter() - start:.2f} s)")
    print(f"overall max residual {worst:.2e} (tolerance {checks.H.TOL:.0e})")


if __name__ == "__main__":
    main()
