"""Tabulate c1 of the A-Deligne pairing over a grid of n and g.

    python3 scripts/verify_main_theorem.py --n-max 8 --genera 0,1,2,3 [--verbose]
"""

import argparse
import time

from azumaya_chow.chern import azumaya, deligne_pairing_c1, module, tangent


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--genera", default="0,1,2,3")
    p.add_argument("--verbose", action="store_true", help="print the four lambda terms")
    args = p.parse_args()
    genera = [int(g) for g in args.genera.split(",")]

    print(f"{'n':>3} {'g':>3}  {'equal':5}  lhs")
    start = time.perf_counter()
    failures = 0
    for n in range(1, args.n_max + 1):
        a = azumaya("A", n * n)
        m, nn, t = module("M", n * n, a), module("N", n * n, a), tangent("T")
        for g in genera:
            r = deligne_pairing_c1(m, nn, a, t, g)
            failures += not r.equal
            print(f"{n:>3} {g:>3}  {str(r.equal):5}  {r.lhs}")
            if args.verbose:
                for label, value in r.intermediate:
                    print(f"          c1({label}) = {value}")
    elapsed = time.perf_counter() - start
    print(f"\n{failures} mismatches, {elapsed * 1000:.1f} ms")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
