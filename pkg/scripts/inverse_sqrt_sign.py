"""Compare ch(A)^(-1/2) from the ring, from a sympy series, and the two sign forms.

    python3 scripts/inverse_sqrt_sign.py --n-max 8
"""

import argparse
from fractions import Fraction

import sympy as sp

from azumaya_chow.chern import azumaya, chern_character
from azumaya_chow.chow import GradedClass, c2, invert_sqrt_unit


def series_coefficient(n):
    t = sp.Symbol("t")
    s = sp.series((n * n - t) ** sp.Rational(-1, 2), t, 0, 2).removeO()
    return Fraction(str(s.coeff(t, 1)))


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n-max", type=int, default=8)
    args = p.parse_args()
    c2a = GradedClass.gen(c2("A"))
    print(f"{'n':>3}  {'ring':>10}  {'sympy':>10}  plus-form  minus-form  y^2 ch = 1  (minus)^2 ch")
    for n in range(1, args.n_max + 1):
        ch = chern_character(azumaya("A", n * n))
        y = invert_sqrt_unit(ch)
        plus = Fraction(1, n) + c2a / (2 * n**3)
        minus = Fraction(1, n) - c2a / (2 * n**3)
        coeff = y.deg2.get((c2("A"),), Fraction(0))
        print(f"{n:>3}  {str(coeff):>10}  {str(series_coefficient(n)):>10}  {str(y == plus):9}  "
              f"{str(y == minus):10}  {str(y * y * ch == 1):10}  {minus * minus * ch}")


if __name__ == "__main__":
    main()
