"""Splitting-principle oracle for rank-2 Chern characters and Todd classes.

A rank-2 bundle with formal Chern roots ``a`` and ``b`` has ``c1 = a + b`` and
``c2 = a b``.  Its Chern character is ``e^a + e^b`` and its Todd class is
``Q(a) Q(b)`` with ``Q(z) = z / (1 - e^{-z})``.  The series are expanded by
sympy, independently of the ring arithmetic in :mod:`azumaya_chow.chow`.
"""

from __future__ import annotations

import random
from fractions import Fraction

import sympy as sp

from .chern import BundleSymbol
from .chow import GradedClass, aux

_z, _eps = sp.symbols("z eps")
_EXP = sp.series(sp.exp(_z), _z, 0, 3).removeO()
_TODD = sp.series(_z / (1 - sp.exp(-_z)), _z, 0, 3).removeO()


def _symbols(names):
    return {name: sp.Symbol(name) for name in names}


def _linear_form(cls: GradedClass, syms) -> sp.Expr:
    return sum((sp.Rational(v.numerator, v.denominator) * syms[g.owner] for g, v in cls.deg1.items()), sp.Integer(0))


def _truncate(expr: sp.Expr, syms) -> GradedClass:
    """Keep total degree <= 2 and convert back to a graded class."""
    scaled = sp.expand(expr.subs({s: _eps * s for s in syms.values()}, simultaneous=True))
    poly = sp.Poly(scaled, _eps, *syms.values())
    by_name = {s: name for name, s in syms.items()}
    gens = list(syms.values())
    deg0, deg1, deg2 = Fraction(0), {}, {}
    for powers, coef in poly.terms():
        e, rest = powers[0], powers[1:]
        if e > 2:
            continue
        q = Fraction(int(coef.p), int(coef.q))
        factors = []
        for s, k in zip(gens, rest):
            factors += [aux(by_name[s])] * k
        if not factors:
            deg0 += q
        elif len(factors) == 1:
            deg1[factors[0]] = deg1.get(factors[0], 0) + q
        else:
            key = tuple(factors)
            deg2[key] = deg2.get(key, 0) + q
    return GradedClass(deg0, deg1, deg2)


def split_classes(root_a: GradedClass, root_b: GradedClass) -> dict:
    """``c1``, ``c2``, ``ch`` and ``td`` of the rank-2 bundle with roots ``a``, ``b``.

    Roots must be pure degree-1 combinations of auxiliary generators.
    """
    names = sorted({g.owner for g in root_a.generators() | root_b.generators()})
    syms = _symbols(names)
    a, b = _linear_form(root_a, syms), _linear_form(root_b, syms)
    return {
        "c1": _truncate(a + b, syms),
        "c2": _truncate(a * b, syms),
        "ch": _truncate(_EXP.subs(_z, a) + _EXP.subs(_z, b), syms),
        "td": _truncate(_TODD.subs(_z, a) * _TODD.subs(_z, b), syms),
    }


def random_roots(seed: int, n_gens: int = 3) -> tuple[GradedClass, GradedClass]:
    rng = random.Random(seed)
    gens = [aux(f"x{i}") for i in range(1, n_gens + 1)]

    def root():
        return GradedClass(0, {g: Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for g in gens})

    return root(), root()


def split_symbol(seed: int) -> tuple[BundleSymbol, dict]:
    """A rank-2 symbol from seeded roots together with the oracle's classes."""
    a, b = random_roots(seed)
    expected = split_classes(a, b)
    return BundleSymbol(f"S{seed}", 2, expected["c1"], expected["c2"]), expected
