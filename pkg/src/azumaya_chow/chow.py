"""Exact truncated graded ring standing in for the rational arithmetic Chow ring of a surface.

Classes live in degrees 0, 1, 2.  Degree 1 is spanned by degree-1 generators,
degree 2 by monomials: an unordered pair of degree-1 generators or a single
degree-2 generator.  Everything of degree >= 3 is dropped on multiplication.

A pushforward sends degree-2 monomials to formal atoms ``pi_*(m)`` of a base
class; base classes additionally carry the coefficient of one opaque analytic
generator (written ``a`` in renderings).
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

log = logging.getLogger(__name__)

Rational = Union[int, Fraction]


class ChowError(ArithmeticError):
    pass


class NotAUnit(ChowError):
    pass


class NotAPerfectSquare(ChowError):
    pass


class Kind(enum.Enum):
    C1 = "c1"
    C2 = "c2"
    AUX = "aux"


_KIND_ORDER = {Kind.C1: 0, Kind.AUX: 1, Kind.C2: 2}


@dataclass(frozen=True)
class Generator:
    kind: Kind
    owner: str

    def sort_key(self):
        return (self.owner, _KIND_ORDER[self.kind])

    def __lt__(self, other: "Generator") -> bool:
        return self.sort_key() < other.sort_key()

    @property
    def degree(self) -> int:
        return 2 if self.kind is Kind.C2 else 1

    def __str__(self):
        return f"{self.kind.value}({self.owner})"

    @classmethod
    def parse(cls, text: str) -> "Generator":
        head, _, rest = text.strip().partition("(")
        if not rest.endswith(")"):
            raise ValueError(f"bad generator {text!r}")
        return cls(Kind(head), rest[:-1])


def c1(owner: str) -> Generator:
    return Generator(Kind.C1, owner)


def c2(owner: str) -> Generator:
    return Generator(Kind.C2, owner)


def aux(owner: str) -> Generator:
    return Generator(Kind.AUX, owner)


Monomial = tuple  # sorted tuple of Generators of total degree 2


def monomial(*gens: Generator) -> Monomial:
    if sum(g.degree for g in gens) != 2:
        raise ValueError(f"monomial {gens} is not of degree 2")
    return tuple(sorted(gens))


def monomial_str(m: Monomial) -> str:
    return "*".join(str(g) for g in m)


def parse_monomial(text: str) -> Monomial:
    return monomial(*(Generator.parse(part) for part in text.split("*")))


def _clean(d: Mapping) -> dict:
    return {k: Fraction(v) for k, v in d.items() if v != 0}


def _acc(target: dict, key, value):
    v = target.get(key, 0) + value
    if v:
        target[key] = v
    else:
        target.pop(key, None)


def _frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _fmt_term(coef: Fraction, name: str, first: bool) -> str:
    sign = "-" if coef < 0 else ("" if first else "+")
    a = abs(coef)
    if name == "":
        body = str(a)
    elif a == 1:
        body = name
    else:
        body = f"{a}*{name}" if a.denominator == 1 else f"({a})*{name}"
    return f"{sign}{body}" if first else f" {sign} {body}"


class GradedClass:
    """An element of the truncated ring with exact rational coefficients.

    Values are immutable and kept in canonical form (no zero coefficients,
    sorted monomials), so ``==`` is structural equality.
    """

    __slots__ = ("deg0", "deg1", "deg2", "_hash")

    def __init__(self, deg0: Rational = 0, deg1: Mapping | None = None, deg2: Mapping | None = None):
        d1 = _clean(deg1 or {})
        for g in d1:
            if g.degree != 1:
                raise ValueError(f"{g} is not a degree-1 generator")
        d2: dict = {}
        for m, v in (deg2 or {}).items():
            if isinstance(m, Generator):
                m = (m,)
            _acc(d2, monomial(*m), Fraction(v))
        object.__setattr__(self, "deg0", Fraction(deg0))
        object.__setattr__(self, "deg1", d1)
        object.__setattr__(self, "deg2", d2)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("GradedClass is immutable")

    # constructors -------------------------------------------------------
    @classmethod
    def scalar(cls, q: Rational) -> "GradedClass":
        return cls(q)

    @classmethod
    def gen(cls, g: Generator, coef: Rational = 1) -> "GradedClass":
        if g.degree == 1:
            return cls(0, {g: coef})
        return cls(0, None, {(g,): coef})

    # ring structure -----------------------------------------------------
    def __add__(self, other):
        return add(self, _coerce(other))

    __radd__ = __add__

    def __neg__(self):
        return scale(self, -1)

    def __sub__(self, other):
        return add(self, -_coerce(other))

    def __rsub__(self, other):
        return add(_coerce(other), -self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return scale(self, other)
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, q: Rational):
        return scale(self, 1 / Fraction(q))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GradedClass(other)
        if not isinstance(other, GradedClass):
            return NotImplemented
        return (self.deg0, self.deg1, self.deg2) == (other.deg0, other.deg1, other.deg2)

    def __hash__(self):
        if self._hash is None:
            h = hash((self.deg0, frozenset(self.deg1.items()), frozenset(self.deg2.items())))
            object.__setattr__(self, "_hash", h)
        return self._hash

    def is_zero(self) -> bool:
        return self.deg0 == 0 and not self.deg1 and not self.deg2

    def generators(self) -> set:
        out = set(self.deg1)
        for m in self.deg2:
            out.update(m)
        return out

    # display / serialization -------------------------------------------
    def __str__(self):
        terms = []
        if self.deg0:
            terms.append((self.deg0, ""))
        terms += [(v, str(g)) for g, v in sorted(self.deg1.items())]
        terms += [(v, monomial_str(m)) for m, v in sorted(self.deg2.items())]
        if not terms:
            return "0"
        return "".join(_fmt_term(c, n, i == 0) for i, (c, n) in enumerate(terms))

    def __repr__(self):
        return f"GradedClass({self})"

    def to_json(self) -> dict:
        return {
            "deg0": _frac_str(self.deg0),
            "deg1": {str(g): _frac_str(v) for g, v in sorted(self.deg1.items())},
            "deg2": {monomial_str(m): _frac_str(v) for m, v in sorted(self.deg2.items())},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "GradedClass":
        return cls(
            Fraction(data.get("deg0", "0")),
            {Generator.parse(k): Fraction(v) for k, v in data.get("deg1", {}).items()},
            {parse_monomial(k): Fraction(v) for k, v in data.get("deg2", {}).items()},
        )


ZERO = GradedClass()
ONE = GradedClass(1)


def _coerce(x) -> GradedClass:
    if isinstance(x, GradedClass):
        return x
    if isinstance(x, (int, Fraction)):
        return GradedClass(x)
    raise TypeError(f"cannot use {type(x).__name__} as a graded class")


def add(x: GradedClass, y: GradedClass) -> GradedClass:
    d1 = dict(x.deg1)
    for g, v in y.deg1.items():
        _acc(d1, g, v)
    d2 = dict(x.deg2)
    for m, v in y.deg2.items():
        _acc(d2, m, v)
    return GradedClass(x.deg0 + y.deg0, d1, d2)


def scale(x: GradedClass, q: Rational) -> GradedClass:
    q = Fraction(q)
    return GradedClass(
        x.deg0 * q,
        {g: v * q for g, v in x.deg1.items()},
        {m: v * q for m, v in x.deg2.items()},
    )


def mul(x: GradedClass, y: GradedClass) -> GradedClass:
    d1: dict = {}
    for g, v in x.deg1.items():
        _acc(d1, g, v * y.deg0)
    for g, v in y.deg1.items():
        _acc(d1, g, v * x.deg0)
    d2: dict = {}
    for m, v in x.deg2.items():
        _acc(d2, m, v * y.deg0)
    for m, v in y.deg2.items():
        _acc(d2, m, v * x.deg0)
    for g, v in x.deg1.items():
        for h, w in y.deg1.items():
            _acc(d2, monomial(g, h), v * w)
    return GradedClass(x.deg0 * y.deg0, d1, d2)


def grade(x: GradedClass, k: int) -> GradedClass:
    if k == 0:
        return GradedClass(x.deg0)
    if k == 1:
        return GradedClass(0, x.deg1)
    if k == 2:
        return GradedClass(0, None, x.deg2)
    raise ValueError(f"degree {k} is outside the truncated ring")


def _unit_split(x: GradedClass) -> tuple[Fraction, GradedClass]:
    if x.deg0 == 0:
        raise NotAUnit(f"{x} has zero degree-0 part")
    r = x.deg0
    return r, (x - r) / r


def invert_unit(x: GradedClass) -> GradedClass:
    """``x = r(1 + u)  ->  r^{-1}(1 - u + u^2)``."""
    r, u = _unit_split(x)
    return (1 - u + u * u) / r


def rational_sqrt(q: Rational) -> Fraction:
    q = Fraction(q)
    if q < 0:
        raise NotAPerfectSquare(f"{q} has no rational square root")
    p, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if p * p != q.numerator or d * d != q.denominator:
        raise NotAPerfectSquare(f"sqrt({q}) is irrational")
    return Fraction(p, d)


def invert_sqrt_unit(x: GradedClass) -> GradedClass:
    """``x = r(1 + u)  ->  r^{-1/2}(1 - u/2 + 3u^2/8)``; needs ``r`` a rational square."""
    r, u = _unit_split(x)
    s = rational_sqrt(r)
    return (1 - u / 2 + Fraction(3, 8) * (u * u)) / s


# ---------------------------------------------------------------------------
# base classes


ANALYTIC = "a"


class BaseClass:
    """Formal combination of pushforward atoms ``pi_*(m)`` and the analytic generator."""

    __slots__ = ("pushed", "analytic")

    def __init__(self, pushed: Mapping | None = None, analytic: Rational = 0):
        p: dict = {}
        for m, v in (pushed or {}).items():
            if isinstance(m, Generator):
                m = (m,)
            _acc(p, monomial(*m), Fraction(v))
        object.__setattr__(self, "pushed", p)
        object.__setattr__(self, "analytic", Fraction(analytic))

    def __setattr__(self, name, value):
        raise AttributeError("BaseClass is immutable")

    @classmethod
    def analytic_term(cls, coef: Rational = 1) -> "BaseClass":
        return cls(None, coef)

    def __add__(self, other: "BaseClass") -> "BaseClass":
        p = dict(self.pushed)
        for m, v in other.pushed.items():
            _acc(p, m, v)
        return BaseClass(p, self.analytic + other.analytic)

    def __neg__(self):
        return self * -1

    def __sub__(self, other: "BaseClass") -> "BaseClass":
        return self + (-other)

    def __mul__(self, q: Rational) -> "BaseClass":
        q = Fraction(q)
        return BaseClass({m: v * q for m, v in self.pushed.items()}, self.analytic * q)

    __rmul__ = __mul__

    def __truediv__(self, q: Rational) -> "BaseClass":
        return self * (1 / Fraction(q))

    def __eq__(self, other):
        if not isinstance(other, BaseClass):
            return NotImplemented
        return base_equal(self, other)

    def __hash__(self):
        return hash((frozenset(self.pushed.items()), self.analytic))

    def is_zero(self) -> bool:
        return not self.pushed and self.analytic == 0

    def generators(self) -> set:
        out = set()
        for m in self.pushed:
            out.update(m)
        return out

    def __str__(self):
        terms = [(v, f"pi_*({monomial_str(m)})") for m, v in sorted(self.pushed.items())]
        if self.analytic:
            terms.append((self.analytic, ANALYTIC))
        if not terms:
            return "0"
        return "".join(_fmt_term(c, n, i == 0) for i, (c, n) in enumerate(terms))

    def __repr__(self):
        return f"BaseClass({self})"

    def to_json(self) -> dict:
        return {
            "pushed": {monomial_str(m): _frac_str(v) for m, v in sorted(self.pushed.items())},
            "analytic": _frac_str(self.analytic),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "BaseClass":
        return cls(
            {parse_monomial(k): Fraction(v) for k, v in data.get("pushed", {}).items()},
            Fraction(data.get("analytic", "0")),
        )


def pushforward(x: GradedClass) -> BaseClass:
    if x.deg0 or x.deg1:
        log.warning("pushforward discards the degree-0 and degree-1 parts of %s", x)
    return BaseClass(x.deg2)


def base_equal(x: BaseClass, y: BaseClass) -> bool:
    """Structural equality in the free formal model."""
    return x.pushed == y.pushed and x.analytic == y.analytic


def base_sum(items: Iterable[BaseClass]) -> BaseClass:
    total = BaseClass()
    for b in items:
        total = total + b
    return total
