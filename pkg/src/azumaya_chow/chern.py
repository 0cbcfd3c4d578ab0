"""Characteristic-class calculus for formal Hermitian bundles and Azumaya modules."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .chow import (
    ONE,
    ZERO,
    BaseClass,
    GradedClass,
    Rational,
    base_equal,
    c1 as c1_gen,
    c2 as c2_gen,
    grade,
    invert_sqrt_unit,
    invert_unit,
    mul,
    pushforward,
    rational_sqrt,
)


class ChernError(ValueError):
    pass


class NotAzumaya(ChernError):
    pass


class NotTangent(ChernError):
    pass


class NonIntegralRank(ChernError):
    pass


class RankMismatch(ChernError):
    pass


class Flavor(enum.Enum):
    PLAIN = "plain"
    AZUMAYA = "azumaya"
    TANGENT = "tangent"
    DERIVED = "derived"


def _is_pure(x: GradedClass, k: int) -> bool:
    return x == grade(x, k)


@dataclass(frozen=True)
class BundleSymbol:
    name: str
    rank: int
    c1: GradedClass = ZERO
    c2: GradedClass = ZERO
    flavor: Flavor = Flavor.PLAIN
    provenance: tuple = ()
    owner: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if not isinstance(self.rank, int) or self.rank < 1:
            raise ChernError(f"rank of {self.name} must be a positive integer, got {self.rank!r}")
        if not _is_pure(self.c1, 1) or not _is_pure(self.c2, 2):
            raise ChernError(f"Chern data of {self.name} has the wrong degrees")
        if self.flavor is Flavor.AZUMAYA:
            rational_sqrt(self.rank)
            if not self.c1.is_zero():
                raise NotAzumaya(f"{self.name}: an Azumaya algebra has c1 = 0 rationally")
        if self.flavor is Flavor.TANGENT and (self.rank != 1 or not self.c2.is_zero()):
            raise NotTangent(f"{self.name}: relative tangent bundle must be a line bundle")

    @property
    def sqrt_rank(self) -> int:
        return int(rational_sqrt(self.rank))

    def __str__(self):
        return f"{self.name} [{self.flavor.value}, rank {self.rank}, c1 = {self.c1}, c2 = {self.c2}]"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "flavor": self.flavor.value,
            "rank": self.rank,
            "c1": self.c1.to_json(),
            "c2": self.c2.to_json(),
            "provenance": list(self.provenance),
        }


# declarations ---------------------------------------------------------------


def azumaya(name: str, rank: int) -> BundleSymbol:
    """Azumaya algebra with generic ``c2`` and ``c1`` forced to zero."""
    return BundleSymbol(name, rank, ZERO, GradedClass.gen(c2_gen(name)), Flavor.AZUMAYA)


def module(name: str, rank: int, over: BundleSymbol | None = None) -> BundleSymbol:
    if over is not None and over.flavor is not Flavor.AZUMAYA:
        raise NotAzumaya(f"{over.name} is not an Azumaya algebra")
    return BundleSymbol(
        name,
        rank,
        GradedClass.gen(c1_gen(name)),
        GradedClass.gen(c2_gen(name)),
        Flavor.PLAIN,
        owner=over.name if over is not None else None,
    )


def line(name: str) -> BundleSymbol:
    return BundleSymbol(name, 1, GradedClass.gen(c1_gen(name)), ZERO, Flavor.PLAIN)


def tangent(name: str) -> BundleSymbol:
    return BundleSymbol(name, 1, GradedClass.gen(c1_gen(name)), ZERO, Flavor.TANGENT)


def trivial(rank: int = 1, name: str = "O") -> BundleSymbol:
    return BundleSymbol(name, rank)


# characteristic classes -------------------------------------------------------


def chern_character(b: BundleSymbol) -> GradedClass:
    return b.rank + b.c1 + (mul(b.c1, b.c1) - 2 * b.c2) / 2


def todd(b: BundleSymbol) -> GradedClass:
    return ONE + b.c1 / 2 + (mul(b.c1, b.c1) + b.c2) / 12


def dual_symbol(b: BundleSymbol) -> BundleSymbol:
    # c2 is unchanged: ch of the dual alternates sign by degree
    flavor = b.flavor if b.flavor is Flavor.AZUMAYA else Flavor.DERIVED
    return BundleSymbol(
        f"{b.name}^", b.rank, -b.c1, b.c2, flavor, ("dual", b.name), owner=b.owner
    )


def symbol_from_ch(name: str, ch: GradedClass, provenance: tuple = ()) -> BundleSymbol:
    """Read rank, c1, c2 back off a Chern character (degrees <= 2)."""
    if ch.deg0.denominator != 1 or ch.deg0 <= 0:
        raise NonIntegralRank(f"{name}: rank {ch.deg0} is not a positive integer")
    first = grade(ch, 1)
    second = (mul(first, first) - 2 * grade(ch, 2)) / 2
    return BundleSymbol(name, int(ch.deg0), first, second, Flavor.DERIVED, provenance)


def _require_azumaya(a: BundleSymbol):
    if a.flavor is not Flavor.AZUMAYA:
        raise NotAzumaya(f"{a.name} is not an Azumaya algebra")


def a_chern_character(m: BundleSymbol, a: BundleSymbol) -> GradedClass:
    _require_azumaya(a)
    return mul(chern_character(m), invert_sqrt_unit(chern_character(a)))


def a_c1(m: BundleSymbol, a: BundleSymbol) -> GradedClass:
    result = grade(a_chern_character(m, a), 1)
    assert result == m.c1 / a.sqrt_rank, "degree-1 part must be c1 / sqrt(rank)"
    return result


def hom_a_chern(m: BundleSymbol, n: BundleSymbol, a: BundleSymbol) -> BundleSymbol:
    """``Hom_A(M, N)`` with ``ch = ch(M^) ch(N) ch(A)^{-1}``."""
    _require_azumaya(a)
    ch = mul(
        mul(chern_character(dual_symbol(m)), chern_character(n)),
        invert_unit(chern_character(a)),
    )
    twisted = mul(a_chern_character(dual_symbol(m), a), a_chern_character(n, a))
    assert ch == twisted, "ch(A) ch(Hom_A) = ch(Hom) disagrees with ch^A(M^) ch^A(N)"
    return symbol_from_ch(f"Hom_{a.name}({m.name},{n.name})", ch, ("hom", m.name, n.name, a.name))


def lambda_c1(e: BundleSymbol, t: BundleSymbol, g: Rational) -> BaseClass:
    """First Chern class of the determinant of cohomology, via arithmetic Riemann-Roch."""
    if t.flavor is not Flavor.TANGENT:
        raise NotTangent(f"{t.name} is not a relative tangent bundle")
    top = grade(mul(chern_character(e), todd(t)), 2)
    return pushforward(top) - BaseClass.analytic_term(e.rank * (1 - Fraction(g)))


# the pairing --------------------------------------------------------------------


@dataclass
class PairingReport:
    lhs: BaseClass
    rhs: BaseClass
    equal: bool
    intermediate: list
    n: int
    g: Fraction
    hypothesis_holds: bool = True

    @property
    def analytic_coefficient(self) -> Fraction:
        return self.lhs.analytic

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "g": f"{self.g.numerator}/{self.g.denominator}",
            "line_bundle_hypothesis": self.hypothesis_holds,
            "intermediate": [
                {"label": label, "value": value.to_json()} for label, value in self.intermediate
            ],
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "discrepancy": (self.lhs - self.rhs).to_json(),
            "equal": self.equal,
        }

    def render(self) -> str:
        lam = dict(self.intermediate)
        lines = [
            f"A-Deligne pairing, n = {self.n} (rk A = {self.n ** 2}), g = {self.g}",
            f"  c1(lambda_A(M,N)) = {lam['lambda_A(M,N)']}",
            f"  c1(lambda_A(M,A)) = {lam['lambda_A(M,A)']}",
            f"  c1(lambda_A(A,N)) = {lam['lambda_A(A,N)']}",
            f"  c1(lambda_A(A,A)) = {lam['lambda_A(A,A)']}",
            "  c1(<M,N>_A) = l(M,N) - l(M,A) - l(A,N) + l(A,A)",
            f"              = {self.lhs}",
            f"  analytic terms: coefficient {self.analytic_coefficient}",
            f"  -pi_*(c1^A(M) c1^A(N)) = {self.rhs}",
            f"  verdict: {'equal' if self.equal else 'NOT equal'}",
        ]
        if not self.hypothesis_holds:
            lines.append("  (ranks differ: the identity is not claimed in this case)")
        return "\n".join(lines)


def deligne_pairing_c1(
    m: BundleSymbol,
    n: BundleSymbol,
    a: BundleSymbol,
    t: BundleSymbol,
    g: Rational,
    strict: bool = True,
) -> PairingReport:
    """Both sides of ``c1(<M,N>_A) = -pi_*(c1^A(M) c1^A(N))``.

    With ``strict`` set, ranks differing from ``rk A`` raise :class:`RankMismatch`;
    otherwise the two sides are still evaluated and compared.
    """
    _require_azumaya(a)
    holds = m.rank == n.rank == a.rank
    if strict and not holds:
        raise RankMismatch(
            f"A-line bundles need rk {m.name} = rk {n.name} = rk {a.name}"
            f" (got {m.rank}, {n.rank}, {a.rank})"
        )
    terms = [
        ("lambda_A(M,N)", lambda_c1(hom_a_chern(m, n, a), t, g)),
        ("lambda_A(M,A)", lambda_c1(hom_a_chern(m, a, a), t, g)),
        ("lambda_A(A,N)", lambda_c1(hom_a_chern(a, n, a), t, g)),
        ("lambda_A(A,A)", lambda_c1(hom_a_chern(a, a, a), t, g)),
    ]
    lam = [v for _, v in terms]
    lhs = lam[0] - lam[1] - lam[2] + lam[3]
    rhs = -pushforward(mul(a_c1(m, a), a_c1(n, a)))
    return PairingReport(lhs, rhs, base_equal(lhs, rhs), terms, a.sqrt_rank, Fraction(g), holds)


