from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from azumaya_chow.chow import (
    BaseClass,
    GradedClass,
    NotAPerfectSquare,
    NotAUnit,
    aux,
    base_equal,
    c1,
    c2,
    grade,
    invert_sqrt_unit,
    invert_unit,
    monomial,
    pushforward,
)

M = GradedClass.gen(c1("M"))
N = GradedClass.gen(c1("N"))
C2A = GradedClass.gen(c2("A"))

# --- strategies ---------------------------------------------------------------------

GENS1 = [c1("M"), c1("N"), c1("T"), aux("x")]
GENS2 = [c2("A"), c2("M")]
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def classes(draw, unit=False):
    deg0 = draw(rationals.filter(lambda q: q != 0) if unit else rationals)
    deg1 = draw(st.dictionaries(st.sampled_from(GENS1), rationals, max_size=4))
    pairs = [monomial(a, b) for i, a in enumerate(GENS1) for b in GENS1[i:]]
    keys = st.sampled_from(pairs + [(g,) for g in GENS2])
    deg2 = draw(st.dictionaries(keys, rationals, max_size=6))
    return GradedClass(deg0, deg1, deg2)


# --- construction and canonical form ----------------------------------------------------


def test_zero_coefficients_dropped():
    x = GradedClass(0, {c1("M"): 0}, {(c2("A"),): 0})
    assert x.deg1 == {} and x.deg2 == {}
    assert x == 0


def test_pair_keys_normalized():
    assert GradedClass(0, None, {(c1("N"), c1("M")): 1}) == GradedClass(0, None, {(c1("M"), c1("N")): 1})


def test_degree_two_generator_not_allowed_in_degree_one():
    with pytest.raises(ValueError):
        GradedClass(0, {c2("A"): 1})


def test_immutable():
    with pytest.raises(AttributeError):
        M.deg0 = 3


# --- add / mul ---------------------------------------------------------------------------


def test_add_zero():
    x = 3 + M + M * N
    assert x + GradedClass() == x


def test_add_cancels():
    assert M + (-M) == 0


def test_add_componentwise():
    assert (3 + M) + (1 + N) == GradedClass(4, {c1("M"): 1, c1("N"): 1})


def test_mul_pair():
    assert (M * N).deg2 == {(c1("M"), c1("N")): 1}


def test_mul_square():
    assert (M * M).deg2 == {(c1("M"), c1("M")): 1}


def test_mul_expanded_by_hand():
    expected = GradedClass(6, {c1("M"): 3, c1("N"): 2}, {(c1("M"), c1("N")): 1})
    assert (2 + M) * (3 + N) == expected


def test_truncation_drops_degree_three():
    assert M * N * M == 0
    assert C2A * M == 0


@settings(max_examples=200)
@given(classes(), classes(), classes())
def test_ring_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert (x + y) + z == x + (y + z)
    assert x * 1 == x


@given(classes(), classes(), classes(), classes())
def test_top_degree_depends_on_low_degrees_only(x, y, noise_x, noise_y):
    # grade 2 of a product only sees grades <= 2 of the factors; adding anything
    # that vanishes in the truncated ring leaves it unchanged
    assert grade(x * y, 2) == grade((x + grade(noise_x, 2) * grade(noise_y, 1)) * y, 2)
    lhs = grade(x * y, 2)
    rhs = grade(x, 0) * grade(y, 2) + grade(x, 2) * grade(y, 0) + grade(x, 1) * grade(y, 1)
    assert lhs == rhs


# --- grade --------------------------------------------------------------------------------


def test_grade_components():
    x = 4 + M + M * N
    assert grade(x, 0) == 4
    assert grade(x, 1) == M
    assert grade(x, 2) == M * N
    assert grade(GradedClass(), 2) == 0


def test_grade_out_of_range():
    with pytest.raises(ValueError):
        grade(M, 3)


# --- inverses -----------------------------------------------------------------------------


def _sympy_series(power, r, c):
    """Series of (r - c)^power to first order in c, evaluated with sympy."""
    t = sp.Symbol("t")
    s = sp.series((sp.Integer(r) - t) ** power, t, 0, 2).removeO()
    a0 = s.subs(t, 0)
    a1 = sp.diff(s, t).subs(t, 0)
    return Fraction(str(a0)), Fraction(str(a1))


def test_invert_one():
    assert invert_unit(GradedClass(1)) == 1


@pytest.mark.parametrize("r", [1, 2, 4, 7])
def test_invert_rank_minus_c2(r):
    a0, a1 = _sympy_series(-1, r, C2A)
    assert (a0, a1) == (Fraction(1, r), Fraction(1, r * r))
    assert invert_unit(r - C2A) == a0 + a1 * C2A


def test_invert_not_a_unit():
    with pytest.raises(NotAUnit):
        invert_unit(M)


@settings(max_examples=200)
@given(classes(unit=True))
def test_invert_unit_contract(x):
    assert x * invert_unit(x) == 1


def test_invert_sqrt_one():
    assert invert_sqrt_unit(GradedClass(1)) == 1


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
def test_invert_sqrt_rank_minus_c2(n):
    # (n^2 - c2)^{-1/2} = 1/n + c2 / (2 n^3), coefficients from sympy
    a0, a1 = _sympy_series(sp.Rational(-1, 2), n * n, C2A)
    assert (a0, a1) == (Fraction(1, n), Fraction(1, 2 * n**3))
    assert invert_sqrt_unit(n * n - C2A) == a0 + a1 * C2A


def test_invert_sqrt_rank_four_value():
    assert invert_sqrt_unit(4 - C2A) == Fraction(1, 2) + C2A / 16


def test_invert_sqrt_nine_contract():
    x = 9 - C2A
    y = invert_sqrt_unit(x)
    assert y * y * x == 1


def test_invert_sqrt_rational_square():
    x = Fraction(9, 4) + M
    y = invert_sqrt_unit(x)
    assert y.deg0 == Fraction(2, 3)
    assert y * y * x == 1


@pytest.mark.parametrize("r", [2, 3, Fraction(1, 2), -4])
def test_invert_sqrt_needs_square(r):
    with pytest.raises(NotAPerfectSquare):
        invert_sqrt_unit(r + M)


def test_invert_sqrt_not_a_unit():
    with pytest.raises(NotAUnit):
        invert_sqrt_unit(C2A)


@settings(max_examples=200)
@given(classes(), st.fractions(min_value=Fraction(1, 9), max_value=10, max_denominator=9))
def test_invert_sqrt_contract(x, s):
    u = s * s + grade(x, 1) + grade(x, 2)
    y = invert_sqrt_unit(u)
    assert y * y * u == 1
    assert y * y == invert_unit(u)


# --- pushforward and base classes ----------------------------------------------------------


def test_pushforward_atom():
    assert pushforward(M * N).pushed == {(c1("M"), c1("N")): 1}


def test_pushforward_zero():
    assert pushforward(GradedClass()).is_zero()


def test_pushforward_warns_on_low_degree(caplog):
    with caplog.at_level("WARNING"):
        b = pushforward(1 + M + M * N)
    assert b == pushforward(M * N)
    assert "discards" in caplog.text


@given(classes(), classes())
def test_pushforward_linear(x, y):
    assert pushforward(grade(x + y, 2)) == pushforward(grade(x, 2)) + pushforward(grade(y, 2))


def test_base_equal():
    x = pushforward(M * N) - BaseClass.analytic_term(3)
    assert base_equal(x, x)
    assert base_equal(pushforward(M * N), pushforward(N * M))
    assert not base_equal(pushforward(M * N), pushforward(M * M))
    assert not base_equal(x, pushforward(M * N))


def test_base_arithmetic():
    b = pushforward(M * N)
    assert b + b == 2 * b
    assert (b - b).is_zero()
    assert b / 4 == pushforward(M * N / 4)


# --- serialization --------------------------------------------------------------------------


def test_class_json_format():
    x = Fraction(1, 2) - C2A / 16 + M * N * 3 - M
    data = x.to_json()
    assert data == {
        "deg0": "1/2",
        "deg1": {"c1(M)": "-1/1"},
        "deg2": {"c1(M)*c1(N)": "3/1", "c2(A)": "-1/16"},
    }


@given(classes())
def test_class_json_round_trip(x):
    assert GradedClass.from_json(x.to_json()) == x


def test_base_json_round_trip():
    b = pushforward(M * N / 4) + BaseClass.analytic_term(Fraction(-3, 2))
    assert BaseClass.from_json(b.to_json()) == b
    assert b.to_json()["analytic"] == "-3/2"


def test_rendering():
    assert str(GradedClass()) == "0"
    assert str(Fraction(1, 2) - C2A / 16) == "1/2 - (1/16)*c2(A)"
    assert str(pushforward(M * N) * -1) == "-pi_*(c1(M)*c1(N))"
