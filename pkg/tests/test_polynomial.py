from fractions import Fraction

import pytest

from gaincount.polynomial import V, Y, Z, Polynomial, format_variable, m_var, u

A = u(("max-zd", (1, 0)))
B = u(("max-zd", (0, 2)))


# Tests for arithmetic
def test_zero_terms_are_dropped():
    assert Polynomial({((("v",), 1),): 0}) == Polynomial()
    assert (V - V) == 0
    assert not Polynomial()


def test_add_and_multiply():
    p = (V + 1) * (V - 1)
    assert p == V**2 - 1
    assert p.coefficient(((("v",), 2),)) == 1
    assert p.coefficient(()) == -1


def test_integers_promote():
    assert 2 + V == V + 2
    assert 3 - V == -(V - 3)
    assert 2 * Z == Z + Z


def test_negative_power():
    with pytest.raises(ValueError):
        V**-1


def test_promote_rejects_other_types():
    with pytest.raises(TypeError):
        V + "x"


def test_degree_and_variables():
    p = A * V**3 + Z
    assert p.degree(("v",)) == 3
    assert p.variables() == {("u", ("max-zd", (1, 0))), ("v",), ("z",)}
    assert p.u_keys() == {("max-zd", (1, 0))}


# Tests for evaluation and substitution
def test_evaluate_is_exact():
    p = V**2 + 3 * V * Z
    assert p.evaluate({("v",): Fraction(1, 2), ("z",): 2}) == Fraction(13, 4)


def test_substitute():
    p = (V + Z) ** 2
    assert p.substitute(("z",), 1) == V**2 + 2 * V + 1
    assert p.substitute(("v",), Y) == (Y + Z) ** 2


def test_map_variables_merges_terms():
    p = A + B
    collapsed = p.map_variables(lambda var: ("u",) if var[0] == "u" else var)
    assert collapsed == 2 * Polynomial.variable(("u",))


# Tests for rendering
def test_format_variable():
    assert format_variable(("u", ("max-zd", (1, -2)))) == "u[(1,-2)]"
    assert format_variable(("m", 0, 1)) == "m[1,2]"
    assert format_variable(("m", 2)) == "m[3]"
    assert format_variable(("z",)) == "z"


def test_str_orders_by_z_then_v():
    p = V * Z + 3 * Z + 2 * B + A * B - 1
    assert str(p) == "-1 + 2*u[(0,2)] + u[(0,2)]*u[(1,0)] + 3*z + v*z"


def test_str_of_zero():
    assert str(Polynomial()) == "0"


def test_to_dict():
    p = 2 * A**2 * V
    assert p.to_dict() == [{"coef": 2, "u": [("max-zd", (1, 0)), ("max-zd", (1, 0))], "v": 1}]


def test_m_var():
    assert m_var(0, 1) == Polynomial.variable(("m", 0, 1))
    assert str(m_var(1) ** 2) == "m[2]^2"
