import pytest
import sympy as sp

from psifrac.jets import T, U, W, X
from psifrac.parser import ParseError, parse_expr


@pytest.mark.parametrize(
    "spec,expected",
    [
        ("1", sp.Integer(1)),
        ("t", T),
        ("x", X),
        ("u", U),
        ("psi", W),
        ("t^2", T**2),
        ("2^-1 * t", T / 2),
        ("exp(t)", sp.exp(T)),
        ("exp(-psi)", sp.exp(-W)),
        ("psi^3 + 2*psi", W**3 + 2 * W),
        ("-u/(1+u)", -U / (1 + U)),
        ("(t+1)^2 / (x - u)", (T + 1) ** 2 / (X - U)),
        ("3.5*x*t", sp.Float("3.5") * X * T),
    ],
)
def test_grammar_accepts(spec, expected):
    assert sp.simplify(parse_expr(spec) - expected) == 0


def test_precedence():
    # '^' binds tighter than unary minus and '*'
    assert parse_expr("-t^2") == -(T**2)
    assert parse_expr("2*t^3") == 2 * T**3


@pytest.mark.parametrize(
    "bad",
    ["", "   ", "t^x", "t^2.5", "sin(t)", "t +", "psi(", "2**3", "@", "exp 4", "y"],
)
def test_grammar_rejects(bad):
    with pytest.raises(ParseError):
        parse_expr(bad)


def test_nested_parentheses():
    e = parse_expr("((t + (x*u))^2)")
    assert sp.expand(e) == sp.expand((T + X * U) ** 2)


def test_division_chain_left_associative():
    assert sp.simplify(parse_expr("8/2/2") - 2) == 0
