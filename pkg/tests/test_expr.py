"""Tests for the expression parser and evaluator."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from persidskii_aes.errors import (
    ExpressionEvaluationError,
    ExpressionSyntaxError,
    UnknownIdentifierError,
)
from persidskii_aes.expr import Expression, evaluate, parse, to_source


class TestParse:
    """Test cases for parsing expression strings."""

    def test_parse_constant(self):
        """Test that a plain number parses to a constant expression."""
        expression = parse("3.5")

        assert isinstance(expression, Expression)
        assert expression.is_constant
        assert expression(0.0) == 3.5

    def test_parse_time_dependent(self):
        """Test that an expression using t is not constant."""
        assert not parse("-4*t-12").is_constant
        assert parse("sin(pi/2) + e").is_constant

    def test_precedence(self):
        """Test operator precedence and associativity."""
        assert evaluate(parse("2+3*4"), 0.0) == 14.0
        assert evaluate(parse("2^3^2"), 0.0) == 512.0
        assert evaluate(parse("-2^2"), 0.0) == -4.0
        assert evaluate(parse("(2+3)*4"), 0.0) == 20.0
        assert evaluate(parse("8/4/2"), 0.0) == 1.0

    def test_scientific_notation(self):
        """Test numbers with exponents."""
        assert parse("1.5e-3")(0.0) == pytest.approx(1.5e-3)
        assert parse(".5")(0.0) == 0.5

    def test_functions_and_constants(self):
        """Test the supported functions and named constants."""
        expression = parse("(1/3)*exp(-t)*cos(t)")

        assert expression(0.0) == pytest.approx(1 / 3)
        assert expression(1.0) == pytest.approx(math.exp(-1) * math.cos(1) / 3)
        assert parse("abs(-t)")(2.0) == 2.0
        assert parse("sin(pi)")(0.0) == pytest.approx(0.0, abs=1e-15)
        assert parse("e")(0.0) == pytest.approx(math.e)

    @pytest.mark.parametrize("source", ["sqrt(t)", "log(t)", "tan(t)", "s"])
    def test_names_outside_the_grammar(self, source):
        """Test that only sin, cos, exp, abs, t, pi and e are known names."""
        with pytest.raises(UnknownIdentifierError) as excinfo:
            parse(source)

        assert excinfo.value.position == 0

    def test_empty_input(self):
        """Test that an empty string is rejected."""
        with pytest.raises(ExpressionSyntaxError):
            parse("   ")

    def test_unbalanced_parenthesis(self):
        """Test that a missing closing parenthesis is reported."""
        with pytest.raises(ExpressionSyntaxError) as excinfo:
            parse("(1+t")

        assert excinfo.value.position == 4

    def test_implicit_multiplication_rejected(self):
        """Test that juxtaposition such as 2t is a syntax error."""
        with pytest.raises(ExpressionSyntaxError) as excinfo:
            parse("2t")

        assert excinfo.value.position == 1

    def test_unexpected_character(self):
        """Test that characters outside the grammar carry their position."""
        with pytest.raises(ExpressionSyntaxError) as excinfo:
            parse("1 + $")

        assert excinfo.value.position == 4
        assert "^" in str(excinfo.value)

    def test_unknown_identifier(self):
        """Test that unknown names raise UnknownIdentifierError."""
        with pytest.raises(UnknownIdentifierError):
            parse("tan(t)")
        with pytest.raises(UnknownIdentifierError):
            parse("x + 1")

    def test_unknown_identifier_is_syntax_error(self):
        """Test that UnknownIdentifierError can be caught as a syntax error."""
        with pytest.raises(ExpressionSyntaxError):
            parse("y")


class TestEvaluate:
    """Test cases for evaluating parsed expressions."""

    def test_vectorised_evaluation(self):
        """Test evaluation over an array of times."""
        times = np.linspace(0.0, 2.0, 5)
        values = parse("-2*t-5").evaluate(times)

        assert values.shape == times.shape
        np.testing.assert_allclose(values, -2 * times - 5)

    def test_constant_broadcasts_over_grid(self):
        """Test that a constant expression returns one value per time."""
        values = parse("7").evaluate(np.zeros(3))

        np.testing.assert_array_equal(values, np.full(3, 7.0))

    def test_division_by_zero(self):
        """Test that division by zero raises an evaluation error."""
        with pytest.raises(ExpressionEvaluationError):
            parse("1/t")(0.0)

    def test_overflow(self):
        """Test that a non-finite result raises an evaluation error."""
        with pytest.raises(ExpressionEvaluationError):
            parse("exp(t)")(1000.0)

    def test_non_finite_time(self):
        """Test that a non-finite time is rejected."""
        with pytest.raises(ExpressionEvaluationError):
            parse("t")(float("nan"))

    def test_evaluation_error_is_arithmetic_error(self):
        """Test that evaluation errors subclass ArithmeticError."""
        with pytest.raises(ArithmeticError):
            parse("1/(t-1)")(1.0)


class TestToSource:
    """Test cases for canonical printing."""

    def test_canonical_form_parses_back(self):
        """Test that the printed form evaluates like the original."""
        original = parse("-4*t - 12 + (1/8)*exp(-t)*sin(t)^2")
        reparsed = parse(to_source(original))

        for t in (0.0, 0.3, 2.5, 10.0):
            assert reparsed(t) == pytest.approx(original(t), rel=1e-15, abs=1e-15)

    def test_str_returns_source(self):
        """Test that str() keeps the user's text."""
        assert str(parse("t + 1")) == "t + 1"

    @settings(max_examples=50, deadline=None)
    @given(
        a=st.floats(min_value=-100, max_value=100, allow_nan=False),
        b=st.floats(min_value=-100, max_value=100, allow_nan=False),
        t=st.floats(min_value=-10, max_value=10, allow_nan=False),
    )
    def test_affine_expressions(self, a, b, t):
        """Test that printed affine expressions keep their value."""
        expression = parse(f"{a!r}*t + {b!r}")

        assert expression(t) == pytest.approx(a * t + b, rel=1e-12, abs=1e-12)
        assert parse(to_source(expression))(t) == expression(t)
