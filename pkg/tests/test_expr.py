import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vexspaces import Grid
from vexspaces.cli.expr import (
    ExprError,
    coordinate_function,
    evaluate,
    parse_expression,
    sample_expression,
    symbol_text,
)


def ev(text, **env):
    return evaluate(parse_expression(text), **env)


def test_precedence():
    assert ev("2 + 3 * 4") == 14.0
    assert ev("2 * 3 ^ 2") == 18.0
    assert ev("(2 + 3) * 4") == 20.0
    assert ev("1 - 2 - 3") == -4.0  # left-assoc add/sub
    assert ev("12 / 3 / 2") == 2.0


def test_power_binds_tighter_than_unary_minus():
    assert ev("-2^2") == -4.0
    assert ev("2^-2") == 0.25
    assert ev("2^3^2") == 512.0  # right-assoc
    assert ev("2**3**2") == 512.0
    assert ev("(-2)^2") == 4.0


def test_whitespace_insensitive():
    assert ev("2+3*4") == ev("  2 +  3  *4 ") == 14.0


def test_sin_range_example(grid64):
    values = sample_expression("2 + 0.5*sin(6.283185*x1)", grid64)
    assert np.all(values >= 1.5) and np.all(values <= 2.5)
    assert values.min() < 1.6 and values.max() > 2.4


def test_division_by_zero_is_load_time_error(grid64):
    with pytest.raises(ExprError, match="not finite"):
        sample_expression("1/(x1 - x1)", grid64)


def test_dist_spot_values():
    # torus distance to 0.5: 0 at the point, 0.5 at the antipode
    assert ev("min(3, 2 + dist(x1, 0.5))", x1=0.5) == 2.0
    assert ev("min(3, 2 + dist(x1, 0.5))", x1=0.0) == 2.5
    assert ev("dist(x1, 0.9)", x1=0.1) == pytest.approx(0.2)


def test_dist_two_dimensional():
    grid = Grid(2, 16)
    values = sample_expression("dist(x1, 0.25, 0.75)", grid)
    x1, x2 = grid.coords
    d1 = np.minimum(np.abs(x1 - 0.25) % 1.0, 1.0 - np.abs(x1 - 0.25) % 1.0)
    d2 = np.minimum(np.abs(x2 - 0.75) % 1.0, 1.0 - np.abs(x2 - 0.75) % 1.0)
    assert np.allclose(values, np.sqrt(d1**2 + d2**2), atol=1e-14)
    with pytest.raises(ExprError, match="2-d"):
        sample_expression("dist(x1, 0.25, 0.75)", Grid(1, 16))


def test_syntax_errors_carry_position():
    with pytest.raises(ExprError, match="position"):
        parse_expression("2 +")
    with pytest.raises(ExprError, match="position 4"):
        parse_expression("2 + )")
    with pytest.raises(ExprError, match="unexpected character"):
        parse_expression("2 @ 3")
    with pytest.raises(ExprError, match="unknown identifier"):
        parse_expression("2 * foo")
    with pytest.raises(ExprError, match="unknown function"):
        parse_expression("bogus(1)")


def test_arity_errors():
    with pytest.raises(ExprError, match="argument"):
        parse_expression("sin(1, 2)")
    with pytest.raises(ExprError, match="argument"):
        parse_expression("min(1)")
    with pytest.raises(ExprError, match="dist takes 2 or 3"):
        parse_expression("dist(1, 2, 3, 4)")


def test_functions():
    assert ev("abs(-3.5)") == 3.5
    assert ev("max(2, 3)") == 3.0
    assert ev("exp(0)") == 1.0
    assert ev("cos(0)") == 1.0


def test_unknown_variable_at_evaluation(grid64):
    with pytest.raises(ExprError, match="x2 is not defined"):
        sample_expression("x2", grid64)


@settings(max_examples=40, deadline=None)
@given(
    a=st.floats(-10, 10, allow_nan=False),
    b=st.floats(-10, 10, allow_nan=False),
    c=st.floats(0.1, 10, allow_nan=False),
)
def test_arithmetic_matches_python(a, b, c):
    text = f"{a!r} + {b!r} * {c!r} - {a!r}/{c!r}"
    assert ev(text) == pytest.approx(a + b * c - a / c, rel=1e-12, abs=1e-12)


def test_coordinate_function_resamples():
    fn = coordinate_function("0.5 + dist(x1, 0.5)")
    for n in (32, 64):
        g = Grid(1, n)
        vals = fn(*g.coords)
        assert vals.shape == g.shape
        assert vals.max() == pytest.approx(1.0, abs=1.0 / n)


def test_symbol_text_normalizes_and_validates():
    assert symbol_text("xi1^2 + 1", dim=1) == "xi1**2 + 1"
    with pytest.raises(ExprError, match="not differentiable"):
        symbol_text("min(xi1, 1)", dim=1)
    with pytest.raises(ExprError, match="xi1/xi2"):
        symbol_text("x1 + 1", dim=1)
    with pytest.raises(ExprError, match="1-d"):
        symbol_text("xi2", dim=1)
    assert symbol_text("xi1 * xi2", dim=2) == "xi1 * xi2"
