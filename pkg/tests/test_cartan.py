from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from symquiver.cartan import (
    CartanError,
    OrientationError,
    bilinear_form,
    check_symmetrizer,
    component_types,
    derived_constants,
    dynkin_type,
    flip_orientation,
    is_positive_definite,
    is_sink,
    is_source,
    minimal_symmetrizer,
    quadratic_form,
    validate_cartan,
    validate_orientation,
)

B2 = [[2, -1], [-2, 2]]
B3 = [[2, -1, 0], [-1, 2, -1], [0, -2, 2]]
RANK3 = [[2, -4, 0], [-6, 2, -3], [0, -9, 2]]


@pytest.mark.parametrize("raw, expected", [
    (B2, (2, 1)),
    ([[2, -1], [-1, 2]], (1, 1)),
    ([[2, -3], [-1, 2]], (1, 3)),
    (B3, (2, 2, 1)),
    ([[2, -1, 0], [-1, 2, -2], [0, -1, 2]], (1, 1, 2)),
    (RANK3, (9, 6, 2)),
    ([[2, -2], [-2, 2]], (1, 1)),
])
def test_minimal_symmetrizer(raw, expected):
    assert minimal_symmetrizer(validate_cartan(raw)) == expected


def test_disconnected_symmetrizer_is_minimal_per_component():
    raw = [[2, -1, 0, 0], [-2, 2, 0, 0], [0, 0, 2, -1], [0, 0, -1, 2]]
    assert minimal_symmetrizer(validate_cartan(raw)) == (2, 1, 1, 1)


def test_rank3_constants():
    c = validate_cartan(RANK3)
    dc = derived_constants(c, (9, 6, 2))
    assert (dc.g[0, 1], dc.f[0, 1], dc.f[1, 0]) == (2, 2, 3)
    assert (dc.g[1, 2], dc.f[1, 2], dc.f[2, 1]) == (3, 1, 3)


def test_b2_and_g2_constants():
    dc = derived_constants(validate_cartan(B2), (2, 1))
    assert (dc.f[0, 1], dc.f[1, 0]) == (1, 2)
    dc = derived_constants(validate_cartan([[2, -3], [-1, 2]]), (1, 3))
    assert (dc.f[0, 1], dc.f[1, 0]) == (3, 1)


@pytest.mark.parametrize("raw, tag", [
    ([[2, 1], [-1, 2]], "C2"),
    ([[3, -1], [-1, 2]], "C1"),
    ([[2, -1], [0, 2]], "C3"),
    ([[2, -1, -1], [-1, 2, -1], [-2, -1, 2]], "C4"),
])
def test_violations_are_reported(raw, tag):
    with pytest.raises(CartanError) as err:
        validate_cartan(raw)
    assert any(v.startswith(tag) for v in err.value.violations)


def test_symmetrizer_check():
    c = validate_cartan(B2)
    assert check_symmetrizer(c, (4, 2)) == (4, 2)
    with pytest.raises(ValueError):
        check_symmetrizer(c, (1, 1))


def test_quadratic_form_b2():
    c = validate_cartan(B2)
    assert quadratic_form(c, (2, 1), (1, 1)) == 1
    assert bilinear_form(c, (2, 1), (1, 0), (0, 1)) == -2


@given(st.lists(st.integers(-5, 5), min_size=3, max_size=3), st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_polarization(x, y):
    c = validate_cartan(RANK3)
    d = (9, 6, 2)
    s = [a + b for a, b in zip(x, y)]
    assert quadratic_form(c, d, s) - quadratic_form(c, d, x) - quadratic_form(c, d, y) == bilinear_form(c, d, x, y)
    assert bilinear_form(c, d, x, x) == 2 * quadratic_form(c, d, x)


@pytest.mark.parametrize("raw, label", [
    (B2, "B2"), (B3, "B3"), ([[2, -1, 0], [-1, 2, -2], [0, -1, 2]], "C3"),
    ([[2, -3], [-1, 2]], "G2"), ([[2, -1], [-1, 2]], "A2"), (RANK3, "NotDynkin"),
    ([[2, -2], [-2, 2]], "NotDynkin"),
    ([[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]], "F4"),
    ([[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]], "D4"),
])
def test_dynkin_labels(raw, label):
    c = validate_cartan(raw)
    assert dynkin_type(c).label() == label
    assert is_positive_definite(c) == (label != "NotDynkin")


def test_component_types_mixed():
    raw = [[2, -1, 0, 0], [-2, 2, 0, 0], [0, 0, 2, -2], [0, 0, -2, 2]]
    types = component_types(validate_cartan(raw))
    assert types[0] == ("B", 2) and types[1] is None


def test_orientation_errors():
    c = validate_cartan(B3)
    assert validate_orientation(c, [(0, 1), (1, 2)]) == frozenset({(0, 1), (1, 2)})
    with pytest.raises(OrientationError):
        validate_orientation(c, [(0, 1)])
    with pytest.raises(OrientationError):
        validate_orientation(c, [(0, 1), (1, 0), (1, 2)])
    with pytest.raises(OrientationError):
        validate_orientation(c, [(0, 2), (0, 1), (1, 2)])
    tri = validate_cartan([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])
    with pytest.raises(OrientationError, match="cycle"):
        validate_orientation(tri, [(0, 1), (1, 2), (2, 0)])


def test_flip_b3():
    assert flip_orientation({(0, 1), (1, 2)}, 0) == frozenset({(1, 0), (1, 2)})


@given(st.permutations(range(4)), st.integers(0, 3))
def test_flip_is_involution_and_swaps_sink_source(order, v):
    c = validate_cartan([[2, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, -1], [0, 0, -1, 2]])
    pos = {x: k for k, x in enumerate(order)}
    omega = frozenset((i, j) if pos[i] < pos[j] else (j, i) for i, j in c.edges())
    validate_orientation(c, omega)
    assert flip_orientation(flip_orientation(omega, v), v) == omega
    if is_sink(omega, v):
        assert is_source(flip_orientation(omega, v), v)
