from __future__ import annotations

import random

import pytest

from symquiver.algebra import (
    AlgebraSpec,
    adjunction,
    adjunction_inverse,
    arrow_key,
    build_algebra,
    dual_basis_element,
    free_basis,
    left_basis,
    parse_arrow_key,
    right_basis,
    tensor_eps,
    tensor_space,
    trace_pairing,
)
from symquiver.cartan import OrientationError
from symquiver.linalg import GF, ExactMatrix, block_diag, unvec
from symquiver.rep import commutant_basis

PAIRS = [
    ([[2, -1], [-2, 2]], [(0, 1)]),
    ([[2, -3], [-1, 2]], [(0, 1)]),
    ([[2, -4, 0], [-6, 2, -3], [0, -9, 2]], [(0, 1), (1, 2)]),
    ([[2, -2], [-2, 2]], [(0, 1)]),
]


def _random_linear(kb: ExactMatrix, rows: int, cols: int, rng: random.Random, fd) -> ExactMatrix:
    """A random element of the span of the commutant basis ``kb``."""
    co = [rng.randint(-3, 3) for _ in range(kb.cols)]
    v = [sum(co[c] * kb[r, c] for c in range(kb.cols)) for r in range(kb.rows)]
    return unvec([fd.coerce(x) for x in v], rows, cols, fd)


def test_b2_relations(spec):
    rel = spec("b2").relations()
    assert "eps1^2 = 0" in rel and "eps2 = 0" in rel
    pi = spec("b2", kind="Pi").relations()
    assert "-a21 a12 = 0" in pi
    assert len(pi) == len(rel) + 1 + 2


def test_arrows_and_pairs(spec):
    h = spec("rank3_example")
    assert len(h.arrows) == 2 + 3
    assert len(h.as_kind("Pi").arrows) == 2 * (2 + 3)
    assert h.pairs == ((0, 1), (1, 2))


def test_arrow_keys():
    assert arrow_key((0, 1, 2)) == "alpha:1:2:3"
    assert parse_arrow_key("alpha:2:3:1") == (1, 2, 0)
    with pytest.raises(ValueError):
        parse_arrow_key("eps:1:2:1")


def test_spec_json_roundtrip(spec):
    for name in ("b2", "rank3_example"):
        s = spec(name)
        assert AlgebraSpec.from_json(s.to_json()) == s
    s = spec("g2", field=GF(7))
    assert AlgebraSpec.from_json(s.to_json()).field == GF(7)


def test_build_algebra_rejects_bad_orientation():
    with pytest.raises(OrientationError):
        build_algebra([[2, -1], [-2, 2]], None, [])


def test_bases_sizes(spec):
    s = spec("rank3_example")
    # i_L_j has g_ij f_ij elements, i_R_j has g_ij f_ji
    assert len(left_basis(s, 0, 1)) == 2 * 2
    assert len(right_basis(s, 0, 1)) == 2 * 3
    assert dual_basis_element(s, 1, 0, (1, 0)) == (1, s.f(1, 0) - 1)


def test_tensor_with_free_module_is_free(spec):
    s = spec("b2")
    e2 = ExactMatrix.zeros(1, 1)
    t = tensor_eps(s, 0, 1, e2)
    assert t.rows == 2
    # free of rank 1 over H_1 = K[eps]/(eps^2)
    assert t.rank() == 1 and (t ** 2).is_zero()


def test_tensor_with_non_free_input(spec):
    s = spec("b2")
    assert tensor_space(s, 1, 0, ExactMatrix.zeros(1, 1)).dim == 1


@pytest.mark.parametrize("c, omega", PAIRS)
def test_tensor_of_free_is_free(c, omega):
    s = build_algebra(c, None, omega)
    for i, j in [(0, 1), (1, 0)]:
        en = ExactMatrix.shift(s.ci(j))
        t = tensor_eps(s, i, j, en)
        # i_H_j is free of rank |c_ij| over H_i
        assert t.rows == abs(c[i][j]) * s.ci(i)
        assert free_basis(t, s.ci(i)).rank() == t.rows


@pytest.mark.parametrize("c, omega", PAIRS)
def test_adjunction_roundtrip_and_linearity(c, omega):
    s = build_algebra(c, None, omega)
    rng = random.Random(11)
    fd = s.field
    for i, j in [(0, 1), (1, 0)]:
        em = block_diag([ExactMatrix.shift(s.ci(i))] * 2)
        en = ExactMatrix.shift(s.ci(j))
        tji = tensor_eps(s, j, i, em)
        kb, _ = commutant_basis(tji, en)
        for _ in range(3):
            phi = _random_linear(kb, en.rows, tji.rows, rng, fd)
            g = adjunction(s, j, i, phi, em, en)
            assert g @ em == tensor_eps(s, i, j, en) @ g
            assert adjunction_inverse(s, j, i, g, en) == phi


@pytest.mark.parametrize("c, omega", PAIRS)
def test_trace_pairing_compatible_with_adjunction(c, omega):
    s = build_algebra(c, None, omega)
    rng = random.Random(3)
    fd = s.field
    for i, j in [(0, 1), (1, 0)]:
        em = block_diag([ExactMatrix.shift(s.ci(i))] * 2)
        en = ExactMatrix.shift(s.ci(j))
        tji, tij = tensor_eps(s, j, i, em), tensor_eps(s, i, j, en)
        kb, _ = commutant_basis(tji, en)
        kc, _ = commutant_basis(tij, em)
        for _ in range(4):
            phi = _random_linear(kb, en.rows, tji.rows, rng, fd)
            psi = _random_linear(kc, em.rows, tij.rows, rng, fd)
            lhs = trace_pairing(s, i, adjunction(s, j, i, phi, em), psi, em, tij)
            rhs = trace_pairing(s, j, phi, adjunction(s, i, j, psi, en), tji, en)
            assert lhs == rhs


def test_trace_pairing_rejects_nonlinear(spec):
    s = spec("b2")
    e = ExactMatrix.shift(2)
    bad = ExactMatrix.from_rows([[1, 0], [0, 0]])
    with pytest.raises(ValueError):
        trace_pairing(s, 0, bad, ExactMatrix.identity(2), e, e)


def test_free_basis_rejects_non_free():
    with pytest.raises(ValueError):
        free_basis(ExactMatrix.zeros(2, 2), 2)
