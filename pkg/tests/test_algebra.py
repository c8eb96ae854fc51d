import json

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from conftest import GALLERY, algebra
from quasihopf.algebra import (
    Presentation,
    op_cop,
    presentation_from_json,
    presentation_to_json,
    validate_presentation,
)
from quasihopf.errors import InvalidPresentation, ParseError, ShapeMismatch
from quasihopf.gallery import cyclic_group, group_algebra, sweedler_h4
from quasihopf.linalg import Tensor, identity_matrix, matmul

ONE = mpq(1)


def rebuilt(H, **changes):
    doc = presentation_to_json(H)
    doc.update(changes)
    return presentation_from_json(doc, normalize=False)


@pytest.mark.parametrize("name", GALLERY)
def test_gallery_valid(name):
    report = validate_presentation(algebra(name))
    assert report.valid, [c.name for c in report.failures()]


def test_report_lists_every_axiom():
    names = {c.name for c in validate_presentation(algebra("group:Z2")).checks}
    for expected in ("q1_quasi_coassociativity", "q3_pentagon", "q5_alpha", "q5_beta", "q6_phi",
                     "q6_phi_inverse", "q4_counit_middle", "counit_antipode", "counit_alpha_beta"):
        assert expected in names


def test_non_cocycle_phi_breaks_pentagon():
    H = group_algebra(cyclic_group(2))
    bad = Presentation(2, {(i, j): [((i + j) % 2, ONE)] for i in range(2) for j in range(2)}, H.unit,
                       {i: [((i, i), ONE)] for i in range(2)}, H.counit,
                       Tensor(2, 3, {(0, 0, 0): ONE, (1, 1, 1): mpq(-1), (0, 1, 1): ONE}), H.antipode,
                       H.alpha, H.beta, normalize=False)
    report = validate_presentation(bad)
    assert not report["q3_pentagon"].passed
    assert report["q3_pentagon"].witness is not None


def test_shape_errors():
    H = algebra("group:Z2")
    with pytest.raises(ShapeMismatch):
        Presentation(2, {}, H.unit[:1], {}, H.counit, H.phi, H.antipode, H.alpha, H.beta)
    with pytest.raises(ShapeMismatch):
        Presentation(2, {}, H.unit, {}, H.counit, Tensor(2, 2), H.antipode, H.alpha, H.beta)


def test_unit_identities():
    H = sweedler_h4()
    assert H.delta(H.unit) == H.unit_tensor(2)
    assert H.S(H.unit) == H.unit
    assert H.eps(H.unit) == 1


def test_group_like_coproduct_and_harpoon():
    H = algebra("group:Z3")
    g = H.basis_vector(1)
    assert H.delta(g) == Tensor(3, 2, {(1, 1): ONE})
    for k in range(3):
        phi = H.basis_vector(k)
        moved = H.harpoon_left(g, phi)
        for h in range(3):
            assert H.pair(moved, H.basis_vector(h)) == H.pair(phi, H.mul(H.basis_vector(h), g))
        assert moved == H.basis_vector((k - 1) % 3)


@pytest.mark.parametrize("name", ["sweedler", "dual-omega:Z3:1"])
def test_sbar_inverse(name):
    H = algebra(name)
    for i in range(H.dim):
        phi = H.basis_vector(i)
        assert H.Sbar_inv(H.Sbar(phi)) == phi
        assert H.pair(H.Sbar(phi), H.basis_vector(2 % H.dim)) == H.pair(phi, H.S(H.basis_vector(2 % H.dim)))


@given(st.lists(st.integers(-3, 3).map(mpq), min_size=4, max_size=4))
def test_sbar_inverse_random(coords):
    H = sweedler_h4()
    assert H.Sbar_inv(H.Sbar(coords)) == coords


@pytest.mark.parametrize("name", GALLERY)
def test_antipode_inverse(name):
    H = algebra(name)
    assert matmul(H.antipode_matrix, H.antipode_inverse_matrix) == identity_matrix(H.dim)


@pytest.mark.parametrize("name", GALLERY)
@pytest.mark.parametrize("which", ["op", "cop"])
def test_op_cop_valid(name, which):
    assert validate_presentation(op_cop(algebra(name), which)).valid


def test_double_opposite():
    H = algebra("sweedler")
    back = op_cop(op_cop(H, "op"), "op")
    assert back.mul_table == H.mul_table
    assert back.delta_table == H.delta_table
    assert back.phi == H.phi
    assert back.antipode == H.antipode
    assert back.alpha == H.alpha and back.beta == H.beta


def test_op_of_abelian_group_algebra():
    H = algebra("group:Z4")
    op = op_cop(H, "op")
    assert op.mul_table == H.mul_table and op.phi == H.phi
    assert op.alpha == H.alpha and op.beta == H.beta


def test_op_cop_refuses_invalid():
    H = rebuilt(algebra("group:Z2"), alpha=["2", "0"])
    with pytest.raises(InvalidPresentation):
        op_cop(H, "op")


def test_normalization_records_scaling():
    H = group_algebra(cyclic_group(2))
    scaled = Presentation(2, {(i, j): [((i + j) % 2, ONE)] for i in range(2) for j in range(2)}, H.unit,
                          {i: [((i, i), ONE)] for i in range(2)}, H.counit, H.phi, H.antipode,
                          [mpq(2), mpq(0)], [mpq(1, 2), mpq(0)])
    assert scaled.scaling == (2, mpq(1, 2))
    assert scaled.alpha == H.alpha and validate_presentation(scaled).valid


@pytest.mark.parametrize("name", ["sweedler", "dual-omega:Z3:1"])
def test_json_round_trip(name):
    H = algebra(name)
    text = json.dumps(presentation_to_json(H))
    back = presentation_from_json(text)
    assert presentation_to_json(back) == presentation_to_json(H)
    assert validate_presentation(back).valid


def test_json_antipode_rows_are_images():
    doc = presentation_to_json(sweedler_h4())
    # S(x) = -gx: row 2 has -1 in the gx column
    assert doc["antipode"][2] == ["0", "0", "0", "-1"]


@pytest.mark.parametrize("doc", ["{", "[]", "{\"dim\": 2}", json.dumps({**presentation_to_json(sweedler_h4()), "phi": ["1"]})])
def test_json_parse_errors(doc):
    with pytest.raises(ParseError):
        presentation_from_json(doc)
