import pytest
from gmpy2 import mpq

from conftest import GALLERY, algebra, double
from quasihopf.algebra import validate_presentation
from quasihopf.double import build_double, classical_double_product, double_to_json, verify_quasitriangular
from quasihopf.linalg import Tensor

ONE = mpq(1)
DOUBLES = [name for name in GALLERY if name != "group:S3"]


@pytest.mark.parametrize("name", GALLERY)
def test_double_valid_and_quasitriangular(name):
    D = double(name)
    assert D.dim == algebra(name).dim ** 2
    assert validate_presentation(D.inner).valid
    assert verify_quasitriangular(D.inner, D.R).valid


@pytest.mark.parametrize("name", DOUBLES)
def test_unit_and_embedding(name):
    D, H = double(name), algebra(name)
    P = D.inner
    assert P.unit == D.embed(H.unit)
    for x in range(P.dim):
        e = P.basis_vector(x)
        assert P.mul(P.unit, e) == e == P.mul(e, P.unit)
    for i in range(H.dim):
        for j in range(H.dim):
            hi, hj = H.basis_vector(i), H.basis_vector(j)
            assert P.mul(D.embed(hi), D.embed(hj)) == D.embed(H.mul(hi, hj))


@pytest.mark.parametrize("name", DOUBLES)
def test_phi_alpha_beta_embedded(name):
    D, H = double(name), algebra(name)
    P = D.inner
    assert P.alpha == D.embed(H.alpha) and P.beta == D.embed(H.beta)
    # eps is a sum of dual basis vectors; build i_D(Phi) slot by slot
    target = Tensor(P.dim, 3)
    for (a, b, c), v in H.phi.items():
        target = target + Tensor.from_vector(D.embed(H.basis_vector(a))).tensor_product(
            Tensor.from_vector(D.embed(H.basis_vector(b)))).tensor_product(
            Tensor.from_vector(D.embed(H.basis_vector(c)))).scale(v)
    assert P.phi == target


@pytest.mark.parametrize("name", DOUBLES)
def test_counit_of_unit(name):
    P = double(name).inner
    assert P.eps(P.unit) == 1


@pytest.mark.parametrize("name", ["group:Z2", "group:Z3", "group:S3", "sweedler", "dual-omega:Z2:0"])
def test_matches_classical_double(name):
    H = algebra(name)
    D = double(name) if name in GALLERY else build_double(H)
    n = H.dim
    for a in range(n * n):
        for b in range(n * n):
            x = (H.basis_vector(a // n), H.basis_vector(a % n))
            y = (H.basis_vector(b // n), H.basis_vector(b % n))
            assert D.inner.mul(D.inner.basis_vector(a), D.inner.basis_vector(b)) == classical_double_product(H, x, y)


def test_r_matrix_of_kz2():
    D, H = double("group:Z2"), algebra("group:Z2")
    expected = Tensor(4, 2)
    for i in range(2):
        left = Tensor.from_vector(D.embed(H.basis_vector(i)))
        right = Tensor.from_vector(D.element(H.basis_vector(i), H.unit))
        expected = expected + left.tensor_product(right)
    assert D.R == expected


def test_flipped_r_fails_qt3():
    D = double("sweedler")
    for idx, c in D.R.items():
        data = dict(D.R.items())
        data[idx] = -c
        report = verify_quasitriangular(D.inner, Tensor(D.dim, 2, data))
        assert not report["qt3"].passed and report["qt3"].witness is not None


def test_trivial_r_on_group_algebra():
    H = algebra("group:S3")
    assert verify_quasitriangular(H, H.unit_tensor(2)).valid


def test_double_json():
    doc = double_to_json(double("dual-omega:Z2:1"))
    assert doc["dim"] == 4 and len(doc["r_matrix"]) == 16
    assert doc["source"]["dim"] == 2
