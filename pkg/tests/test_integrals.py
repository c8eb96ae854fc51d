import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import GALLERY, SMALL, algebra, double
from quasihopf.errors import NormalizationImpossible, NotNormalized
from quasihopf.integrals import (
    IntegralData,
    conjecture_probe,
    integral_data,
    is_semisimple,
    normalize_pair,
    projection_P,
    projection_P_tilde,
    random_endomorphisms,
    rank_via_integrals,
    solve_integrals,
    structure_checks,
    trace_formula,
    trace_formula_tensor,
    twisted_square_trace,
)
from quasihopf.linalg import identity_matrix, zero_matrix

ONE, ZERO = mpq(1), mpq(0)
RANKS = {"group:Z2": 2, "group:Z3": 3, "group:Z4": 4, "group:S3": 6, "sweedler": 0,
         "dual-omega:Z2:1": 2, "dual-omega:Z3:1": 3}


def trace(m):
    return sum((m[i][i] for i in range(len(m))), ZERO)


@pytest.mark.parametrize("name", ["group:Z3", "group:S3"])
def test_group_algebra_integrals(name):
    H = algebra(name)
    t, r, mu = solve_integrals(H)
    assert t == r == [ONE] * H.dim
    assert mu == H.counit


def test_kz2_normalized_pair():
    data = integral_data(algebra("group:Z2"))
    assert data.lam == [ONE, ZERO]
    assert data.r == [ONE, ONE]


def test_sweedler_integrals():
    # basis 1, g, x, gx with xg = -gx
    H = algebra("sweedler")
    t, r, mu = solve_integrals(H)
    assert t == [0, 0, 1, 1]
    assert r == [0, 0, 1, -1]
    assert mu == [1, -1, 0, 0]
    assert H.pair(H.counit, t) == 0


def test_zero_functional_cannot_normalize():
    H = algebra("group:Z2")
    with pytest.raises(NormalizationImpossible):
        normalize_pair(H, [ZERO, ZERO], [ONE, ONE])


@pytest.mark.parametrize("name", GALLERY + ["dual-omega:Z2:0"])
def test_structure(name):
    report = structure_checks(algebra(name))
    assert report.valid, [(c.name, c.witness) for c in report.failures()]


def test_projection_of_unit_in_group_algebra():
    H = algebra("group:Z4")
    assert projection_P(H, H.unit) == [ONE] * 4
    assert projection_P_tilde(H, H.unit) == [ONE] * 4


@pytest.mark.parametrize("name", ["sweedler", "dual-omega:Z3:1"])
def test_projections_idempotent(name):
    H = algebra(name)
    for i in range(H.dim):
        e = H.basis_vector(i)
        once = projection_P(H, e)
        assert projection_P(H, once) == once
        once = projection_P_tilde(H, e)
        assert projection_P_tilde(H, once) == once


def test_trace_of_zero_and_identity():
    H = algebra("group:Z2")
    data = integral_data(H)
    assert trace_formula(H, data, zero_matrix(2, 2)) == 0
    assert trace_formula(H, data, identity_matrix(2)) == 2


@pytest.mark.parametrize("name", GALLERY)
def test_trace_random_endomorphisms(name):
    H = algebra(name)
    data = integral_data(H)
    T = trace_formula_tensor(H, data)
    for chi in random_endomorphisms(H.dim, 20, seed=0):
        assert trace_formula(H, data, chi, T) == trace(chi)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=16, max_size=16))
def test_trace_formula_property(entries):
    H = algebra("sweedler")
    chi = [[mpq(entries[4 * i + j]) for j in range(4)] for i in range(4)]
    assert trace_formula(H, integral_data(H), chi) == trace(chi)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_trace_formula_property_twisted(entries):
    H = algebra("dual-omega:Z2:1")
    chi = [[mpq(entries[0]), mpq(entries[1])], [mpq(entries[2]), mpq(entries[3])]]
    assert trace_formula(H, integral_data(H), chi) == trace(chi)


def test_unnormalized_pair_rejected():
    H = algebra("group:Z2")
    data = integral_data(H)
    doubled = IntegralData(data.left, data.right, data.mu, data.lam, [2 * c for c in data.r])
    with pytest.raises(NotNormalized):
        trace_formula_tensor(H, doubled)


@pytest.mark.parametrize("name", GALLERY)
def test_twisted_square_trace(name):
    H = algebra(name)
    data = integral_data(H)
    expected = H.pair(H.counit, data.r) * H.pair(data.lam, H.mul(H.S_inv(H.alpha), H.beta))
    assert twisted_square_trace(H) == expected == RANKS[name]


def test_sweedler_twisted_square_trace_vanishes():
    # S^2 is conjugation by g, which has trace 0 on H4
    H = algebra("sweedler")
    assert twisted_square_trace(H) == 0
    assert H.pair(H.counit, integral_data(H).r) == 0


@pytest.mark.parametrize("name", SMALL + ["dual-omega:Z3:1"])
def test_rank_three_ways(name):
    report = rank_via_integrals(algebra(name), double(name))
    assert report.three_way_equal
    assert report.rank_scalar == RANKS[name]
    assert report.mu_op_is_mu_S


@pytest.mark.parametrize("name", ["group:S3", "dual-omega:Z2:1"])
def test_semisimple(name):
    H = algebra(name)
    assert is_semisimple(H)
    assert H.pair(H.counit, integral_data(H).r) != 0


def test_sweedler_not_semisimple():
    H = algebra("sweedler")
    assert not is_semisimple(H)
    assert rank_via_integrals(H, double("sweedler")).epsilon_r == 0


@pytest.mark.parametrize("name", SMALL)
def test_conjecture_probe_runs(name):
    assert conjecture_probe(algebra(name), double(name)) is True
