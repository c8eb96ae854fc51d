import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from quasihopf.errors import ShapeMismatch
from quasihopf.linalg import (
    Tensor,
    flat_index,
    identity_matrix,
    inverse,
    kernel,
    kron,
    mat_vec,
    matmul,
    rank,
    solve_linear,
    trace,
    unflat_index,
    zero_matrix,
)
from quasihopf.scalars import root_of_unity

ints = st.integers(min_value=-4, max_value=4).map(mpq)


def matrices(rows, cols):
    return st.lists(st.lists(ints, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def test_identity_solve():
    b = [mpq(3), mpq(-1), mpq(1, 2)]
    assert solve_linear(identity_matrix(3), b) == b


def test_inconsistent_system():
    a = [[mpq(1), mpq(1)], [mpq(2), mpq(2)]]
    assert solve_linear(a, [mpq(1), mpq(3)]) is None


def test_random_invertible_5x5():
    rng = random.Random(7)
    while True:
        a = [[mpq(rng.randint(-5, 5)) for _ in range(5)] for _ in range(5)]
        if rank(a) == 5:
            break
    b = [mpq(rng.randint(-5, 5)) for _ in range(5)]
    x = solve_linear(a, b)
    assert mat_vec(a, x) == b
    assert matmul(a, inverse(a)) == identity_matrix(5)


def test_solve_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        solve_linear(identity_matrix(2), [mpq(1)])


def test_kernel_of_zero_and_identity():
    assert len(kernel(zero_matrix(3, 3))) == 3
    assert kernel(identity_matrix(4)) == []


def test_singular_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        inverse([[mpq(1), mpq(2)], [mpq(2), mpq(4)]])


@settings(max_examples=80)
@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_rank_nullity_and_kernel(rows, cols, data):
    a = data.draw(matrices(rows, cols))
    ker = kernel(a, cols)
    assert rank(a) + len(ker) == cols
    for v in ker:
        assert mat_vec(a, v) == [0] * rows
    if ker:
        assert rank(ker) == len(ker)


@settings(max_examples=60)
@given(st.integers(1, 4), st.data())
def test_solutions_substitute(n, data):
    a = data.draw(matrices(n, n))
    b = data.draw(st.lists(ints, min_size=n, max_size=n))
    x = solve_linear(a, b)
    if x is None:
        assert rank(a) < n
    else:
        assert mat_vec(a, x) == b


def test_trace_basics():
    assert trace(identity_matrix(4)) == 4
    nil = [[mpq(0), mpq(1), mpq(5)], [mpq(0), mpq(0), mpq(2)], [mpq(0)] * 3]
    assert trace(nil) == 0
    with pytest.raises(ShapeMismatch):
        trace([[mpq(1), mpq(2)]])


@settings(max_examples=40)
@given(st.integers(1, 4), st.data())
def test_trace_cyclic(n, data):
    a = data.draw(matrices(n, n))
    b = data.draw(matrices(n, n))
    assert trace(matmul(a, b)) == trace(matmul(b, a))


def test_trace_over_cyclotomics():
    z = root_of_unity(3, 1)
    assert trace([[z, mpq(0)], [mpq(0), z * z]]) == -1


def test_kron_dimensions():
    k = kron([[mpq(1), mpq(2)]], identity_matrix(2))
    assert len(k) == 2 and len(k[0]) == 4


def test_unit_tensor_product():
    one = Tensor.from_vector([mpq(1), mpq(0)])
    assert one.tensor_product(one) == Tensor(2, 2, {(0, 0): mpq(1)})


def test_two_term_product():
    a = Tensor.from_vector([mpq(1), mpq(1), mpq(0)])
    b = Tensor.basis(3, (0,))
    assert dict(a.tensor_product(b).items()) == {(0, 0): 1, (1, 0): 1}


vectors = st.lists(ints, min_size=3, max_size=3).map(Tensor.from_vector)


@given(vectors, vectors, vectors)
def test_tensor_product_associative_bilinear(a, b, c):
    assert a.tensor_product(b).tensor_product(c) == a.tensor_product(b.tensor_product(c))
    assert (a + b).tensor_product(c) == a.tensor_product(c) + b.tensor_product(c)
    assert a.scale(mpq(3)).tensor_product(b) == a.tensor_product(b).scale(mpq(3))


def test_dense_round_trip_big_endian():
    coords = [mpq(i) for i in range(8)]
    t = Tensor.from_dense(2, 3, coords)
    assert t.to_dense() == coords
    assert dict(t.items())[(1, 0, 0)] == 4
    assert flat_index((1, 0, 1), 2) == 5
    assert unflat_index(5, 2, 3) == (1, 0, 1)


def test_permute():
    t = Tensor(2, 3, {(0, 1, 1): mpq(2)})
    # slot s of the result is old slot perm[s]
    assert dict(t.permute((2, 0, 1)).items()) == {(1, 0, 1): 2}


def test_tensor_shape_checks():
    with pytest.raises(ShapeMismatch):
        Tensor.from_dense(2, 2, [mpq(1)] * 3)
    with pytest.raises(ShapeMismatch):
        Tensor(2, 1, {(2,): mpq(1)})
