from itertools import product

import pytest
from gmpy2 import mpq

from conftest import algebra
from quasihopf.algebra import validate_presentation
from quasihopf.double import DoublePresentation
from quasihopf.errors import CocycleInvalid, InvalidGroup, ParseError
from quasihopf.gallery import (
    GroupTable,
    ThreeCocycle,
    cocycle_cyclic,
    cyclic_group,
    dual_group_algebra_twisted,
    example,
    symmetric_group,
)
from quasihopf.linalg import trace
from quasihopf.scalars import root_of_unity


def test_groups_check():
    assert cyclic_group(5).order == 5
    S3 = symmetric_group(3)
    assert S3.order == 6
    assert any(S3.mul(a, b) != S3.mul(b, a) for a, b in product(range(6), repeat=2))


def test_bad_group_rejected():
    with pytest.raises(InvalidGroup):
        GroupTable(2, ((0, 1), (1, 1)), (0, 1), 0).check()


def test_z2_cocycle_values():
    w = cocycle_cyclic(2, 1)
    for a, b, c in product(range(2), repeat=3):
        assert w(a, b, c) == (-1 if (a, b, c) == (1, 1, 1) else 1)


def test_z3_cocycle_is_exhaustively_valid():
    w = cocycle_cyclic(3, 1)
    values = {w(a, b, c) for a, b, c in product(range(3), repeat=3)}
    assert values <= {1, root_of_unity(3, 1), root_of_unity(3, 2)}
    assert w.cocycle_failure() is None and w.normalization_failure() is None


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_trivial_class_is_constant(n):
    w = cocycle_cyclic(n, 0)
    assert all(w(a, b, c) == 1 for a, b, c in product(range(n), repeat=3))


def test_cocycle_range_checked():
    with pytest.raises(CocycleInvalid):
        cocycle_cyclic(3, 3)


def test_twisted_z2_beta_and_phi():
    H = algebra("dual-omega:Z2:1")
    assert H.beta == [mpq(1), mpq(-1)]
    assert H.phi.data[(1, 1, 1)] == -1


def test_untwisted_dual_is_hopf():
    H = example("dual-omega:Z2:0")
    assert H.phi == H.unit_tensor(3)
    assert validate_presentation(H).valid


def test_sweedler_square_of_antipode():
    H = algebra("sweedler")
    s2 = [[H.S(H.basis_vector(j), 2)[i] for j in range(4)] for i in range(4)]
    assert [s2[i][i] for i in range(4)] == [1, 1, -1, -1]
    assert trace(s2) == 0


def broken_cocycle():
    w = cocycle_cyclic(2, 1)
    values = [[[w(a, b, c) for c in range(2)] for b in range(2)] for a in range(2)]
    values[1][1][0] = mpq(-1)
    return ThreeCocycle(w.group, tuple(tuple(tuple(r) for r in m) for m in values))


def test_pentagon_tracks_cocycle_identity():
    good = cocycle_cyclic(2, 1)
    assert validate_presentation(dual_group_algebra_twisted(good.group, good))["q3_pentagon"].passed
    bad = broken_cocycle()
    with pytest.raises(CocycleInvalid):
        bad.check()
    H = dual_group_algebra_twisted(bad.group, bad, check=False)
    assert bad.cocycle_failure() is not None
    assert not validate_presentation(H)["q3_pentagon"].passed


@pytest.mark.parametrize("name,dim", [("group:Z2", 2), ("group:Z4", 4), ("group:S3", 6), ("sweedler", 4),
                                      ("dual-omega:Z3:1", 3)])
def test_example_names(name, dim):
    H = example(name)
    assert H.dim == dim


def test_dpr_name_gives_double():
    D = example("dpr:Z2:1")
    assert isinstance(D, DoublePresentation) and D.dim == 4


@pytest.mark.parametrize("name", ["group:Z2:1", "dual-omega:S3:1", "dpr:Z2:2", "nothing", "group:Q8"])
def test_bad_names(name):
    with pytest.raises(ParseError):
        example(name)
