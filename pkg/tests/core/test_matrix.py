import pytest
from hypothesis import given
from hypothesis import strategies as st
from pydantic import ValidationError

from truncbt.core.errors import (
    InvalidArgumentError,
    NotInvertible,
    PrecisionIncrease,
    RingMismatch,
    ShapeMismatch,
)
from truncbt.core.matrix import MatrixW, algebra, matrix_ops
from truncbt.core.witt import RingDescriptor

Z8 = RingDescriptor(p=2, m=3)
W2F4 = RingDescriptor(p=2, n=2, m=2)


def matrices(ring: RingDescriptor, r: int):
    element = st.tuples(
        *[st.integers(0, ring.modulo - 1) for _ in range(ring.n)]
    )
    return st.lists(
        st.lists(element, min_size=r, max_size=r), min_size=r, max_size=r
    ).map(lambda rows: MatrixW(ring=ring, entries=rows))


def test_construct_from_ints():
    g = MatrixW.from_ints(Z8, [[1, 9], [-1, 2]])
    assert g.to_ints() == [[1, 1], [7, 2]]
    assert (g.rows, g.cols) == (2, 2)
    assert g[1, 0] == 7


def test_construct_validation():
    with pytest.raises(ValidationError):
        MatrixW(ring=Z8, entries=[[1, 2], [3]])
    with pytest.raises(ValidationError):
        MatrixW(ring=Z8, rows=3, entries=[[1, 2], [3, 4]])
    with pytest.raises(InvalidArgumentError):
        MatrixW(ring=W2F4, entries=[[1]]).to_ints()


def test_json_document():
    g = MatrixW(ring=W2F4, entries=[[(1, 0), (0, 1)], [(3, 3), (1, 0)]])
    doc = g.to_json()
    assert doc["rows"] == doc["cols"] == 2
    assert doc["entries"][1][0] == [3, 3]
    assert MatrixW.parse_obj(doc) == g


def test_identity_and_permutation():
    alg = algebra(Z8)
    assert MatrixW.identity(Z8, 2).to_ints() == [[1, 0], [0, 1]]
    swap = MatrixW.wrap(Z8, alg.permutation([1, 0]))
    assert swap.to_ints() == [[0, 1], [1, 0]]
    cycle = MatrixW.wrap(Z8, alg.permutation([1, 2, 0]))
    # P[pi(i)][i] = 1
    assert cycle.to_ints() == [[0, 0, 1], [1, 0, 0], [0, 1, 0]]


def test_inverse_over_z8():
    g = MatrixW.from_ints(Z8, [[1, 2], [3, 4]])
    # det = -2 is not a unit
    assert not g.is_invertible()
    with pytest.raises(NotInvertible):
        g.inverse()
    h = MatrixW.from_ints(Z8, [[1, 2], [2, 1]])
    assert (h @ h.inverse()) == MatrixW.identity(Z8, 2)


@given(matrices(W2F4, 2))
def test_inverse_property(g):
    identity = MatrixW.identity(W2F4, 2)
    if g.is_invertible():
        assert g @ g.inverse() == identity
        assert g.inverse() @ g == identity
    else:
        with pytest.raises(NotInvertible):
            g.inverse()


@given(matrices(W2F4, 2), matrices(W2F4, 2))
def test_sigma_entrywise_is_multiplicative(a, b):
    assert (a @ b).sigma() == a.sigma() @ b.sigma()
    assert a.sigma().sigma_inv() == a
    assert (a + b).transpose() == a.transpose() + b.transpose()


def test_rank_mod_p():
    alg = algebra(Z8)
    assert alg.rank_mod_p(MatrixW.from_ints(Z8, [[1, 0], [0, 2]]).entries) == 1
    assert alg.rank_mod_p(MatrixW.from_ints(Z8, [[2, 4], [6, 0]]).entries) == 0
    assert alg.rank_mod_p(alg.identity(3)) == 3


def test_blocks_roundtrip():
    alg = algebra(Z8)
    g = MatrixW.from_ints(Z8, [[1, 2, 3], [4, 5, 6], [7, 0, 1]]).entries
    tl = alg.block(g, (0, 1), (0, 1))
    tr = alg.block(g, (0, 1), (1, 3))
    bl = alg.block(g, (1, 3), (0, 1))
    br = alg.block(g, (1, 3), (1, 3))
    assert alg.assemble(tl, tr, bl, br, 1, 2) == g


def test_change_precision():
    g = MatrixW.from_ints(Z8, [[5, 6], [7, 3]])
    low = g.change_precision(1)
    assert low.ring == RingDescriptor(p=2)
    assert low.to_ints() == [[1, 0], [1, 1]]
    with pytest.raises(PrecisionIncrease):
        low.change_precision(2)


def test_matrix_ops():
    a = MatrixW.from_ints(Z8, [[1, 1], [0, 1]])
    assert matrix_ops(a, a, "mul").to_ints() == [[1, 2], [0, 1]]
    assert matrix_ops(a, a, "add").to_ints() == [[2, 2], [0, 2]]
    assert matrix_ops(a, None, "inverse").to_ints() == [[1, 7], [0, 1]]
    assert matrix_ops(a, None, "transpose").to_ints() == [[1, 0], [1, 1]]
    with pytest.raises(InvalidArgumentError):
        matrix_ops(a, None, "mul")
    with pytest.raises(RingMismatch):
        a @ MatrixW.identity(W2F4, 2)
    with pytest.raises(ShapeMismatch):
        a @ MatrixW.identity(Z8, 3)
