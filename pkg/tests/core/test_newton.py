import random
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st
from pydantic import ValidationError

from truncbt.core.errors import (
    InsufficientPrecision,
    InvalidArgumentError,
    InvariantViolation,
)
from truncbt.core.kraft import (
    gamma1,
    identity_datum,
    minimal_datum,
    sum_of_minimal,
    to_truncation,
)
from truncbt.core.matrix import MatrixW
from truncbt.core.newton import (
    NewtonPolygon,
    blocks_from_hull,
    characteristic_polynomial,
    experiment_level,
    lower_hull,
    np_from_datum,
    np_from_matrix,
    specializing_height,
    traverso_codim,
    traverso_level,
    validate_centralizing_sequence,
)
from truncbt.core.verify import random_polygon
from truncbt.core.witt import RingDescriptor

coprime_blocks = st.tuples(st.integers(0, 5), st.integers(0, 5)).filter(
    lambda b: sum(b) > 0 and gcd(*b) == 1
)
polygons = st.lists(coprime_blocks, min_size=1, max_size=4).map(
    lambda bs: NewtonPolygon(blocks=bs)
)


def test_parse_blocks():
    np = NewtonPolygon.parse_blocks("1/1, 2/1")
    # sorted by slope d / (c + d)
    assert np.blocks == ((2, 1), (1, 1))
    assert (np.c, np.d, np.r, np.v) == (3, 2, 5, 2)
    assert np.to_json() == {"blocks": [[2, 1], [1, 1]], "slopes": ["1/3", "1/2"]}
    with pytest.raises(InvalidArgumentError):
        NewtonPolygon.parse_blocks("2-1")
    with pytest.raises(ValidationError):
        NewtonPolygon.parse_blocks("2/2")


@pytest.mark.parametrize(
    "text,codim,s_d",
    [
        ("2/1,1/1", 1, 5),
        ("1/0,0/1", 1, 0),
        ("1/1", 0, 1),
        ("2/3", 0, 6),
        ("1/0,1/1,0/1", 3, 1),
    ],
)
def test_traverso(text, codim, s_d):
    np = NewtonPolygon.parse_blocks(text)
    assert traverso_codim(np) == codim
    assert specializing_height(np) == s_d


@given(polygons)
def test_codim_plus_height_is_cd(np):
    assert traverso_codim(np) + specializing_height(np) == np.c * np.d


def test_random_polygons_are_consistent():
    rng = random.Random(0)
    for _ in range(200):
        np = random_polygon(rng)
        assert specializing_height(np) >= 0


@pytest.mark.parametrize("c,d", [(1, 1), (2, 3), (3, 5)])
def test_single_block_height_matches_gamma(c, d):
    np = NewtonPolygon(blocks=[(c, d)])
    assert specializing_height(np) == c * d == gamma1(minimal_datum(c, d))


@pytest.mark.parametrize(
    "c,d,level", [(2, 3, 2), (1, 1, 1), (3, 3, 2), (1, 0, 0), (4, 9, 3)]
)
def test_traverso_level(c, d, level):
    assert traverso_level(c, d) == level
    assert experiment_level(c, d) == max(1, level)


def test_traverso_level_validation():
    with pytest.raises(InvalidArgumentError):
        traverso_level(0, 0)


def test_centralizing_sequence():
    report = validate_centralizing_sequence([(2, 1), (1, 0)], 1)
    assert report.passed
    assert report.sequence == [(1, 0), (2, 1)]
    bad = validate_centralizing_sequence([(1, 2), (2, 1)], 1)
    assert not bad.passed
    assert len(bad.violations) == 2


def test_lower_hull():
    assert lower_hull([(0, 2), (1, 1), (2, 1), (3, 0)]) == [(0, 2), (1, 1), (3, 0)]
    assert lower_hull([(0, 1), (1, 1), (2, 0)]) == [(0, 1), (2, 0)]


def test_blocks_from_hull():
    np = blocks_from_hull([(0, 1), (2, 0)], 1)
    assert np.blocks == ((1, 1),)
    with pytest.raises(InvariantViolation):
        blocks_from_hull([(0, 1), (2, 0)], 1, d_expected=2)


def test_characteristic_polynomial():
    ring = RingDescriptor(p=5)
    matrix = MatrixW.from_ints(ring, [[1, 2], [3, 4]]).entries
    # x^2 - 5x - 2
    assert characteristic_polynomial(ring.engine, matrix) == [(3,), (0,), (1,)]


@pytest.mark.parametrize("m", [2, 3])
def test_np_ordinary(m):
    ring = RingDescriptor(p=2, m=m)
    D = to_truncation(identity_datum(1, 1), ring)
    assert np_from_matrix(D).blocks == ((1, 0), (0, 1))


@pytest.mark.parametrize("p,n,m", [(2, 1, 2), (3, 1, 2), (2, 2, 3)])
def test_np_supersingular(p, n, m):
    ring = RingDescriptor(p=p, n=n, m=m)
    D = to_truncation(minimal_datum(1, 1), ring)
    assert np_from_matrix(D).blocks == ((1, 1),)


def test_np_insufficient_precision(f2):
    D = to_truncation(minimal_datum(1, 1), f2)
    with pytest.raises(InsufficientPrecision):
        np_from_matrix(D)


def test_np_from_datum():
    assert np_from_datum(minimal_datum(1, 1)).blocks == ((1, 1),)
    assert np_from_datum(identity_datum(1, 1)).blocks == ((1, 0), (0, 1))
    assert np_from_datum(minimal_datum(2, 3)).blocks == ((2, 3),)
    two_blocks = sum_of_minimal([(2, 1), (1, 1)])
    assert np_from_datum(two_blocks) == NewtonPolygon.parse_blocks("2/1,1/1")


def test_np_from_matrix_matches_datum():
    ring = RingDescriptor(p=2, m=4)
    datum = sum_of_minimal([(2, 1), (1, 1)])
    assert np_from_matrix(to_truncation(datum, ring)) == np_from_datum(datum)
