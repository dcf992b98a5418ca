import pytest
from hypothesis import given
from hypothesis import strategies as st
from pydantic import ValidationError

from truncbt.core.errors import (
    EnumerationTooLarge,
    NotAUnit,
    PrecisionIncrease,
    RingMismatch,
)
from truncbt.core.witt import (
    RingDescriptor,
    WittElement,
    change_precision,
    default_modulus,
    enumerate_ring,
    frobenius,
    ring_arith,
    teichmuller,
    unit_inverse,
    valuation,
)

W2F4 = RingDescriptor(p=2, n=2, m=2)
W3F9 = RingDescriptor(p=3, n=2, m=3)


def elements(ring: RingDescriptor):
    return st.tuples(
        *[st.integers(0, ring.modulo - 1) for _ in range(ring.n)]
    ).map(ring.element)


@pytest.mark.parametrize(
    "p,n,modulus",
    [(2, 1, (0, 1)), (3, 1, (0, 1)), (2, 2, (1, 1, 1)), (2, 3, (1, 1, 0, 1))],
)
def test_default_modulus(p, n, modulus):
    assert default_modulus(p, n) == modulus
    assert RingDescriptor(p=p, n=n).modulus == modulus


@pytest.mark.parametrize(
    "kwargs",
    [
        {"p": 4},
        {"p": 2, "m": 0},
        {"p": 2, "n": 0},
        {"p": 2, "m": 40},
        {"p": 2, "n": 2, "modulus": (1, 0, 1)},
        {"p": 2, "n": 2, "modulus": (1, 1)},
    ],
)
def test_ring_descriptor_validation(kwargs):
    with pytest.raises(ValidationError):
        RingDescriptor(**kwargs)


def test_ring_sizes():
    assert W2F4.q == 4
    assert W2F4.modulo == 4
    assert W2F4.size == 16
    assert str(W2F4) == "W_2(F_2^2)"


def test_reduce():
    assert W2F4.reduce(2) is W2F4
    assert W2F4.reduce(1) == RingDescriptor(p=2, n=2, m=1)
    assert W2F4.residue_field().m == 1
    with pytest.raises(PrecisionIncrease):
        W2F4.reduce(3)


def test_w2f4_arithmetic():
    x = W2F4.generator()
    assert (x * x).coeffs == (3, 3)
    assert frobenius(x).coeffs == (3, 3)
    assert unit_inverse(x).coeffs == (3, 3)
    assert x * x * x == 1


def test_z8_arithmetic():
    ring = RingDescriptor(p=2, m=3)
    five, six = ring.element(5), ring.element(6)
    assert ring_arith(five, six, "add") == 3
    assert ring_arith(five, six, "sub") == 7
    assert ring_arith(five, None, "neg") == 3
    assert unit_inverse(ring.element(3)) == 3
    with pytest.raises(NotAUnit):
        unit_inverse(ring.element(2))


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        W2F4.one() + W3F9.one()
    with pytest.raises(RingMismatch):
        ring_arith(W2F4.one(), W3F9.one(), "mul")


def test_valuation():
    ring = RingDescriptor(p=2, m=3)
    assert valuation(ring.element(4)) == 2
    assert valuation(ring.element(3)) == 0
    assert valuation(ring.zero()) == float("inf")


def test_change_precision():
    ring = RingDescriptor(p=3, m=3)
    a = ring.element(20)
    assert change_precision(a, 2) == RingDescriptor(p=3, m=2).element(2)
    with pytest.raises(PrecisionIncrease):
        change_precision(RingDescriptor(p=3, m=1).element(1), 2)


@given(elements(W3F9), elements(W3F9))
def test_sigma_is_ring_homomorphism(a, b):
    assert frobenius(a + b) == frobenius(a) + frobenius(b)
    assert frobenius(a * b) == frobenius(a) * frobenius(b)
    assert frobenius(frobenius(a), "inverse") == frobenius(frobenius(a, "inverse"))
    assert frobenius(frobenius(a), "inverse") == a


@given(elements(W3F9))
def test_sigma_order_and_residue(a):
    assert frobenius(frobenius(a)) == a
    assert change_precision(frobenius(a), 1) == change_precision(a, 1) ** 3


@given(elements(W2F4))
def test_units_have_inverses(a):
    if a.is_unit():
        assert a * a.inverse() == 1
    else:
        with pytest.raises(NotAUnit):
            a.inverse()


@pytest.mark.parametrize("ring", [W2F4, W3F9])
def test_teichmuller_multiplicative(ring):
    engine = ring.engine
    residues = list(engine.basis()) + [engine.primitive_residue()]
    for a in residues:
        for b in residues:
            ta, tb = teichmuller(ring, a), teichmuller(ring, b)
            product = engine.reduce(engine.mul(a, b), 1)
            assert ta * tb == teichmuller(ring, product)
        assert change_precision(teichmuller(ring, a), 1).coeffs == tuple(
            c % ring.p for c in a
        )


def test_enumerate_ring():
    assert len(list(enumerate_ring(W2F4))) == 16
    units = list(enumerate_ring(W2F4, "units"))
    assert len(units) == W2F4.engine.units_count() == 12
    assert all(isinstance(u, WittElement) and u.is_unit() for u in units)
    with pytest.raises(EnumerationTooLarge):
        list(enumerate_ring(W2F4, cap=10))


def test_multiplicative_order():
    engine = RingDescriptor(p=2, n=3).engine
    assert engine.multiplicative_order(engine.primitive_residue()) == 7
    assert engine.multiplicative_order(engine.one) == 1
