import itertools

import numpy as np
import pytest

from movoid.core.exceptions import CapExceededError, FieldError
from movoid.geometry.gf import build_field, decode_element, encode_element, field_from_order

ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27]


@pytest.mark.parametrize("q", ORDERS)
def test_multiplicative_group_has_order_q_minus_one(q):
    f = field_from_order(q)
    assert f.q == q
    assert sorted(f.exp.tolist()) == list(range(1, q))
    assert f.power(f.generator, q - 1) == 1


@pytest.mark.parametrize("q", [4, 8, 9, 27])
def test_addition_is_digitwise_mod_p(q):
    f = field_from_order(q)
    for a, b in itertools.product(range(q), repeat=2):
        digits = [(x + y) % f.p for x, y in zip(decode_element(f, a), decode_element(f, b))]
        assert f.add(a, b) == encode_element(f, digits)


@pytest.mark.parametrize("q", [4, 9])
def test_field_axioms(q):
    f = field_from_order(q)
    for a, b, c in itertools.product(range(q), repeat=3):
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
    for a in range(q):
        assert f.add(a, f.neg(a)) == 0
        assert f.sub(a, a) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1
            assert f.div(a, a) == 1


def test_gf2_has_trivial_multiplicative_group():
    f = build_field(2)
    assert f.generator == 1
    assert f.inv(1) == 1
    assert f.add(1, 1) == 0
    assert f.power(1, 5) == 1


def test_identity_encodings():
    f = build_field(3, 2)
    assert f.add(0, 7) == 7
    assert f.mul(1, 7) == 7


def test_conway_moduli():
    assert build_field(2, 2).modulus == (1, 1, 1)
    assert build_field(3, 2).modulus == (2, 2, 1)
    assert build_field(3).generator == 2


def test_decode_encode_element():
    f = build_field(3, 2)
    assert decode_element(f, 5) == (2, 1)
    assert encode_element(f, (2, 1)) == 5
    with pytest.raises(FieldError):
        decode_element(f, 9)
    with pytest.raises(FieldError):
        encode_element(f, (3, 0))


def test_division_by_zero():
    f = build_field(5)
    with pytest.raises(FieldError):
        f.div(3, 0)
    with pytest.raises(FieldError):
        f.inv(0)


@pytest.mark.parametrize("q", [4, 9, 16, 25])
def test_conjugation_is_an_involutive_automorphism(q):
    f = field_from_order(q)
    fixed = [a for a in range(q) if f.conjugate(a) == a]
    assert len(fixed) == f.sqrt_q
    for a, b in itertools.product(range(q), repeat=2):
        assert f.conjugate(f.add(a, b)) == f.add(f.conjugate(a), f.conjugate(b))
        assert f.conjugate(f.mul(a, b)) == f.mul(f.conjugate(a), f.conjugate(b))
    assert all(f.conjugate(f.conjugate(a)) == a for a in range(q))


def test_conjugation_needs_square_order():
    f = build_field(2, 3)
    with pytest.raises(FieldError):
        f.conjugate(3)


def test_arith_checks_operands():
    f = build_field(7)
    assert f.arith("mul", 3, 5) == 1
    with pytest.raises(FieldError):
        f.arith("add", 7, 1)
    with pytest.raises(FieldError):
        f.arith("pow", 1, 1)


@pytest.mark.parametrize("q", [8, 9])
def test_vectorised_arithmetic_matches_scalar(q):
    f = field_from_order(q)
    a, b = np.meshgrid(np.arange(q), np.arange(q))
    expected_mul = np.vectorize(f.mul)(a, b)
    expected_add = np.vectorize(f.add)(a, b)
    assert (f.mul_array(a, b) == expected_mul).all()
    assert (f.add_array(a, b) == expected_add).all()
    assert (f.neg_array(np.arange(q)) == [f.neg(x) for x in range(q)]).all()


def test_invalid_fields():
    with pytest.raises(FieldError):
        build_field(4)
    with pytest.raises(FieldError):
        build_field(3, 0)
    with pytest.raises(FieldError):
        field_from_order(6)
    with pytest.raises(CapExceededError):
        build_field(2, 21)


def test_modulus_override(mocker, tmp_path):
    table = tmp_path / "moduli.json"
    # x^2 + x + 2 is primitive over GF(3) but is not the Conway polynomial
    table.write_text('{"3^2": [2, 1, 1]}')
    mocker.patch("movoid.geometry.gf.settings.MODULUS_TABLE_PATH", str(table))
    build_field.cache_clear()
    try:
        f = build_field(3, 2)
        assert f.modulus == (2, 1, 1)
        assert sorted(f.exp.tolist()) == list(range(1, 9))
    finally:
        build_field.cache_clear()
