from fractions import Fraction

import pytest

import properties
from k3verify import exactfield
from k3verify.exactfield import (I, OMEGA, ONE, ZERO, ZETA, CycloElement, FieldError, named_constant,
                                 parse, reduce_mod_p, reduce_mod_p_int, serialize, smallest_root)


def test_cyclotomic_relation():
    assert ZETA ** 8 - ZETA ** 4 + 1 == ZERO
    assert ZETA ** 24 == ONE and ZETA ** 12 == -ONE
    assert exactfield.multiplicative_order(ZETA) == 24


@pytest.mark.parametrize("name", exactfield.constant_names())
def test_named_constants_satisfy_relations(name):
    c = named_constant(name)
    assert exactfield.eval_univariate(exactfield.constant_relation(name), c).is_zero()


def test_small_identities():
    assert I * I == -1
    assert OMEGA ** 3 == 1 and OMEGA * OMEGA + OMEGA + 1 == 0
    assert named_constant("sqrt3") ** 2 == 3
    assert named_constant("zeta6") == 1 + OMEGA


def test_inverse_and_division():
    a = CycloElement([1, 2, 0, -1, 0, 0, Fraction(1, 3), 0])
    assert a * a.inverse() == ONE
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_serialize_round_trip():
    a = CycloElement([Fraction(-3, 2), 0, 1, 0, 0, 0, 0, 5])
    assert parse(serialize(a)) == a


def test_smallest_roots():
    assert smallest_root(73) == 7
    assert smallest_root(97) == 4
    with pytest.raises(ValueError):
        smallest_root(5)


def test_reduction_values():
    assert reduce_mod_p_int(ZETA, 73) == 7
    assert reduce_mod_p_int(I, 73) == pow(7, 6, 73)
    assert reduce_mod_p(CycloElement.from_rational(Fraction(1, 2)), 97).value == 49


def test_reduction_of_elements_with_p_in_the_denominator():
    p = 73
    r = smallest_root(p)
    other = next(x for x in range(1, p) if x != r and (x ** 8 - x ** 4 + 1) % p == 0)
    u = (ZETA - other).inverse()
    assert u._den % p == 0
    assert reduce_mod_p_int(u, p) == pow(r - other, -1, p)
    with pytest.raises(FieldError):
        reduce_mod_p_int((ZETA - r).inverse(), p)


def test_field_axioms_property():
    properties.field_axioms()


def test_reduce_mod_p_homomorphism_property():
    properties.reduce_mod_p_homomorphism()
