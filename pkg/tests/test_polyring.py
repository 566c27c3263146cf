import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import properties
from k3verify.polyring import (MultiPoly, PolyError, divide_single, elementary_symmetric, intersection_number,
                               multihomogenize, variables)

x, y, z = variables("x y z")
s, t, u, v = variables("s t u v")


def test_arithmetic_and_degree():
    f = (x + y) ** 3
    assert f.degree() == 3
    assert f.coefficient({"x": 2, "y": 1}) == 3
    assert (f - f).is_zero()


def test_elementary_symmetric():
    assert elementary_symmetric(4) == s * t * u * v
    assert elementary_symmetric(1) == s + t + u + v


def test_division_example():
    q, r = divide_single(x ** 3 + y, x - y)
    assert q * (x - y) + r == x ** 3 + y
    with pytest.raises(ZeroDivisionError):
        divide_single(x, MultiPoly())


def test_multihomogenize_degree():
    f = multihomogenize(s * t * u * v + 1)
    assert all(sum(e for _, e in m) == 4 for m in f.terms)


def test_intersection_number_examples():
    H = (1, 1, 1, 1)
    assert intersection_number([H, H, H, H]) == 24
    assert intersection_number([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]) == 1
    assert intersection_number([(1, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 1)]) == 0
    with pytest.raises(PolyError):
        intersection_number([H, H, H])


degrees = st.tuples(*[st.integers(0, 3)] * 4)


@settings(max_examples=200, deadline=None, derandomize=True, database=None)
@given(st.lists(degrees, min_size=4, max_size=4), st.permutations(range(4)), degrees, st.integers(0, 3))
def test_intersection_number_symmetric_and_multilinear(classes, perm, extra, k):
    assert intersection_number(classes) == intersection_number([classes[i] for i in perm])
    summed = [tuple(a + b for a, b in zip(classes[0], extra))] + classes[1:]
    assert intersection_number(summed) == intersection_number(classes) + intersection_number([extra] + classes[1:])
    scaled = [tuple(k * a for a in classes[0])] + classes[1:]
    assert intersection_number(scaled) == k * intersection_number(classes)


def test_leibniz_property():
    properties.leibniz_rule()


def test_division_reconstruction_property():
    properties.division_reconstruction()
