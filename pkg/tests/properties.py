"""Randomized property checks shared by the module tests and the acceptance suite.

Each check counts its executed cases in CASES so callers can confirm the
minimum number of examples actually ran.
"""

from collections import Counter
from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from k3verify import autint, exactfield, polyring
from k3verify.exactfield import CycloElement, reduce_mod_p_int
from k3verify.groups import induced_permutation
from k3verify.models import HYPERPLANES
from k3verify.polyring import MultiPoly, divide_single, mono_from_dict

MIN_CASES = 200
CASES: Counter = Counter()

PROFILE = settings(max_examples=MIN_CASES, deadline=None, derandomize=True, database=None,
                   suppress_health_check=[HealthCheck.too_slow])

small = st.fractions(min_value=-6, max_value=6, max_denominator=5)
elements = st.lists(small, min_size=8, max_size=8).map(CycloElement)
nonzero = elements.filter(lambda a: not a.is_zero())
primes = st.sampled_from([73, 97])

VARS = ("x", "y", "z")
monos = st.tuples(*[st.integers(0, 3)] * 3).map(lambda e: mono_from_dict(dict(zip(VARS, e))))
coeffs = st.one_of(st.integers(-5, 5), elements.map(lambda a: a))
polys = st.dictionaries(monos, coeffs, max_size=5).map(MultiPoly)


@PROFILE
@given(elements, elements, elements)
def field_axioms(a, b, c):
    CASES["field axioms"] += 1
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a and a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == exactfield.ZERO and a * 1 == a
    if not a.is_zero():
        assert a * a.inverse() == exactfield.ONE
        assert (b / a) * a == b


def _integral(a: CycloElement, p: int) -> bool:
    return all(Fraction(c).denominator % p for c in a.coefficients)


@PROFILE
@given(elements, nonzero, primes)
def reduce_mod_p_homomorphism(a, b, p):
    CASES["reduce_mod_p homomorphism"] += 1
    r = lambda v: reduce_mod_p_int(v, p)
    assert r(a + b) == (r(a) + r(b)) % p
    assert r(a * b) == r(a) * r(b) % p
    assert r(exactfield.ZETA) == exactfield.smallest_root(p)
    if r(b):
        assert r(a / b) == r(a) * pow(r(b), -1, p) % p


@PROFILE
@given(polys, polys, st.sampled_from(VARS))
def leibniz_rule(f, g, v):
    CASES["Leibniz rule"] += 1
    assert (f * g).diff(v) == f.diff(v) * g + f * g.diff(v)
    assert (f + g).diff(v) == f.diff(v) + g.diff(v)


@PROFILE
@given(polys, polys.filter(lambda g: not g.is_zero()))
def division_reconstruction(f, g):
    CASES["division reconstruction"] += 1
    q, r = divide_single(f, g)
    assert q * g + r == f
    lm, _ = g.leading_term()
    assert not any(polyring.mono_divides(lm, m) for m in r.terms)


def _aut_group():
    return autint.build_aut_h4()


@PROFILE
@given(st.integers(0, 1151), st.integers(0, 1151))
def permutation_homomorphism_law(i, j):
    CASES["permutation homomorphism"] += 1
    G = _aut_group()
    g, h = G.elements[i], G.elements[j]
    assert induced_permutation(g * h, HYPERPLANES) == \
        induced_permutation(g, HYPERPLANES) * induced_permutation(h, HYPERPLANES)


@PROFILE
@given(st.integers(0, 1151), st.integers(0, 1151), st.integers(0, 575), st.integers(0, 575))
def scalar_homomorphism_law(i, j, k, l):
    CASES["scalar homomorphism"] += 1
    G = _aut_group()
    g, h = G.elements[i], G.elements[j]
    s = lambda x: autint.symplectic_scalar_P3(x, check=False)
    assert s(g * h) == s(g) * s(h)
    P = autint.build_pair_group()
    a, b = P.elements[k], P.elements[l]
    assert autint.symplectic_scalar_P1x4(a * b) == \
        autint.symplectic_scalar_P1x4(a) * autint.symplectic_scalar_P1x4(b)


@PROFILE
@given(st.integers(0, 1151), st.integers(0, 575), primes, st.integers(0, 10 ** 6))
def determinant_vs_jacobian(i, k, p, seed):
    CASES["determinant vs F_p Jacobian"] += 1
    g = _aut_group().elements[i]
    expected = reduce_mod_p_int(autint.symplectic_scalar_P3(g, check=False), p)
    got = autint.fp_scalar_P3(g, p, samples=2, seed=seed)
    assert got and all(v == expected for v in got)
    a = autint.build_pair_group().elements[k]
    expected = reduce_mod_p_int(autint.symplectic_scalar_P1x4(a), p)
    got = autint.fp_scalar_P1x4(a, p, samples=2, seed=seed)
    assert got and all(v == expected for v in got)


ALL = {
    "field axioms": field_axioms,
    "reduce_mod_p homomorphism": reduce_mod_p_homomorphism,
    "Leibniz rule": leibniz_rule,
    "division reconstruction": division_reconstruction,
    "permutation homomorphism": permutation_homomorphism_law,
    "scalar homomorphism": scalar_homomorphism_law,
    "determinant vs F_p Jacobian": determinant_vs_jacobian,
}
