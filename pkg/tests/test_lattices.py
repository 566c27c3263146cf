import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k3verify import lattices as L
from k3verify.exactfield import I, OMEGA, named_constant

PROFILE = settings(max_examples=200, deadline=None, derandomize=True, database=None)


def test_twist_reduction():
    A = L.BinaryQuadLattice.from_gram([[4, 2], [2, 4]])
    assert L.gauss_reduce(L.twist(A, 2)).gram == [[8, 4], [4, 8]]
    B = L.BinaryQuadLattice.from_gram([[2, 1], [1, 2]]).transform([[1, 1], [0, 1]])
    assert L.gauss_reduce(B).gram == [[2, 1], [1, 2]]


def test_invalid_lattices():
    with pytest.raises(L.LatticeError):
        L.BinaryQuadLattice.from_gram([[3, 1], [1, 2]])
    with pytest.raises(L.LatticeError):
        L.BinaryQuadLattice.from_gram([[2, 3], [3, 2]])


def test_shioda_mitani():
    A = L.BinaryQuadLattice.from_gram([[4, 2], [2, 4]])
    tau, tau2 = L.shioda_mitani(A)
    assert tau.tau == OMEGA
    assert tau2.tau == 1 + L.sqrt_negative(-3)
    assert tau.primitive_discriminant == -3
    assert tau2.primitive_discriminant == L.CMPoint.of(L.sqrt_negative(-3)).primitive_discriminant == -12
    assert tau.discriminant == A.discriminant == -12


def test_homothety():
    om = L.CMPoint.of(OMEGA)
    assert L.lattice_homothety_equal(om, L.CMPoint.of(named_constant("zeta6")))[0] is True
    r3 = L.CMPoint.of(L.sqrt_negative(-3))
    ok, m = L.lattice_homothety_equal(L.CMPoint.of(1 + L.sqrt_negative(-3)), r3)
    assert ok is True and m == (1, -1, 0, 1)
    assert L.lattice_homothety_equal(om, L.CMPoint.of(I)) == (False, None)


def test_j_invariants():
    E = L.EllipticCurveW
    assert L.j_invariant(E("weierstrass", (0, 1))) == 0
    assert L.j_invariant(E("weierstrass", (15, 11))) == 54000
    assert L.j_invariant(E("branch", (0, 1, named_constant("zeta6"), "inf"))) == 0
    z12 = named_constant("zeta12")
    assert L.j_invariant(E("branch", (1, -1, z12, -z12))) == 54000
    with pytest.raises(L.LatticeError):
        L.j_invariant(E("weierstrass", (3, 1)))
    with pytest.raises(L.LatticeError):
        L.j_invariant(E("branch", (0, 1, 1, "inf")))


def test_cross_ratio_matches():
    s3 = named_constant("sqrt3")
    z12 = named_constant("zeta12")
    assert L.cross_ratio_match((1, OMEGA, OMEGA ** 2, "inf"), (0, 1, named_constant("zeta6"), "inf"))
    assert L.cross_ratio_match((-1, (1 + 2 * s3) / 2, (1 - 2 * s3) / 2, "inf"), (1, -1, z12, -z12))
    assert L.cross_ratio_match((0, 1, 2, "inf"), (0, 1, 2, "inf"))
    assert not L.cross_ratio_match((0, 1, 2, "inf"), (1, -1, z12, -z12))


forms = st.sampled_from([(1, 1, 1), (2, 2, 2), (1, 0, 1), (2, 1, 3), (3, 2, 5), (1, 1, 6), (4, 4, 4)])


@st.composite
def unimodular(draw):
    m = [[1, 0], [0, 1]]
    for _ in range(draw(st.integers(1, 6))):
        k = draw(st.integers(-3, 3))
        step = draw(st.sampled_from([[[1, k], [0, 1]], [[1, 0], [k, 1]], [[0, -1], [1, 0]]]))
        m = [[sum(m[i][l] * step[l][j] for l in range(2)) for j in range(2)] for i in range(2)]
    return m


@PROFILE
@given(forms, unimodular())
def test_reduction_invariants(abc, P):
    A = L.BinaryQuadLattice(*abc)
    B = A.transform(P)
    R = L.gauss_reduce(B)
    assert L.gauss_reduce(R) == R
    assert R.discriminant == A.discriminant
    assert all(x % 2 == 0 for x in (R.gram[0][0], R.gram[1][1]))
    assert L.properly_equivalent(A, B)


@PROFILE
@given(st.integers(-4, 4), st.integers(1, 4), st.permutations(range(4)))
def test_j_invariant_under_relabeling(a, b, perm):
    pts = [0, "inf", 1, a + b * I]
    if a + b * I == 1:
        return
    j = L.j_invariant(L.EllipticCurveW("branch", tuple(pts)))
    assert L.j_invariant(L.EllipticCurveW("branch", tuple(pts[i] for i in perm))) == j
