from hypothesis import given, settings
from hypothesis import strategies as st

from k3verify import linalg, reps
from k3verify.models import F1, F2, F_S, G_S
from k3verify.polyring import multihomogenize, variables

s, t, u, v = variables("s t u v")


def test_section_space_coordinates():
    basis = reps.section_basis()
    assert len(basis) == 16
    f = multihomogenize(F_S)
    assert reps.from_coordinates(reps.coordinates(f)) == f


@settings(max_examples=200, deadline=None, derandomize=True, database=None)
@given(st.integers(0, 47), st.integers(0, 47))
def test_rho_is_a_homomorphism(i, j):
    G = reps.bo_group()
    g, h = G.elements[i], G.elements[j]
    assert reps.rho(g * h) == linalg.matmul(reps.rho(g), reps.rho(h))


def test_pi_respects_s4_relations():
    S = reps.s4_group()
    for a in S.generators:
        for b in S.generators:
            assert reps.pi(a * b) == linalg.matmul(reps.pi(a), reps.pi(b))


def test_projective_image_of_bo_has_order_24():
    G = reps.bo_group()
    assert len({g.to_projective() for g in G.elements}) == 24


def test_generator_formulas():
    res = reps.verify_generator_formulas()
    assert res["mismatches"] == ["beta*sigma2"]
    assert not reps.printed_beta_is_consistent()
    bad = next(f for f in res["formulas"] if f["formula"] == "beta*sigma2")
    assert bad["residual"] == "-3/2*s - 3/2*t - 3/2*u - 3/2*v + 3/2"


def test_stability():
    assert reps.is_stable([F1, F2])
    assert reps.is_stable([F_S, G_S])
    assert not reps.is_stable([s * t * u * v])


def test_decomposition_multiplicities():
    dec = reps.decompose_16(with_subspaces=False)
    nonzero = {k: m for k, m in dec["multiplicities"].items() if m}
    assert nonzero == {"rho1xtwo": 1, "rho3xtrivial": 1, "rho6xstandard": 1, "rho7xtrivial": 1}
    assert all(m >= 0 for m in dec["multiplicities"].values())


def test_two_dim_subreps_both_routes():
    res = reps.enumerate_2dim_subreps()
    assert res["count"] == 2 and not res["infinite_family"]
    assert res["matches"] == {"<f1,f2>": True, "<sigma4+1,sigma2>": True}
    assert res["route_agreement"]
    assert res["certificate"]["commutant_dim_bound"] == 4
    assert res["certificate"]["direct_sum_rank"] == 16
    for V in res["subspaces"]:
        assert reps.is_stable([reps.from_coordinates(c) for c in V])


def test_w_splitting():
    res = reps.decompose_W()
    assert res["dims"] == (2, 3)
    assert res["two_dim_basis"] == ["sigma4+1", "sigma2"]
    assert res["three_dim_basis"] == ["sigma4-1", "sigma3", "sigma1"]
    assert res["chi_alpha"] == -1 and res["chi_beta"] == 1
