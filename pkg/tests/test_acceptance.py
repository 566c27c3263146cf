"""The ten acceptance criteria, one test each, with one printed pass/fail line per criterion."""

import functools
import inspect
import time
from contextlib import contextmanager

import pytest

import properties
from conftest import ACCEPTANCE_LINES
import k3verify
from k3verify import autint, groups, lattices, maps, polyring, reps, varieties
from k3verify.exactfield import I, ONE, OMEGA, ZERO, named_constant


def _clear_caches():
    """Drop memoized results so each timed criterion pays its own cost."""
    for mod in (k3verify.exactfield, k3verify.polyring, k3verify.models, reps, autint):
        for _, obj in inspect.getmembers(mod):
            if isinstance(obj, functools._lru_cache_wrapper):
                obj.cache_clear()


@contextmanager
def criterion(n: int, summary: str, limit: float | None = None):
    _clear_caches()
    start = time.perf_counter()
    note = {"text": summary}
    try:
        yield note
        elapsed = time.perf_counter() - start
        if limit is not None:
            assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"
    except BaseException as exc:
        line = f"criterion {n}: FAIL - {note['text']} ({type(exc).__name__}: {exc})"
        ACCEPTANCE_LINES.append(line)
        print(line)
        raise
    line = f"criterion {n}: {note.get('status', 'PASS')} - {note['text']} [{elapsed:.1f}s]"
    ACCEPTANCE_LINES.append(line)
    print(line)


def test_criterion_1_binary_octahedral():
    with criterion(1, "BO has 48 elements in 8 classes; character table orthogonal", 5) as note:
        G = reps.bo_group()
        assert len(G) == 48
        classes = G.conjugacy_classes()
        assert len(classes) == 8
        assert sorted(c["size"] for c in classes) == sorted([1, 1, 8, 6, 12, 8, 6, 6])
        table = groups.binary_octahedral_table()
        table.validate()            # rows and columns, exactly
        match = reps.bo_class_match()
        a = match.column_of(G, G.idx(G.generators[0]), table)
        b = match.column_of(G, G.idx(G.generators[1]), table)
        printed = {"alpha": "4B", "beta": "8A"}
        computed = {"alpha": a, "beta": b}
        diffs = [f"{k} computed in {computed[k]}, printed {printed[k]}" for k in printed if computed[k] != printed[k]]
        note["text"] += "; class match: " + ("; ".join(diffs) + " (reported)" if diffs else "agrees")


def test_criterion_2_representation():
    with criterion(2, "generator formulas, 16-dim decomposition, two 2-dim subreps, W = 2 + 3", 10) as note:
        res = reps.verify_generator_formulas()
        literal_ok = res["all_hold"]
        held = [f["formula"] for f in res["formulas"] if f["holds"]]
        assert len(res["formulas"]) == 10
        if not literal_ok:
            # the printed beta*sigma2 image is not the image of any involution on W
            assert res["mismatches"] == ["beta*sigma2"]
            assert not reps.printed_beta_is_consistent()
            A = reps.build_rep_action()
            B = reps.w_matrix(A, "beta")
            assert k3verify.linalg.matmul(B, B) == k3verify.linalg.identity(5)
        dec = reps.enumerate_2dim_subreps()
        mult = dec["multiplicities"]
        assert all(isinstance(m, int) and m >= 0 for m in mult.values())
        assert sum(d * m for _, _, d, m in dec["constituents"]) == 16
        assert dec["count"] == 2 and not dec["infinite_family"] and dec["route_agreement"]
        assert dec["matches"] == {"<f1,f2>": True, "<sigma4+1,sigma2>": True}
        w = reps.decompose_W()
        assert w["dims"] == (2, 3)
        assert w["two_dim_basis"] == ["sigma4+1", "sigma2"]
        assert w["three_dim_basis"] == ["sigma4-1", "sigma3", "sigma1"]
        if not literal_ok:
            note["status"] = "FAIL"
            note["text"] = (f"{len(held)}/10 printed formulas hold; beta*sigma2 as printed has 3/2*sigma1 where "
                            "the exact image has the constant 3/2, and the printed beta matrix does not square "
                            "to the identity; all other clauses pass")


@pytest.mark.xfail(strict=True, reason="printed beta*sigma2 image contains 3/2*sigma1; exact image has 3/2")
def test_criterion_2_printed_formulas_literally():
    assert reps.verify_generator_formulas()["all_hold"]


def test_criterion_3_singular_loci():
    with criterion(3, "minor identities exact; S smooth and Sing(T) = diagonal over F_73, F_97", 300) as note:
        assert varieties.jacobian_minor_identities()["all_hold"]
        counts = []
        for p in (73, 97):
            assert varieties.smooth_over_Fp(varieties.S_SURFACE, p) == []
            sing = sorted(x.label() for x in varieties.smooth_over_Fp(varieties.T_SURFACE, p))
            assert sing == sorted(x.label() for x in varieties.diagonal_points(p))
            counts.append(f"p={p}: {len(sing)} diagonal")
        note["text"] += " (" + ", ".join(counts) + ")"


def test_criterion_4_birational_maps():
    with criterion(4, "phi pullbacks, psi o phi cross-products, F_73 round trips", 120) as note:
        phi = maps.verify_phi_into_S()
        assert phi["sigma2_pullback"] == "0"
        schur = k3verify.models.SCHUR
        # sigma4+1 pulls back to +-(x^4 - x y^3 - z^4 + z w^3)
        assert phi["sigma4_pullback"] in (str(schur), str(-schur))
        res = maps.symbolic_inverse_residuals()
        assert len(res["cross_products"]) >= 4
        assert all(c["remainder"] == "0" for c in res["cross_products"])
        rt = maps.round_trips(73)
        assert rt["schur_round_trip_fail"] == 0 and rt["S_round_trip_fail"] == 0
        assert rt["schur_round_trip_ok"] == rt["schur_points"] - rt["phi_indeterminate"] - rt["psi_after_phi_indeterminate"]
        assert rt["S_round_trip_ok"] == rt["S_points"] - rt["psi_indeterminate"] - rt["phi_after_psi_indeterminate"]
        note["text"] += f" ({rt['schur_round_trip_ok']} points each way, 0 failures)"


def test_criterion_5_t192_isomorphism():
    with criterion(5, "diag(M, zeta8 M) pulls the Schur quartic back to a scalar multiple of the T192 quartic") as note:
        res = maps.verify_M_isomorphism()
        assert res["proportional"] and res["det_nonzero"]
        note["text"] += f" (scalar {res['lambda']})"


def test_criterion_6_lines():
    with criterion(6, "64 lines; each l_ij meets 6 of the 16; (l11.C) = 6 and -2+6 = 4 < 6") as note:
        G = autint.build_aut_h4()
        res = varieties.lines_on_schur(G)
        assert res["total"] == 64 and len(res["sixteen"]) == 16 and len(res["orbit"]) == 48
        assert all(L.lies_on(k3verify.models.SCHUR) for L in res["lines"])
        inc = varieties.line_incidence(res["sixteen"])
        assert all(sum(v for j, v in enumerate(r) if j != i) == 6 for i, r in enumerate(inc))
        lem = autint.diagonal_line_stabilizer(G)
        assert lem["l11_dot_C"] == 6
        assert lem["subset_bound"] == 4 and lem["subset_bound"] < lem["l11_dot_C"]


def test_criterion_7_fibration():
    with criterion(7, "6 singular fibers of type IV with 3p+1 points; (p1*(0).C34) = 1; Euler 24; H^4 = 24"):
        expected = {(ZERO, ONE), (ONE, ZERO), (ONE, ONE), (-ONE, ONE), (I, ONE), (-I, ONE)}
        assert set(varieties.singular_values()) == expected and len(varieties.singular_values()) == 6
        for p in (73, 97):
            r = varieties.fibration_report(p)
            assert r["values_match"] and r["critical_values_match"]
            for f in r["fibers"]:
                assert f["type"] == "IV" and len(f["components"]) == 3 and f["common_point"] is not None
                assert f["points"] == 3 * p + 1
            assert r["euler_tally"] == 6 * 4 == 24
        assert varieties.fiber_curve_intersection(1, varieties.ZERO_PT, varieties.component_curve(3, 4)) == 1
        H = (1, 1, 1, 1)
        assert polyring.intersection_number([H, H, H, H]) == 24


def test_criterion_8_lattices():
    with criterion(8, "twist reduction, Shioda-Mitani points, j = 0 and 54000, both cross-ratio matches"):
        A = lattices.BinaryQuadLattice.from_gram([[4, 2], [2, 4]])
        assert lattices.gauss_reduce(lattices.twist(A, 2)).gram == [[8, 4], [4, 8]]
        tau, tau2 = lattices.shioda_mitani(A)
        ok1, _ = lattices.lattice_homothety_equal(tau, lattices.CMPoint.of(OMEGA))
        ok2, _ = lattices.lattice_homothety_equal(tau2, lattices.CMPoint.of(lattices.sqrt_negative(-3)))
        assert ok1 is True and ok2 is True
        E = lattices.EllipticCurveW
        z6, z12, s3 = named_constant("zeta6"), named_constant("zeta12"), named_constant("sqrt3")
        assert lattices.j_invariant(E("weierstrass", (0, 1))) == 0
        assert lattices.j_invariant(E("weierstrass", (15, 11))) == 54000
        assert lattices.j_invariant(E("branch", (0, 1, z6, "inf"))) == 0
        assert lattices.j_invariant(E("branch", (1, -1, z12, -z12))) == 54000
        assert lattices.cross_ratio_match((1, OMEGA, OMEGA ** 2, "inf"), (0, 1, z6, "inf"))
        assert lattices.cross_ratio_match((-1, (1 + 2 * s3) / 2, (1 - 2 * s3) / 2, "inf"), (1, -1, z12, -z12))


def test_criterion_9_automorphism_pipeline():
    with criterion(9, "|G| = 1152, printed permutations, 96 = C4:S4, 48 = C2xS4, kernel 288 on (P1)^4", 120):
        G = autint.build_aut_h4()
        assert len(G) == 1152
        hom = autint.permutation_homomorphism(G)
        assert hom["all_match"]
        stab = autint.partition_stabilizer(G, hom)
        assert stab["order"] == 96 and stab["equals_printed_closure"]
        cert = stab["certificate"]
        H = stab["group"]
        assert cert["claim"] == "C4:S4"
        assert len(cert["normal_cyclic"]) == 4 and H.is_normal(cert["normal_cyclic"])
        assert H.element_order(cert["normal_cyclic_generator"]) == 4
        assert len(cert["complement"]) == 24 and set(cert["complement"]) & set(cert["normal_cyclic"]) == {0}
        thm = autint.intersection_report(G)
        assert thm["symplectic_order"] == 48 and thm["symplectic_equals_printed"]
        assert thm["symplectic_generators_checked"] and thm["symplectic_certificate"]["claim"] == "C2xS4"
        Hs = groups.FiniteGroup.generate(k3verify.models.symplectic_generators())
        c2 = groups.structure_certify(Hs, "C2xS4")
        assert c2["central_involution"] in Hs.center() and len(c2["complement"]) == 24
        ker = autint.symplectic_kernel_P1x4()
        assert ker["order"] == 576 and ker["kernel_order"] == 288
        assert ker["kernel_is_equal_sign"] and ker["quotient_cyclic_order"] == 2


def test_criterion_10_property_suites():
    with criterion(10, "seven property suites, at least 200 randomized exact cases each") as note:
        properties.CASES.clear()
        for name, check in properties.ALL.items():
            check()
            assert properties.CASES[name] >= properties.MIN_CASES, name
        note["text"] += " (" + ", ".join(f"{k}: {v}" for k, v in properties.CASES.items()) + ")"
