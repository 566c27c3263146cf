from k3verify import maps


def test_phi_into_S():
    res = maps.verify_phi_into_S()
    assert res["sigma2_pullback"] == "0"
    assert res["sigma4_pullback"] == "x^4 - x*y^3 - z^4 + z*w^3"


def test_cross_products_vanish():
    res = maps.symbolic_inverse_residuals()
    assert len(res["cross_products"]) == 6
    assert all(c["remainder"] == "0" for c in res["cross_products"])
    assert res["composition_nonzero"]


def test_round_trips_frozen_counts():
    r = maps.round_trips(73)
    assert r["schur_round_trip_fail"] == 0 and r["S_round_trip_fail"] == 0
    assert r["schur_round_trip_ok"] == r["S_round_trip_ok"] == 5956
    assert (r["phi_indeterminate"], r["psi_indeterminate"]) == (296, 584)


def test_round_trips_second_prime():
    assert maps.round_trips(97)["holds"]


def test_M_isomorphism():
    res = maps.verify_M_isomorphism()
    assert res["holds"]
    assert res["lambda"] == "-9 + 12*z^2 - 6*z^6"
    assert res["det_M"] == "2 - 2*z^2 + 2*z^4 - 2*z^6"


def test_quotient_identity():
    res = maps.verify_quotient_identity()
    assert res["divisible"] and res["quotient"] == "x^2"
    assert res["affine_fixed_points"] == 0
    assert res["infinity"] == "unverified"


def test_equivariance_search():
    from k3verify.autint import build_aut_h4, build_pair_group
    res = maps.equivariance_search(build_pair_group(), build_aut_h4())
    assert res["count"] == 96
    assert len(set(res["images"].values())) == 96
