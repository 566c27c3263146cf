import properties
from k3verify import autint
from k3verify.models import intersection_generators


def test_aut_group():
    r = autint.aut_h4_report()
    assert r["order"] == 1152
    assert all(r["t192_generators_conjugated_in_group"].values())
    assert r["delta_squared"] == "-1" and r["delta_projective_order_2"]


def test_printed_permutations():
    h = autint.permutation_homomorphism()
    assert h["all_match"]
    assert len(h["kernel"]) == 4 and h["image_order"] == 288


def test_partition_stabilizer():
    st = autint.partition_stabilizer()
    assert st["order"] == 96 and st["equals_printed_closure"]
    assert st["certificate"]["claim"] == "C4:S4"


def test_intersection_report():
    r = autint.intersection_report()
    assert r["holds"]
    assert r["symplectic_order"] == 48 and r["index"] == 2
    assert r["symplectic_certificate"]["claim"] == "C2xS4"


def test_generator_scalars():
    assert autint.scalar_table() == {"(gamma 0; 0 E)": "-1 + z^4", "(delta 0; 0 E)": "1",
                                     "(0 E; E 0)": "-1", "(iE 0; 0 E)": "-1"}


def test_scalars_agree_with_charts_on_generators():
    for g in list(autint.build_aut_h4().generators) + list(intersection_generators()):
        for p in (73, 97):
            assert autint.cross_validate_P3(g, p)["agree"]
    for g in autint.build_pair_group().generators:
        for p in (73, 97):
            assert autint.cross_validate_P1x4(g, p)["agree"]


def test_pair_group_kernel():
    r = autint.symplectic_kernel_P1x4()
    assert r["order"] == 576 and r["kernel_order"] == 288
    assert r["kernel_is_equal_sign"] and r["quotient_cyclic_order"] == 2


def test_diagonal_line_stabilizer():
    r = autint.diagonal_line_stabilizer()
    assert r["l11_dot_C"] == 6 and r["subset_bound"] == 4
    assert r["stabilizer_order"] == 96 and r["stabilizer_equals_intersection"]
    swap = r["swap_images"]
    assert swap["l11"] == "l11" and swap["l22"] == "l22" and swap["l33"] == "l44"


def test_permutation_homomorphism_property():
    properties.permutation_homomorphism_law()


def test_scalar_homomorphism_property():
    properties.scalar_homomorphism_law()


def test_determinant_vs_jacobian_property():
    properties.determinant_vs_jacobian()
