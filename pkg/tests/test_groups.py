import pytest

from k3verify import reps
from k3verify.exactfield import ZERO, ZETA
from k3verify.groups import (FiniteGroup, GroupElement, GroupError, Permutation, binary_octahedral_table,
                             induced_permutation, proportional, structure_certify, symmetric4_table)
from k3verify.models import HYPERPLANES, SCHUR, intersection_generators, symplectic_generators
from k3verify.varieties import octahedral_group


def test_permutation_basics():
    p = Permutation.from_cycles(4, [(1, 2, 3, 4)])
    q = Permutation.from_cycles(4, [(1, 2)])
    assert p.order() == 4 and p.sign() == -1
    assert (p * q)(0) == p(q(0))
    assert str(Permutation.from_cycles(8, [(2, 4, 3)])) == "(2,4,3)"
    assert p * p.inverse() == Permutation.identity(4)
    with pytest.raises(GroupError):
        Permutation((0, 0, 1))


def test_binary_octahedral_closure_and_classes():
    G = reps.bo_group()
    assert len(G) == 48
    sizes = sorted(c["size"] for c in G.conjugacy_classes())
    assert sizes == [1, 1, 6, 6, 6, 8, 8, 12]
    assert len(G.center()) == 2


def test_character_tables_validate():
    for table in (binary_octahedral_table(), symmetric4_table()):
        table.validate()
        assert sum(d * d for d in table.dims()) == table.group_order


def test_bo_class_labels_of_generators():
    G, table = reps.bo_group(), binary_octahedral_table()
    match = reps.bo_class_match()
    assert match.column_of(G, G.idx(G.generators[0]), table) == "8A"
    assert match.column_of(G, G.idx(G.generators[1]), table) == "4B"


def test_closure_cap_is_enforced():
    with pytest.raises(GroupError):
        FiniteGroup.generate(list(reps.bo_group().generators), cap=10)


def test_cyclic_certificate():
    g = GroupElement([[ZETA ** 3, ZERO], [ZERO, ZETA ** 3]])
    cert = structure_certify(FiniteGroup.generate([g]), "cyclic")
    assert cert["claim"] == "C8"


def test_octahedral_group_is_s4():
    cert = structure_certify(octahedral_group(), "S4")
    assert cert["order"] == 24 and len(cert["isomorphism"]) == 24


def test_intersection_certificates():
    H = FiniteGroup.generate(intersection_generators())
    cert = structure_certify(H, "C4:S4")
    c = cert["normal_cyclic"]
    assert len(c) == 4 and H.is_normal(c)
    assert set(c) & set(cert["complement"]) == {0}          # index 0 is the identity
    assert len(cert["complement"]) == 24
    Hs = FiniteGroup.generate(symplectic_generators())
    cert2 = structure_certify(Hs, "C2xS4")
    assert cert2["central_involution"] in Hs.center()
    with pytest.raises(GroupError):
        structure_certify(Hs, "C4:S4")


def test_proportional_and_induced_permutation():
    g = intersection_generators()[0]
    assert proportional(SCHUR * 3, SCHUR) == 3
    assert proportional(SCHUR + 1, SCHUR) is None
    perm = induced_permutation(g, HYPERPLANES)
    assert len(perm.images) == 8
