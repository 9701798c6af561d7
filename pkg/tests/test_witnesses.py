import pytest

from twoclosure.actions import disjoint_union_action
from twoclosure.catalog import realize_name, subgroup_lattice
from twoclosure.errors import PreconditionError
from twoclosure.group import build_group, center, is_cyclic, sylow_decomposition
from twoclosure.orbital import two_closure
from twoclosure.witnesses import (
    WitnessCertificate,
    abelian_basis,
    abelian_p_witness,
    center_witness,
    check_certificate,
    element_coordinates,
    odd_p_witness,
    semidirect_witness,
    two_group_witness,
)


def assert_valid(cert: WitnessCertificate):
    assert check_certificate(cert) == []
    assert not cert.group.contains(cert.witness)
    assert len(cert.evidence.assignments) == cert.group.degree**2


def test_abelian_basis_and_coordinates():
    group = realize_name("C2xC4")
    basis = abelian_basis(group)
    assert sorted(g.order() for g in basis) == [2, 4]
    coords = element_coordinates(group, basis)
    assert len(coords) == 8
    q8 = realize_name("Q8")
    with pytest.raises(PreconditionError):
        abelian_basis(q8)


def test_abelian_p_witness_2_11():
    cert = abelian_p_witness(2, (1, 1))
    assert cert.group.degree == 6 and cert.group.order == 4
    assert cert.witness.cycle_string() == "(5,6)"
    assert_valid(cert)
    assert cert.parameters["closure_order_lower_bound"] == 8
    closure = two_closure(cert.group)
    assert closure.order == 8 and closure.is_abelian()


def test_abelian_p_witness_3_11():
    cert = abelian_p_witness(3, (1, 1))
    assert cert.group.degree == 9 and cert.group.order == 9
    assert_valid(cert)
    closure = two_closure(cert.group)
    assert closure.order >= 27 and closure.is_abelian()


def test_abelian_p_witness_cyclic_rejected():
    with pytest.raises(PreconditionError):
        abelian_p_witness(2, (1,))
    with pytest.raises(PreconditionError):
        abelian_p_witness(4, (1, 1))


def first_normal_four_subgroup(group):
    return next(
        h.group
        for h in subgroup_lattice(group)
        if h.normal and h.group.order == 4 and not is_cyclic(h.group)
    )


def test_two_group_witness_d8():
    d8 = realize_name("D8")
    cert = two_group_witness(d8, first_normal_four_subgroup(d8))
    assert cert.group.degree == 8
    assert_valid(cert)
    closure = two_closure(cert.group)
    assert closure.order >= 16
    # the two sheets fixed by the witness have trivial joint stabilizer
    fixed = [p for p in range(8) if cert.witness.images[p] == p]
    assert len(fixed) >= 2


def test_two_group_witness_rejects_central_subgroup():
    q8c2 = realize_name("Q8xC2")
    z = center(q8c2)
    with pytest.raises(PreconditionError, match="central"):
        two_group_witness(q8c2, z)


def test_two_group_witness_rejects_cyclic_subgroup():
    c8 = realize_name("C8")
    involution = next(g for g in c8.elements() if g.order() == 2)
    with pytest.raises(PreconditionError):
        two_group_witness(c8, build_group(8, (involution,)))


def test_odd_p_witness_e27():
    e27 = realize_name("E27")
    pp = next(
        h.group
        for h in subgroup_lattice(e27)
        if h.normal and h.group.order == 9 and not is_cyclic(h.group)
    )
    cert = odd_p_witness(e27, pp)
    assert cert.group.degree == 9
    assert_valid(cert)
    assert two_closure(cert.group).order > 27
    # the recorded twist exponents satisfy their commutator identities exactly
    from twoclosure.perm import parse_cycles
    from twoclosure.witnesses import commutator

    p = cert.parameters["prime"]
    a = parse_cycles(cert.parameters["central_generator"], e27.degree)
    b = parse_cycles(cert.parameters["noncentral_generator"], e27.degree)
    t = parse_cycles(cert.parameters["outer_element"], e27.degree)
    assert set(cert.parameters["twist_exponents"]) == {"0", "1"}
    for i_text, k in cert.parameters["twist_exponents"].items():
        i = int(i_text)
        assert 1 <= k <= p - 1
        assert commutator(t ** (i - 2), b**-k) == a
        s = cert.parameters["twist_residues"][i_text]
        assert commutator(t ** (i - 2), b**-1) == a**s
        l = cert.parameters["bezout_cofactors"][i_text]
        assert k * s + l * p == 1


def test_odd_p_witness_rejects_p2_and_abelian():
    d8 = realize_name("D8")
    with pytest.raises(PreconditionError):
        odd_p_witness(d8, first_normal_four_subgroup(d8))
    c3c3 = realize_name("C3xC3")
    with pytest.raises(PreconditionError, match="central"):
        odd_p_witness(c3c3, c3c3)


def test_semidirect_witness_d8_and_sd16():
    d8 = realize_name("D8")
    lattice = subgroup_lattice(d8)
    m = next(h.group for h in lattice if h.group.order == 4 and is_cyclic(h.group))
    h = next(h.group for h in lattice if h.group.order == 2 and h.core.order == 1)
    cert = semidirect_witness(d8, m, h)
    assert cert.group.degree == 6 and cert.group.order == 8
    assert_valid(cert)
    assert two_closure(cert.group).order > 8

    sd16 = realize_name("SD16")
    lattice = subgroup_lattice(sd16)
    m = next(h.group for h in lattice if h.group.order == 8 and is_cyclic(h.group))
    h = next(h.group for h in lattice if h.group.order == 2 and h.core.order == 1)
    cert = semidirect_witness(sd16, m, h)
    assert cert.group.degree == 10 and cert.group.order == 16
    assert_valid(cert)
    assert two_closure(cert.group).order > 16


def test_semidirect_witness_rejects_normal_complement():
    c6 = realize_name("C6")
    decomposition = sylow_decomposition(c6)
    with pytest.raises(PreconditionError, match="core"):
        semidirect_witness(c6, decomposition.sylows[3], decomposition.sylows[2])


def test_center_witness_q8c2():
    cert = center_witness(realize_name("Q8xC2"))
    assert cert.group.degree == 24
    assert cert.group.order == 16
    assert_valid(cert)
    assert cert.construction == "center"
    assert cert.parameters["inner_degree"] == 6 and cert.parameters["quotient_order"] == 4


def test_center_witness_degenerate_is_cell_witness():
    cert = center_witness(realize_name("C2xC2"))
    assert cert.construction == "abelian-p"
    assert cert.group.degree == 6
    assert_valid(cert)


def test_center_witness_rejects_cyclic_center():
    with pytest.raises(PreconditionError):
        center_witness(realize_name("Q8"))


def test_two_group_witness_with_larger_centralizer():
    # D8 x C2 has eligible four-subgroups whose centralizer strictly exceeds
    # them, exercising the inner quotient with more than one sheet.
    group = realize_name("D8xC2")
    z = center(group)
    from twoclosure.group import intersection_elements

    eligible = next(
        h.group
        for h in subgroup_lattice(group)
        if h.normal
        and h.group.order == 4
        and not is_cyclic(h.group)
        and sum(1 for x in intersection_elements(h.group, z) if not x.is_identity()) == 1
    )
    cert = two_group_witness(group, eligible)
    assert cert.group.degree == 16
    assert cert.parameters["inner_sheets"] == 2
    assert_valid(cert)


def test_odd_p_witness_with_larger_centralizer():
    # E27 x C3 is a 3-group where the chosen subgroup's centralizer strictly
    # exceeds it, so the coset classes span a larger quotient.
    union = disjoint_union_action([realize_name("E27"), realize_name("C3")])
    group = union.group
    e27_part = union.embedded[0]
    z_gen = next(g for g in center(e27_part).elements() if not g.is_identity())
    b_gen = e27_part.generators[1] if len(e27_part.generators) > 1 else e27_part.strong_generators[1]
    n_group = build_group(group.degree, (z_gen, b_gen))
    assert n_group.order == 9 and not is_cyclic(n_group)
    cert = odd_p_witness(group, n_group)
    assert cert.group.degree == 27
    assert_valid(cert)


def test_abelian_p_witness_mixed_exponents():
    cert = abelian_p_witness(2, (1, 2))
    assert cert.group.degree == 8 and cert.group.order == 8
    assert_valid(cert)
    assert two_closure(cert.group).order >= 16


def test_center_witness_mixed_exponents():
    cert = center_witness(realize_name("Q8xC4"))
    assert cert.group.degree == 32
    assert cert.parameters["exponents"] == [1, 2]
    assert_valid(cert)


def test_certificates_survive_disjoint_union_transport():
    # a union containing a non-closed part cannot be closed
    inner = abelian_p_witness(2, (1, 1))
    union = disjoint_union_action([inner.group, realize_name("C3")])
    closure = two_closure(union.group)
    assert closure.order > union.group.order
