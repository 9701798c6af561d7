import itertools
import random

import pytest

from helpers import brute_pair_orbit_count, brute_two_closure
from twoclosure.catalog import realize_name
from twoclosure.errors import GuardExceeded, PreconditionError
from twoclosure.group import build_group, center
from twoclosure.orbital import (
    is_in_two_closure,
    is_two_closed_on,
    membership_evidence,
    orbital_partition,
    two_closure,
    two_equivalent,
)
from twoclosure.perm import Permutation, identity, parse_cycles


def remark_group():
    return build_group(6, (parse_cycles("(1,2)(3,4)", 6), parse_cycles("(3,4)(5,6)", 6)))


def test_rank_examples():
    s3 = build_group(3, (parse_cycles("(1,2,3)", 3), parse_cycles("(1,2)", 3)))
    assert orbital_partition(s3).rank == 2
    c4 = build_group(4, (parse_cycles("(1,2,3,4)", 4),))
    assert orbital_partition(c4).rank == 4
    assert orbital_partition(remark_group()).rank == 12


def test_rank_matches_brute_force_enumeration():
    rng = random.Random(5)
    for _ in range(25):
        degree = rng.randint(2, 7)
        gens = []
        for _ in range(rng.randint(1, 2)):
            images = list(range(degree))
            rng.shuffle(images)
            gens.append(Permutation(tuple(images)))
        group = build_group(degree, tuple(gens))
        partition = orbital_partition(group)
        assert partition.rank == brute_pair_orbit_count(degree, group.elements())


def test_partition_structure():
    group = remark_group()
    partition = orbital_partition(group)
    n = group.degree
    # colors partition all pairs; classes are closed under the group action
    assert len(partition.colors) == n * n
    for g in group.strong_generators:
        for a in range(n):
            for b in range(n):
                assert partition.color_of(g.images[a], g.images[b]) == partition.color_of(a, b)
    # the diagonal never shares a color with off-diagonal pairs
    diagonal = {partition.color_of(a, a) for a in range(n)}
    off = {partition.color_of(a, b) for a in range(n) for b in range(n) if a != b}
    assert not diagonal & off
    # representatives are the lexicographically least pair of their class
    for color, rep in enumerate(partition.representatives):
        pairs = [
            (a, b) for a in range(n) for b in range(n) if partition.color_of(a, b) == color
        ]
        assert min(pairs) == rep


def test_transporters_map_representatives():
    partition = orbital_partition(remark_group())
    n = partition.degree
    for a in range(n):
        for b in range(n):
            rep = partition.representatives[partition.color_of(a, b)]
            g = partition.transporter_from_representative(a, b)
            assert (g.images[rep[0]], g.images[rep[1]]) == (a, b)


def test_two_equivalent_examples():
    group = remark_group()
    closure = two_closure(group)
    assert two_equivalent(group, closure)
    other = build_group(
        6, (parse_cycles("(1,2)", 6), parse_cycles("(3,4)", 6), parse_cycles("(5,6)", 6))
    )
    assert two_equivalent(group, other)
    assert not two_equivalent(group, build_group(6, ()))
    with pytest.raises(PreconditionError):
        two_equivalent(group, build_group(5, ()))


def test_membership_examples():
    group = remark_group()
    partition = orbital_partition(group)
    assert is_in_two_closure(parse_cycles("(1,2)", 6), partition)
    assert not is_in_two_closure(parse_cycles("(1,3)", 6), partition)
    assert is_in_two_closure(identity(6), partition)


def test_membership_evidence_is_checkable():
    group = remark_group()
    partition = orbital_partition(group)
    theta = parse_cycles("(1,2)", 6)
    evidence = membership_evidence(theta, partition)
    assert len(evidence.assignments) == 36
    for (a, b), g in evidence.assignments.items():
        assert group.contains(g)
        assert g.images[a] == theta.images[a] and g.images[b] == theta.images[b]
    with pytest.raises(PreconditionError):
        membership_evidence(parse_cycles("(1,3)", 6), partition)


def test_closure_examples():
    group = remark_group()
    closure = two_closure(group)
    assert closure.order == 8
    expected = build_group(
        6, (parse_cycles("(1,2)", 6), parse_cycles("(3,4)", 6), parse_cycles("(5,6)", 6))
    )
    assert closure.same_group(expected)
    klein = build_group(4, (parse_cycles("(1,2)(3,4)", 4), parse_cycles("(1,3)(2,4)", 4)))
    assert two_closure(klein).same_group(klein)
    s3 = build_group(3, (parse_cycles("(1,2,3)", 3), parse_cycles("(1,2)", 3)))
    assert two_closure(s3).same_group(s3)


def test_closure_matches_brute_force_on_random_groups():
    rng = random.Random(11)
    for _ in range(20):
        degree = rng.randint(2, 6)
        gens = []
        for _ in range(rng.randint(1, 2)):
            images = list(range(degree))
            rng.shuffle(images)
            gens.append(Permutation(tuple(images)))
        group = build_group(degree, tuple(gens))
        closure = two_closure(group)
        assert set(closure.elements()) == brute_two_closure(degree, group.elements())


def test_is_two_closed_examples():
    d8 = build_group(4, (parse_cycles("(1,2,3,4)", 4), parse_cycles("(1,3)", 4)))
    assert is_two_closed_on(d8) == (True, None)
    closed, witness = is_two_closed_on(remark_group())
    assert not closed and witness is not None
    assert not remark_group().contains(witness)
    s4 = build_group(4, (parse_cycles("(1,2,3,4)", 4), parse_cycles("(1,2)", 4)))
    assert is_two_closed_on(s4)[0]


def test_closure_invariants_on_catalog_groups():
    rng = random.Random(3)
    for name in ("C6", "D8", "Q8", "C2xC4"):
        group = realize_name(name)
        partition = orbital_partition(group)
        closure = two_closure(group)
        assert group.is_subgroup_of(closure)
        assert two_closure(closure).same_group(closure)
        assert orbital_partition(closure).colors == partition.colors
        for _ in range(3):
            images = list(range(group.degree))
            rng.shuffle(images)
            x = Permutation(tuple(images))
            assert two_closure(group.conjugated_by(x)).same_group(closure.conjugated_by(x))


def test_commuting_and_abelian_closures():
    from twoclosure.actions import disjoint_union_action

    union = disjoint_union_action([realize_name("C2xC2"), realize_name("C3")])
    a_closure = two_closure(union.embedded[0])
    b_closure = two_closure(union.embedded[1])
    for x in a_closure.strong_generators:
        for y in b_closure.strong_generators:
            assert x * y == y * x
    closure = two_closure(union.group)
    assert union.group.is_abelian() and closure.is_abelian()
    for z in center(union.group).elements():
        assert all(z * s == s * z for s in closure.strong_generators)


def test_degree_guard():
    big = build_group(33, (parse_cycles("(1,2)", 33),))
    with pytest.raises(GuardExceeded):
        two_closure(big)
    # definitional membership has no degree guard
    assert is_in_two_closure(identity(33), orbital_partition(big))


def test_maximality_exhaustive_degree_5():
    group = build_group(5, (parse_cycles("(1,2,3)", 5), parse_cycles("(4,5)", 5)))
    partition = orbital_partition(group)
    closure = two_closure(group)
    for images in itertools.permutations(range(5)):
        theta = Permutation(images)
        assert closure.contains(theta) == is_in_two_closure(theta, partition)
