"""Parameterized group families, subgroup lattices, and a sampler of faithful
permutation representations.

Family syntax (used by the CLI): ``C12``, ``Q8``, ``D8``, ``SD16``, ``E27``,
and ``x``-joined products such as ``Q16xC3`` or ``C2xC2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .actions import coset_action, disjoint_union_action
from .errors import GuardExceeded, InternalDefect, PreconditionError
from .group import (
    PermGroup,
    SubgroupHandle,
    core,
    intersection_elements,
    is_normal,
    prime_factorization,
)
from .perm import Permutation, from_cycles, identity

LATTICE_GUARD = 256


@dataclass(frozen=True)
class FamilySpec:
    """One group family instance; products hold their factor specs in order."""

    kind: str  # cyclic | dihedral | semidihedral | quaternion | extraspecial | product
    order: int
    parts: tuple["FamilySpec", ...] = ()

    @property
    def name(self) -> str:
        if self.kind == "product":
            return "x".join(part.name for part in self.parts)
        prefix = {
            "cyclic": "C",
            "dihedral": "D",
            "semidihedral": "SD",
            "quaternion": "Q",
            "extraspecial": "E",
        }[self.kind]
        return f"{prefix}{self.order}"


def cyclic(n: int) -> FamilySpec:
    if n < 1:
        raise PreconditionError("cyclic order must be positive")
    return FamilySpec("cyclic", n)


def abelian(p: int, exponents) -> FamilySpec:
    """Abelian p-group as a product of cyclic p-power factors."""
    return product([cyclic(p**k) for k in exponents])


def dihedral(order: int) -> FamilySpec:
    if order < 6 or order % 2:
        raise PreconditionError("dihedral order must be an even number >= 6")
    return FamilySpec("dihedral", order)


def semidihedral(order: int) -> FamilySpec:
    if order < 16 or order & (order - 1):
        raise PreconditionError("semidihedral order must be a power of two >= 16")
    return FamilySpec("semidihedral", order)


def generalized_quaternion(order: int) -> FamilySpec:
    if order < 8 or order & (order - 1):
        raise PreconditionError("generalized quaternion order must be a power of two >= 8")
    return FamilySpec("quaternion", order)


def extraspecial_exponent_p(p: int) -> FamilySpec:
    if p < 3 or any(p % d == 0 for d in range(2, p)):
        raise PreconditionError("extraspecial parameter must be an odd prime")
    return FamilySpec("extraspecial", p**3)


def product(parts) -> FamilySpec:
    parts = tuple(parts)
    if not parts:
        raise PreconditionError("a product needs at least one factor")
    if len(parts) == 1:
        return parts[0]
    order = 1
    flat: list[FamilySpec] = []
    for part in parts:
        order *= part.order
        if part.kind == "product":
            flat.extend(part.parts)
        else:
            flat.append(part)
    return FamilySpec("product", order, tuple(flat))


_ATOM_RE = re.compile(r"^(SD|C|D|Q|E)(\d+)$")


def parse_family(text: str) -> FamilySpec:
    """Parse the textual family syntax, e.g. ``Q16xC3``."""
    parts = []
    for token in text.strip().split("x"):
        m = _ATOM_RE.match(token.strip())
        if not m:
            raise PreconditionError(f"unrecognized family token {token!r}")
        prefix, number = m.group(1), int(m.group(2))
        if prefix == "C":
            parts.append(cyclic(number))
        elif prefix == "D":
            parts.append(dihedral(number))
        elif prefix == "SD":
            parts.append(semidihedral(number))
        elif prefix == "Q":
            parts.append(generalized_quaternion(number))
        else:
            factors = prime_factorization(number)
            if len(factors) != 1 or next(iter(factors.values())) != 3:
                raise PreconditionError("extraspecial orders must be p^3 for an odd prime p")
            parts.append(extraspecial_exponent_p(next(iter(factors))))
    return product(parts)


def family_syntax_examples() -> list[str]:
    return ["C12", "C2xC2", "D8", "SD16", "Q8", "Q16xC3", "E27", "Q8xC2", "C2xQ8xC3"]


# ---------------------------------------------------------------------------
# realizations

def _realize_cyclic(n: int) -> PermGroup:
    if n == 1:
        return PermGroup(1, ())
    return PermGroup(n, (from_cycles(n, [tuple(range(n))]),))


def _realize_dihedral(order: int) -> PermGroup:
    n = order // 2
    rotation = from_cycles(n, [tuple(range(n))])
    reflection = Permutation(tuple((n - i) % n for i in range(n)))
    return PermGroup(n, (rotation, reflection))


def _realize_semidihedral(order: int) -> PermGroup:
    m = order // 2
    twist = m // 2 - 1
    rotation = from_cycles(m, [tuple(range(m))])
    reflection = Permutation(tuple((twist * i) % m for i in range(m)))
    return PermGroup(m, (rotation, reflection))


def _realize_quaternion(order: int) -> PermGroup:
    # Right-regular action on elements written as a^i * b^eps.
    m = order // 2
    half = order // 4

    def point(i: int, eps: int) -> int:
        return i + eps * m

    a_images = [0] * order
    b_images = [0] * order
    for i in range(m):
        a_images[point(i, 0)] = point((i + 1) % m, 0)
        a_images[point(i, 1)] = point((i - 1) % m, 1)
        b_images[point(i, 0)] = point(i, 1)
        b_images[point(i, 1)] = point((i + half) % m, 0)
    return PermGroup(order, (Permutation(tuple(a_images)), Permutation(tuple(b_images))))


def _realize_extraspecial(p: int) -> PermGroup:
    # Coset action of the order-p^3, exponent-p group on a noncentral order-p
    # subgroup: points are pairs (x, z), the minimal faithful degree p^2.
    def point(x: int, z: int) -> int:
        return x * p + z

    a_images = [0] * (p * p)
    b_images = [0] * (p * p)
    for x in range(p):
        for z in range(p):
            a_images[point(x, z)] = point((x + 1) % p, z)
            b_images[point(x, z)] = point(x, (z + x) % p)
    return PermGroup(p * p, (Permutation(tuple(a_images)), Permutation(tuple(b_images))))


def realize(spec: FamilySpec) -> PermGroup:
    """Default faithful realization of a family, with its order verified."""
    if spec.kind == "cyclic":
        group = _realize_cyclic(spec.order)
    elif spec.kind == "dihedral":
        group = _realize_dihedral(spec.order)
    elif spec.kind == "semidihedral":
        group = _realize_semidihedral(spec.order)
    elif spec.kind == "quaternion":
        group = _realize_quaternion(spec.order)
    elif spec.kind == "extraspecial":
        group = _realize_extraspecial(round(spec.order ** (1 / 3)))
    elif spec.kind == "product":
        group = disjoint_union_action([realize(part) for part in spec.parts]).group
    else:
        raise PreconditionError(f"unknown family kind {spec.kind!r}")
    if group.order != spec.order:
        raise InternalDefect(f"realized {spec.name} with order {group.order}, expected {spec.order}")
    return group


def realize_name(text: str) -> PermGroup:
    return realize(parse_family(text))


# ---------------------------------------------------------------------------
# subgroup lattice

def _generated_by(gens: tuple[Permutation, ...], degree: int) -> frozenset[Permutation]:
    closed = {identity(degree)}
    frontier = list(closed)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in closed:
                    closed.add(y)
                    new.append(y)
        frontier = new
    return frozenset(closed)


def subgroup_lattice(group: PermGroup) -> list[SubgroupHandle]:
    """Every subgroup, found by pairwise joins of cyclic subgroups to a fixpoint.

    Each handle carries its normality flag and core; the list is sorted by
    order and then by canonical element list.  A small generating set is kept
    per subgroup so joins do not pay for full element-set closures.
    """
    if group.order > LATTICE_GUARD:
        raise GuardExceeded(f"group order {group.order} exceeds the lattice guard ({LATTICE_GUARD})")
    degree = group.degree
    ident = identity(degree)
    gens_of: dict[frozenset[Permutation], tuple[Permutation, ...]] = {frozenset({ident}): ()}
    for g in group.elements():
        if g.is_identity():
            continue
        powers = {ident}
        h = g
        while h != ident:
            powers.add(h)
            h = h * g
        gens_of.setdefault(frozenset(powers), (g,))
    worklist = list(gens_of)
    while worklist:
        fresh: list[frozenset[Permutation]] = []
        for a in worklist:
            for b in list(gens_of):
                if a <= b or b <= a:
                    continue
                seed = tuple(dict.fromkeys(gens_of[a] + gens_of[b]))
                joined = _generated_by(seed, degree)
                if joined not in gens_of:
                    gens_of[joined] = seed
                    fresh.append(joined)
        worklist = fresh
    subgroups = set(gens_of)

    def canonical_key(elements: frozenset[Permutation]):
        return (len(elements), tuple(sorted(g.images for g in elements)))

    handles = []
    for elements in sorted(subgroups, key=canonical_key):
        sub = PermGroup(degree, tuple(sorted(elements)))
        handles.append(
            SubgroupHandle(
                parent=group,
                group=sub,
                normal=is_normal(group, sub),
                core=core(group, sub),
            )
        )
    return handles


# ---------------------------------------------------------------------------
# faithful representation sampler

@dataclass(frozen=True, eq=False)
class RepresentationEntry:
    subgroups: tuple[PermGroup, ...]
    action: PermGroup
    degree: int


@dataclass(frozen=True, eq=False)
class RepresentationSample:
    group: PermGroup
    max_degree: int
    entries: tuple[RepresentationEntry, ...]


def _conjugacy_canonical(group: PermGroup, elements: frozenset[Permutation]):
    best = None
    for g in group.elements():
        conj = tuple(sorted((h.conjugated_by(g)).images for h in elements))
        if best is None or conj < best:
            best = conj
    return best


def faithful_representations(group: PermGroup, max_degree: int) -> RepresentationSample:
    """All transitive faithful coset actions plus all 2-part intransitive ones.

    Transitive entries use core-free subgroups of index <= max_degree; 2-part
    entries pair subgroups whose cores intersect trivially with total index
    <= max_degree.  Entries are deduplicated up to conjugacy of the subgroup
    sets.
    """
    lattice = subgroup_lattice(group)
    entries: list[RepresentationEntry] = []

    seen_single = set()
    for handle in lattice:
        index = group.order // handle.group.order
        if handle.core.order != 1 or index > max_degree:
            continue
        canon = _conjugacy_canonical(group, frozenset(handle.group.elements()))
        if canon in seen_single:
            continue
        seen_single.add(canon)
        action = coset_action(group, handle).image
        entries.append(RepresentationEntry((handle.group,), action, action.degree))

    seen_pairs = set()
    for i, h1 in enumerate(lattice):
        index1 = group.order // h1.group.order
        if index1 > max_degree:
            continue
        for h2 in lattice[i:]:
            index2 = group.order // h2.group.order
            if index1 + index2 > max_degree:
                continue
            if index1 == 1 and index2 == 1:
                continue  # two copies of the one-point action say nothing
            if len(intersection_elements(h1.core, h2.core)) != 1:
                continue
            canon = None
            best = None
            set1 = frozenset(h1.group.elements())
            set2 = frozenset(h2.group.elements())
            for g in group.elements():
                c1 = tuple(sorted((x.conjugated_by(g)).images for x in set1))
                c2 = tuple(sorted((x.conjugated_by(g)).images for x in set2))
                key = tuple(sorted((c1, c2)))
                if best is None or key < best:
                    best = key
            canon = best
            if canon in seen_pairs:
                continue
            seen_pairs.add(canon)
            ca1 = coset_action(group, h1, tag="H1")
            ca2 = coset_action(group, h2, tag="H2")
            degree = ca1.image.degree + ca2.image.degree

            def splice(x: Permutation) -> Permutation:
                left = ca1.embed(x)
                right = ca2.embed(x)
                images = list(left.images) + [ca1.image.degree + j for j in right.images]
                return Permutation(tuple(images))

            action = PermGroup(degree, tuple(splice(g) for g in group.strong_generators))
            if action.order != group.order:
                raise InternalDefect("sampled 2-part representation is not faithful")
            entries.append(RepresentationEntry((h1.group, h2.group), action, degree))

    entries.sort(key=lambda e: (e.degree, len(e.subgroups), tuple(g.order for g in e.subgroups)))
    for entry in entries:
        if entry.action.order != group.order:
            raise InternalDefect("sampled representation is not faithful")
    return RepresentationSample(group, max_degree, tuple(entries))


__all__ = [
    "FamilySpec",
    "RepresentationEntry",
    "RepresentationSample",
    "abelian",
    "cyclic",
    "dihedral",
    "extraspecial_exponent_p",
    "faithful_representations",
    "family_syntax_examples",
    "generalized_quaternion",
    "parse_family",
    "product",
    "realize",
    "realize_name",
    "semidihedral",
    "subgroup_lattice",
]
