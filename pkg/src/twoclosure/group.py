"""Finite permutation groups backed by a deterministic stabilizer chain.

The chain uses the fixed base 0, 1, ..., degree-1 (base points in increasing
point order), so identical generator input always yields an identical chain,
membership is decided by sifting alone, and the pointwise stabilizer of
0..l-1 can be read off level l directly.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from math import isqrt

from .errors import GuardExceeded, InternalDefect, PreconditionError
from .perm import Permutation, identity

ENUMERATION_GUARD = 20000


class _Level:
    __slots__ = ("gens", "orbit")

    def __init__(self, base: int, ident: Permutation) -> None:
        self.gens: list[Permutation] = []
        self.orbit: dict[int, Permutation] = {base: ident}


class _Chain:
    """Mutable stabilizer chain; PermGroup freezes one after construction."""

    def __init__(self, degree: int) -> None:
        self.degree = degree
        self.ident = identity(degree)
        self.levels = [_Level(b, self.ident) for b in range(degree)]

    def gens_from(self, level: int) -> list[Permutation]:
        out: list[Permutation] = []
        for lv in self.levels[level:]:
            out.extend(lv.gens)
        return out

    def strong_generators(self) -> list[Permutation]:
        return self.gens_from(0)

    def strip(self, g: Permutation, start: int = 0) -> tuple[Permutation, int]:
        """Sift g through levels >= start; returns (residue, stop level)."""
        h = g
        for l in range(start, self.degree):
            p = h.images[l]
            if p == l:
                continue
            u = self.levels[l].orbit.get(p)
            if u is None:
                return h, l
            h = h * u.inverse()
        return h, self.degree

    def contains(self, g: Permutation) -> bool:
        residue, _ = self.strip(g)
        return residue.is_identity()

    def order(self) -> int:
        n = 1
        for lv in self.levels:
            n *= len(lv.orbit)
        return n

    def add(self, g: Permutation) -> bool:
        """Add one generator and restore chain completeness. True if new."""
        residue, level = self.strip(g)
        if residue.is_identity():
            return False
        self.levels[level].gens.append(residue)
        self._sweep(level)
        return True

    def _rebuild_orbit(self, level: int) -> None:
        gens = self.gens_from(level)
        orbit = {level: self.ident}
        queue = deque([level])
        while queue:
            p = queue.popleft()
            up = orbit[p]
            for s in gens:
                q = s.images[p]
                if q not in orbit:
                    orbit[q] = up * s
                    queue.append(q)
        self.levels[level].orbit = orbit

    def _check_level(self, level: int) -> int | None:
        """Rebuild the level orbit, sift its Schreier generators.

        Returns the level where a missing residue was deposited, or None if
        the level verified clean.
        """
        self._rebuild_orbit(level)
        orbit = self.levels[level].orbit
        gens = self.gens_from(level)
        for beta in sorted(orbit):
            u_beta = orbit[beta]
            for s in gens:
                u_target = orbit[s.images[beta]]
                schreier = u_beta * s * u_target.inverse()
                if schreier.is_identity():
                    continue
                residue, stop = self.strip(schreier, level + 1)
                if not residue.is_identity():
                    self.levels[stop].gens.append(residue)
                    return stop
        return None

    def _sweep(self, start: int) -> None:
        # Verify levels from `start` up to the root, re-descending whenever a
        # new strong generator lands deeper in the chain.
        i = start
        while i >= 0:
            deposited = self._check_level(i)
            i = deposited if deposited is not None else i - 1


class PermGroup:
    """Immutable permutation group of fixed degree given by generators."""

    def __init__(self, degree: int, generators: tuple[Permutation, ...] | list[Permutation]) -> None:
        if degree < 0:
            raise PreconditionError("degree must be non-negative")
        gens = tuple(generators)
        for g in gens:
            if g.degree != degree:
                raise PreconditionError("degree mismatch among generators")
        self.degree = degree
        self.generators = gens
        self._chain = _Chain(degree)
        for g in gens:
            self._chain.add(g)
        self.order: int = self._chain.order()
        self._strong: tuple[Permutation, ...] | None = None
        self._elements: tuple[Permutation, ...] | None = None
        self._center: PermGroup | None = None
        self._is_cyclic: bool | None = None

    @property
    def strong_generators(self) -> tuple[Permutation, ...]:
        """Strong generating set, sorted lexicographically by image sequence."""
        if self._strong is None:
            self._strong = tuple(sorted(self._chain.strong_generators()))
        return self._strong

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            raise PreconditionError("degree mismatch")
        return self._chain.contains(g)

    def sift(self, g: Permutation) -> Permutation:
        if g.degree != self.degree:
            raise PreconditionError("degree mismatch")
        return self._chain.strip(g)[0]

    def elements(self) -> tuple[Permutation, ...]:
        """All elements in canonical (lexicographic) order; guarded."""
        if self._elements is None:
            if self.order > ENUMERATION_GUARD:
                raise GuardExceeded(f"group order {self.order} exceeds the enumeration guard")
            elems = [self._chain.ident]
            for level in range(self.degree - 1, -1, -1):
                orbit = self._chain.levels[level].orbit
                if len(orbit) == 1:
                    continue
                transversal = [orbit[p] for p in sorted(orbit)]
                elems = [h * u for u in transversal for h in elems]
            if len(elems) != self.order:
                raise InternalDefect("element enumeration disagrees with chain order")
            self._elements = tuple(sorted(elems))
        return self._elements

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_abelian(self) -> bool:
        sgens = self.strong_generators
        return all(a * b == b * a for i, a in enumerate(sgens) for b in sgens[i + 1:])

    def orbit(self, point: int) -> tuple[int, ...]:
        if not 0 <= point < self.degree:
            raise PreconditionError("point out of range")
        seen = {point}
        queue = deque([point])
        while queue:
            p = queue.popleft()
            for s in self.strong_generators:
                q = s.images[p]
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
        return tuple(sorted(seen))

    def orbits(self) -> tuple[tuple[int, ...], ...]:
        seen: set[int] = set()
        out = []
        for p in range(self.degree):
            if p not in seen:
                orb = self.orbit(p)
                seen.update(orb)
                out.append(orb)
        return tuple(out)

    def point_stabilizer(self, point: int) -> PermGroup:
        """Stabilizer of a point, via Schreier generators of its orbit."""
        if not 0 <= point < self.degree:
            raise PreconditionError("point out of range")
        transversal = {point: self._chain.ident}
        queue = deque([point])
        while queue:
            p = queue.popleft()
            for s in self.strong_generators:
                q = s.images[p]
                if q not in transversal:
                    transversal[q] = transversal[p] * s
                    queue.append(q)
        gens = []
        seen = set()
        for p in sorted(transversal):
            up = transversal[p]
            for s in self.strong_generators:
                sg = up * s * transversal[s.images[p]].inverse()
                if not sg.is_identity() and sg not in seen:
                    seen.add(sg)
                    gens.append(sg)
        return PermGroup(self.degree, tuple(gens))

    def conjugated_by(self, x: Permutation) -> PermGroup:
        if x.degree != self.degree:
            raise PreconditionError("degree mismatch")
        return PermGroup(self.degree, tuple(g.conjugated_by(x) for g in self.generators))

    def is_subgroup_of(self, other: PermGroup) -> bool:
        if other.degree != self.degree:
            raise PreconditionError("degree mismatch")
        return all(other.contains(g) for g in self.strong_generators)

    def same_group(self, other: PermGroup) -> bool:
        return (
            self.degree == other.degree
            and self.order == other.order
            and self.is_subgroup_of(other)
        )

    def __repr__(self) -> str:
        gens = ",".join(g.cycle_string() for g in self.generators[:4])
        more = ",..." if len(self.generators) > 4 else ""
        return f"PermGroup(degree={self.degree}, order={self.order}, <{gens}{more}>)"


def build_group(degree: int, generators) -> PermGroup:
    """Group generated by the given permutations, with a deterministic chain."""
    return PermGroup(degree, tuple(generators))


def trivial_group(degree: int) -> PermGroup:
    return PermGroup(degree, ())


@dataclass(frozen=True)
class SubgroupHandle:
    """A subgroup together with the group it lives in."""

    parent: PermGroup
    group: PermGroup
    normal: bool | None = None
    core: PermGroup | None = None


def as_subgroup(parent: PermGroup, subgroup: PermGroup | SubgroupHandle) -> SubgroupHandle:
    """Wrap and validate: every generator of the subgroup must lie in the parent."""
    if isinstance(subgroup, SubgroupHandle):
        if subgroup.parent is parent:
            return subgroup
        subgroup = subgroup.group
    if subgroup.degree != parent.degree:
        raise PreconditionError("degree mismatch between subgroup and parent")
    if not subgroup.is_subgroup_of(parent):
        raise PreconditionError("not a subgroup: a generator fails membership in the parent")
    return SubgroupHandle(parent, subgroup)


def order_and_membership(group: PermGroup, g: Permutation) -> tuple[int, bool]:
    """Exact order plus membership of g, decided by chain sifting."""
    return group.order, group.contains(g)


def orbits_and_stabilizer(group: PermGroup, point: int) -> tuple[tuple[int, ...], PermGroup]:
    orbit = group.orbit(point)
    stab = group.point_stabilizer(point)
    if len(orbit) * stab.order != group.order:
        raise InternalDefect("orbit-stabilizer identity failed")
    return orbit, stab


def _guarded_elements(group: PermGroup) -> tuple[Permutation, ...]:
    if group.order > ENUMERATION_GUARD:
        raise GuardExceeded(f"group order {group.order} exceeds the enumeration guard")
    return group.elements()


def center(group: PermGroup) -> PermGroup:
    if group._center is None:
        sgens = group.strong_generators
        zs = tuple(g for g in _guarded_elements(group) if all(g * s == s * g for s in sgens))
        group._center = PermGroup(group.degree, zs)
    return group._center


def centralizer(group: PermGroup, subgroup: PermGroup | SubgroupHandle) -> PermGroup:
    handle = as_subgroup(group, subgroup)
    hgens = handle.group.strong_generators
    cs = tuple(g for g in _guarded_elements(group) if all(g * s == s * g for s in hgens))
    return PermGroup(group.degree, cs)


def core(group: PermGroup, subgroup: PermGroup | SubgroupHandle) -> PermGroup:
    """Largest normal subgroup of `group` inside `subgroup`.

    Fixpoint of "closed under conjugation by the generators" starting from the
    subgroup's element set.
    """
    handle = as_subgroup(group, subgroup)
    _guarded_elements(group)
    keep = set(handle.group.elements())
    conjugators = list(group.strong_generators)
    conjugators += [g.inverse() for g in group.strong_generators]
    while True:
        drop = {h for h in keep if any(h.conjugated_by(s) not in keep for s in conjugators)}
        if not drop:
            break
        keep -= drop
    return PermGroup(group.degree, tuple(sorted(keep)))


def is_normal(group: PermGroup, subgroup: PermGroup | SubgroupHandle) -> bool:
    handle = as_subgroup(group, subgroup)
    return all(
        handle.group.contains(h.conjugated_by(s))
        for s in group.strong_generators
        for h in handle.group.strong_generators
    )


def prime_factorization(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d <= isqrt(n):
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class SylowDecomposition:
    nilpotent: bool
    sylows: dict[int, PermGroup]


def sylow_decomposition(group: PermGroup) -> SylowDecomposition:
    """Normal Sylow subgroups; nilpotent iff every Sylow subgroup is normal.

    For each prime p, the p-power-order elements form the Sylow p-subgroup
    exactly when that subgroup is normal; only those primes appear in the
    result.
    """
    elements = _guarded_elements(group)
    factors = prime_factorization(group.order)
    sylows: dict[int, PermGroup] = {}
    nilpotent = True
    for p, e in sorted(factors.items()):
        target = p**e
        p_elements = []
        for g in elements:
            o = g.order()
            while o % p == 0:
                o //= p
            if o == 1:
                p_elements.append(g)
        if len(p_elements) == target:
            sylows[p] = PermGroup(group.degree, tuple(p_elements))
        else:
            nilpotent = False
    if nilpotent and sylows:
        total = 1
        for s in sylows.values():
            total *= s.order
        if total != group.order:
            raise InternalDefect("Sylow orders do not multiply to the group order")
    return SylowDecomposition(nilpotent, sylows)


def is_cyclic(group: PermGroup) -> bool:
    if group._is_cyclic is None:
        group._is_cyclic = any(g.order() == group.order for g in _guarded_elements(group))
    return group._is_cyclic


def order_profile(group: PermGroup) -> tuple[tuple[int, int], ...]:
    """Multiset of element orders as sorted (order, count) pairs."""
    counts = Counter(g.order() for g in _guarded_elements(group))
    return tuple(sorted(counts.items()))


def intersection_elements(a: PermGroup, b: PermGroup) -> tuple[Permutation, ...]:
    """Element set of the intersection of two groups on the same points."""
    if a.degree != b.degree:
        raise PreconditionError("degree mismatch")
    small, large = (a, b) if a.order <= b.order else (b, a)
    return tuple(g for g in small.elements() if large.contains(g))
