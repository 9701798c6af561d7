"""Orbital partitions and the 2-closure engine.

The orbital partition of G colors every ordered pair of points by its G-orbit.
The 2-closure of G is the full automorphism group of that coloring: every
permutation that maps each color class to itself.  Membership in the closure
is decided definitionally pair by pair at any degree; computing the closure as
a group runs a backtracking search over point images and is guarded by degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import GuardExceeded, InternalDefect, PreconditionError
from .group import PermGroup, _Chain
from .perm import Permutation, identity

CLOSURE_DEGREE_GUARD = 32


@dataclass(frozen=True, eq=False)
class OrbitalPartition:
    """Coloring of ordered point pairs by the orbits of a group.

    Color ids are assigned in order of first appearance scanning pairs
    lexicographically, so equal partitions have equal color tables.  The BFS
    back-pointers let transporter elements (a group element mapping the class
    representative to a given pair) be rebuilt on demand.
    """

    degree: int
    colors: tuple[int, ...]
    rank: int
    representatives: tuple[tuple[int, int], ...]
    generators: tuple[Permutation, ...]
    parent_pair: tuple[int, ...]
    parent_gen: tuple[int, ...]

    def color_of(self, a: int, b: int) -> int:
        return self.colors[a * self.degree + b]

    def transporter_from_representative(self, a: int, b: int) -> Permutation:
        """A generator word g with representative(color(a,b))^g = (a,b)."""
        path = []
        flat = a * self.degree + b
        while self.parent_pair[flat] >= 0:
            path.append(self.parent_gen[flat])
            flat = self.parent_pair[flat]
        g = identity(self.degree)
        for gi in reversed(path):
            g = g * self.generators[gi]
        return g

    def transporter(self, source: tuple[int, int], target: tuple[int, int]) -> Permutation:
        """A group element mapping the source pair to the target pair."""
        if self.color_of(*source) != self.color_of(*target):
            raise PreconditionError("pairs lie in different color classes")
        return (
            self.transporter_from_representative(*source).inverse()
            * self.transporter_from_representative(*target)
        )


def orbital_partition(group: PermGroup) -> OrbitalPartition:
    n = group.degree
    gens = group.strong_generators
    total = n * n
    colors = [-1] * total
    parent_pair = [-1] * total
    parent_gen = [-1] * total
    representatives = []
    rank = 0
    for seed in range(total):
        if colors[seed] >= 0:
            continue
        colors[seed] = rank
        representatives.append(divmod(seed, n))
        queue = [seed]
        while queue:
            flat = queue.pop()
            a, b = divmod(flat, n)
            for gi, g in enumerate(gens):
                image = g.images[a] * n + g.images[b]
                if colors[image] < 0:
                    colors[image] = rank
                    parent_pair[image] = flat
                    parent_gen[image] = gi
                    queue.append(image)
        rank += 1
    return OrbitalPartition(
        degree=n,
        colors=tuple(colors),
        rank=rank,
        representatives=tuple(representatives),
        generators=gens,
        parent_pair=tuple(parent_pair),
        parent_gen=tuple(parent_gen),
    )


def two_equivalent(a: PermGroup, b: PermGroup) -> bool:
    """True iff both groups induce the same partition of ordered pairs."""
    if a.degree != b.degree:
        raise PreconditionError("degree mismatch")
    return orbital_partition(a).colors == orbital_partition(b).colors


def is_in_two_closure(theta: Permutation, partition: OrbitalPartition) -> bool:
    """Definitional membership: theta preserves every pair color."""
    n = partition.degree
    if theta.degree != n:
        raise PreconditionError("degree mismatch")
    colors = partition.colors
    img = theta.images
    return all(
        colors[img[a] * n + img[b]] == colors[a * n + b]
        for a in range(n)
        for b in range(n)
    )


@dataclass(frozen=True, eq=False)
class MembershipEvidence:
    """Per-pair group elements witnessing closure membership of one permutation."""

    assignments: Mapping[tuple[int, int], Permutation]


def membership_evidence(theta: Permutation, partition: OrbitalPartition) -> MembershipEvidence:
    """For every ordered pair, a group element moving it exactly as theta does."""
    n = partition.degree
    if theta.degree != n:
        raise PreconditionError("degree mismatch")
    img = theta.images
    assignments = {}
    for a in range(n):
        for b in range(n):
            assignments[(a, b)] = partition.transporter((a, b), (img[a], img[b]))
    return MembershipEvidence(assignments)


def _signature_classes(colors: tuple[int, ...], n: int) -> list[int]:
    # Points can only map to points with the same diagonal color and the same
    # multiset of outgoing and incoming colors (color-degree refinement).
    table: dict[tuple, int] = {}
    classes = []
    for v in range(n):
        row = tuple(sorted(colors[v * n:(v + 1) * n]))
        col = tuple(sorted(colors[v + u * n] for u in range(n)))
        key = (colors[v * n + v], row, col)
        classes.append(table.setdefault(key, len(table)))
    return classes


def _extend_automorphism(
    colors: tuple[int, ...], classes: list[int], n: int, level: int, target: int
) -> Permutation | None:
    """Search for a coloring automorphism fixing 0..level-1 with level -> target.

    Depth-first over the remaining point images; a candidate must agree with
    every already-decided point in both pair orientations.
    """
    images = list(range(n))
    images[level] = target
    used = [False] * n
    for j in range(level):
        used[j] = True
    used[target] = True

    def dfs(pos: int) -> bool:
        if pos == n:
            return True
        cls = classes[pos]
        base = pos * n
        for v in range(n):
            if used[v] or classes[v] != cls:
                continue
            ok = True
            for j in range(pos):
                w = images[j]
                if (
                    colors[j * n + pos] != colors[w * n + v]
                    or colors[base + j] != colors[v * n + w]
                ):
                    ok = False
                    break
            if not ok:
                continue
            images[pos] = v
            used[v] = True
            if dfs(pos + 1):
                return True
            used[v] = False
        images[pos] = pos
        return False

    if dfs(level + 1):
        return Permutation(tuple(images))
    return None


def _closure_generators(partition: OrbitalPartition, seed: tuple[Permutation, ...]) -> list[Permutation]:
    """Generators of the full automorphism group of the pair coloring.

    Works down the fixed base n-1, ..., 0: at each level the pointwise
    stabilizer below is already complete, so one successful search per new
    orbit point yields a generating set level by level.
    """
    n = partition.degree
    colors = partition.colors
    classes = _signature_classes(colors, n)
    chain = _Chain(n)
    found: list[Permutation] = []
    for g in seed:
        chain.add(g)
    for level in range(n - 2, -1, -1):
        level_class = classes[level]
        for target in range(level + 1, n):
            if classes[target] != level_class:
                continue
            if any(
                colors[j * n + level] != colors[j * n + target]
                or colors[level * n + j] != colors[target * n + j]
                for j in range(level)
            ):
                continue
            if target in chain.levels[level].orbit:
                continue
            theta = _extend_automorphism(colors, classes, n, level, target)
            if theta is not None:
                chain.add(theta)
                found.append(theta)
    return found


def two_closure(group: PermGroup) -> PermGroup:
    """The largest group with the same orbits on ordered pairs, as a PermGroup."""
    if group.degree > CLOSURE_DEGREE_GUARD:
        raise GuardExceeded(
            f"degree {group.degree} exceeds the closure search guard "
            f"({CLOSURE_DEGREE_GUARD}); definitional membership is still available"
        )
    partition = orbital_partition(group)
    found = _closure_generators(partition, group.strong_generators)
    closure = PermGroup(group.degree, group.generators + tuple(found))
    for g in group.generators:
        if not closure.contains(g):
            raise InternalDefect("closure lost a generator of the input group")
    return closure


def is_two_closed_on(group: PermGroup) -> tuple[bool, Permutation | None]:
    """Whether the group equals its 2-closure on its point set.

    When it does not, returns the first canonical strong generator of the
    closure that fails membership in the group.
    """
    closure = two_closure(group)
    if closure.order == group.order:
        return True, None
    for g in closure.strong_generators:
        if not group.contains(g):
            return False, g
    raise InternalDefect("closure is larger but no missing strong generator was found")
