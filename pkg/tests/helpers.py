"""Independent brute-force oracles used to pin expected values.

Everything here works by element enumeration only, never through the
stabilizer chain or the closure search it checks.
"""

from __future__ import annotations

import itertools

from twoclosure.perm import Permutation, identity


def mulclose(degree: int, gens) -> set[Permutation]:
    """Closure of a generating set under products, by plain BFS."""
    gens = [g for g in gens if not g.is_identity()]
    closed = {identity(degree)}
    frontier = list(closed)
    while frontier:
        fresh = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in closed:
                    closed.add(y)
                    fresh.append(y)
        frontier = fresh
    return closed


def pair_orbit_map(degree: int, elements) -> dict[tuple[int, int], frozenset]:
    """Orbit of every ordered pair under an explicit element list."""
    out = {}
    for a in range(degree):
        for b in range(degree):
            out[(a, b)] = frozenset((g.images[a], g.images[b]) for g in elements)
    return out


def brute_two_closure(degree: int, elements) -> set[Permutation]:
    """All of Sym(degree) filtered by the definitional pair condition."""
    orbits = pair_orbit_map(degree, elements)
    out = set()
    for images in itertools.permutations(range(degree)):
        theta = Permutation(images)
        if all(
            (images[a], images[b]) in orbits[(a, b)]
            for a in range(degree)
            for b in range(degree)
        ):
            out.add(theta)
    return out


def brute_pair_orbit_count(degree: int, elements) -> int:
    """Number of orbits on ordered pairs, by direct enumeration."""
    orbits = set()
    for a in range(degree):
        for b in range(degree):
            orbits.add(frozenset((g.images[a], g.images[b]) for g in elements))
    return len(orbits)
