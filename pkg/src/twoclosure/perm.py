"""Permutations of {0, ..., n-1}.

Points are 0-based in memory; every parsed or printed form uses 1-based
disjoint-cycle notation such as ``(1,2)(3,4)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .errors import CycleParseError, PreconditionError


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of {0, ..., degree-1}; compares and sorts by image tuple."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.images)
        seen = [False] * n
        for i in self.images:
            if not isinstance(i, int) or i < 0 or i >= n or seen[i]:
                raise PreconditionError("image sequence is not a bijection")
            seen[i] = True

    @property
    def degree(self) -> int:
        return len(self.images)

    def apply(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        # Left-to-right composition: (p * q) moves a point by p, then by q.
        if other.degree != self.degree:
            raise PreconditionError("degree mismatch")
        q = other.images
        return Permutation(tuple(q[i] for i in self.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def __pow__(self, n: int) -> Permutation:
        if n < 0:
            return self.inverse() ** (-n)
        result = identity(self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def order(self) -> int:
        cycles = self.cycles()
        return lcm(*(len(c) for c in cycles)) if cycles else 1

    def conjugated_by(self, x: Permutation) -> Permutation:
        return x.inverse() * self * x

    def moved_points(self) -> tuple[int, ...]:
        return tuple(i for i, j in enumerate(self.images) if i != j)

    def min_moved(self) -> int | None:
        for i, j in enumerate(self.images):
            if i != j:
                return i
        return None

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Disjoint cycles of length >= 2, 0-based, each starting at its least point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start] or self.images[start] == start:
                continue
            cycle = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                cycle.append(j)
                seen[j] = True
                j = self.images[j]
            out.append(tuple(cycle))
        return tuple(out)

    def cycle_string(self) -> str:
        """Canonical 1-based form: cycles sorted by smallest moved point."""
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + ",".join(str(p + 1) for p in c) + ")" for c in cycles)

    def __repr__(self) -> str:
        return f"Permutation[{self.degree}]{self.cycle_string()}"


def identity(degree: int) -> Permutation:
    return Permutation(tuple(range(degree)))


def from_cycles(degree: int, cycles: list[tuple[int, ...]] | tuple[tuple[int, ...], ...]) -> Permutation:
    """Build a permutation from 0-based disjoint cycles."""
    images = list(range(degree))
    for cycle in cycles:
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            if images[a] != a:
                raise PreconditionError(f"cycles are not disjoint at point {a + 1}")
            images[a] = b
    return Permutation(tuple(images))


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse 1-based disjoint-cycle notation, e.g. ``(1,2)(3,4)``.

    Raises CycleParseError with the 1-based column of the first offence:
    unbalanced parentheses, repeated points, points outside 1..degree.
    """
    used: set[int] = set()
    cycles: list[tuple[int, ...]] = []
    i = 0
    n = len(text)

    def skip_ws() -> None:
        nonlocal i
        while i < n and text[i].isspace():
            i += 1

    skip_ws()
    if i == n:
        raise CycleParseError("empty permutation (use '()' for the identity)", i + 1)
    while i < n:
        if text[i] != "(":
            raise CycleParseError(f"expected '(' but found {text[i]!r}", i + 1)
        i += 1
        cycle: list[int] = []
        while True:
            skip_ws()
            if i >= n:
                raise CycleParseError("unterminated cycle", i + 1)
            if text[i] == ")":
                i += 1
                break
            if cycle:
                if text[i] != ",":
                    raise CycleParseError(f"expected ',' or ')' but found {text[i]!r}", i + 1)
                i += 1
                skip_ws()
            start = i
            while i < n and text[i].isdigit():
                i += 1
            if i == start:
                raise CycleParseError("expected a point number", i + 1)
            point = int(text[start:i])
            if point < 1:
                raise CycleParseError("points are 1-based", start + 1)
            if point > degree:
                raise CycleParseError(f"point {point} exceeds degree {degree}", start + 1)
            if point - 1 in used:
                raise CycleParseError(f"repeated point {point}", start + 1)
            used.add(point - 1)
            cycle.append(point - 1)
        if len(cycle) > 1:
            cycles.append(tuple(cycle))
        skip_ws()
    return from_cycles(degree, cycles)
