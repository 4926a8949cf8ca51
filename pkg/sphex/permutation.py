"""
Permutation module for sphex.

This module provides the Permutation value type used by every group in the
package. Points are 0-based internally and 1-based in cycle notation, so that
`Permutation.parse("(1 2 3)(4 5)", 5)` reads the way the literature writes it.

Products compose right to left: `(a * b)(i) == a(b(i))`. With this convention
`(1 2 3 4) * (1 2)(3 4) == (1 3)`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from sphex.errors import DegreeMismatch, ParseError

_CYCLE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of {0, ..., degree-1} stored as its image tuple.

    Attributes:
        images (Tuple[int, ...]): images[i] is the image of point i.

    Ordering compares image tuples, which is the lexicographic order used to
    pick canonical representatives.
    """

    images: Tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_array(cls, array: np.ndarray) -> Permutation:
        return cls(tuple(int(x) for x in array))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
        """Build a permutation from 0-based cycles.

        Args:
            cycles: Disjoint cycles, each a sequence of 0-based points.
            degree: Number of points.

        Raises:
            ParseError: If a point is out of range or repeated.
        """
        images = list(range(degree))
        seen: set[int] = set()
        for cycle in cycles:
            for point in cycle:
                if not 0 <= point < degree:
                    raise ParseError(f"point {point + 1} outside degree {degree}")
                if point in seen:
                    raise ParseError(f"point {point + 1} repeated in cycles")
                seen.add(point)
            for a, b in zip(cycle, list(cycle[1:]) + list(cycle[:1])):
                images[a] = b
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, degree: int) -> Permutation:
        """Parse disjoint-cycle notation with 1-based points.

        Args:
            text: For example "(1 2 3)(4 5)"; "()" is the identity. Points may be
                separated by spaces or commas.
            degree: Number of points.

        Returns:
            Permutation: The parsed permutation.

        Raises:
            ParseError: On malformed text.
        """
        stripped = text.strip()
        if not stripped:
            raise ParseError("empty permutation")
        if _CYCLE.sub("", stripped).strip():
            raise ParseError(f"unexpected text outside cycles: {text!r}")
        cycles: List[List[int]] = []
        for body in _CYCLE.findall(stripped):
            tokens = [t for t in re.split(r"[\s,]+", body.strip()) if t]
            try:
                points = [int(t) - 1 for t in tokens]
            except ValueError as exc:
                raise ParseError(f"bad point in cycle ({body})") from exc
            if points:
                cycles.append(points)
        return cls.from_cycles(cycles, degree)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        if self.degree != other.degree:
            raise DegreeMismatch(f"degrees {self.degree} and {other.degree}")
        return Permutation(tuple(self.images[j] for j in other.images))

    def __pow__(self, exponent: int) -> Permutation:
        result = Permutation.identity(self.degree)
        base = self if exponent >= 0 else self.inverse()
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> List[Tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point, sorted."""
        seen = [False] * self.degree
        result = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cycle = []
            point = start
            while not seen[point]:
                seen[point] = True
                cycle.append(point)
                point = self.images[point]
            if len(cycle) > 1:
                result.append(tuple(cycle))
        return result

    def order(self) -> int:
        from sphex.utils import lcm

        return lcm(*(len(c) for c in self.cycles()))

    def to_cycles(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(p + 1) for p in c) + ")" for c in cycles)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.images, dtype=np.int32)

    def __str__(self) -> str:
        return self.to_cycles()

    def __repr__(self) -> str:
        return f"Permutation({self.to_cycles()}, degree={self.degree})"
