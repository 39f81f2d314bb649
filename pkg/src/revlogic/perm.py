"""Permutations on the points 1..degree.

Points are 1-indexed so cycle strings read the same as the usual
hand-written listings, e.g. ``(1,7,6,5,4,2,8,3)``.
"""
from __future__ import annotations

import re
from typing import Iterable, Sequence

from .errors import (
    CycleSyntaxError,
    DegreeMismatch,
    DuplicatePoint,
    OutOfRange,
    RepeatedPoint,
)

__all__ = [
    "Permutation",
    "from_one_line",
    "identity",
    "parse_cycles",
    "to_cycles",
    "compose",
    "inverse",
    "gap_export",
]


class Permutation:
    """An immutable bijection of {1, ..., degree}.

    ``images[i - 1]`` is the image of point ``i``.
    """

    __slots__ = ("_images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(int(v) for v in images)
        n = len(images)
        if n < 1:
            raise OutOfRange("degree must be at least 1")
        seen = bytearray(n + 1)
        for v in images:
            if v < 1 or v > n:
                raise OutOfRange(f"image {v} outside 1..{n}")
            if seen[v]:
                raise DuplicatePoint(f"image {v} appears twice")
            seen[v] = 1
        self._images = images

    @classmethod
    def _trusted(cls, images: tuple) -> "Permutation":
        p = object.__new__(cls)
        p._images = images
        return p

    @property
    def degree(self) -> int:
        return len(self._images)

    @property
    def images(self) -> tuple:
        return self._images

    def __call__(self, point: int) -> int:
        if point < 1 or point > len(self._images):
            raise OutOfRange(f"point {point} outside 1..{len(self._images)}")
        return self._images[point - 1]

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._images == other._images

    def __hash__(self):
        return hash(self._images)

    def __repr__(self):
        return f"Permutation({to_cycles(self)!r}, degree={self.degree})"

    def __str__(self):
        return to_cycles(self)

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self._images, 1))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point, sorted."""
        out = []
        visited = bytearray(self.degree + 1)
        for start in range(1, self.degree + 1):
            if visited[start]:
                continue
            cyc = [start]
            visited[start] = 1
            nxt = self._images[start - 1]
            while nxt != start:
                cyc.append(nxt)
                visited[nxt] = 1
                nxt = self._images[nxt - 1]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        from math import lcm

        result = 1
        for c in self.cycles():
            result = lcm(result, len(c))
        return result

    def then(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        return inverse(self)


def from_one_line(images: Sequence[int]) -> Permutation:
    return Permutation(images)


def identity(degree: int) -> Permutation:
    if degree < 1:
        raise OutOfRange("degree must be at least 1")
    return Permutation._trusted(tuple(range(1, degree + 1)))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse a product of disjoint cycles such as ``"(1,2,3)(5,8,7,6)"``.

    Whitespace around points is tolerated. Points not mentioned are fixed.
    A point may appear only once across the whole string.
    """
    if degree < 1:
        raise OutOfRange("degree must be at least 1")
    images = list(range(1, degree + 1))
    used = set()
    pos = 0
    stripped = text.strip()
    while pos < len(stripped):
        if stripped[pos].isspace():
            pos += 1
            continue
        m = _CYCLE_RE.match(stripped, pos)
        if m is None:
            raise CycleSyntaxError(f"expected '(' at offset {pos} in {text!r}")
        body = m.group(1).strip()
        pos = m.end()
        if not body:
            continue
        points = []
        for tok in body.split(","):
            tok = tok.strip()
            if not tok.isdigit():
                raise CycleSyntaxError(f"bad point {tok!r} in {text!r}")
            p = int(tok)
            if p < 1 or p > degree:
                raise OutOfRange(f"point {p} outside 1..{degree}")
            if p in used:
                raise RepeatedPoint(f"point {p} repeated in {text!r}")
            used.add(p)
            points.append(p)
        for a, b in zip(points, points[1:] + points[:1]):
            images[a - 1] = b
    return Permutation._trusted(tuple(images))


def to_cycles(p: Permutation) -> str:
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + ",".join(map(str, c)) + ")" for c in cycles)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` first, then ``q``: result(i) = q(p(i))."""
    if p.degree != q.degree:
        raise DegreeMismatch(f"degrees {p.degree} and {q.degree} differ")
    qi = q.images
    return Permutation._trusted(tuple(qi[v - 1] for v in p.images))


def inverse(p: Permutation) -> Permutation:
    out = [0] * p.degree
    for i, v in enumerate(p.images, 1):
        out[v - 1] = i
    return Permutation._trusted(tuple(out))


def gap_export(p: Permutation) -> str:
    """Two lines GAP can read back: the cycle form and a ``PermList`` call."""
    return f"{to_cycles(p)}\nPermList([{','.join(map(str, p.images))}])"
