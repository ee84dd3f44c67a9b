"""
Permutations of ``{1, ..., m}`` in one-line (image) notation.

Composition follows function application: ``(s * t)(x) == s(t(x))``.
Cycle notation is accepted and produced for all I/O.

>>> s = Permutation.from_cycles("(1,2,3)", 3)
>>> s.images
(2, 3, 1)
>>> str(s * s)
'(1,3,2)'
>>> str(Permutation.identity(3))
'()'
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator

__all__ = ["Permutation", "parse_permutation"]

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {list(images)}")

    @classmethod
    def identity(cls, m: int) -> Permutation:
        return cls(tuple(range(1, m + 1)))

    @classmethod
    def all(cls, m: int) -> Iterator[Permutation]:
        """All of S_m in lexicographic order of image lists."""
        for images in itertools.permutations(range(1, m + 1)):
            yield cls(images)

    @classmethod
    def from_cycles(cls, text: str, m: int) -> Permutation:
        text = text.strip()
        if text in ("", "id", "e", "()"):
            return cls.identity(m)
        images = list(range(m + 1))
        rest = _CYCLE_RE.sub("", text).strip()
        if rest:
            raise ValueError(f"malformed cycle notation: {text!r}")
        seen = set()
        for body in _CYCLE_RE.findall(text):
            items = [int(tok) for tok in re.split(r"[,\s]+", body.strip()) if tok]
            for x in items:
                if not 1 <= x <= m:
                    raise ValueError(f"cycle entry {x} outside 1..{m}")
                if x in seen:
                    raise ValueError(f"cycles are not disjoint in {text!r}")
                seen.add(x)
            for x, y in zip(items, items[1:] + items[:1]):
                images[x] = y
        return cls(tuple(images[1:]))

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        if other.size != self.size:
            raise ValueError("cannot compose permutations of different sizes")
        return Permutation(tuple(self.images[y - 1] for y in other.images))

    compose = __mul__

    def inverse(self) -> Permutation:
        inv = [0] * self.size
        for x, y in enumerate(self.images, start=1):
            inv[y - 1] = x
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.images, start=1))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its least element."""
        seen = set()
        out = []
        for start in range(1, self.size + 1):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cycle.append(x)
                seen.add(x)
                x = self(x)
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def __str__(self) -> str:
        return "".join("(" + ",".join(map(str, c)) + ")" for c in self.cycles()) or "()"

    def to_json(self) -> dict:
        return {"images": list(self.images), "cycles": str(self)}

    @classmethod
    def from_json(cls, obj: dict) -> Permutation:
        return cls(tuple(obj["images"]))


def parse_permutation(text: str, m: int) -> Permutation:
    """Parse cycle notation ``"(1,2)(3,4)"`` or an image list ``"[2,1,3]"``."""
    text = text.strip()
    if text.startswith("["):
        images = [int(tok) for tok in re.split(r"[,\s]+", text.strip("[] ")) if tok]
        if len(images) != m:
            raise ValueError(f"image list has length {len(images)}, expected {m}")
        return Permutation(tuple(images))
    return Permutation.from_cycles(text, m)
