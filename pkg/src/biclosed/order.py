"""
Partial orders on associative quasitrivial operations and on biclosed sets.

Operations are compared pair by pair.  On a two-element set {a < b} there are
four quasitrivial operations, the first projection, max, min and the second
projection, ordered as a diamond with max and min incomparable.  F <= G when
the restriction of F to every pair is below the restriction of G.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

from .errors import LatticeViolation
from .root_system import RootSet
from .semigroup import QuasitrivialOp

__all__ = [
    "PI1", "MAX", "MIN", "PI2", "TWO_POINT_ORDER",
    "restriction", "leq_restriction", "leq_op", "leq_set",
    "Poset", "hasse", "biclosed_poset", "meet", "join", "is_lattice", "to_dot",
]

PI1, MAX, MIN, PI2 = 1, 2, 3, 4
# the strict relations of the two-point order
TWO_POINT_ORDER = frozenset({(PI1, MAX), (PI1, MIN), (PI1, PI2), (MAX, PI2), (MIN, PI2)})


def restriction(F: QuasitrivialOp, a: int, b: int) -> int:
    """Which of the four two-point operations F is on {a, b}."""
    if a == b:
        raise ValueError("restriction needs two distinct points")
    lo, hi = min(a, b), max(a, b)
    return {(lo, hi): PI1, (hi, hi): MAX, (lo, lo): MIN, (hi, lo): PI2}[F(lo, hi), F(hi, lo)]


def leq_restriction(F: QuasitrivialOp, G: QuasitrivialOp, a: int, b: int) -> bool:
    f, g = restriction(F, a, b), restriction(G, a, b)
    return f == g or (f, g) in TWO_POINT_ORDER


def leq_op(F: QuasitrivialOp, G: QuasitrivialOp) -> bool:
    if F.m != G.m:
        raise ValueError(f"operations on {F.m} and {G.m} points are not comparable")
    return all(leq_restriction(F, G, a, b)
               for a, b in itertools.combinations(range(1, F.m + 1), 2))


def leq_set(C: RootSet, D: RootSet) -> bool:
    return C <= D


@dataclass
class Poset:
    """A finite poset on ``elements`` given by a ``leq`` predicate.

    Relations are stored as bitsets: bit j of ``up[i]`` is set iff
    ``elements[i] <= elements[j]``.
    """
    elements: list
    leq: Callable = field(repr=False)
    up: list[int] = field(init=False, repr=False)
    down: list[int] = field(init=False, repr=False)

    def __post_init__(self):
        n = len(self.elements)
        self.up = [0] * n
        self.down = [0] * n
        for i, x in enumerate(self.elements):
            for j, y in enumerate(self.elements):
                if self.leq(x, y):
                    self.up[i] |= 1 << j
                    self.down[j] |= 1 << i

    def __len__(self):
        return len(self.elements)

    def le(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def relation_matrix(self) -> list[list[bool]]:
        n = len(self)
        return [[self.le(i, j) for j in range(n)] for i in range(n)]

    def is_partial_order(self) -> bool:
        n = len(self)
        for i in range(n):
            if not self.le(i, i):
                return False
            for j in range(n):
                if i != j and self.le(i, j) and self.le(j, i):
                    return False
                # transitivity: everything above j is above i
                if self.le(i, j) and self.up[j] & ~self.up[i]:
                    return False
        return True

    def covers(self) -> list[tuple[int, int]]:
        """Covering pairs (i, j), sorted."""
        out = []
        for i in range(len(self)):
            strict_up = self.up[i] & ~(1 << i)
            for j in _bits(strict_up):
                between = strict_up & self.down[j] & ~(1 << j)
                if not between:
                    out.append((i, j))
        return out

    def _extremum(self, bounds: int, toward: list[int]) -> int:
        # the unique bound that every other bound lies on the far side of
        best = [k for k in _bits(bounds) if bounds & ~toward[k] == 0]
        if len(best) != 1:
            raise LatticeViolation(f"{len(best)} candidate bounds")
        return best[0]

    def meet(self, i: int, j: int) -> int:
        lower = self.down[i] & self.down[j]
        if not lower:
            raise LatticeViolation(f"elements {i} and {j} have no lower bound")
        return self._extremum(lower, self.down)

    def join(self, i: int, j: int) -> int:
        upper = self.up[i] & self.up[j]
        if not upper:
            raise LatticeViolation(f"elements {i} and {j} have no upper bound")
        return self._extremum(upper, self.up)

    def is_lattice(self) -> bool:
        try:
            for i, j in itertools.combinations_with_replacement(range(len(self)), 2):
                self.meet(i, j)
                self.join(i, j)
        except LatticeViolation:
            return False
        return True


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def hasse(elements: Sequence, leq: Callable | None = None) -> list[tuple[int, int]]:
    """Covering edges (indices into ``elements``) of the induced order.

    Root sets are compared by containment and operations by :func:`leq_op`
    unless ``leq`` is given.
    """
    elements = list(elements)
    if leq is None:
        leq = leq_op if elements and isinstance(elements[0], QuasitrivialOp) else leq_set
    return Poset(elements, leq).covers()


@lru_cache(maxsize=None)
def biclosed_poset(n: int) -> Poset:
    from .enumeration import enum_biclosed_classified
    return Poset(enum_biclosed_classified(n), leq_set)


def _lookup(C: RootSet) -> tuple[Poset, int]:
    poset = biclosed_poset(C.n)
    try:
        return poset, poset.elements.index(C)
    except ValueError:
        raise ValueError(f"{C} is not biclosed") from None


def meet(C: RootSet, D: RootSet) -> RootSet:
    """Greatest biclosed set contained in both (not always C & D)."""
    poset, i = _lookup(C)
    _, j = _lookup(D)
    return poset.elements[poset.meet(i, j)]


def join(C: RootSet, D: RootSet) -> RootSet:
    poset, i = _lookup(C)
    _, j = _lookup(D)
    return poset.elements[poset.join(i, j)]


def is_lattice(elements: Sequence, leq: Callable | None = None) -> bool:
    elements = list(elements)
    if leq is None:
        leq = leq_op if elements and isinstance(elements[0], QuasitrivialOp) else leq_set
    return Poset(elements, leq).is_lattice()


def to_dot(poset: Poset, labels: Sequence[str], name: str = "hasse") -> str:
    """Graphviz source for the Hasse diagram, least elements at the bottom."""
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box, fontname=Helvetica];"]
    for i, label in enumerate(labels):
        text = label.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
        lines.append(f'  n{i} [label="{text}"];')
    for i, j in poset.covers():
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
