"""
Quasitrivial operations on ``{1, ..., m}`` and their total-preorder form.

An associative quasitrivial operation is the same thing as an ordered list of
equivalence classes (least first) where each class of size at least two is
labelled 1 or 2: across classes F returns the element of the later class, and
inside a labelled class F is the first (1) or second (2) projection.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Sequence

from .errors import NotAssociative, NotQuasitrivial
from .permutation import Permutation

__all__ = [
    "QuasitrivialOp", "PreorderDecomposition",
    "is_quasitrivial", "is_associative", "associativity_witness",
    "to_preorder", "from_preorder", "is_commutative", "is_anticommutative",
    "identity_element", "zero_element", "act_op", "all_quasitrivial",
    "projection", "natural_max", "natural_min",
]


def is_quasitrivial(table: Sequence[Sequence[int]]) -> bool:
    m = len(table)
    for a, row in enumerate(table, start=1):
        if len(row) != m:
            return False
        for b, v in enumerate(row, start=1):
            if v != a and v != b:
                return False
    return True


@dataclass(frozen=True, order=True)
class QuasitrivialOp:
    """An m x m table with ``table[a-1][b-1] == F(a, b)`` in {a, b}."""
    m: int
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        table = tuple(tuple(int(v) for v in row) for row in self.table)
        object.__setattr__(self, "table", table)
        if self.m < 1 or len(table) != self.m:
            raise NotQuasitrivial(f"expected a {self.m} x {self.m} table")
        for a, row in enumerate(table, start=1):
            if len(row) != self.m:
                raise NotQuasitrivial(f"row {a} has length {len(row)}, expected {self.m}")
            for b, v in enumerate(row, start=1):
                if v != a and v != b:
                    raise NotQuasitrivial(f"F({a},{b}) = {v} is not in {{{a},{b}}}",
                                          witness=(a, b))

    @classmethod
    def from_function(cls, m: int, f: Callable[[int, int], int]) -> QuasitrivialOp:
        rng = range(1, m + 1)
        return cls(m, tuple(tuple(f(a, b) for b in rng) for a in rng))

    def __call__(self, a: int, b: int) -> int:
        return self.table[a - 1][b - 1]

    def to_json(self) -> dict:
        return {"m": self.m, "table": [list(row) for row in self.table]}

    @classmethod
    def from_json(cls, obj: dict) -> QuasitrivialOp:
        table = obj["table"]
        return cls(int(obj.get("m", len(table))), table)


def projection(m: int, which: int) -> QuasitrivialOp:
    if which not in (1, 2):
        raise ValueError("projection index must be 1 or 2")
    return QuasitrivialOp.from_function(m, (lambda a, b: a) if which == 1 else (lambda a, b: b))


def natural_max(m: int) -> QuasitrivialOp:
    return QuasitrivialOp.from_function(m, max)


def natural_min(m: int) -> QuasitrivialOp:
    return QuasitrivialOp.from_function(m, min)


def all_quasitrivial(m: int) -> Iterator[QuasitrivialOp]:
    """All 2^(m(m-1)) quasitrivial tables on m points."""
    pairs = [(a, b) for a in range(1, m + 1) for b in range(1, m + 1) if a != b]
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        table = [[a] * m for a in range(1, m + 1)]
        for (a, b), bit in zip(pairs, bits):
            table[a - 1][b - 1] = b if bit else a
        yield QuasitrivialOp(m, table)


def associativity_witness(F: QuasitrivialOp) -> Optional[tuple[int, int, int]]:
    t = F.table
    rng = range(F.m)
    for a in rng:
        for b in rng:
            ab = t[a][b] - 1
            for c in rng:
                if t[ab][c] != t[a][t[b][c] - 1]:
                    return a + 1, b + 1, c + 1
    return None


def is_associative(F: QuasitrivialOp) -> bool:
    if not isinstance(F, QuasitrivialOp):
        F = QuasitrivialOp(len(F), F)
    return associativity_witness(F) is None


def is_commutative(F: QuasitrivialOp) -> bool:
    return all(F(a, b) == F(b, a) for a, b in itertools.combinations(range(1, F.m + 1), 2))


def is_anticommutative(F: QuasitrivialOp) -> bool:
    return all(F(a, b) != F(b, a) for a, b in itertools.combinations(range(1, F.m + 1), 2))


def identity_element(F: QuasitrivialOp) -> Optional[int]:
    rng = range(1, F.m + 1)
    for e in rng:
        if all(F(e, x) == x and F(x, e) == x for x in rng):
            return e
    return None


def zero_element(F: QuasitrivialOp) -> Optional[int]:
    rng = range(1, F.m + 1)
    for z in rng:
        if all(F(z, x) == z and F(x, z) == z for x in rng):
            return z
    return None


def act_op(sigma: Permutation, F: QuasitrivialOp) -> QuasitrivialOp:
    """(sigma F)(a, b) = sigma(F(sigma^-1 a, sigma^-1 b))."""
    if sigma.size != F.m:
        raise ValueError(f"permutation of {sigma.size} points cannot act on an operation of size {F.m}")
    inv = sigma.inverse()
    return QuasitrivialOp.from_function(F.m, lambda a, b: sigma(F(inv(a), inv(b))))


@dataclass(frozen=True)
class PreorderDecomposition:
    """Equivalence classes in increasing order, with projection labels.

    ``labels[j]`` is 1 or 2 for a class of size >= 2 and None for a singleton.
    """
    m: int
    blocks: tuple[tuple[int, ...], ...]
    labels: tuple[Optional[int], ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(int(x) for x in b)) for b in self.blocks)
        labels = tuple(None if x is None else int(x) for x in self.labels)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "labels", labels)
        flat = sorted(x for b in blocks for x in b)
        if flat != list(range(1, self.m + 1)) or any(not b for b in blocks):
            raise ValueError(f"blocks {blocks} do not partition 1..{self.m}")
        if len(labels) != len(blocks):
            raise ValueError("one label per block is required")
        for b, lab in zip(blocks, labels):
            if len(b) == 1 and lab is not None:
                raise ValueError(f"singleton block {b} cannot carry a label")
            if len(b) > 1 and lab not in (1, 2):
                raise ValueError(f"block {b} needs a projection label 1 or 2")

    @property
    def t(self) -> int:
        """Number of classes with at least two elements."""
        return sum(len(b) > 1 for b in self.blocks)

    @property
    def p(self) -> int:
        """Number of singleton classes."""
        return sum(len(b) == 1 for b in self.blocks)

    def __str__(self) -> str:
        parts = []
        for b, lab in zip(self.blocks, self.labels):
            if lab is None:
                parts.append(str(b[0]))
            else:
                parts.append("{" + ",".join(map(str, b)) + "}^" + str(lab))
        return "≺".join(parts)

    @classmethod
    def parse(cls, text: str) -> PreorderDecomposition:
        """Inverse of ``str``: ``"2≺{1,3}^1"``; ``<`` may replace ``≺``."""
        blocks, labels = [], []
        for part in text.replace("<", "≺").split("≺"):
            part = part.strip()
            if part.startswith("{"):
                body, _, lab = part.partition("}")
                blocks.append(tuple(int(x) for x in body.strip("{").split(",")))
                labels.append(int(lab.strip().lstrip("^")))
            else:
                blocks.append((int(part),))
                labels.append(None)
        return cls(sum(map(len, blocks)), tuple(blocks), tuple(labels))

    def to_json(self) -> dict:
        return {"m": self.m, "blocks": [{"elements": list(b), "projection": lab}
                                        for b, lab in zip(self.blocks, self.labels)]}

    @classmethod
    def from_json(cls, obj: dict) -> PreorderDecomposition:
        blocks = obj["blocks"]
        return cls(int(obj["m"]), tuple(tuple(b["elements"]) for b in blocks),
                   tuple(b.get("projection") for b in blocks))


def _fail(F: QuasitrivialOp, reason: str):
    witness = associativity_witness(F)
    raise NotAssociative(f"{reason}; associativity fails at {witness}" if witness
                         else reason, witness=witness)


def to_preorder(F: QuasitrivialOp) -> PreorderDecomposition:
    """Read off the class order and projection labels of an associative F.

    Raises NotAssociative (with a failing triple) when the table is not of
    the max-across / projection-within shape.
    """
    m = F.m
    # classes: x ~ y iff F(x,y) != F(y,x)
    cls_of = list(range(m + 1))
    classes: list[list[int]] = []
    for x in range(1, m + 1):
        for c in classes:
            if F(x, c[0]) != F(c[0], x):
                c.append(x)
                break
        else:
            classes.append([x])
    for c in classes:
        for x, y in itertools.combinations(c, 2):
            if F(x, y) == F(y, x):
                _fail(F, f"equivalence is not transitive at ({x},{y})")
    for k, c in enumerate(classes):
        for x in c:
            cls_of[x] = k

    labels: list[Optional[int]] = []
    for c in classes:
        if len(c) == 1:
            labels.append(None)
            continue
        kinds = {1 if F(x, y) == x else 2 for x in c for y in c if x != y}
        if len(kinds) != 1:
            _fail(F, f"class {sorted(c)} mixes both projections")
        labels.append(kinds.pop())

    # rank of a class = number of classes strictly below it
    below = [set() for _ in classes]
    for x, y in itertools.permutations(range(1, m + 1), 2):
        cx, cy = cls_of[x], cls_of[y]
        if cx != cy and F(x, y) == y:
            below[cy].add(cx)
    for k in range(len(classes)):
        for j in below[k]:
            if k in below[j] or not below[j] <= below[k]:
                _fail(F, "order between classes is not a strict total order")
    order = sorted(range(len(classes)), key=lambda k: len(below[k]))
    if [len(below[k]) for k in order] != list(range(len(classes))):
        _fail(F, "order between classes is not a strict total order")
    # every cross pair must agree with the class order
    for x, y in itertools.permutations(range(1, m + 1), 2):
        cx, cy = cls_of[x], cls_of[y]
        if cx != cy and (cx in below[cy]) != (F(x, y) == y):
            _fail(F, f"F({x},{y}) disagrees with the class order")
    return PreorderDecomposition(
        m, tuple(tuple(sorted(classes[k])) for k in order), tuple(labels[k] for k in order))


def from_preorder(P: PreorderDecomposition) -> QuasitrivialOp:
    rank = {}
    label = {}
    for k, (b, lab) in enumerate(zip(P.blocks, P.labels)):
        for x in b:
            rank[x] = k
            label[x] = lab

    def f(x, y):
        if rank[x] != rank[y]:
            return x if rank[x] > rank[y] else y
        if x == y:
            return x
        return x if label[x] == 1 else y

    return QuasitrivialOp.from_function(P.m, f)
