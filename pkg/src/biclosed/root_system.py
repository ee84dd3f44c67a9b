"""
The root system of type A_n realized on ordered index pairs.

A root is a pair ``(a, b)`` with ``a != b`` in ``1..n+1``.  For ``a < b`` it is
the positive root ``alpha_a + ... + alpha_{b-1}``; ``(b, a)`` is its negative.
The symmetric group S_{n+1} acts by ``w(a, b) = (w(a), w(b))``, and the sum of
two roots is a root exactly when the pairs chain, ``(a, b) + (b, c) = (a, c)``.
Closedness of a root set is therefore transitivity of the relation it defines.

Root sets are stored as integer bitmasks.  Bit ``k`` is the k-th ordered pair
in lexicographic order, so for ``m = n + 1`` the pair ``(a, b)`` sits at bit
``(a - 1) * (m - 1) + (b - 1 if b < a else b - 2)``.  This pairing function is
part of the serialization contract.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple, Optional

from .errors import NotBiclosed
from .permutation import Permutation

__all__ = [
    "Root", "RootSet", "SimpleSubset",
    "all_roots", "pair_index", "root_sum", "is_closed", "is_biclosed",
    "closure_witness", "biclosed_witness", "require_biclosed",
    "standard_positive_system", "full_root_system", "simple_subset",
    "components", "span_subsystem", "orthogonal", "orthogonal_pairs",
    "build_psi", "act_root", "act_set", "is_positive_system",
    "is_parabolic", "is_horocyclic", "stabilizer", "coxeter_stabilizer",
    "format_root", "format_roots", "parse_roots",
]

SimpleSubset = frozenset  # indices i standing for simple roots alpha_i


class Root(NamedTuple):
    a: int
    b: int

    def negate(self) -> Root:
        return Root(self.b, self.a)

    @property
    def is_positive(self) -> bool:
        return self.a < self.b


@lru_cache(maxsize=None)
def all_roots(n: int) -> tuple[Root, ...]:
    """Every root of A_n, in bit order (lexicographic on pairs)."""
    m = n + 1
    return tuple(Root(a, b) for a in range(1, m + 1) for b in range(1, m + 1) if a != b)


def pair_index(a: int, b: int, n: int) -> int:
    m = n + 1
    if not (1 <= a <= m and 1 <= b <= m and a != b):
        raise ValueError(f"({a},{b}) is not a root of A_{n}")
    return (a - 1) * (m - 1) + (b - 1 if b < a else b - 2)


@dataclass(frozen=True)
class RootSet:
    """A subset of the roots of A_n, as a membership bitmask."""
    n: int
    mask: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("rank must be non-negative")
        if self.mask < 0 or self.mask >> (self.n * (self.n + 1)):
            raise ValueError(f"mask {self.mask} out of range for A_{self.n}")

    @classmethod
    def from_roots(cls, n: int, roots: Iterable) -> RootSet:
        mask = 0
        for a, b in roots:
            mask |= 1 << pair_index(a, b, n)
        return cls(n, mask)

    @property
    def m(self) -> int:
        return self.n + 1

    def roots(self) -> list[Root]:
        return [r for k, r in enumerate(all_roots(self.n)) if self.mask >> k & 1]

    def __iter__(self) -> Iterator[Root]:
        return iter(self.roots())

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, root) -> bool:
        a, b = root
        return bool(self.mask >> pair_index(a, b, self.n) & 1)

    @property
    def key(self) -> tuple[Root, ...]:
        """Sort key: the lexicographically ordered member list."""
        return tuple(self.roots())

    def _check(self, other: RootSet):
        if other.n != self.n:
            raise ValueError(f"rank mismatch: A_{self.n} vs A_{other.n}")

    def __or__(self, other: RootSet) -> RootSet:
        self._check(other)
        return RootSet(self.n, self.mask | other.mask)

    def __and__(self, other: RootSet) -> RootSet:
        self._check(other)
        return RootSet(self.n, self.mask & other.mask)

    def __sub__(self, other: RootSet) -> RootSet:
        self._check(other)
        return RootSet(self.n, self.mask & ~other.mask)

    def __le__(self, other: RootSet) -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def complement(self) -> RootSet:
        return RootSet(self.n, ((1 << self.n * (self.n + 1)) - 1) & ~self.mask)

    def negate(self) -> RootSet:
        return RootSet.from_roots(self.n, (r.negate() for r in self.roots()))

    def to_json(self) -> dict:
        return {"n": self.n, "roots": [list(r) for r in self.roots()]}

    @classmethod
    def from_json(cls, obj: dict) -> RootSet:
        return cls.from_roots(int(obj["n"]), obj["roots"])

    def __repr__(self) -> str:
        return f"RootSet(n={self.n}, roots={[tuple(r) for r in self.roots()]})"


def root_sum(x, y, n: int) -> Optional[Root]:
    """The sum x + y if it is a root of A_n, else None."""
    (a, b), (c, d) = x, y
    pair_index(a, b, n)
    pair_index(c, d, n)
    if b == c and a != d:
        return Root(a, d)
    if d == a and c != b:
        return Root(c, b)
    return None


def _successors(mask: int, n: int) -> list[int]:
    # succ[a] has bit b set iff (a, b) is in the set
    succ = [0] * (n + 2)
    for k, (a, b) in enumerate(all_roots(n)):
        if mask >> k & 1:
            succ[a] |= 1 << b
    return succ


def _transitivity_witness(mask: int, n: int) -> Optional[tuple[Root, Root]]:
    succ = _successors(mask, n)
    for a in range(1, n + 2):
        s = succ[a]
        for b in range(1, n + 2):
            if s >> b & 1:
                missing = succ[b] & ~s & ~(1 << a)
                if missing:
                    c = (missing & -missing).bit_length() - 1
                    return Root(a, b), Root(b, c)
    return None


def closure_witness(C: RootSet) -> Optional[tuple[Root, Root]]:
    """Two members of C whose sum is a root outside C, or None if C is closed."""
    return _transitivity_witness(C.mask, C.n)


def is_closed(C: RootSet) -> bool:
    return closure_witness(C) is None


def biclosed_witness(C: RootSet):
    w = closure_witness(C)
    if w is not None:
        return ("set",) + w
    w = closure_witness(C.complement())
    if w is not None:
        return ("complement",) + w
    return None


def is_biclosed(C: RootSet) -> bool:
    return is_closed(C) and is_closed(C.complement())


def require_biclosed(C: RootSet) -> None:
    witness = biclosed_witness(C)
    if witness is not None:
        side, x, y = witness
        s = root_sum(x, y, C.n)
        raise NotBiclosed(
            f"not biclosed: {tuple(x)} + {tuple(y)} = {tuple(s)} "
            f"leaves the {side}", witness=(side, tuple(x), tuple(y)))


def standard_positive_system(n: int) -> RootSet:
    return RootSet.from_roots(n, (r for r in all_roots(n) if r.is_positive))


def full_root_system(n: int) -> RootSet:
    return RootSet(n, (1 << n * (n + 1)) - 1)


def simple_subset(indices: Iterable[int], n: int) -> frozenset:
    out = frozenset(int(i) for i in indices)
    bad = [i for i in out if not 1 <= i <= n]
    if bad:
        raise ValueError(f"simple root indices {sorted(bad)} outside 1..{n}")
    return out


def components(indices: Iterable[int]) -> list[tuple[int, int]]:
    """Maximal runs of consecutive indices as ``(start, length)``, ascending.

    >>> components({1, 2, 4, 6, 7, 8})
    [(1, 2), (4, 1), (6, 3)]
    """
    runs = []
    for i in sorted(indices):
        if runs and runs[-1][0] + runs[-1][1] == i:
            runs[-1][1] += 1
        else:
            runs.append([i, 1])
    return [tuple(r) for r in runs]


def span_subsystem(D: Iterable[int], n: int) -> RootSet:
    """Roots in the span of the simple roots indexed by D."""
    D = simple_subset(D, n)
    roots = []
    for start, length in components(D):
        block = range(start, start + length + 1)
        roots.extend((a, b) for a in block for b in block if a != b)
    return RootSet.from_roots(n, roots)


def orthogonal(D1: Iterable[int], D2: Iterable[int]) -> bool:
    D1, D2 = frozenset(D1), frozenset(D2)
    return all(abs(i - j) >= 2 for i in D1 for j in D2)


def orthogonal_pairs(n: int) -> Iterator[tuple[frozenset, frozenset]]:
    """All orthogonal pairs of simple subsets, in a fixed order."""
    # each index is in D1, in D2, or in neither
    for labels in itertools.product((0, 1, 2), repeat=n):
        D1 = frozenset(i + 1 for i, x in enumerate(labels) if x == 1)
        D2 = frozenset(i + 1 for i, x in enumerate(labels) if x == 2)
        if orthogonal(D1, D2):
            yield D1, D2


def act_root(w: Permutation, x) -> Root:
    a, b = x
    return Root(w(a), w(b))


def act_set(w: Permutation, C: RootSet) -> RootSet:
    if w.size != C.m:
        raise ValueError(f"permutation of {w.size} points cannot act on A_{C.n}")
    return RootSet.from_roots(C.n, (act_root(w, r) for r in C.roots()))


def build_psi(w: Permutation, D1, D2, n: int) -> RootSet:
    """The biclosed set w((positive roots minus span D1) union span D2)."""
    D1, D2 = simple_subset(D1, n), simple_subset(D2, n)
    if not orthogonal(D1, D2):
        raise ValueError(f"simple subsets {sorted(D1)} and {sorted(D2)} are not orthogonal")
    base = (standard_positive_system(n) - span_subsystem(D1, n)) | span_subsystem(D2, n)
    return act_set(w, base)


def is_positive_system(C: RootSet) -> bool:
    neg = C.negate()
    return (C & neg).mask == 0 and (C | neg) == full_root_system(C.n) and is_biclosed(C)


def is_parabolic(C: RootSet) -> bool:
    from .bijection import classify
    return not classify(C).delta1


def is_horocyclic(C: RootSet) -> bool:
    from .bijection import classify
    return not classify(C).delta2


def stabilizer(C: RootSet) -> list[Permutation]:
    """All w in S_{n+1} with wC = C, by exhaustive search."""
    require_biclosed(C)
    return [w for w in Permutation.all(C.m) if act_set(w, C) == C]


def coxeter_stabilizer(w: Permutation, D1, D2) -> list[Permutation]:
    """w U w^-1 where U is generated by the s_i with i in D1 | D2.

    U permutes each run {i, ..., i+k} of the simple indices freely and fixes
    everything else.
    """
    m = w.size
    blocks = [range(s, s + k + 1) for s, k in components(set(D1) | set(D2))]
    out = []
    for choice in itertools.product(*(itertools.permutations(b) for b in blocks)):
        images = list(range(1, m + 1))
        for block, perm in zip(blocks, choice):
            for x, y in zip(block, perm):
                images[x - 1] = y
        out.append(w * Permutation(tuple(images)) * w.inverse())
    return sorted(out)


_ALPHA = "α"
_MINUS = "−"


def format_root(x) -> str:
    """``(1, 3)`` -> ``"α_1+α_2"``; ``(3, 1)`` -> ``"−α_1−α_2"``."""
    a, b = x
    lo, hi = min(a, b), max(a, b)
    terms = [f"{_ALPHA}_{i}" for i in range(lo, hi)]
    return "+".join(terms) if a < b else _MINUS + _MINUS.join(terms)


def format_roots(C: RootSet) -> str:
    """Set notation, pairing ``±`` roots: ``{α_2,±α_1}``."""
    if not len(C):
        return "∅"
    parts = []
    positive = [r for r in all_roots(C.n) if r.is_positive]
    for a, b in sorted(positive, key=lambda r: (r.b - r.a, r.a)):
        pos, neg = (a, b) in C, (b, a) in C
        if pos and neg:
            body = format_root((a, b))
            parts.append("±" + (f"({body})" if b - a > 1 else body))
        elif pos:
            parts.append(format_root((a, b)))
        elif neg:
            parts.append(format_root((b, a)))
    return "{" + ",".join(parts) + "}"


def _parse_term(term: str) -> list[Root]:
    term = term.strip().replace("-", _MINUS)
    sign = "+"
    if term.startswith("±"):
        sign, term = "±", term[1:]
    elif term.startswith(_MINUS):
        sign, term = _MINUS, term[1:]
    term = term.strip("()")
    if sign == _MINUS:
        pieces = term.split(_MINUS)
    else:
        pieces = term.split("+")
    idx = []
    for piece in pieces:
        found = re.fullmatch(r"\s*[aα]_?\{?(\d+)\}?\s*", piece)
        if not found:
            raise ValueError(f"cannot parse root term {piece!r}")
        idx.append(int(found.group(1)))
    idx.sort()
    if idx != list(range(idx[0], idx[0] + len(idx))):
        raise ValueError(f"{term!r} is not a root (indices not consecutive)")
    pos = Root(idx[0], idx[-1] + 1)
    return {"+": [pos], _MINUS: [pos.negate()], "±": [pos, pos.negate()]}[sign]


def parse_roots(text: str, n: int) -> RootSet:
    """Inverse of :func:`format_roots` (also accepts ASCII ``a1`` and ``-``)."""
    body = text.strip()
    if body in ("∅", "{}"):
        return RootSet(n)
    if body == "Φ":
        return full_root_system(n)
    if body in ("Φ⁺", "Φ+"):
        return standard_positive_system(n)
    body = body.strip("{}")
    roots = []
    for term in body.split(","):
        if term.strip():
            roots.extend(_parse_term(term))
    return RootSet.from_roots(n, roots)
