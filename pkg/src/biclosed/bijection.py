"""
The correspondence between biclosed sets of A_n and associative quasitrivial
operations on ``{1, ..., n+1}``.

Two routes are provided and kept independent so they can check each other:

* the pairwise dictionary: ``(a, b)`` is in C exactly when ``F(a, b) == b``
  (:func:`op_to_pairs`, :func:`pairs_to_op`);
* the structural route through a form ``w(Phi+_{D1,D2})``: the runs of
  ``D1 | D2`` become multi-element classes, the remaining points become
  singletons, and their relative order is the interleaving of
  :func:`interleave` (:func:`semigroup_from_form`, :func:`semigroup_to_biclosed`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import NotAssociative
from .permutation import Permutation
from .root_system import (
    RootSet, build_psi, components, is_biclosed, orthogonal, orthogonal_pairs,
    require_biclosed, simple_subset,
)
from .semigroup import (
    PreorderDecomposition, QuasitrivialOp, from_preorder, to_preorder,
)

__all__ = [
    "PositionVector", "CanonicalBiclosed", "Label",
    "interleave", "deinterleave", "format_labels", "parse_labels",
    "op_to_pairs", "pairs_to_op", "associative_via_biclosed",
    "biclosed_to_semigroup", "semigroup_to_biclosed",
    "form_from_preorder", "semigroup_from_form", "find_form",
    "biclosed_to_semigroup_structural", "classify",
]

# ("A", j) or ("B", j), both 1-based
Label = tuple[str, int]


@dataclass(frozen=True)
class PositionVector:
    """Start positions of t separated runs of lengths ``sizes`` inside 1..n."""
    n: int
    sizes: tuple[int, ...]
    positions: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(k) for k in self.sizes)
        positions = tuple(int(i) for i in self.positions)
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "positions", positions)
        if len(sizes) != len(positions):
            raise ValueError("sizes and positions must have the same length")
        if any(k < 1 for k in sizes):
            raise ValueError("run lengths must be positive")
        if positions:
            if positions[0] < 1 or positions[-1] + sizes[-1] - 1 > self.n:
                raise ValueError(f"runs {positions} of lengths {sizes} do not fit in 1..{self.n}")
            for j in range(len(sizes) - 1):
                if positions[j] + sizes[j] + 1 > positions[j + 1]:
                    raise ValueError(f"runs {j + 1} and {j + 2} are not separated")
        if self.p < 0:
            raise ValueError("runs do not fit")

    @property
    def t(self) -> int:
        return len(self.sizes)

    @property
    def p(self) -> int:
        return self.n + 1 - sum(self.sizes) - len(self.sizes)

    @classmethod
    def all(cls, n: int, sizes: Sequence[int]):
        """Every valid position vector for the given run lengths."""
        sizes = tuple(sizes)

        def rec(j, start):
            if j == len(sizes):
                yield ()
                return
            rest = sum(sizes[j + 1:]) + len(sizes) - j - 1
            for i in range(start, n - sizes[j] - rest + 2):
                for tail in rec(j + 1, i + sizes[j] + 1):
                    yield (i,) + tail

        for positions in rec(0, 1):
            yield cls(n, sizes, positions)


def interleave(P: PositionVector) -> list[Label]:
    """The order on A_1..A_t, B_1..B_p encoded by a position vector.

    A_j is preceded by exactly ``i_j - (k_1 + ... + k_{j-1}) - j`` of the B's.

    >>> format_labels(interleave(PositionVector(8, (2, 3), (2, 6))))
    'B_1<A_1<B_2<A_2'
    """
    out: list[Label] = []
    b_used = 0
    consumed = 0
    for j, (k, i) in enumerate(zip(P.sizes, P.positions), start=1):
        b_before = i - consumed - j
        out.extend(("B", b) for b in range(b_used + 1, b_before + 1))
        b_used = b_before
        out.append(("A", j))
        consumed += k
    out.extend(("B", b) for b in range(b_used + 1, P.p + 1))
    return out


def deinterleave(order: Sequence[Label], n: int, sizes: Sequence[int]) -> PositionVector:
    sizes = tuple(sizes)
    a_seen = [j for kind, j in order if kind == "A"]
    b_seen = [j for kind, j in order if kind == "B"]
    if a_seen != list(range(1, len(a_seen) + 1)):
        raise ValueError(f"A labels out of order: {a_seen}")
    if b_seen != list(range(1, len(b_seen) + 1)):
        raise ValueError(f"B labels out of order: {b_seen}")
    if len(a_seen) != len(sizes):
        raise ValueError(f"{len(a_seen)} A labels for {len(sizes)} run lengths")
    if len(order) != len(a_seen) + len(b_seen):
        raise ValueError("unknown label kind")
    positions = []
    bs = 0
    consumed = 0
    for kind, j in order:
        if kind == "B":
            bs += 1
        else:
            positions.append(bs + consumed + j)
            consumed += sizes[j - 1]
    P = PositionVector(n, sizes, tuple(positions))
    if P.p != len(b_seen):
        raise ValueError(f"expected {P.p} B labels, got {len(b_seen)}")
    return P


def format_labels(order: Sequence[Label]) -> str:
    return "<".join(f"{kind}_{j}" for kind, j in order)


def parse_labels(text: str) -> list[Label]:
    out = []
    for tok in text.replace(" ", "").split("<"):
        if not tok:
            continue
        kind, _, j = tok.partition("_")
        if kind not in ("A", "B") or not j.isdigit():
            raise ValueError(f"bad label {tok!r}")
        out.append((kind, int(j)))
    return out


def op_to_pairs(F: QuasitrivialOp) -> RootSet:
    """The root set {(a, b) : F(a, b) = b}; defined for any quasitrivial F."""
    m = F.m
    return RootSet.from_roots(
        m - 1, ((a, b) for a in range(1, m + 1) for b in range(1, m + 1)
                if a != b and F(a, b) == b))


def pairs_to_op(C: RootSet) -> QuasitrivialOp:
    return QuasitrivialOp.from_function(C.m, lambda a, b: b if a == b or (a, b) in C else a)


def associative_via_biclosed(F: QuasitrivialOp) -> bool:
    return is_biclosed(op_to_pairs(F))


def biclosed_to_semigroup(C: RootSet) -> QuasitrivialOp:
    """F_C, built pairwise and validated by extracting its preorder."""
    require_biclosed(C)
    F = pairs_to_op(C)
    to_preorder(F)
    return F


@dataclass(frozen=True)
class CanonicalBiclosed:
    w: Permutation
    delta1: frozenset
    delta2: frozenset

    def to_json(self) -> dict:
        return {"w": self.w.to_json(), "delta1": sorted(self.delta1),
                "delta2": sorted(self.delta2)}

    def __str__(self) -> str:
        def fmt(D):
            return "{" + ",".join(f"α_{i}" for i in sorted(D)) + "}" if D else "∅"
        prefix = "" if self.w.is_identity() else str(self.w)
        return f"{prefix}Φ⁺_{{{fmt(self.delta1)},{fmt(self.delta2)}}}"


def form_from_preorder(P: PreorderDecomposition) -> CanonicalBiclosed:
    """(w, D1, D2) with the ascending-within-class choice of w."""
    n = P.m - 1
    sizes = []
    labels = []
    order: list[Label] = []
    for block, lab in zip(P.blocks, P.labels):
        if lab is None:
            order.append(("B", sum(kind == "B" for kind, _ in order) + 1))
        else:
            sizes.append(len(block) - 1)
            labels.append(lab)
            order.append(("A", len(sizes)))
    pv = deinterleave(order, n, sizes)
    D1, D2 = set(), set()
    for i, k, lab in zip(pv.positions, pv.sizes, labels):
        (D1 if lab == 1 else D2).update(range(i, i + k))
    w = Permutation(tuple(x for block in P.blocks for x in block))
    return CanonicalBiclosed(w, frozenset(D1), frozenset(D2))


def semigroup_to_biclosed(F: QuasitrivialOp) -> RootSet:
    P = to_preorder(F)
    form = form_from_preorder(P)
    return build_psi(form.w, form.delta1, form.delta2, P.m - 1)


def semigroup_from_form(w: Permutation, D1, D2, n: int) -> QuasitrivialOp:
    """The operation attached to w(Phi+_{D1,D2}), built from the runs of D1 | D2."""
    D1, D2 = simple_subset(D1, n), simple_subset(D2, n)
    if not orthogonal(D1, D2):
        raise ValueError("simple subsets are not orthogonal")
    runs = components(D1 | D2)
    pv = PositionVector(n, tuple(k for _, k in runs), tuple(i for i, _ in runs))
    a_classes = [tuple(w(u) for u in range(i, i + k + 1)) for i, k in runs]
    eps = [1 if i in D1 else 2 for i, _ in runs]
    covered = {u for i, k in runs for u in range(i, i + k + 1)}
    b_classes = [(w(u),) for u in range(1, n + 2) if u not in covered]
    blocks, labels = [], []
    for kind, j in interleave(pv):
        if kind == "A":
            blocks.append(a_classes[j - 1])
            labels.append(eps[j - 1])
        else:
            blocks.append(b_classes[j - 1])
            labels.append(None)
    return from_preorder(PreorderDecomposition(n + 1, tuple(blocks), tuple(labels)))


def find_form(C: RootSet) -> CanonicalBiclosed:
    """Some (w, D1, D2) with build_psi(w, D1, D2) == C, by exhaustive search.

    The w found is the first in lexicographic image order, which is not in
    general the canonical representative returned by :func:`classify`.
    """
    require_biclosed(C)
    for D1, D2 in orthogonal_pairs(C.n):
        base = build_psi(Permutation.identity(C.m), D1, D2, C.n)
        if len(base) != len(C):
            continue
        for w in Permutation.all(C.m):
            if build_psi(w, D1, D2, C.n) == C:
                return CanonicalBiclosed(w, D1, D2)
    raise AssertionError(f"no form found for biclosed set {C}")


def biclosed_to_semigroup_structural(C: RootSet) -> QuasitrivialOp:
    """F_C via a searched form and the interleaving, never via the pair rule."""
    form = find_form(C)
    return semigroup_from_form(form.w, form.delta1, form.delta2, C.n)


def classify(C: RootSet) -> CanonicalBiclosed:
    require_biclosed(C)
    try:
        P = to_preorder(pairs_to_op(C))
    except NotAssociative as exc:  # pragma: no cover - would contradict biclosedness
        raise AssertionError(f"biclosed set gave a non-associative table: {exc}") from exc
    return form_from_preorder(P)
