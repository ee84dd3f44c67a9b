"""
Enumeration of biclosed sets and quasitrivial semigroups by independent methods.

* brute force: every subset of the roots is tested, vectorized over bitmasks;
* classified: every w(Phi+_{D1,D2}) over orthogonal (D1, D2) and all w;
* semigroup image: every ordered set partition with projection labels, pushed
  through the bijection.
"""

from __future__ import annotations

import itertools
import math
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .errors import CrossCheckFailure, RankTooLarge
from .permutation import Permutation
from .root_system import (
    RootSet, act_set, build_psi, coxeter_stabilizer, is_positive_system,
    orthogonal_pairs, pair_index, stabilizer,
)
from .semigroup import (
    PreorderDecomposition, QuasitrivialOp, from_preorder, identity_element,
    is_anticommutative, is_commutative, zero_element,
)

__all__ = [
    "BRUTE_FORCE_LIMIT", "FORCED_LIMIT", "EnumerationReport",
    "enum_biclosed_bruteforce", "enum_biclosed_classified", "enum_semigroups",
    "enum_biclosed_from_semigroups", "ordered_set_partitions", "formula_count",
    "report", "csv_rows",
]

BRUTE_FORCE_LIMIT = 4
FORCED_LIMIT = 5
_CHUNK_BITS = 20


def _triples(n: int) -> list[tuple[int, int, int]]:
    """Bit indices of (a,b), (b,c), (a,c) for distinct a, b, c."""
    m = n + 1
    return [(pair_index(a, b, n), pair_index(b, c, n), pair_index(a, c, n))
            for a, b, c in itertools.permutations(range(1, m + 1), 3)]


def _scan_chunk(args) -> list[int]:
    n, high = args
    total = n * (n + 1)
    low_bits = min(total, _CHUNK_BITS)
    triples = _triples(n)
    base = high << low_bits

    # skip the chunk if the fixed high bits already break a closure condition
    fixed = [(x, y, z) for x, y, z in triples if min(x, y, z) >= low_bits]
    for x, y, z in fixed:
        bx, by, bz = base >> x & 1, base >> y & 1, base >> z & 1
        if (bx and by and not bz) or (not bx and not by and bz):
            return []

    masks = np.arange(1 << low_bits, dtype=np.int64) | base
    bits = [((masks >> k) & 1).astype(bool) for k in range(total)]
    bad = np.zeros(masks.shape, dtype=bool)
    for x, y, z in triples:
        bx, by, bz = bits[x], bits[y], bits[z]
        # C closed, and the complement closed
        bad |= bx & by & ~bz
        bad |= ~bx & ~by & bz
    return [int(v) for v in masks[~bad]]


def enum_biclosed_bruteforce(n: int, force: bool = False, jobs: int = 1) -> list[RootSet]:
    """Every biclosed subset of A_n, found by testing all 2^(n(n+1)) subsets."""
    if n < 0:
        raise ValueError("rank must be non-negative")
    limit = FORCED_LIMIT if force else BRUTE_FORCE_LIMIT
    if n > limit:
        raise RankTooLarge(f"brute force over A_{n} needs 2^{n * (n + 1)} subsets "
                           f"(limit n <= {limit}{'' if force else ' without --force-large'})")
    total = n * (n + 1)
    chunks = [(n, h) for h in range(1 << max(0, total - _CHUNK_BITS))]
    if jobs > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            found = [mask for part in pool.map(_scan_chunk, chunks) for mask in part]
    else:
        found = [mask for c in chunks for mask in _scan_chunk(c)]
    return sorted((RootSet(n, mask) for mask in found), key=lambda C: C.key)


def _classified_all(n: int) -> Iterator[RootSet]:
    m = n + 1
    for D1, D2 in orthogonal_pairs(n):
        for w in Permutation.all(m):
            yield build_psi(w, D1, D2, n)


def enum_biclosed_classified(n: int) -> list[RootSet]:
    """Every w(Phi+_{D1,D2}), deduplicated."""
    return sorted(set(_classified_all(n)), key=lambda C: C.key)


def ordered_set_partitions(items: Sequence[int]) -> Iterator[list[tuple[int, ...]]]:
    """All ordered set partitions of ``items``; blocks keep the input order.

    >>> sum(1 for _ in ordered_set_partitions([1, 2, 3]))
    13
    """
    items = list(items)
    if not items:
        yield []
        return
    for r in range(1, len(items) + 1):
        for first in itertools.combinations(items, r):
            rest = [x for x in items if x not in first]
            for tail in ordered_set_partitions(rest):
                yield [first] + tail


def enum_semigroups(m: int) -> list[QuasitrivialOp]:
    """Every associative quasitrivial operation on m points, sorted by table."""
    if m < 1:
        raise ValueError("m must be at least 1")
    out = []
    for blocks in ordered_set_partitions(range(1, m + 1)):
        multi = [j for j, b in enumerate(blocks) if len(b) > 1]
        for choice in itertools.product((1, 2), repeat=len(multi)):
            labels = [None] * len(blocks)
            for j, lab in zip(multi, choice):
                labels[j] = lab
            out.append(from_preorder(PreorderDecomposition(m, tuple(blocks), tuple(labels))))
    return sorted(out)


def enum_biclosed_from_semigroups(n: int) -> list[RootSet]:
    from .bijection import semigroup_to_biclosed
    return sorted((semigroup_to_biclosed(F) for F in enum_semigroups(n + 1)),
                  key=lambda C: C.key)


@lru_cache(maxsize=None)
def formula_count(m: int) -> int:
    """Sum over ordered set partitions of 2^(number of blocks of size >= 2).

    Choose the first block of size k: C(m, k) ways, times 2 labels if k >= 2.
    """
    if m == 0:
        return 1
    return sum(math.comb(m, k) * (1 if k == 1 else 2) * formula_count(m - k)
               for k in range(1, m + 1))


@dataclass
class EnumerationReport:
    n: int
    counts: dict = field(default_factory=dict)
    tallies: dict = field(default_factory=dict)
    seconds: dict = field(default_factory=dict)
    formula_count: int = 0
    formula_derived: bool = False
    classified_generated: int = 0
    orbit_sizes: dict = field(default_factory=dict)
    coxeter_stabilizer_agreement: str = ""
    checks: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "n": self.n, "m": self.n + 1, "counts": self.counts, "tallies": self.tallies,
            "seconds": {k: round(v, 4) for k, v in self.seconds.items()},
            "formula_count": self.formula_count, "formula_derived": self.formula_derived,
            "classified_generated": self.classified_generated,
            "orbit_sizes": {str(k): v for k, v in sorted(self.orbit_sizes.items())},
            "coxeter_stabilizer_agreement": self.coxeter_stabilizer_agreement,
            "checks": self.checks,
        }


def _tallies(sets: list[RootSet]) -> dict:
    from .bijection import biclosed_to_semigroup, classify
    t = Counter(dict.fromkeys(
        ["positive_systems", "parabolic", "horocyclic", "commutative",
         "anticommutative", "with_identity", "with_zero"], 0))
    for C in sets:
        form = classify(C)
        F = biclosed_to_semigroup(C)
        t["positive_systems"] += is_positive_system(C)
        t["parabolic"] += not form.delta1
        t["horocyclic"] += not form.delta2
        t["commutative"] += is_commutative(F)
        t["anticommutative"] += is_anticommutative(F)
        t["with_identity"] += identity_element(F) is not None
        t["with_zero"] += zero_element(F) is not None
    return dict(sorted(t.items()))


def _proposition_checks(sets: list[RootSet]) -> dict:
    """Structural statements about each set, as name -> number of failures."""
    from .bijection import biclosed_to_semigroup, classify
    from .order import PI1, PI2, restriction
    n = sets[0].n if sets else 0
    m = n + 1
    names = ["commutative_iff_positive_system", "parabolic_iff_no_pi1",
             "horocyclic_iff_no_pi2", "anticommutative_is_empty_or_full"]
    if n >= 1:
        names += ["identity_iff_alpha1_unused", "zero_iff_alphan_unused"]
    fails = dict.fromkeys(sorted(names), 0)
    for C in sets:
        form = classify(C)
        F = biclosed_to_semigroup(C)
        used = form.delta1 | form.delta2
        kinds = {restriction(F, a, b) for a, b in itertools.combinations(range(1, m + 1), 2)}
        fails["commutative_iff_positive_system"] += is_commutative(F) != is_positive_system(C)
        if n >= 1:
            fails["identity_iff_alpha1_unused"] += (identity_element(F) is not None) != (1 not in used)
            fails["zero_iff_alphan_unused"] += (zero_element(F) is not None) != (n not in used)
        fails["parabolic_iff_no_pi1"] += (not form.delta1) != (PI1 not in kinds)
        fails["horocyclic_iff_no_pi2"] += (not form.delta2) != (PI2 not in kinds)
        if is_anticommutative(F):
            fails["anticommutative_is_empty_or_full"] += len(C) not in (0, n * (n + 1))
    return fails


def report(n: int, force: bool = False, jobs: int = 1) -> EnumerationReport:
    """Enumerate A_n three ways, cross-check, and tally the subclasses."""
    rep = EnumerationReport(n)
    m = n + 1
    methods = {}

    if n <= BRUTE_FORCE_LIMIT or (force and n <= FORCED_LIMIT):
        t0 = time.perf_counter()
        methods["bruteforce"] = enum_biclosed_bruteforce(n, force=force, jobs=jobs)
        rep.seconds["bruteforce"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    generated = list(_classified_all(n))
    methods["classified"] = sorted(set(generated), key=lambda C: C.key)
    rep.seconds["classified"] = time.perf_counter() - t0
    rep.classified_generated = len(generated)
    t0 = time.perf_counter()
    methods["semigroup_image"] = enum_biclosed_from_semigroups(n)
    rep.seconds["semigroup_image"] = time.perf_counter() - t0

    rep.counts = {name: len(sets) for name, sets in methods.items()}
    rep.formula_count = formula_count(m)
    rep.formula_derived = "bruteforce" not in methods
    reference_name = next(iter(methods))
    reference = methods[reference_name]
    for name, sets in methods.items():
        if sets != reference:
            raise CrossCheckFailure(f"{name} and {reference_name} disagree at n={n}")
    if rep.formula_count != len(reference):
        raise CrossCheckFailure(f"formula gives {rep.formula_count}, enumeration {len(reference)}")

    tallies = {name: _tallies(sets) for name, sets in methods.items()}
    first = tallies[reference_name]
    for name, t in tallies.items():
        if t != first:
            raise CrossCheckFailure(f"tallies of {name} differ from {reference_name}")
    rep.tallies = first

    expected_anti = 2 if m >= 2 else 1
    if first["positive_systems"] != math.factorial(m):
        raise CrossCheckFailure(f"{first['positive_systems']} positive systems, expected {m}!")
    if first["commutative"] != first["positive_systems"]:
        raise CrossCheckFailure("commutative count differs from positive system count")
    if first["anticommutative"] != expected_anti:
        raise CrossCheckFailure(f"{first['anticommutative']} anticommutative, expected {expected_anti}")
    rep.checks = _proposition_checks(reference)
    bad = {k: v for k, v in rep.checks.items() if v}
    if bad:
        raise CrossCheckFailure(f"structural checks failed: {bad}")

    if n <= 3:
        rep.orbit_sizes, rep.coxeter_stabilizer_agreement = _orbits(reference)
    return rep


def _orbits(sets: list[RootSet]) -> tuple[dict, str]:
    from .bijection import classify
    if not sets:
        return {}, "0/0"
    m = sets[0].m
    order = math.factorial(m)
    perms = list(Permutation.all(m))
    seen = set()
    sizes = Counter()
    agree = 0
    for C in sets:
        stab = stabilizer(C)
        form = classify(C)
        agree += stab == coxeter_stabilizer(form.w, form.delta1, form.delta2)
        if C in seen:
            continue
        orbit = {act_set(w, C) for w in perms}
        seen |= orbit
        if order % len(orbit) or len(orbit) * len(stab) != order:
            raise CrossCheckFailure(f"orbit of {C} has size {len(orbit)}, stabilizer {len(stab)}")
        sizes[len(orbit)] += 1
    return dict(sizes), f"{agree}/{len(sets)}"


def csv_rows(n: int) -> list[tuple[str, str]]:
    """Two columns per biclosed set: its canonical form with roots, and its
    block structure."""
    from .bijection import biclosed_to_semigroup, classify
    from .root_system import format_roots
    from .semigroup import to_preorder
    rows = []
    for C in enum_biclosed_classified(n):
        form = classify(C)
        rows.append((f"{form}={format_roots(C)}", str(to_preorder(biclosed_to_semigroup(C)))))
    return rows
