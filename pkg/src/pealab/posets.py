"""Finite bounded posets, their morphisms, and (co)limit machinery.

Order relations are bitmask tables: bit ``j`` of row ``leq[i]`` is set iff
element ``i`` lies below element ``j``.  Every value is immutable after
construction and every operation is pure, so structures can be shared
freely between threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .errors import InvalidStructure
from .reports import Report, Violation


def iter_bits(mask: int):
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def transpose_rows(rows: tuple[int, ...] | list[int]) -> tuple[int, ...]:
    cols = [0] * len(rows)
    for i, row in enumerate(rows):
        for j in iter_bits(row):
            cols[j] |= 1 << i
    return tuple(cols)


def close_relation(rows: list[int]) -> None:
    """Reflexive-transitive closure of bitmask rows, in place."""
    n = len(rows)
    for i in range(n):
        rows[i] |= 1 << i
    for k in range(n):
        bit = 1 << k
        for i in range(n):
            if rows[i] & bit:
                rows[i] |= rows[k]


@dataclass(frozen=True)
class Poset:
    """Finite poset with named elements and a full order table."""

    labels: tuple[str, ...]
    leq: tuple[int, ...]

    def __post_init__(self):
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise InvalidStructure("duplicate element labels")
        if len(self.leq) != n:
            raise InvalidStructure("order table size does not match element count")
        full = (1 << n) - 1
        for i, row in enumerate(self.leq):
            if row & ~full:
                raise InvalidStructure("order table references unknown elements")
            if not row >> i & 1:
                raise InvalidStructure(f"order not reflexive at {self.labels[i]}")
        for i in range(n):
            row = self.leq[i]
            for j in iter_bits(row):
                if j != i and self.leq[j] >> i & 1:
                    raise InvalidStructure(
                        f"cycle detected: {self.labels[i]} and {self.labels[j]} "
                        "are related both ways"
                    )
                if self.leq[j] & ~row:
                    raise InvalidStructure(
                        f"order not transitive above {self.labels[i]} <= {self.labels[j]}"
                    )

    @property
    def n(self) -> int:
        return len(self.labels)

    def le(self, i: int, j: int) -> bool:
        return bool(self.leq[i] >> j & 1)

    @cached_property
    def down(self) -> tuple[int, ...]:
        """Column masks: bit ``i`` of ``down[j]`` is set iff i <= j."""
        return transpose_rows(self.leq)

    def index(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise InvalidStructure(f"unknown element {label!r}") from None

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def comparable_pairs(self) -> list[tuple[int, int]]:
        """All pairs (a, b) with a <= b, in lexicographic order."""
        return [(a, b) for a in range(self.n) for b in iter_bits(self.leq[a])]

    def cover_pairs(self) -> list[tuple[int, int]]:
        """Transitive reduction of the order, in lexicographic order."""
        down = self.down
        covers = []
        for a in range(self.n):
            for b in iter_bits(self.leq[a]):
                if b == a:
                    continue
                between = (self.leq[a] ^ 1 << a) & (down[b] ^ 1 << b)
                if between == 0:
                    covers.append((a, b))
        return covers


@dataclass(frozen=True)
class BoundedPoset(Poset):
    """Poset with distinguished bottom and top elements."""

    bottom: int
    top: int

    def __post_init__(self):
        super().__post_init__()
        if not 0 <= self.bottom < self.n or not 0 <= self.top < self.n:
            raise InvalidStructure("bottom/top index out of range")
        if self.leq[self.bottom] != (1 << self.n) - 1:
            raise InvalidStructure("declared bottom is not below every element")
        if any(not row >> self.top & 1 for row in self.leq):
            raise InvalidStructure("declared top is not above every element")


def validate_bounded_poset(elements, cover_pairs) -> BoundedPoset:
    """Close a cover relation and return the bounded poset it presents.

    Raises InvalidStructure when the covers contain a cycle or when the
    closed order lacks a unique bottom or top.
    """
    labels = tuple(str(e) for e in elements)
    if len(set(labels)) != len(labels):
        raise InvalidStructure("duplicate element labels")
    index = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    rows = [0] * n
    for lo, hi in cover_pairs:
        lo, hi = str(lo), str(hi)
        if lo not in index or hi not in index:
            raise InvalidStructure(f"cover ({lo}, {hi}) uses an undeclared element")
        rows[index[lo]] |= 1 << index[hi]
    close_relation(rows)
    for i in range(n):
        for j in iter_bits(rows[i]):
            if j != i and rows[j] >> i & 1:
                raise InvalidStructure(
                    f"cycle detected through {labels[i]} and {labels[j]}"
                )
    full = (1 << n) - 1
    bottoms = [i for i in range(n) if rows[i] == full]
    if len(bottoms) != 1:
        raise InvalidStructure("no unique bottom element")
    tops = [j for j in range(n) if all(row >> j & 1 for row in rows)]
    if len(tops) != 1:
        raise InvalidStructure("no unique top element")
    return BoundedPoset(labels, tuple(rows), bottoms[0], tops[0])


@dataclass(frozen=True)
class PosetMorphism:
    """Map between posets, stored as a target-index table.

    The constructor checks only shape; isotonicity and bound preservation
    are diagnosed by :func:`check_morphism`.
    """

    source: Poset
    target: Poset
    map: tuple[int, ...]

    def __post_init__(self):
        if len(self.map) != self.source.n:
            raise InvalidStructure("morphism table does not cover the source")
        if any(not 0 <= v < self.target.n for v in self.map):
            raise InvalidStructure("morphism table references unknown targets")

    def __call__(self, i: int) -> int:
        return self.map[i]

    def then(self, other: "PosetMorphism") -> "PosetMorphism":
        """Composition in diagram order: ``f.then(g)`` is ``g o f``."""
        if self.target != other.source:
            raise InvalidStructure("composition boundary mismatch")
        return PosetMorphism(
            self.source, other.target, tuple(other.map[v] for v in self.map)
        )

    def label_map(self) -> dict[str, str]:
        return {
            self.source.labels[i]: self.target.labels[v]
            for i, v in enumerate(self.map)
        }


def identity(P: Poset) -> PosetMorphism:
    return PosetMorphism(P, P, tuple(range(P.n)))


def check_morphism(f: PosetMorphism) -> Report:
    """Report every isotonicity violation and any bound violation."""
    violations = []
    P, R = f.source, f.target
    for x in range(P.n):
        for y in iter_bits(P.leq[x]):
            if y != x and not R.le(f.map[x], f.map[y]):
                violations.append(
                    Violation(
                        "isotone",
                        (("x", P.labels[x]), ("y", P.labels[y])),
                        f"images {R.labels[f.map[x]]} and {R.labels[f.map[y]]} "
                        "are not related",
                    )
                )
    if isinstance(P, BoundedPoset) and isinstance(R, BoundedPoset):
        if f.map[P.bottom] != R.bottom:
            violations.append(
                Violation(
                    "bounds",
                    (("element", P.labels[P.bottom]),),
                    "bottom not preserved",
                )
            )
        if f.map[P.top] != R.top:
            violations.append(
                Violation(
                    "bounds", (("element", P.labels[P.top]),), "top not preserved"
                )
            )
    return Report("morphism", tuple(violations))


def product_bposets(factors) -> BoundedPoset:
    """Finite product: carrier is the cartesian product, order componentwise.

    The empty product is the one-element poset (the terminal object).
    Carrier order is row-major over the factor index ranges.
    """
    factors = list(factors)
    tuples = list(itertools.product(*(range(f.n) for f in factors)))
    labels = tuple(
        "*".join(f.labels[c] for f, c in zip(factors, t)) or "()" for t in tuples
    )
    index = {t: k for k, t in enumerate(tuples)}
    rows = []
    for t in tuples:
        row = 0
        for u in tuples:
            if all(f.le(a, b) for f, a, b in zip(factors, t, u)):
                row |= 1 << index[u]
        rows.append(row)
    bottom = index[tuple(f.bottom for f in factors)]
    top = index[tuple(f.top for f in factors)]
    return BoundedPoset(labels, tuple(rows), bottom, top)


def _require_parallel(f: PosetMorphism, g: PosetMorphism) -> None:
    if f.source != g.source or f.target != g.target:
        raise InvalidStructure("morphisms are not a parallel pair")


def _quotient_classes(B: Poset, pairs):
    """Classes of the coequalizing quotient of B.

    Starts from the equivalence generated by ``pairs``, then repeatedly
    orders the classes by the image of <= and collapses any cycles until
    the class relation is a partial order.  Returns (classes, class_of,
    class_rows) with classes ordered by their least member.
    """
    parent = list(range(B.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for x, y in pairs:
        union(x, y)

    while True:
        groups: dict[int, list[int]] = {}
        for x in range(B.n):
            groups.setdefault(find(x), []).append(x)
        classes = sorted(groups.values(), key=lambda c: c[0])
        class_of = [0] * B.n
        for k, cls in enumerate(classes):
            for x in cls:
                class_of[x] = k
        rows = [0] * len(classes)
        for a in range(B.n):
            for b in iter_bits(B.leq[a]):
                rows[class_of[a]] |= 1 << class_of[b]
        close_relation(rows)
        merged = False
        for c in range(len(classes)):
            for d in iter_bits(rows[c]):
                if d != c and rows[d] >> c & 1:
                    union(classes[c][0], classes[d][0])
                    merged = True
        if not merged:
            return classes, class_of, rows


def coequalizer_posets(f: PosetMorphism, g: PosetMorphism):
    """Coequalizer of a parallel pair in the category of posets."""
    _require_parallel(f, g)
    if not check_morphism(f).ok or not check_morphism(g).ok:
        raise InvalidStructure("coequalizer requires isotone maps")
    B = f.target
    classes, class_of, rows = _quotient_classes(B, zip(f.map, g.map))
    labels = tuple(B.labels[cls[0]] for cls in classes)
    Q = Poset(labels, tuple(rows))
    return Q, PosetMorphism(B, Q, tuple(class_of))


def coequalizer_bposets(f: PosetMorphism, g: PosetMorphism):
    """Coequalizer of a parallel pair in the category of bounded posets."""
    _require_parallel(f, g)
    if not check_morphism(f).ok or not check_morphism(g).ok:
        raise InvalidStructure("coequalizer requires valid bounded-poset morphisms")
    B = f.target
    if not isinstance(B, BoundedPoset):
        raise InvalidStructure("coequalizer target must be a bounded poset")
    classes, class_of, rows = _quotient_classes(B, zip(f.map, g.map))
    labels = tuple(B.labels[cls[0]] for cls in classes)
    Q = BoundedPoset(labels, tuple(rows), class_of[B.bottom], class_of[B.top])
    return Q, PosetMorphism(B, Q, tuple(class_of))


@dataclass(frozen=True)
class SplitFork:
    """Witness for a split (hence absolute) coequalizer.

    The equations q o f = q o g, q o s = id, f o t = id and g o t = s o q
    are not enforced here; :func:`is_split_fork` decides them.
    """

    A: BoundedPoset
    B: BoundedPoset
    Q: BoundedPoset
    f: PosetMorphism
    g: PosetMorphism
    q: PosetMorphism
    s: PosetMorphism
    t: PosetMorphism

    def __post_init__(self):
        ends = [
            (self.f, self.A, self.B),
            (self.g, self.A, self.B),
            (self.q, self.B, self.Q),
            (self.s, self.Q, self.B),
            (self.t, self.B, self.A),
        ]
        for m, src, dst in ends:
            if m.source != src or m.target != dst:
                raise InvalidStructure("fork morphism boundaries are inconsistent")


def is_split_fork(fork: SplitFork) -> bool:
    """Decide the four split-fork equations pointwise."""
    return (
        fork.f.then(fork.q) == fork.g.then(fork.q)
        and fork.s.then(fork.q) == identity(fork.Q)
        and fork.t.then(fork.f) == identity(fork.B)
        and fork.t.then(fork.g) == fork.q.then(fork.s)
    )


def enumerate_morphisms(P: BoundedPoset, R: BoundedPoset) -> list[PosetMorphism]:
    """All bound-preserving isotone maps P -> R, sorted by map table."""
    if not isinstance(P, BoundedPoset) or not isinstance(R, BoundedPoset):
        raise InvalidStructure("morphism enumeration needs bounded posets")
    down = P.down
    order = sorted(range(P.n), key=lambda i: (bin(down[i]).count("1"), i))
    up_r = R.leq
    full_r = (1 << R.n) - 1
    current = [0] * P.n
    found: list[tuple[int, ...]] = []

    def extend(k: int) -> None:
        if k == P.n:
            found.append(tuple(current))
            return
        i = order[k]
        cand = full_r
        for j in order[:k]:
            if P.leq[j] >> i & 1:
                cand &= up_r[current[j]]
        if i == P.bottom:
            cand &= 1 << R.bottom
        if i == P.top:
            cand &= 1 << R.top
        for v in iter_bits(cand):
            current[i] = v
            extend(k + 1)

    extend(0)
    found.sort()
    return [PosetMorphism(P, R, m) for m in found]


def find_isomorphism(P: Poset, R: Poset):
    """An order- and bound-preserving bijection P -> R, or None."""
    if P.n != R.n:
        return None
    down_p, down_r = P.down, R.down
    inv_p = [
        (bin(down_p[i]).count("1"), bin(P.leq[i]).count("1")) for i in range(P.n)
    ]
    inv_r = [
        (bin(down_r[j]).count("1"), bin(R.leq[j]).count("1")) for j in range(R.n)
    ]
    if sorted(inv_p) != sorted(inv_r):
        return None
    candidates = [
        [j for j in range(R.n) if inv_r[j] == inv_p[i]] for i in range(P.n)
    ]
    assigned = [-1] * P.n
    used = [False] * R.n

    def extend(i: int) -> bool:
        if i == P.n:
            return True
        for j in candidates[i]:
            if used[j]:
                continue
            ok = True
            for k in range(i):
                if P.le(k, i) != R.le(assigned[k], j) or P.le(i, k) != R.le(
                    j, assigned[k]
                ):
                    ok = False
                    break
            if ok:
                assigned[i] = j
                used[j] = True
                if extend(i + 1):
                    return True
                used[j] = False
        return False

    if not extend(0):
        return None
    iso = PosetMorphism(P, R, tuple(assigned))
    if (
        isinstance(P, BoundedPoset)
        and isinstance(R, BoundedPoset)
        and not check_morphism(iso).ok
    ):
        return None
    return iso
