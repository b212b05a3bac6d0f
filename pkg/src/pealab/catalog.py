"""Exhaustive catalogs of small structures up to isomorphism.

Bounded posets with n elements correspond to arbitrary posets on n-2
elements (strip the bounds), so classes are generated by enumerating all
naturally-labeled posets on the middle carrier and deduplicating by a
canonical labeling.  Addition tables are then searched by backtracking
with pruning on the forced parts of PE2/PE4 and on agreement with the
target order; every hit is independently re-checked before it is kept.
"""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from .errors import FormatError, InvalidStructure, LimitExceeded
from .pdp import PseudoDPoset
from .pea import PseudoEffectAlgebra, check_pea, is_commutative, pea_to_pdp
from .posets import BoundedPoset, Poset, close_relation, iter_bits

DEFAULT_MAX_N = 7
_MIDDLE_LABELS = "abcdefgh"


def size_limit() -> int:
    """Enumeration cap, configurable through PEALAB_MAX_N."""
    raw = os.environ.get("PEALAB_MAX_N")
    if raw is None:
        return DEFAULT_MAX_N
    try:
        return int(raw)
    except ValueError:
        raise FormatError("PEALAB_MAX_N must be an integer") from None


def _canonical_rows(rows: list[int], m: int) -> tuple[int, ...]:
    best = None
    for perm in itertools.permutations(range(m)):
        relabeled = [0] * m
        for i in range(m):
            for j in iter_bits(rows[i]):
                relabeled[perm[i]] |= 1 << perm[j]
        key = tuple(relabeled)
        if best is None or key < best:
            best = key
    return best


def enumerate_posets(m: int) -> list[Poset]:
    """One representative per isomorphism class of m-element posets."""
    if m == 0:
        return [Poset((), ())]
    labels = tuple(_MIDDLE_LABELS[:m])
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    canon: set[tuple[int, ...]] = set()
    for selector in range(1 << len(pairs)):
        rows = [1 << i for i in range(m)]
        for k, (i, j) in enumerate(pairs):
            if selector >> k & 1:
                rows[i] |= 1 << j
        closed = list(rows)
        close_relation(closed)
        if closed != rows:
            continue  # closure shows up as its own selector
        canon.add(_canonical_rows(rows, m))
    return [Poset(labels, rows) for rows in sorted(canon)]


def enumerate_bounded_posets(n: int, limit: int | None = None) -> list[BoundedPoset]:
    """One representative per isomorphism class of bounded posets."""
    cap = size_limit() if limit is None else limit
    if n > cap:
        raise LimitExceeded(f"n={n} exceeds the configured limit {cap}")
    if n < 1:
        raise InvalidStructure("a bounded poset needs at least one element")
    if n == 1:
        return [BoundedPoset(("0",), (1,), 0, 0)]
    out = []
    for middle in enumerate_posets(n - 2):
        labels = ("0",) + middle.labels + ("1",)
        rows = [0] * n
        rows[0] = (1 << n) - 1
        for i in range(middle.n):
            row = 1 << n - 1
            for j in iter_bits(middle.leq[i]):
                row |= 1 << j + 1
            rows[i + 1] = row
        rows[n - 1] = 1 << n - 1
        out.append(BoundedPoset(labels, tuple(rows), 0, n - 1))
    return out


def enumerate_pea_structures(base: BoundedPoset) -> list[PseudoEffectAlgebra]:
    """All addition tables on the carrier whose induced order is exactly
    the given one and which pass every axiom.

    The search fills the table row by row.  A cell (a, b) may only hold a
    value above both a and b (an addition below either operand would break
    the order agreement), cells against the top element are forced empty
    unless the other operand is the bottom, and the element one may appear
    at most once per row and per column.  Completed rows must witness the
    whole up-set of their element, and each completed row prefix must be
    consistent with associativity as far as it is determined.  Survivors
    are re-checked from scratch with the full axiom checker.
    """
    n = base.n
    zero, one = base.bottom, base.top
    leq = base.leq
    one_bit = 1 << one

    allowed = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            if b == one and a != zero:
                continue
            if a == one and b != zero:
                continue
            allowed[a][b] = leq[a] & leq[b]
    suffix = [[0] * (n + 1) for _ in range(n)]
    for a in range(n):
        acc = 0
        for b in range(n - 1, -1, -1):
            acc |= allowed[a][b]
            suffix[a][b] = acc

    table: list[list[int | None]] = [[None] * n for _ in range(n)]
    col_has_one = [False] * n
    results: list[PseudoEffectAlgebra] = []

    def prefix_associative(rows_done: int) -> bool:
        # Check every associativity instance whose lookups are already
        # fixed: rows are final once filled, so a missing x+y with
        # x+(y+z) present can never be repaired later.
        for x in range(rows_done):
            row_x = table[x]
            for y in range(rows_done):
                row_y = table[y]
                xy = row_x[y]
                for z in range(n):
                    yz = row_y[z]
                    if yz is None:
                        continue
                    x_yz = row_x[yz]
                    if x_yz is None:
                        continue
                    if xy is None:
                        return False
                    if xy < rows_done and table[xy][z] != x_yz:
                        return False
        return True

    def sums_witnessed() -> bool:
        # Each defined x+y needs some d+x = x+y and some y+e = x+y.
        for x in range(n):
            for y in range(n):
                c = table[x][y]
                if c is None:
                    continue
                if all(table[d][x] != c for d in range(n)):
                    return False
                if all(table[y][e] != c for e in range(n)):
                    return False
        return True

    def fill(a: int, b: int, witnessed: int, row_has_one: bool) -> None:
        if b == n:
            if witnessed == leq[a] and prefix_associative(a + 1):
                descend(a + 1)
            return
        needed = leq[a] & ~witnessed
        if needed & ~suffix[a][b]:
            return
        if bin(needed).count("1") > n - b:
            return
        for c in iter_bits(allowed[a][b]):
            if c == one:
                if row_has_one or col_has_one[b]:
                    continue
                table[a][b] = c
                col_has_one[b] = True
                fill(a, b + 1, witnessed | one_bit, True)
                col_has_one[b] = False
            else:
                table[a][b] = c
                fill(a, b + 1, witnessed | 1 << c, row_has_one)
            table[a][b] = None
        if not (needed & ~suffix[a][b + 1]):
            fill(a, b + 1, witnessed, row_has_one)

    def descend(a: int) -> None:
        if a < n:
            fill(a, 0, 0, False)
            return
        if not all(col_has_one):
            return
        if not sums_witnessed():
            return
        candidate = PseudoEffectAlgebra(
            base.labels, tuple(tuple(row) for row in table), zero, one
        )
        if check_pea(candidate).ok:
            results.append(candidate)

    descend(0)
    return results


@dataclass
class CatalogEntry:
    base: BoundedPoset
    structures: tuple[PseudoEffectAlgebra, ...]
    provenance: dict = field(default_factory=dict)


def build_catalog(max_n: int, limit: int | None = None) -> list[CatalogEntry]:
    """Catalog entries for every bounded-poset class of size 1..max_n."""
    entries = []
    for n in range(1, max_n + 1):
        for k, base in enumerate(enumerate_bounded_posets(n, limit)):
            structures = tuple(enumerate_pea_structures(base))
            entries.append(
                CatalogEntry(base, structures, {"n": n, "class_index": k})
            )
    return entries


def catalog_pdps(max_n: int, limit: int | None = None) -> list[PseudoDPoset]:
    """Every catalog structure up to max_n, converted to difference form."""
    return [
        pea_to_pdp(A)
        for entry in build_catalog(max_n, limit)
        for A in entry.structures
    ]


def find_smallest_noncommutative(limit_size: int, limit: int | None = None):
    """Smallest carrier size admitting a noncommutative structure.

    Returns (size, witness) or None when everything up to limit_size is
    commutative.
    """
    cap = size_limit() if limit is None else limit
    if limit_size > cap:
        raise LimitExceeded(f"limit {limit_size} exceeds the configured cap {cap}")
    for n in range(1, limit_size + 1):
        for base in enumerate_bounded_posets(n, limit):
            for A in enumerate_pea_structures(base):
                if not is_commutative(A):
                    return n, A
    return None


def _plus_obj(A: PseudoEffectAlgebra) -> dict:
    out = {}
    for a in range(A.n):
        for b in range(A.n):
            c = A.plus[a][b]
            if c is not None:
                out[f"{A.labels[a]},{A.labels[b]}"] = A.labels[c]
    return out


def catalog_to_obj(entries, max_n: int, noncommutative=None) -> dict:
    items = []
    for e in entries:
        base = e.base
        items.append(
            {
                "n": base.n,
                "class_index": e.provenance.get("class_index"),
                "elements": list(base.labels),
                "covers": [
                    [base.labels[a], base.labels[b]] for a, b in base.cover_pairs()
                ],
                "structure_count": len(e.structures),
                "structures": [{"plus": _plus_obj(A)} for A in e.structures],
            }
        )
    obj = {"schema": "pealab-catalog@1", "max_n": max_n, "entries": items}
    if noncommutative is not None:
        obj["noncommutative"] = noncommutative
    return obj


def results_obj(max_n: int, limit: int | None = None) -> dict:
    """Catalog results with the noncommutative-witness record attached."""
    entries = build_catalog(max_n, limit)
    found = None
    for entry in entries:
        for A in entry.structures:
            if not is_commutative(A) and (
                found is None or entry.base.n < found[0]
            ):
                found = (entry.base.n, A)
    noncomm = {"limit": max_n, "found": found is not None}
    if found is not None:
        noncomm["size"] = found[0]
        noncomm["plus"] = _plus_obj(found[1])
    return catalog_to_obj(entries, max_n, noncomm)


def write_catalog(path, max_n: int, limit: int | None = None) -> dict:
    """Build the catalog and persist it as a canonical results file."""
    obj = results_obj(max_n, limit)
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    return obj
