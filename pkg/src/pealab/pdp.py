"""Pseudo D-posets: bounded posets with two partial difference operations.

``slash[b][a]`` holds b/a and ``bslash[b][a]`` holds b\\a; both are defined
exactly when a <= b.  The axioms are

  PD1: a/0 = a\\0 = a
  PD2: for a <= b <= c, c/b <= c/a and c\\b <= c\\a, with
       (c/a)\\(c/b) = b/a and (c\\a)/(c\\b) = b\\a.

Tables are stored densely with ``None`` marking undefined entries, so the
exhaustive checkers get O(1) lookups.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InvalidStructure
from .functors import interval_elements, interval_poset
from .posets import (
    BoundedPoset,
    PosetMorphism,
    check_morphism,
    enumerate_morphisms,
    iter_bits,
    product_bposets,
)
from .reports import Report, Violation

DiffTable = tuple[tuple[int | None, ...], ...]


def _check_table(table, n: int, name: str) -> None:
    if len(table) != n or any(len(row) != n for row in table):
        raise InvalidStructure(f"{name} table size does not match the carrier")
    for row in table:
        for v in row:
            if v is not None and not 0 <= v < n:
                raise InvalidStructure(f"{name} table references unknown elements")


@dataclass(frozen=True)
class PseudoDPoset:
    base: BoundedPoset
    slash: DiffTable
    bslash: DiffTable

    def __post_init__(self):
        _check_table(self.slash, self.base.n, "slash")
        _check_table(self.bslash, self.base.n, "bslash")

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def labels(self) -> tuple[str, ...]:
        return self.base.labels


def is_dposet(X: PseudoDPoset) -> bool:
    """True iff the two difference operations coincide pointwise."""
    return X.slash == X.bslash


def check_pdp(X: PseudoDPoset) -> Report:
    """Report every definedness, PD1 or PD2 violation with its witnesses."""
    base = X.base
    n = base.n
    lab = base.labels
    violations = []

    for name, table in (("/", X.slash), ("\\", X.bslash)):
        for b in range(n):
            for a in range(n):
                defined = table[b][a] is not None
                comparable = base.le(a, b)
                if defined and not comparable:
                    violations.append(
                        Violation(
                            "definedness",
                            (("b", lab[b]), ("a", lab[a])),
                            f"b{name}a defined although a <= b fails",
                        )
                    )
                if comparable and not defined:
                    violations.append(
                        Violation(
                            "definedness",
                            (("b", lab[b]), ("a", lab[a])),
                            f"b{name}a undefined although a <= b",
                        )
                    )

    zero = base.bottom
    for a in range(n):
        if X.slash[a][zero] is not None and X.slash[a][zero] != a:
            violations.append(
                Violation("PD1", (("a", lab[a]),), "a/0 differs from a")
            )
        if X.bslash[a][zero] is not None and X.bslash[a][zero] != a:
            violations.append(
                Violation("PD1", (("a", lab[a]),), "a\\0 differs from a")
            )

    for a in range(n):
        for b in iter_bits(base.leq[a]):
            for c in iter_bits(base.leq[b]):
                where = (("a", lab[a]), ("b", lab[b]), ("c", lab[c]))
                cb, ca = X.slash[c][b], X.slash[c][a]
                if cb is not None and ca is not None:
                    if not base.le(cb, ca):
                        violations.append(
                            Violation("PD2", where, "c/b <= c/a fails")
                        )
                    else:
                        ba = X.slash[b][a]
                        if X.bslash[ca][cb] != ba:
                            violations.append(
                                Violation("PD2", where, "(c/a)\\(c/b) differs from b/a")
                            )
                db, da = X.bslash[c][b], X.bslash[c][a]
                if db is not None and da is not None:
                    if not base.le(db, da):
                        violations.append(
                            Violation("PD2", where, "c\\b <= c\\a fails")
                        )
                    else:
                        ba = X.bslash[b][a]
                        if X.slash[da][db] != ba:
                            violations.append(
                                Violation("PD2", where, "(c\\a)/(c\\b) differs from b\\a")
                            )
    return Report("check_pdp", tuple(violations))


def _difference_morphism(X: PseudoDPoset, table, name: str) -> PosetMorphism:
    values = []
    for a, b in interval_elements(X.base):
        v = table[b][a]
        if v is None:
            raise InvalidStructure(
                f"difference {X.labels[b]}{name}{X.labels[a]} is undefined"
            )
        values.append(v)
    m = PosetMorphism(interval_poset(X.base), X.base, tuple(values))
    report = check_morphism(m)
    if not report.ok:
        raise InvalidStructure(
            f"difference {name} is not isotone on intervals: {report.lines()[0]}"
        )
    return m


def slash_morphism(X: PseudoDPoset) -> PosetMorphism:
    """The total isotone map [a,b] -> b/a on the interval poset."""
    return _difference_morphism(X, X.slash, "/")


def bslash_morphism(X: PseudoDPoset) -> PosetMorphism:
    """The total isotone map [a,b] -> b\\a on the interval poset."""
    return _difference_morphism(X, X.bslash, "\\")


@dataclass(frozen=True)
class PDPMorphism:
    """Bounded-poset morphism expected to preserve both differences."""

    source: PseudoDPoset
    target: PseudoDPoset
    poset_map: PosetMorphism

    def __post_init__(self):
        if self.poset_map.source != self.source.base:
            raise InvalidStructure("morphism table does not start at the source")
        if self.poset_map.target != self.target.base:
            raise InvalidStructure("morphism table does not end at the target")

    @property
    def map(self) -> tuple[int, ...]:
        return self.poset_map.map

    def __call__(self, i: int) -> int:
        return self.poset_map.map[i]

    def then(self, other: "PDPMorphism") -> "PDPMorphism":
        if self.target != other.source:
            raise InvalidStructure("composition boundary mismatch")
        return PDPMorphism(
            self.source, other.target, self.poset_map.then(other.poset_map)
        )


def check_pdp_morphism(h: PDPMorphism) -> Report:
    """Report bound/isotonicity violations and every broken difference."""
    violations = list(check_morphism(h.poset_map).violations)
    X, Y = h.source, h.target
    lab = X.labels
    for a in range(X.n):
        for b in iter_bits(X.base.leq[a]):
            where = (("b", lab[b]), ("a", lab[a]))
            fa, fb = h.map[a], h.map[b]
            if not Y.base.le(fa, fb):
                continue  # already reported as an isotonicity violation
            sv = X.slash[b][a]
            if sv is not None and Y.slash[fb][fa] != h.map[sv]:
                violations.append(
                    Violation("slash", where, "f(b/a) differs from f(b)/f(a)")
                )
            bv = X.bslash[b][a]
            if bv is not None and Y.bslash[fb][fa] != h.map[bv]:
                violations.append(
                    Violation("bslash", where, "f(b\\a) differs from f(b)\\f(a)")
                )
    return Report("check_pdp_morphism", tuple(violations))


def enumerate_pdp_morphisms(X: PseudoDPoset, Y: PseudoDPoset) -> list[PDPMorphism]:
    """All difference-preserving morphisms X -> Y, in map-table order."""
    out = []
    for m in enumerate_morphisms(X.base, Y.base):
        cand = PDPMorphism(X, Y, m)
        if check_pdp_morphism(cand).ok:
            out.append(cand)
    return out


def subalgebra_generated(X: PseudoDPoset, seed) -> tuple[int, ...]:
    """Least subset containing seed and the bounds, closed under / and \\."""
    members = set(seed) | {X.base.bottom, X.base.top}
    for i in members:
        if not 0 <= i < X.n:
            raise InvalidStructure("seed references unknown elements")
    changed = True
    while changed:
        changed = False
        for b in list(members):
            for a in list(members):
                if not X.base.le(a, b):
                    continue
                for table in (X.slash, X.bslash):
                    v = table[b][a]
                    if v is not None and v not in members:
                        members.add(v)
                        changed = True
    return tuple(sorted(members))


def product_pdp(factors) -> PseudoDPoset:
    """Finite product: base is the product of bases, differences pointwise."""
    factors = list(factors)
    base = product_bposets([x.base for x in factors])
    tuples = list(itertools.product(*(range(x.n) for x in factors)))
    index = {t: k for k, t in enumerate(tuples)}
    size = len(tuples)
    slash = [[None] * size for _ in range(size)]
    bslash = [[None] * size for _ in range(size)]
    for tb in tuples:
        for ta in tuples:
            if not all(x.base.le(a, b) for x, a, b in zip(factors, ta, tb)):
                continue
            sv = tuple(x.slash[b][a] for x, a, b in zip(factors, ta, tb))
            bv = tuple(x.bslash[b][a] for x, a, b in zip(factors, ta, tb))
            if any(v is None for v in sv) or any(v is None for v in bv):
                raise InvalidStructure("factor difference table is incomplete")
            slash[index[tb]][index[ta]] = index[sv]
            bslash[index[tb]][index[ta]] = index[bv]
    return PseudoDPoset(
        base,
        tuple(tuple(row) for row in slash),
        tuple(tuple(row) for row in bslash),
    )


def equalizer_pdp(f: PDPMorphism, g: PDPMorphism):
    """Equalizer subalgebra {x : f(x) = g(x)} with its inclusion."""
    if f.source != g.source or f.target != g.target:
        raise InvalidStructure("morphisms are not a parallel pair")
    X = f.source
    carrier = [x for x in range(X.n) if f(x) == g(x)]
    if X.base.bottom not in carrier or X.base.top not in carrier:
        raise InvalidStructure(
            "agreement set misses a bound; the maps are not bound-preserving"
        )
    pos = {v: k for k, v in enumerate(carrier)}
    labels = tuple(X.labels[v] for v in carrier)
    rows = []
    for a in carrier:
        row = 0
        for k, b in enumerate(carrier):
            if X.base.le(a, b):
                row |= 1 << k
        rows.append(row)
    base = BoundedPoset(
        labels, tuple(rows), pos[X.base.bottom], pos[X.base.top]
    )
    size = len(carrier)
    slash = [[None] * size for _ in range(size)]
    bslash = [[None] * size for _ in range(size)]
    for kb, b in enumerate(carrier):
        for ka, a in enumerate(carrier):
            if not X.base.le(a, b):
                continue
            for table, sub in ((X.slash, slash), (X.bslash, bslash)):
                v = table[b][a]
                if v is None or v not in pos:
                    raise InvalidStructure(
                        "agreement set is not closed under the differences; "
                        "the maps do not preserve them"
                    )
                sub[kb][ka] = pos[v]
    E = PseudoDPoset(
        base,
        tuple(tuple(row) for row in slash),
        tuple(tuple(row) for row in bslash),
    )
    inclusion = PDPMorphism(E, X, PosetMorphism(base, X.base, tuple(carrier)))
    return E, inclusion
