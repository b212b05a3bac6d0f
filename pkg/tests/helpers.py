"""Shared builders and independent brute-force oracles for the tests.

The oracles deliberately avoid the package's search machinery: morphism
sets are enumerated with itertools over all functions, isomorphisms over
all bijections, and structure tables over all cell assignments.  Expected
values asserted in the tests were computed with these.
"""

from __future__ import annotations

import itertools

from pealab import (
    BoundedPoset,
    PosetMorphism,
    PseudoEffectAlgebra,
    validate_bounded_poset,
)


def chain(*labels) -> BoundedPoset:
    covers = [(labels[i], labels[i + 1]) for i in range(len(labels) - 1)]
    return validate_bounded_poset(labels, covers)


def c2() -> BoundedPoset:
    return chain("0", "1")


def c3() -> BoundedPoset:
    return chain("0", "a", "1")


def c4() -> BoundedPoset:
    return chain("0", "x", "y", "1")


def diamond() -> BoundedPoset:
    return validate_bounded_poset(
        ("0", "a", "b", "1"), [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]
    )


def wide3() -> BoundedPoset:
    """Bottom, three incomparable atoms, top."""
    return validate_bounded_poset(
        ("0", "a", "b", "c", "1"),
        [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
    )


def pea_from(base: BoundedPoset, sums) -> PseudoEffectAlgebra:
    """Build an addition table from label triples plus the forced 0-sums."""
    idx = {lab: i for i, lab in enumerate(base.labels)}
    n = base.n
    table = [[None] * n for _ in range(n)]
    for x in range(n):
        table[base.bottom][x] = x
        table[x][base.bottom] = x
    for a, b, c in sums:
        table[idx[a]][idx[b]] = idx[c]
    return PseudoEffectAlgebra(
        base.labels, tuple(tuple(row) for row in table), base.bottom, base.top
    )


def c2_pea() -> PseudoEffectAlgebra:
    return pea_from(c2(), [])


def c3_pea() -> PseudoEffectAlgebra:
    return pea_from(c3(), [("a", "a", "1")])


def d4_ortho() -> PseudoEffectAlgebra:
    return pea_from(diamond(), [("a", "b", "1"), ("b", "a", "1")])


def d4_hsum() -> PseudoEffectAlgebra:
    return pea_from(diamond(), [("a", "a", "1"), ("b", "b", "1")])


def wide3_selfsum() -> PseudoEffectAlgebra:
    return pea_from(wide3(), [("a", "a", "1"), ("b", "b", "1"), ("c", "c", "1")])


def wide3_cyclic() -> PseudoEffectAlgebra:
    return pea_from(wide3(), [("a", "b", "1"), ("b", "c", "1"), ("c", "a", "1")])


def brute_force_bounded_maps(P: BoundedPoset, R: BoundedPoset):
    """All bound-preserving isotone maps by scanning every function."""
    out = []
    for values in itertools.product(range(R.n), repeat=P.n):
        if values[P.bottom] != R.bottom or values[P.top] != R.top:
            continue
        if all(
            R.le(values[x], values[y])
            for x in range(P.n)
            for y in range(P.n)
            if P.le(x, y)
        ):
            out.append(values)
    return sorted(out)


def brute_force_isomorphisms(P, R):
    """All order isomorphisms by scanning every bijection."""
    if P.n != R.n:
        return []
    out = []
    for perm in itertools.permutations(range(R.n)):
        if all(
            P.le(x, y) == R.le(perm[x], perm[y])
            for x in range(P.n)
            for y in range(P.n)
        ):
            out.append(perm)
    return out


def as_morphism(P, R, labelled: dict[str, str]) -> PosetMorphism:
    values = tuple(R.index(labelled[lab]) for lab in P.labels)
    return PosetMorphism(P, R, values)
