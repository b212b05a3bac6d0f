import itertools

import pytest

from helpers import c2, c3, c4, diamond
from pealab import (
    LimitExceeded,
    Poset,
    PseudoEffectAlgebra,
    check_pdp,
    check_pea,
    enumerate_bounded_posets,
    enumerate_pea_structures,
    enumerate_posets,
    find_isomorphism,
    find_smallest_noncommutative,
    induced_order,
    is_commutative,
    pea_to_pdp,
    size_limit,
)


def brute_force_poset_classes(m):
    """Iso classes of all m-element posets by scanning every relation."""
    found = []
    for bits in range(1 << m * m):
        rows = [0] * m
        for i in range(m):
            for j in range(m):
                if bits >> (i * m + j) & 1:
                    rows[i] |= 1 << j
        try:
            P = Poset(tuple(str(i) for i in range(m)), tuple(rows))
        except Exception:
            continue
        if not any(find_isomorphism(P, Q) for Q in found):
            found.append(P)
    return found


def dumb_structures(base):
    """All valid addition tables by filtering a full cell-product scan.

    Cells are restricted to the necessary conditions only (values above
    both operands, top sums forced empty); everything else is left to the
    full checker, so this is an independent completeness oracle for the
    backtracking search.
    """
    n = base.n
    cells = [(a, b) for a in range(n) for b in range(n)]
    options = []
    for a, b in cells:
        if (b == base.top and a != base.bottom) or (
            a == base.top and b != base.bottom
        ):
            options.append([None])
            continue
        allowed = [
            c for c in range(n) if base.le(a, c) and base.le(b, c)
        ]
        options.append(allowed + [None])
    out = []
    for choice in itertools.product(*options):
        table = [[None] * n for _ in range(n)]
        for (a, b), v in zip(cells, choice):
            table[a][b] = v
        A = PseudoEffectAlgebra(
            base.labels,
            tuple(tuple(row) for row in table),
            base.bottom,
            base.top,
        )
        if check_pea(A).ok and induced_order(A) == base:
            out.append(A)
    return out


class TestPosetEnumeration:
    def test_class_counts(self):
        assert [len(enumerate_posets(m)) for m in range(6)] == [1, 1, 2, 5, 16, 63]

    def test_matches_brute_force_classification(self):
        for m in range(4):
            assert len(enumerate_posets(m)) == len(brute_force_poset_classes(m))

    def test_representatives_are_pairwise_non_isomorphic(self):
        posets = enumerate_posets(4)
        for i, P in enumerate(posets):
            for Q in posets[i + 1 :]:
                assert find_isomorphism(P, Q) is None


class TestBoundedPosetEnumeration:
    def test_class_counts(self):
        assert [len(enumerate_bounded_posets(n)) for n in range(1, 8)] == [
            1, 1, 1, 2, 5, 16, 63,
        ]

    def test_four_element_classes_are_chain_and_diamond(self):
        classes = enumerate_bounded_posets(4)
        assert any(find_isomorphism(P, c4()) for P in classes)
        assert any(find_isomorphism(P, diamond()) for P in classes)

    def test_small_classes_are_chains(self):
        assert find_isomorphism(enumerate_bounded_posets(2)[0], c2())
        assert find_isomorphism(enumerate_bounded_posets(3)[0], c3())

    def test_limit_is_enforced(self):
        with pytest.raises(LimitExceeded):
            enumerate_bounded_posets(size_limit() + 1)

    def test_limit_override_via_environment(self, monkeypatch):
        monkeypatch.setenv("PEALAB_MAX_N", "3")
        with pytest.raises(LimitExceeded):
            enumerate_bounded_posets(4)
        monkeypatch.delenv("PEALAB_MAX_N")
        assert len(enumerate_bounded_posets(4)) == 2


class TestStructureEnumeration:
    def test_two_chain_has_one_structure(self):
        structures = enumerate_pea_structures(c2())
        assert len(structures) == 1
        assert structures[0].plus == ((0, 1), (1, None))

    def test_three_chain_structure_is_forced(self):
        structures = enumerate_pea_structures(c3())
        assert len(structures) == 1
        A = structures[0]
        assert A.plus[1][1] == 2  # a+a = 1 is forced

    def test_diamond_has_two_commutative_structures(self):
        structures = enumerate_pea_structures(diamond())
        assert len(structures) == 2
        assert all(is_commutative(A) for A in structures)
        blocks = {A.plus[1][1:3] + A.plus[2][1:3] for A in structures}
        # one structure pairs each atom with itself, the other crosses them
        assert blocks == {(None, 3, 3, None), (3, None, None, 3)}

    @pytest.mark.parametrize("base", [c2(), c3(), c4(), diamond()])
    def test_matches_dumb_oracle(self, base):
        expected = {A.plus for A in dumb_structures(base)}
        got = {A.plus for A in enumerate_pea_structures(base)}
        assert got == expected

    def test_every_structure_survives_recheck(self, catalog5):
        for entry in catalog5:
            for A in entry.structures:
                assert check_pea(A).ok
                assert induced_order(A) == entry.base
                assert check_pdp(pea_to_pdp(A)).ok

    def test_enumeration_is_deterministic(self):
        first = enumerate_pea_structures(diamond())
        second = enumerate_pea_structures(diamond())
        assert first == second

    def test_structure_count_equals_difference_structure_count(self, catalog5):
        # conversion is a bijection between the two table kinds over a
        # fixed base, so counting either way must agree
        for entry in catalog5:
            converted = {pea_to_pdp(A) for A in entry.structures}
            assert len(converted) == len(entry.structures)


class TestCommittedResultsFile:
    def test_regeneration_matches_the_committed_catalog(self, tmp_path):
        from pathlib import Path

        from pealab.catalog import write_catalog

        committed = Path(__file__).resolve().parent.parent / "catalog.json"
        regenerated = tmp_path / "catalog.json"
        write_catalog(regenerated, 6)
        assert regenerated.read_text() == committed.read_text()


class TestSmallestNoncommutative:
    def test_none_up_to_two(self):
        assert find_smallest_noncommutative(2) is None

    def test_none_up_to_four(self):
        assert find_smallest_noncommutative(4) is None

    def test_found_at_five(self):
        found = find_smallest_noncommutative(5)
        assert found is not None
        size, witness = found
        assert size == 5
        assert check_pea(witness).ok
        assert not is_commutative(witness)
        # the witness pairs the three atoms cyclically
        idx = {lab: i for i, lab in enumerate(witness.labels)}
        a, b, c, one = idx["a"], idx["b"], idx["c"], idx["1"]
        assert witness.plus[a][b] == one and witness.plus[b][a] is None
        assert witness.plus[b][c] == one and witness.plus[c][b] is None
        assert witness.plus[c][a] == one and witness.plus[a][c] is None
