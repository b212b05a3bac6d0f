import pytest

from helpers import (
    c2,
    c2_pea,
    c3,
    c3_pea,
    d4_hsum,
    d4_ortho,
    diamond,
    pea_from,
    wide3_cyclic,
)
from pealab import (
    InvalidStructure,
    PDPMorphism,
    PseudoEffectAlgebra,
    check_pdp_morphism,
    check_pea,
    check_pea_morphism,
    enumerate_morphisms,
    induced_order,
    is_commutative,
    pdp_to_pea,
    pea_to_pdp,
    validate_bounded_poset,
)


def drop_cell(A, a, b):
    table = [list(row) for row in A.plus]
    table[a][b] = None
    return PseudoEffectAlgebra(
        A.labels, tuple(tuple(r) for r in table), A.zero, A.one
    )


def set_cell(A, a, b, c):
    table = [list(row) for row in A.plus]
    table[a][b] = c
    return PseudoEffectAlgebra(
        A.labels, tuple(tuple(r) for r in table), A.zero, A.one
    )


class TestCheckPea:
    def test_two_chain_structure_passes(self):
        assert check_pea(c2_pea()).ok

    def test_missing_complement_is_a_pe2_violation(self):
        broken = drop_cell(c3_pea(), 1, 1)  # a+a removed
        report = check_pea(broken)
        assert any(
            v.rule == "PE2" and dict(v.where)["a"] == "a" for v in report.violations
        )

    def test_top_plus_top_is_a_pe4_violation(self):
        broken = set_cell(c2_pea(), 1, 1, 1)  # 1+1 = 1
        report = check_pea(broken)
        assert any(
            v.rule == "PE4" and dict(v.where)["a"] == "1" for v in report.violations
        )
        assert str(
            [v for v in report.violations if v.rule == "PE4"][0]
        ).startswith("PE4 violated at a=1")

    def test_broken_associativity_is_a_pe1_violation(self):
        # 4-chain structure with x+y redirected to y: x+(x+x) exists
        # but (x+x)+x disagrees.
        base = validate_bounded_poset(
            ("0", "x", "y", "1"), [("0", "x"), ("x", "y"), ("y", "1")]
        )
        A = pea_from(base, [("x", "x", "y"), ("x", "y", "1"), ("y", "x", "1")])
        broken = set_cell(A, 1, 2, 2)  # x+y = y
        assert any(v.rule == "PE1" for v in check_pea(broken).violations)

    def test_order_layer_is_reported_separately(self):
        # dropping 0+a breaks reflexivity of the induced relation at a
        broken = drop_cell(c3_pea(), 0, 1)
        rules = {v.rule for v in check_pea(broken).violations}
        assert "order" in rules


class TestInducedOrder:
    def test_two_chain(self):
        assert induced_order(c2_pea()) == c2()

    def test_three_chain(self):
        assert induced_order(c3_pea()) == c3()

    def test_diamond_orthostructure(self):
        assert induced_order(d4_ortho()) == diamond()

    def test_invalid_relation_is_reported_not_repaired(self):
        broken = drop_cell(c3_pea(), 0, 1)
        with pytest.raises(InvalidStructure, match="induced order"):
            induced_order(broken)


class TestConversionValues:
    def test_two_chain_differences(self):
        X = pea_to_pdp(c2_pea())
        assert X.slash[1][0] == 1  # 1/0 = 1
        assert X.bslash[1][0] == 1
        assert X.slash[0][0] == 0 and X.slash[1][1] == 0

    def test_three_chain_top_difference(self):
        X = pea_to_pdp(c3_pea())
        assert X.slash[2][1] == 1  # 1/a = a because a+a = 1

    def test_orthostructure_differences_cross(self):
        A = d4_ortho()
        X = pea_to_pdp(A)
        idx = {lab: i for i, lab in enumerate(A.labels)}
        assert X.slash[idx["1"]][idx["a"]] == idx["b"]
        assert X.bslash[idx["1"]][idx["a"]] == idx["b"]

    def test_commutative_structures_have_equal_tables(self, catalog5):
        for entry in catalog5:
            for A in entry.structures:
                if is_commutative(A):
                    X = pea_to_pdp(A)
                    assert X.slash == X.bslash

    def test_noncommutative_structure_has_distinct_tables(self):
        X = pea_to_pdp(wide3_cyclic())
        assert X.slash != X.bslash

    def test_addition_recovered_from_three_chain(self):
        X = pea_to_pdp(c3_pea())
        back = pdp_to_pea(X)
        assert back.plus[1][1] == 2  # a+a = 1 again

    def test_zero_sums_recovered_everywhere(self, catalog5):
        for entry in catalog5:
            for A in entry.structures:
                back = pdp_to_pea(pea_to_pdp(A))
                for x in range(A.n):
                    assert back.plus[A.zero][x] == x
                    assert back.plus[x][A.zero] == x

    def test_singleton_structure(self):
        one = validate_bounded_poset(("0",), [])
        A = pea_from(one, [])
        assert A.plus == ((0,),)
        X = pea_to_pdp(A)
        assert pdp_to_pea(X) == A

    def test_non_unique_solution_is_rejected(self):
        broken = set_cell(c3_pea(), 1, 2, 2)  # both a+a and a+1 give 1
        with pytest.raises(InvalidStructure, match="2 solutions"):
            pea_to_pdp(broken)

    def test_missing_witness_breaks_the_induced_order_first(self):
        broken = drop_cell(c3_pea(), 1, 1)  # no x with a+x = 1
        with pytest.raises(InvalidStructure, match="induced order"):
            pea_to_pdp(broken)

    def test_disagreeing_difference_tables_are_rejected(self):
        from pealab import PseudoDPoset

        X = pea_to_pdp(d4_ortho())
        idx = {lab: i for i, lab in enumerate(X.labels)}
        one, a, b = idx["1"], idx["a"], idx["b"]
        bslash = [list(row) for row in X.bslash]
        bslash[one][a], bslash[one][b] = bslash[one][b], bslash[one][a]
        corrupt = PseudoDPoset(
            X.base, X.slash, tuple(tuple(r) for r in bslash)
        )
        with pytest.raises(InvalidStructure, match="disagree"):
            pdp_to_pea(corrupt)

    def test_ambiguous_reconstruction_is_rejected(self):
        from pealab import PseudoDPoset

        X = pea_to_pdp(c3_pea())
        slash = [list(row) for row in X.slash]
        slash[2][0] = 1  # 1/0 collides with a/0
        corrupt = PseudoDPoset(
            X.base, tuple(tuple(r) for r in slash), X.bslash
        )
        with pytest.raises(InvalidStructure, match="ambiguous"):
            pdp_to_pea(corrupt)


class TestRoundtrip:
    def test_roundtrip_up_to_five(self, catalog5):
        for entry in catalog5:
            for A in entry.structures:
                X = pea_to_pdp(A)
                assert pdp_to_pea(X) == A
                assert pea_to_pdp(pdp_to_pea(X)) == X
                assert induced_order(pdp_to_pea(X)) == X.base

    def test_left_and_right_order_agree(self, catalog5):
        for entry in catalog5:
            for A in entry.structures:
                n = A.n
                for a in range(n):
                    for c in range(n):
                        right = any(A.plus[a][b] == c for b in range(n))
                        left = any(A.plus[b][a] == c for b in range(n))
                        assert right == left

    def test_derived_identities(self, catalog5):
        for entry in catalog5:
            for A in entry.structures:
                for a in range(A.n):
                    assert A.plus[A.zero][a] == a
                    assert A.plus[a][A.zero] == a
                    for d in range(A.n):
                        if A.plus[a][d] == a:
                            assert d == A.zero


class TestCommutativity:
    def test_small_structures_are_commutative(self):
        for A in (c2_pea(), c3_pea(), d4_ortho(), d4_hsum()):
            assert is_commutative(A)

    def test_cyclic_wide_structure_is_not(self):
        A = wide3_cyclic()
        assert check_pea(A).ok
        assert not is_commutative(A)

    def test_trivial_structure_is_commutative(self):
        one = validate_bounded_poset(("0",), [])
        assert is_commutative(pea_from(one, []))


class TestPeaMorphism:
    def test_identity_passes(self):
        A = c3_pea()
        assert check_pea_morphism(tuple(range(A.n)), A, A).ok

    def test_collapse_up_fails(self):
        report = check_pea_morphism((0, 1, 1), c3_pea(), c2_pea())
        assert any(v.rule == "plus" for v in report.violations)

    def test_collapse_down_fails(self):
        report = check_pea_morphism((0, 0, 1), c3_pea(), c2_pea())
        assert any(v.rule == "plus" for v in report.violations)

    def test_matches_difference_morphism_condition(self, catalog5):
        # a map is addition-preserving iff it preserves both differences
        # of the converted structures
        small = [
            A
            for entry in catalog5
            if entry.base.n <= 3
            for A in entry.structures
        ]
        for A in small:
            for B in small:
                XA, XB = pea_to_pdp(A), pea_to_pdp(B)
                for m in enumerate_morphisms(XA.base, XB.base):
                    as_pea = check_pea_morphism(m.map, A, B).ok
                    as_pdp = check_pdp_morphism(PDPMorphism(XA, XB, m)).ok
                    assert as_pea == as_pdp
