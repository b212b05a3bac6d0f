import itertools

import pytest

from helpers import c2_pea, c3_pea, d4_ortho
from pealab import (
    InvalidStructure,
    PDPMorphism,
    PosetMorphism,
    PseudoDPoset,
    alpha,
    beta,
    bslash_morphism,
    check_morphism,
    check_pdp,
    check_pdp_morphism,
    check_square,
    enumerate_pdp_morphisms,
    equalizer_pdp,
    identity,
    interval_elements,
    interval_map,
    is_dposet,
    pea_to_pdp,
    product_pdp,
    slash_morphism,
    subalgebra_generated,
    zero_embedding,
)


def c3_pdp():
    return pea_to_pdp(c3_pea())


def d4_ortho_pdp():
    return pea_to_pdp(d4_ortho())


def with_slash(X, b, a, value):
    table = [list(row) for row in X.slash]
    table[b][a] = value
    return PseudoDPoset(X.base, tuple(tuple(r) for r in table), X.bslash)


class TestCheckPdp:
    def test_three_chain_structure_passes(self):
        X = c3_pdp()
        assert check_pdp(X).ok
        assert is_dposet(X)

    def test_undefined_comparable_difference_is_reported(self):
        X = with_slash(c3_pdp(), 2, 1, None)  # remove 1/a
        report = check_pdp(X)
        hits = [v for v in report.violations if v.rule == "definedness"]
        assert any(dict(v.where) == {"b": "1", "a": "a"} for v in hits)

    def test_wrong_zero_difference_is_a_pd1_violation(self):
        X = with_slash(c3_pdp(), 1, 0, 0)  # a/0 = 0
        report = check_pdp(X)
        assert any(
            v.rule == "PD1" and dict(v.where)["a"] == "a" for v in report.violations
        )

    def test_broken_difference_equation_is_a_pd2_violation(self):
        # swap 1/a in the orthostructure so (1/0)\(1/a) misses b/0
        X = d4_ortho_pdp()
        idx = {lab: i for i, lab in enumerate(X.labels)}
        broken = with_slash(X, idx["1"], idx["a"], idx["a"])
        assert any(v.rule == "PD2" for v in check_pdp(broken).violations)


class TestDifferenceMorphisms:
    def test_zero_intervals_evaluate_to_the_element(self, pdps5):
        for X in pdps5:
            pairs = interval_elements(X.base)
            sm = slash_morphism(X)
            bm = bslash_morphism(X)
            for k, (a, b) in enumerate(pairs):
                if a == X.base.bottom:
                    assert sm.map[k] == b
                    assert bm.map[k] == b

    def test_degenerate_intervals_evaluate_to_zero(self, pdps5):
        for X in pdps5:
            pairs = interval_elements(X.base)
            sm = slash_morphism(X)
            bm = bslash_morphism(X)
            for k, (a, b) in enumerate(pairs):
                if a == b:
                    assert sm.map[k] == X.base.bottom
                    assert bm.map[k] == X.base.bottom

    def test_three_chain_value(self):
        X = c3_pdp()
        pairs = interval_elements(X.base)
        k = pairs.index((1, 2))  # [a,1]
        assert slash_morphism(X).map[k] == 1

    def test_incomplete_table_is_rejected(self):
        X = with_slash(c3_pdp(), 2, 1, None)
        with pytest.raises(InvalidStructure, match="undefined"):
            slash_morphism(X)

    def test_isotone_on_catalog(self, pdps5):
        for X in pdps5:
            assert check_morphism(slash_morphism(X)).ok
            assert check_morphism(bslash_morphism(X)).ok

    def test_pd1_diagram(self, pdps5):
        for X in pdps5:
            embed = zero_embedding(X.base)
            assert embed.then(slash_morphism(X)) == identity(X.base)
            assert embed.then(bslash_morphism(X)) == identity(X.base)

    def test_pd2_diagram(self, pdps5):
        for X in pdps5:
            sm, bm = slash_morphism(X), bslash_morphism(X)
            a, b = alpha(X.base), beta(X.base)
            assert b.then(sm) == a.then(interval_map(sm)).then(bm)
            assert b.then(bm) == a.then(interval_map(bm)).then(sm)

    def test_naturality_squares(self, pdps4):
        for X in pdps4:
            for Y in pdps4:
                for h in enumerate_pdp_morphisms(X, Y):
                    for mine, theirs in (
                        (slash_morphism(X), slash_morphism(Y)),
                        (bslash_morphism(X), bslash_morphism(Y)),
                    ):
                        assert check_square(
                            top=interval_map(h.poset_map),
                            bottom=h.poset_map,
                            left=mine,
                            right=theirs,
                        )


class TestPdpMorphism:
    def test_identity_passes(self):
        X = c3_pdp()
        assert check_pdp_morphism(
            PDPMorphism(X, X, identity(X.base))
        ).ok

    def test_orthostructure_swap_passes(self):
        X = d4_ortho_pdp()
        swap = PosetMorphism(X.base, X.base, (0, 2, 1, 3))
        assert check_pdp_morphism(PDPMorphism(X, X, swap)).ok

    def test_atom_collapse_fails_at_top_pair(self):
        X = d4_ortho_pdp()
        collapse = PosetMorphism(X.base, X.base, (0, 1, 1, 3))  # b -> a
        report = check_pdp_morphism(PDPMorphism(X, X, collapse))
        assert any(
            v.rule in ("slash", "bslash") and dict(v.where) == {"b": "1", "a": "a"}
            for v in report.violations
        )


class TestSubalgebra:
    def test_empty_seed_gives_bounds(self):
        assert subalgebra_generated(c3_pdp(), ()) == (0, 2)

    def test_full_seed_gives_carrier(self):
        X = d4_ortho_pdp()
        assert subalgebra_generated(X, range(X.n)) == tuple(range(X.n))

    def test_single_atom_generates_three_chain_carrier(self):
        assert subalgebra_generated(c3_pdp(), (1,)) == (0, 1, 2)

    def test_orthostructure_atom_pulls_in_its_complement(self):
        X = d4_ortho_pdp()
        assert subalgebra_generated(X, (1,)) == (0, 1, 2, 3)


class TestProduct:
    def test_empty_product_is_the_trivial_structure(self):
        X = product_pdp([])
        assert X.n == 1
        assert X.slash == ((0,),)

    def test_componentwise_values(self):
        X = product_pdp([c3_pdp(), pea_to_pdp(c2_pea())])
        tuples = list(itertools.product(range(3), range(2)))
        idx = {t: k for k, t in enumerate(tuples)}
        # (a,1)/(0,1) = (a/0, 1/1) = (a, 0)
        got = X.slash[idx[(1, 1)]][idx[(0, 1)]]
        assert got == idx[(1, 0)]

    def test_product_passes_check(self):
        X = product_pdp([c3_pdp(), d4_ortho_pdp()])
        assert check_pdp(X).ok

    def test_projections_preserve_differences(self):
        factors = [c3_pdp(), d4_ortho_pdp()]
        X = product_pdp(factors)
        tuples = list(itertools.product(range(3), range(4)))
        for i, factor in enumerate(factors):
            proj = PosetMorphism(
                X.base, factor.base, tuple(t[i] for t in tuples)
            )
            assert check_pdp_morphism(PDPMorphism(X, factor, proj)).ok


class TestEqualizer:
    def test_equal_pair_gives_the_whole_structure(self):
        X = c3_pdp()
        i = PDPMorphism(X, X, identity(X.base))
        E, inc = equalizer_pdp(i, i)
        assert E == X
        assert inc.poset_map == identity(X.base)

    def test_swap_agreement_is_the_bounds(self):
        X = d4_ortho_pdp()
        i = PDPMorphism(X, X, identity(X.base))
        swap = PDPMorphism(X, X, PosetMorphism(X.base, X.base, (0, 2, 1, 3)))
        E, inc = equalizer_pdp(i, swap)
        assert E.labels == ("0", "1")
        assert check_pdp(E).ok
        assert [X.labels[v] for v in inc.poset_map.map] == ["0", "1"]

    def test_equalizers_always_pass_check(self, pdps4):
        for X in pdps4:
            for Y in pdps4:
                homs = enumerate_pdp_morphisms(X, Y)
                for f, g in itertools.product(homs, repeat=2):
                    E, _ = equalizer_pdp(f, g)
                    assert check_pdp(E).ok
                    carrier = [x for x in range(X.n) if f(x) == g(x)]
                    assert list(E.labels) == [X.labels[v] for v in carrier]
