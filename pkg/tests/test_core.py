"""Category plumbing: validation, arrow classification, (co)limits,
distinguished objects, functors and adjunctions.

Derived expectations carry their independent oracle inline: either a
hand enumeration recorded in the comment, or a computation through an
unrelated code path (e.g. matrix rank for the linear fixture).
"""

import random

import pytest

from fincat.core import (
    FinCategory,
    FinCategoryError,
    classify_arrow,
    compose_path,
    find_distinguished_objects,
    full_subcategory,
    identity_functor,
    pullback,
    pushout,
    relabel,
    validate_category,
    verify_adjunction,
    verify_functor,
)
from fincat.fixtures import v2_matrix


def _copy(cat, comp_overrides=None):
    comp = {
        (g, f): cat.compose(g, f) for g, f in cat.composable_pairs()
    }
    if comp_overrides:
        comp.update(comp_overrides)
    return FinCategory(
        cat.name, list(cat.objects), dict(cat.arrows), dict(cat.identity), comp=comp
    )


class TestValidateCategory:
    def test_corpus_valid(self, cats):
        for name, cat in cats.items():
            assert validate_category(cat) == [], name

    def test_redirected_composite_caught(self, cats):
        # dom/cod law: u_o0_o2 = u_o1_o2 . u_o0_o1 must run o0 -> o2
        broken = _copy(cats["c3"], {("u_o1_o2", "u_o0_o1"): "id_o0"})
        diags = validate_category(broken)
        assert any("dom/cod" in d for d in diags)

    def test_broken_unit_caught(self, cats):
        broken = _copy(cats["m2"], {("e", "id_dot"): "id_dot"})
        diags = validate_category(broken)
        assert any("unit law" in d for d in diags)

    def test_broken_associativity_caught(self, cats):
        # m21_10 . m12_10 is the identity on d1; redirecting it to the zero
        # map m11_0 leaves units and typing intact but breaks h.(g.f) = (h.g).f
        # for h = m12_10 (left side becomes the zero map, right side does not)
        broken = _copy(cats["v2"], {("m21_10", "m12_10"): "m11_0"})
        diags = validate_category(broken)
        assert any("associativity" in d for d in diags)


class TestClassifyArrow:
    def test_identity_is_iso(self, cats):
        got = classify_arrow(cats["c2"], "id_a")
        assert got.iso and got.inverse == "id_a"

    def test_poset_arrow_mono_epi_not_iso(self, cats):
        # oracle: in a poset every hom-set has at most one element, so
        # cancellation can never fail; u has no inverse since hom(b,a) is empty
        got = classify_arrow(cats["c2"], "u_a_b")
        assert got.mono and got.epi
        assert not (got.iso or got.split_mono or got.split_epi)

    def test_idempotent_neither_mono_nor_epi(self, cats):
        # oracle: e.e = e = e.id_dot with e != id_dot kills both cancellations
        got = classify_arrow(cats["m2"], "e")
        assert not got.mono and not got.epi

    def test_poset_fixtures_all_mono_epi(self, cats):
        for name in ("c1", "c2", "c3", "sq"):
            cat = cats[name]
            for a in cat.arrows:
                got = classify_arrow(cat, a)
                assert got.mono and got.epi, (name, a)

    def test_v2_matrix_rank_oracle(self, cats):
        # independent oracle: a linear map over the 2-element field is mono
        # iff its matrix has full column rank (trivial null space) and epi
        # iff full row rank; Gaussian elimination below, no category code
        cat = cats["v2"]

        def rank(rows, cols, bits):
            m = [list(bits[i * cols : (i + 1) * cols]) for i in range(rows)]
            r = 0
            for c in range(cols):
                piv = next((i for i in range(r, rows) if m[i][c]), None)
                if piv is None:
                    continue
                m[r], m[piv] = m[piv], m[r]
                for i in range(rows):
                    if i != r and m[i][c]:
                        m[i] = [x ^ y for x, y in zip(m[i], m[r])]
                r += 1
            return r

        for a in cat.arrows:
            dom, cod, bits = v2_matrix(a)
            r = rank(cod, dom, bits)
            got = classify_arrow(cat, a)
            assert got.mono == (r == dom), a
            assert got.epi == (r == cod), a
            assert got.iso == (r == dom == cod), a
            # in this additive setting mono/epi always split off a complement
            assert got.split_mono == got.mono and got.split_epi == got.epi, a

    def test_stable_under_relabeling(self, cats):
        cat = cats["v2"]
        rng = random.Random(7)
        names = list(cat.arrows)
        shuffled = names[:]
        rng.shuffle(shuffled)
        mapping = dict(zip(names, shuffled))
        other = relabel(cat, mapping)
        assert validate_category(other) == []
        for a in names:
            old = classify_arrow(cat, a)
            new = classify_arrow(other, mapping[a])
            assert (old.mono, old.epi, old.split_mono, old.split_epi, old.iso) == (
                new.mono, new.epi, new.split_mono, new.split_epi, new.iso
            ), a

    def test_unknown_arrow(self, cats):
        with pytest.raises(FinCategoryError):
            classify_arrow(cats["c2"], "nope")


class TestPullbackPushout:
    def test_c2_cospan(self, cats):
        pb = pullback(cats["c2"], "u_a_b", "u_a_b")
        # oracle: candidate apexes are a and b; b fails since hom(b,a) is empty
        assert pb.apex == "a"
        assert pb.proj_left == "id_a" and pb.proj_right == "id_a"

    def test_identity_cospan(self, cats):
        pb = pullback(cats["c2"], "id_b", "id_b")
        assert pb.apex == "b"

    def test_m2_has_no_pullback_of_e(self, cats):
        # oracle: over the single object the 4 cone candidates (pairs out of
        # {id, e}) never admit unique mediators -- the cone (e, e) factors
        # through any candidate in two ways or zero ways
        assert pullback(cats["m2"], "e", "e") is None

    def test_mediators_reverified(self, cats):
        cat = cats["sq"]
        pb = pullback(cat, "u_b_d", "u_c_d")
        assert pb is not None
        for w in cat.objects:
            for f in cat.hom(w, "b"):
                for g in cat.hom(w, "c"):
                    if cat.compose("u_b_d", f) != cat.compose("u_c_d", g):
                        continue
                    ms = [
                        m
                        for m in cat.hom(w, pb.apex)
                        if cat.compose(pb.proj_left, m) == f
                        and cat.compose(pb.proj_right, m) == g
                    ]
                    assert len(ms) == 1 and ms[0] == pb.mediators[(f, g)]

    def test_pushout_dual(self, cats):
        po = pushout(cats["sq"], "u_a_b", "u_a_c")
        assert po is not None and po.apex == "d"

    def test_non_cospan_rejected(self, cats):
        with pytest.raises(FinCategoryError):
            pullback(cats["c2"], "u_a_b", "id_a")


class TestDistinguished:
    def test_poset_endpoints(self, cats):
        got = find_distinguished_objects(cats["c2"])
        assert (got.initial, got.terminal, got.zero) == ("a", "b", None)

    def test_zero_object(self, cats):
        got = find_distinguished_objects(cats["v2"])
        assert got.initial == got.terminal == got.zero == "d0"

    def test_monoid_has_none(self, cats):
        # oracle: hom(dot, dot) has two elements, so no unique-arrow condition
        got = find_distinguished_objects(cats["m2"])
        assert got.initial is None and got.terminal is None and got.zero is None


class TestComposePath:
    def test_chain(self, cats):
        assert compose_path(cats["c3"], ["u_o1_o2", "u_o0_o1"]) == "u_o0_o2"

    def test_singleton(self, cats):
        assert compose_path(cats["c2"], ["u_a_b"]) == "u_a_b"

    def test_idempotent(self, cats):
        assert compose_path(cats["m2"], ["e", "e", "e"]) == "e"

    def test_empty_rejected(self, cats):
        with pytest.raises(FinCategoryError):
            compose_path(cats["c2"], [])


class TestFunctorsAndAdjunctions:
    def test_arr_string_verifies(self, arrs):
        for name, w in arrs.items():
            assert verify_adjunction(w.string.left_adj) == [], name
            assert verify_adjunction(w.string.right_adj) == [], name

    def test_identity_adjunction(self, cats):
        from fincat.core import AdjunctionData, NatTransData

        cat = cats["c3"]
        idf = identity_functor(cat)
        ident = {x: cat.id_of(x) for x in cat.objects}
        adj = AdjunctionData(
            "id-|id",
            idf,
            idf,
            NatTransData("unit", idf, idf, ident),
            NatTransData("counit", idf, idf, ident),
        )
        assert verify_adjunction(adj) == []

    def test_broken_counit_caught(self, arrs):
        from fincat.core import AdjunctionData, NatTransData

        adj = arrs["c2"].string.right_adj
        comp = dict(adj.counit.components)
        # retype the component at the non-identity object
        victim = next(x for x in comp if comp[x] != arrs["c2"].arr.id_of(x))
        comp[victim] = arrs["c2"].arr.id_of(victim)
        broken = AdjunctionData(
            adj.name,
            adj.left,
            adj.right,
            adj.unit,
            NatTransData("counit", adj.counit.source, adj.counit.target, comp),
        )
        assert verify_adjunction(broken) != []

    def test_full_subcategory_inclusion(self, cats):
        sub, incl = full_subcategory(cats["c3"], ["o0", "o2"], "ends")
        assert validate_category(sub) == []
        assert verify_functor(incl) == []
        assert set(sub.arrows) == {"id_o0", "id_o2", "u_o0_o2"}
