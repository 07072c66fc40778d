"""Factorization systems: lifting, factorization, full enumeration against
hand oracles, the conversion to torsion theories on the arrow category,
and the rung-by-rung correspondence ladder.
"""

import pytest

from fincat.core import FinCategoryError, classify_arrow
from fincat.factorization import (
    Factorization,
    FactorizationSystem,
    check_factorization_system,
    check_orthogonal,
    enumerate_fs,
    factor_arrow,
    fs_to_htt,
    htt_to_fs,
    verify_correspondence,
)
from fincat.torsion import enumerate_torsion_theories


def _keys(systems):
    return {
        (tuple(sorted(fs.e_class)), tuple(sorted(fs.m_class))) for fs in systems
    }


class TestLifting:
    def test_chain_composable_pair_lifts(self, cats):
        assert check_orthogonal(cats["c3"], "u_o0_o1", "u_o1_o2").ok

    def test_chain_counterexample(self, cats):
        # the square (id_o0, u_o1_o2) from u_o0_o1 to u_o0_o2 needs a
        # diagonal o1 -> o0, and hom(o1, o0) is empty
        got = check_orthogonal(cats["c3"], "u_o0_o1", "u_o0_o2")
        assert not got.ok
        assert "has 0 diagonals" in got.counterexample

    def test_identities_lift_against_everything(self, cats):
        for name, cat in cats.items():
            for x in cat.objects:
                i = cat.id_of(x)
                for m in cat.arrows:
                    assert check_orthogonal(cat, i, m).ok, (name, x, m)
                    assert check_orthogonal(cat, m, i).ok, (name, x, m)

    def test_idempotent_not_self_orthogonal(self, cats):
        # no l with l.e = id exists since e is not split mono
        got = check_orthogonal(cats["m2"], "e", "e", unique=False)
        assert not got.ok


class TestFactorArrow:
    def test_chain_middle(self, cats):
        cat = cats["c3"]
        ids = {cat.id_of(x) for x in cat.objects}
        fs = FactorizationSystem(
            frozenset(ids | {"u_o0_o1"}), frozenset(ids | {"u_o1_o2"}), "orthogonal"
        )
        assert factor_arrow(cat, fs, "u_o0_o2") == [
            Factorization("u_o0_o1", "o1", "u_o1_o2")
        ]

    def test_all_iso_system(self, cats):
        cat = cats["c3"]
        ids = frozenset(cat.id_of(x) for x in cat.objects)
        fs = FactorizationSystem(frozenset(cat.arrows), ids, "orthogonal")
        facs = factor_arrow(cat, fs, "u_o0_o2")
        assert [(f.e_part, f.m_part) for f in facs] == [("u_o0_o2", "id_o2")]

    def test_unverified_system_rejected(self, cats):
        fs = FactorizationSystem(frozenset(), frozenset(), "none")
        with pytest.raises(FinCategoryError):
            factor_arrow(cats["c2"], fs, "u_a_b")


class TestChecker:
    def test_monoid_all_all_fails(self, cats):
        cat = cats["m2"]
        v = check_factorization_system(cat, set(cat.arrows), set(cat.arrows))
        assert v.level == "none"
        assert "from e to e" in v.witness

    def test_iso_stability_enforced(self, cats):
        # dropping the coordinate swap of the plane breaks iso-stability:
        # it is the composite of two retained invertibles
        cat = cats["v2"]
        e_class = set(cat.arrows) - {"m22_0110"}
        v = check_factorization_system(cat, e_class, set(cat.arrows))
        assert v.level == "none"
        assert "not iso-stable" in v.witness

    def test_chain_system_verdict(self, cats, arrs):
        cat = cats["c3"]
        ids = {cat.id_of(x) for x in cat.objects}
        v = check_factorization_system(
            cat, ids | {"u_o0_o1"}, ids | {"u_o1_o2"}, workspace=arrs["c3"]
        )
        assert v.level == "orthogonal" and v.proper and v.quasi_proper


class TestEnumeration:
    def test_counts(self, cats, arrs):
        # oracle: hand enumeration.  c2: only (all, isos) and (isos, all).
        # c3: those two plus the three splittings listed in
        # test_c3_survivors; the forbidden combinations are u01 in E with
        # u02 in M (square (id_o0, u12) has no diagonal) and u02 in E with
        # u12 in M (square (u01, id_o2) has no diagonal).  m2: e can join
        # neither class since e fails to lift against itself.
        for name, n in (("c2", 2), ("c3", 5), ("m2", 2)):
            got = enumerate_fs(cats[name], "orthogonal", workspace=arrs[name])
            assert len(got) == n, name

    def test_c3_survivors(self, cats, arrs):
        cat = cats["c3"]
        ids = ("id_o0", "id_o1", "id_o2")
        got = _keys(enumerate_fs(cat, "orthogonal", workspace=arrs["c3"]))
        assert got == {
            (tuple(sorted(ids + ("u_o0_o1", "u_o0_o2", "u_o1_o2"))), ids),
            (ids, tuple(sorted(ids + ("u_o0_o1", "u_o0_o2", "u_o1_o2")))),
            (tuple(sorted(ids + ("u_o0_o1",))), tuple(sorted(ids + ("u_o1_o2",)))),
            (
                tuple(sorted(ids + ("u_o0_o2", "u_o1_o2"))),
                tuple(sorted(ids + ("u_o0_o1",))),
            ),
            (
                tuple(sorted(ids + ("u_o1_o2",))),
                tuple(sorted(ids + ("u_o0_o1", "u_o0_o2"))),
            ),
        }

    def test_weak_equals_orthogonal_on_corpus(self, cats, arrs):
        for name in ("c1", "c2", "c3", "m2"):
            o = _keys(enumerate_fs(cats[name], "orthogonal", workspace=arrs[name]))
            w = _keys(enumerate_fs(cats[name], "weak", workspace=arrs[name]))
            assert o == w, name

    def test_epi_e_class_upgrades_weak(self, cats, arrs):
        # whenever every E-arrow is epi, a weak system is orthogonal:
        # diagonals against an epi are unique once they exist
        for name in ("c2", "c3", "m2"):
            cat = cats[name]
            for fs in enumerate_fs(cat, "weak", workspace=arrs[name]):
                if all(classify_arrow(cat, e).epi for e in fs.e_class):
                    assert fs.level == "orthogonal", (name, fs)


class TestConversions:
    def test_round_trips(self, cats, arrs):
        for name in ("c2", "c3", "m2"):
            w = arrs[name]
            for fs in enumerate_fs(cats[name], "orthogonal", workspace=w):
                pair = fs_to_htt(w, fs)
                assert (pair.torsion, pair.free) == (fs.e_class, fs.m_class)
                back = htt_to_fs(w, pair)
                assert (back.e_class, back.m_class) == (fs.e_class, fs.m_class)
                assert back.level == "orthogonal"

    def test_theory_side_round_trip(self, arrs):
        w = arrs["c3"]
        for pair in enumerate_torsion_theories(w.h_structure, "strict"):
            fs = htt_to_fs(w, pair)
            again = fs_to_htt(w, fs)
            assert (again.torsion, again.free) == (
                frozenset(pair.torsion),
                frozenset(pair.free),
            )

    def test_factorizations_match_presentations(self, cats, arrs):
        # per arrow, the (E, M)-factorizations through each mid object
        # correspond to the exact presentations of that object in the
        # arrow category with endpoints in the induced classes
        from fincat.torsion import find_exact_presentation

        name = "c3"
        w = arrs[name]
        cat = cats[name]
        for fs in enumerate_fs(cat, "orthogonal", workspace=w):
            for x in cat.arrows:
                facs = factor_arrow(cat, fs, x)
                pres = find_exact_presentation(
                    w.h_structure, fs.e_class, fs.m_class, x
                )
                assert len(facs) == len(pres), (fs, x)
                assert {(f.e_part, f.m_part) for f in facs} == {
                    (p.t_object, p.f_object) for p in pres
                }, (fs, x)


class TestLadder:
    def test_poset_ladders_all_pass(self, arrs):
        for name in ("c1", "c2", "c3", "sq"):
            rep = verify_correspondence(arrs[name])
            assert rep.ok, name
            assert {r.status for r in rep.rungs} == {"pass"}, name

    def test_monoid_ladder_gated_rungs(self, arrs):
        rep = verify_correspondence(arrs["m2"])
        assert rep.ok
        gated = {r.name for r in rep.rungs if r.status == "hypothesis not met"}
        assert gated == {
            "quasi-proper-weak-is-orthogonal",
            "quasi-proper-weak-is-proper",
            "ideal-theory-upgrades-to-strict",
            "proper-matches-ideal-theories",
        }
        passing = {r.name for r in rep.rungs if r.status == "pass"}
        assert len(passing) == 10

    def test_rung_lookup(self, arrs):
        rep = verify_correspondence(arrs["c2"])
        assert rep.rung("orthogonal-matches-strict").status == "pass"
        with pytest.raises(FinCategoryError):
            rep.rung("nonexistent")
