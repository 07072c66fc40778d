"""Nullhomotopy structures on finite categories.

A structure assigns to every arrow g a finite set of homotopy ids together
with left/right whiskering actions.  The module covers validation, the
ideal calculus (absorbing arrow classes, the i/t closure maps, closed
ideals), structures induced by natural transformations or by a full
subcategory, morphisms and isomorphisms of structures, and the comparison
of the four structures arising from a fully faithful adjoint string.

Homotopy ids are opaque tokens with a deterministic naming scheme per
construction; ``payload`` keeps the decoded witness for induced structures.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

from .core import (
    AdjunctionData,
    FinCategory,
    FinCategoryError,
    FunctorData,
    NatTransData,
    classify_arrow,
    compose_functors,
    full_subcategory,
    identity_functor,
    is_full_and_faithful,
    verify_adjunction,
    verify_functor,
    verify_nat_trans,
)


class NullStructure:
    """Homotopy sets with whiskering, stored as two tables (left and right).

    ``homotopies`` maps arrow id -> tuple of homotopy ids; ids must be
    globally unique.  Whiskering is either tabulated or computed on demand
    by ``wl_fn``/``wr_fn`` (memoised), mirroring FinCategory's compose_fn.
    ``payload`` optionally decodes a homotopy id to its witnessing data.
    """

    def __init__(
        self,
        name: str,
        base: FinCategory,
        homotopies: Mapping[str, tuple[str, ...]],
        whisker_left: Optional[Mapping[tuple[str, str], str]] = None,
        whisker_right: Optional[Mapping[tuple[str, str], str]] = None,
        wl_fn: Optional[Callable[[str, str], str]] = None,
        wr_fn: Optional[Callable[[str, str], str]] = None,
        payload: Optional[Mapping[str, object]] = None,
    ):
        self.name = name
        self.base = base
        self.homotopies = {g: tuple(hs) for g, hs in homotopies.items()}
        self.whisker_left = dict(whisker_left) if whisker_left else {}
        self.whisker_right = dict(whisker_right) if whisker_right else {}
        self._wl_fn = wl_fn
        self._wr_fn = wr_fn
        self.payload = dict(payload) if payload else {}
        self._arrow_of: dict[str, str] = {}
        for g, hs in self.homotopies.items():
            for p in hs:
                self._arrow_of[p] = g

    def theta(self, g: str) -> tuple[str, ...]:
        if g not in self.base.arrows:
            raise FinCategoryError(f"unknown arrow {g!r}")
        return self.homotopies.get(g, ())

    def arrow_of(self, phi: str) -> str:
        try:
            return self._arrow_of[phi]
        except KeyError:
            raise FinCategoryError(f"unknown homotopy {phi!r}") from None

    def wl(self, h: str, phi: str) -> str:
        key = (h, phi)
        got = self.whisker_left.get(key)
        if got is None:
            if self._wl_fn is None:
                raise FinCategoryError(f"missing left whisker ({h!r}, {phi!r})")
            got = self._wl_fn(h, phi)
            self.whisker_left[key] = got
        return got

    def wr(self, phi: str, f: str) -> str:
        key = (phi, f)
        got = self.whisker_right.get(key)
        if got is None:
            if self._wr_fn is None:
                raise FinCategoryError(f"missing right whisker ({phi!r}, {f!r})")
            got = self._wr_fn(phi, f)
            self.whisker_right[key] = got
        return got

    def all_homotopies(self):
        for g in self.base.arrows:
            for phi in self.theta(g):
                yield g, phi

    def __repr__(self) -> str:
        n = sum(len(v) for v in self.homotopies.values())
        return f"NullStructure({self.name!r}, {n} homotopies on {self.base.name})"


def whisker(s: NullStructure, h: Optional[str], phi: str, f: Optional[str]) -> str:
    """h . phi . f with absent arguments defaulting to identities."""
    g = s.arrow_of(phi)
    cat = s.base
    if f is not None:
        if cat.cod(f) != cat.dom(g):
            raise FinCategoryError(f"cannot whisker {phi!r} on the right by {f!r}")
        phi = s.wr(phi, f)
        g = cat.compose(g, f)
    if h is not None:
        if cat.dom(h) != cat.cod(g):
            raise FinCategoryError(f"cannot whisker {phi!r} on the left by {h!r}")
        phi = s.wl(h, phi)
    return phi


def validate_structure(s: NullStructure) -> list[str]:
    """Typing of both whiskerings plus the four interchange/unit laws."""
    out: list[str] = []
    cat = s.base
    for g in s.homotopies:
        if g not in cat.arrows:
            out.append(f"homotopy set over unknown arrow {g}")
    seen: dict[str, str] = {}
    for g, phi in s.all_homotopies():
        if phi in seen:
            out.append(f"homotopy id {phi} reused on {seen[phi]} and {g}")
        seen[phi] = g
    if out:
        return out
    for g, phi in s.all_homotopies():
        x, y = cat.arrows[g]
        for h in cat.arrows_from(y):
            if s.wl(h, phi) not in s.theta(cat.compose(h, g)):
                out.append(f"left whisker typing fails on ({h}, {phi})")
        for f in cat.arrows_to(x):
            if s.wr(phi, f) not in s.theta(cat.compose(g, f)):
                out.append(f"right whisker typing fails on ({phi}, {f})")
    if out:
        return out
    for g, phi in s.all_homotopies():
        x, y = cat.arrows[g]
        if s.wl(cat.id_of(y), phi) != phi:
            out.append(f"left unit law fails on {phi}")
        if s.wr(phi, cat.id_of(x)) != phi:
            out.append(f"right unit law fails on {phi}")
        for h in cat.arrows_from(y):
            for h2 in cat.arrows_from(cat.cod(h)):
                if s.wl(h2, s.wl(h, phi)) != s.wl(cat.compose(h2, h), phi):
                    out.append(f"left action law fails on ({h2}, {h}, {phi})")
        for f in cat.arrows_to(x):
            for f2 in cat.arrows_to(cat.dom(f)):
                if s.wr(s.wr(phi, f), f2) != s.wr(phi, cat.compose(f, f2)):
                    out.append(f"right action law fails on ({phi}, {f}, {f2})")
        for h in cat.arrows_from(y):
            for f in cat.arrows_to(x):
                if s.wl(h, s.wr(phi, f)) != s.wr(s.wl(h, phi), f):
                    out.append(f"interchange fails on ({h}, {phi}, {f})")
    return out


# -- ideals ----------------------------------------------------------------


@dataclass(frozen=True)
class IdealData:
    arrows: frozenset[str]
    trivial_objects: frozenset[str]
    closed: bool


@dataclass(frozen=True)
class ClosureVerdict:
    verdict: str  # not_ideal | ideal_not_closed | closed
    witness: Optional[str] = None


def _is_absorbing(cat: FinCategory, z1: frozenset[str]) -> Optional[str]:
    """A witness arrow breaking two-sided absorption, or None."""
    for g in z1:
        x, y = cat.arrows[g]
        for h in cat.arrows_from(y):
            if cat.compose(h, g) not in z1:
                return g
        for f in cat.arrows_to(x):
            if cat.compose(g, f) not in z1:
                return g
    return None


def closure_t(cat: FinCategory, z1) -> tuple[frozenset[str], bool]:
    """t(Z1): objects whose identity lies in Z1, with its retract-closure flag."""
    z1 = frozenset(z1)
    objs = frozenset(x for x in cat.objects if cat.id_of(x) in z1)
    closed = all(cat.retracts_of(z) <= objs for z in objs)
    return objs, closed


def closure_i(cat: FinCategory, z0) -> IdealData:
    """i(Z0): arrows factoring through a member of Z0; always a closed ideal."""
    z0 = frozenset(z0)
    arrows = set()
    for z in z0:
        for a in cat.arrows_to(z):
            for b in cat.arrows_from(z):
                arrows.add(cat.compose(b, a))
    triv, _ = closure_t(cat, arrows)
    return IdealData(frozenset(arrows), triv, closed=True)


def is_closed_ideal(cat: FinCategory, z1) -> ClosureVerdict:
    z1 = frozenset(z1)
    bad = _is_absorbing(cat, z1)
    if bad is not None:
        return ClosureVerdict("not_ideal", bad)
    triv, _ = closure_t(cat, z1)
    inner = closure_i(cat, triv).arrows
    for g in z1:
        if g not in inner:
            return ClosureVerdict("ideal_not_closed", g)
    return ClosureVerdict("closed")


def ideal_of(s: NullStructure) -> IdealData:
    """Arrows with a nonempty homotopy set; absorption is re-verified."""
    z1 = frozenset(g for g in s.base.arrows if s.theta(g))
    bad = _is_absorbing(s.base, z1)
    if bad is not None:
        raise FinCategoryError(f"structure ideal not absorbing at {bad!r}")
    triv, _ = closure_t(s.base, z1)
    verdict = is_closed_ideal(s.base, z1)
    return IdealData(z1, triv, verdict.verdict == "closed")


def discrete_of(cat: FinCategory, z1, name: Optional[str] = None) -> NullStructure:
    """Singleton-or-empty structure over an ideal; tokens are z:<arrow>."""
    arrows = z1.arrows if isinstance(z1, IdealData) else frozenset(z1)
    bad = _is_absorbing(cat, arrows)
    if bad is not None:
        raise FinCategoryError(f"not an ideal: absorption fails at {bad!r}")
    homotopies = {g: (f"z:{g}",) for g in cat.arrows if g in arrows}

    def wl_fn(h: str, phi: str) -> str:
        return f"z:{cat.compose(h, phi[2:])}"

    def wr_fn(phi: str, f: str) -> str:
        return f"z:{cat.compose(phi[2:], f)}"

    return NullStructure(
        name or f"discrete({cat.name})", cat, homotopies, wl_fn=wl_fn, wr_fn=wr_fn
    )


def terminal_structure(cat: FinCategory) -> NullStructure:
    return discrete_of(cat, frozenset(cat.arrows), name=f"terminal({cat.name})")


def trivial_objects(s: NullStructure) -> frozenset[str]:
    """Objects whose identity carries at least one homotopy."""
    return frozenset(x for x in s.base.objects if s.theta(s.base.id_of(x)))


@dataclass(frozen=True)
class OrthogonalityRecord:
    strict: bool
    weak: bool
    counterexample: Optional[str] = None


def orthogonality_table(s: NullStructure, t_objs, f_objs) -> OrthogonalityRecord:
    """strict: every hom-arrow T->F has a singleton homotopy set; weak: nonempty."""
    cat = s.base
    weak_ce = strict_ce = None
    for h in cat.arrows:
        x, y = cat.arrows[h]
        if x in t_objs and y in f_objs:
            n = len(s.theta(h))
            if n == 0 and weak_ce is None:
                weak_ce = h
            if n != 1 and strict_ce is None:
                strict_ce = h
    return OrthogonalityRecord(
        strict=strict_ce is None,
        weak=weak_ce is None,
        counterexample=strict_ce if strict_ce is not None else weak_ce,
    )


# -- structure morphisms ---------------------------------------------------


@dataclass(frozen=True)
class StructureMorphism:
    name: str
    source: NullStructure = field(hash=False)
    target: NullStructure = field(hash=False)
    components: Mapping[str, Mapping[str, str]] = field(hash=False)

    def at(self, phi: str) -> str:
        g = self.source.arrow_of(phi)
        return self.components[g][phi]


def verify_structure_morphism(m: StructureMorphism) -> list[str]:
    out: list[str] = []
    s, t = m.source, m.target
    cat = s.base
    if t.base is not cat:
        return [f"{m.name}: structures live on different categories"]
    for g, phi in s.all_homotopies():
        comp = m.components.get(g, {})
        img = comp.get(phi)
        if img is None or img not in t.theta(g):
            out.append(f"{m.name}: component broken at {phi} over {g}")
    if out:
        return out
    for g, phi in s.all_homotopies():
        x, y = cat.arrows[g]
        for h in cat.arrows_from(y):
            if m.at(s.wl(h, phi)) != t.wl(h, m.at(phi)):
                out.append(f"{m.name}: left whisker square fails on ({h}, {phi})")
        for f in cat.arrows_to(x):
            if m.at(s.wr(phi, f)) != t.wr(m.at(phi), f):
                out.append(f"{m.name}: right whisker square fails on ({phi}, {f})")
    return out


def compose_structure_morphisms(
    outer: StructureMorphism, inner: StructureMorphism, name: str
) -> StructureMorphism:
    comps = {
        g: {phi: outer.at(inner.at(phi)) for phi in inner.source.theta(g)}
        for g in inner.source.base.arrows
    }
    return StructureMorphism(name, inner.source, outer.target, comps)


def is_identity_morphism(m: StructureMorphism) -> bool:
    return all(m.at(phi) == phi for _, phi in m.source.all_homotopies())


def collapse_to_discrete(s: NullStructure) -> tuple[NullStructure, StructureMorphism]:
    """The canonical map onto the discrete structure of the same ideal."""
    d = discrete_of(s.base, ideal_of(s), name=f"collapse({s.name})")
    comps = {g: {phi: f"z:{g}" for phi in s.theta(g)} for g in s.base.arrows}
    return d, StructureMorphism(f"{s.name}->discrete", s, d, comps)


# -- induced structures ----------------------------------------------------


def _build_validated(name, cat, homotopies, wl, wr, payload) -> NullStructure:
    s = NullStructure(name, cat, homotopies, wl, wr, payload=payload)
    errs = validate_structure(s)
    if errs:
        raise FinCategoryError(f"induced structure invalid: {errs[:3]}")
    return s


def induce_structure(
    mode: str,
    *,
    beta: Optional[NatTransData] = None,
    gamma: Optional[NatTransData] = None,
    inclusion: Optional[FunctorData] = None,
    name: Optional[str] = None,
) -> NullStructure:
    """Structures induced by a (pre)radical, (pre)coradical, their pair,
    or a full subcategory.

    - preradical beta: R => Id; homotopies over g: X->Y are arrows
      psi: X -> RY with beta_Y . psi = g; whiskering h.psi.f = R(h).psi.f.
    - precoradical gamma: Id => S; homotopies are phi: SX -> Y with
      phi . gamma_X = g; whiskering h.phi.f = h.phi.S(f).
    - pair: lambdas SX -> RY with beta_Y . lambda . gamma_X = g;
      whiskering h.lambda.f = R(h).lambda.S(f).
    - full_subcategory U: A -> B (full and faithful): factorizations
      (g1, A, g2) of g through an object of A; h.(g1,A,g2).f = (g1.f, A, h.g2).
    """
    if mode == "preradical":
        if beta is None:
            raise FinCategoryError("preradical mode needs beta")
        _check_transform(beta, into_id=True)
        return _induce_pre(beta, None, name or f"pre_radical({beta.name})")
    if mode == "precoradical":
        if gamma is None:
            raise FinCategoryError("precoradical mode needs gamma")
        _check_transform(gamma, into_id=False)
        return _induce_pre(None, gamma, name or f"pre_coradical({gamma.name})")
    if mode == "pair":
        if beta is None or gamma is None:
            raise FinCategoryError("pair mode needs beta and gamma")
        _check_transform(beta, into_id=True)
        _check_transform(gamma, into_id=False)
        return _induce_pre(beta, gamma, name or f"pair({gamma.name},{beta.name})")
    if mode == "full_subcategory":
        if inclusion is None:
            raise FinCategoryError("full_subcategory mode needs the inclusion")
        errs = verify_functor(inclusion)
        if errs:
            raise FinCategoryError(f"bad inclusion functor: {errs[0]}")
        if not is_full_and_faithful(inclusion):
            raise FinCategoryError("inclusion is not full and faithful")
        return _induce_subcat(inclusion, name or f"through({inclusion.name})")
    raise FinCategoryError(f"unknown mode {mode!r}")


def _check_transform(nt: NatTransData, into_id: bool) -> None:
    errs = verify_nat_trans(nt)
    if errs:
        raise FinCategoryError(f"ill-typed transformation: {errs[0]}")
    endo = nt.source if into_id else nt.target
    ident = nt.target if into_id else nt.source
    cat = endo.source
    if endo.target is not cat:
        raise FinCategoryError(f"{nt.name}: not an endofunctor transformation")
    if ident.ob_map != {x: x for x in cat.objects}:
        raise FinCategoryError(f"{nt.name}: identity side is not the identity functor")


def _induce_pre(
    beta: Optional[NatTransData], gamma: Optional[NatTransData], name: str
) -> NullStructure:
    """The radical-style structures; beta and/or gamma may be present."""
    if beta is not None:
        cat = beta.source.source
        r_fun = beta.source
    else:
        cat = gamma.target.source
        r_fun = None
    s_fun = gamma.target if gamma is not None else None
    tag = "b" if (beta is not None and gamma is not None) else ("p" if beta else "c")

    def src_obj(x: str) -> str:
        return s_fun.ob_map[x] if s_fun is not None else x

    def dst_obj(y: str) -> str:
        return r_fun.ob_map[y] if r_fun is not None else y

    def realises(lam: str, x: str, y: str) -> str:
        g = lam
        if gamma is not None:
            g = cat.compose(g, gamma.at(x))
        if beta is not None:
            g = cat.compose(beta.at(y), g)
        return g

    homotopies: dict[str, list[str]] = {g: [] for g in cat.arrows}
    payload: dict[str, str] = {}
    for g, (x, y) in cat.arrows.items():
        for lam in cat.hom(src_obj(x), dst_obj(y)):
            if realises(lam, x, y) == g:
                tok = f"{tag}:{g}:{lam}"
                homotopies[g].append(tok)
                payload[tok] = lam
    wl: dict[tuple[str, str], str] = {}
    wr: dict[tuple[str, str], str] = {}
    for g, (x, y) in cat.arrows.items():
        for tok in homotopies[g]:
            lam = payload[tok]
            for h in cat.arrows_from(y):
                lifted = r_fun.arr_map[h] if r_fun is not None else h
                wl[(h, tok)] = f"{tag}:{cat.compose(h, g)}:{cat.compose(lifted, lam)}"
            for f in cat.arrows_to(x):
                lowered = s_fun.arr_map[f] if s_fun is not None else f
                wr[(tok, f)] = f"{tag}:{cat.compose(g, f)}:{cat.compose(lam, lowered)}"
    return _build_validated(name, cat, homotopies, wl, wr, payload)


def _induce_subcat(inclusion: FunctorData, name: str) -> NullStructure:
    sub, cat = inclusion.source, inclusion.target
    image = {inclusion.ob_map[a]: a for a in sub.objects}
    homotopies: dict[str, list[str]] = {g: [] for g in cat.arrows}
    payload: dict[str, tuple[str, str, str]] = {}
    for g, (x, y) in cat.arrows.items():
        for ua, a in image.items():
            for g1 in cat.hom(x, ua):
                for g2 in cat.hom(ua, y):
                    if cat.compose(g2, g1) == g:
                        tok = f"s:{g1}:{a}:{g2}"
                        homotopies[g].append(tok)
                        payload[tok] = (g1, a, g2)
    wl: dict[tuple[str, str], str] = {}
    wr: dict[tuple[str, str], str] = {}
    for g, (x, y) in cat.arrows.items():
        for tok in homotopies[g]:
            g1, a, g2 = payload[tok]
            for h in cat.arrows_from(y):
                wl[(h, tok)] = f"s:{g1}:{a}:{cat.compose(h, g2)}"
            for f in cat.arrows_to(x):
                wr[(tok, f)] = f"s:{cat.compose(g1, f)}:{a}:{g2}"
    return _build_validated(name, cat, homotopies, wl, wr, payload)


# -- adjoint string comparison ---------------------------------------------


@dataclass(frozen=True)
class AdjunctionString:
    """A fully faithful adjoint string C -| U -| D with U: A -> B.

    ``left_adj`` is C -| U (unit gamma: Id_B => U.C, counit alpha: C.U => Id_A);
    ``right_adj`` is U -| D (unit delta: Id_A => D.U, counit beta: U.D => Id_B).
    """

    name: str
    a_cat: FinCategory = field(hash=False)
    b_cat: FinCategory = field(hash=False)
    c_fun: FunctorData = field(hash=False)
    u_fun: FunctorData = field(hash=False)
    d_fun: FunctorData = field(hash=False)
    left_adj: AdjunctionData = field(hash=False)
    right_adj: AdjunctionData = field(hash=False)

    @property
    def gamma(self) -> NatTransData:
        return self.left_adj.unit

    @property
    def alpha(self) -> NatTransData:
        return self.left_adj.counit

    @property
    def delta(self) -> NatTransData:
        return self.right_adj.unit

    @property
    def beta(self) -> NatTransData:
        return self.right_adj.counit


def verify_string(s: AdjunctionString) -> list[str]:
    out = verify_adjunction(s.left_adj)
    out.extend(verify_adjunction(s.right_adj))
    if not is_full_and_faithful(s.u_fun):
        out.append(f"{s.name}: middle functor not full and faithful")
    return out


@dataclass(frozen=True)
class CudComparison:
    theta_beta: NullStructure = field(hash=False)
    theta_gamma: NullStructure = field(hash=False)
    theta_pair: NullStructure = field(hash=False)
    theta_sub: NullStructure = field(hash=False)
    pair_to_gamma: StructureMorphism = field(hash=False)
    gamma_to_pair: StructureMorphism = field(hash=False)
    pair_to_beta: StructureMorphism = field(hash=False)
    beta_to_pair: StructureMorphism = field(hash=False)
    gamma_to_sub: StructureMorphism = field(hash=False)
    sub_to_gamma: StructureMorphism = field(hash=False)
    ideals_equal: bool = False
    diagnostics: tuple[str, ...] = ()


def cud_compare(string: AdjunctionString) -> CudComparison:
    """The explicit isomorphisms between the structures induced by the
    counit preradical, the unit precoradical and their pair, plus the
    retract of the subcategory structure onto the precoradical one, and
    the equality of all four induced ideals.
    """
    diags = verify_string(string)
    if diags:
        raise FinCategoryError(f"invalid adjoint string: {diags[0]}")
    cat = string.b_cat
    u, c, d = string.u_fun, string.c_fun, string.d_fun
    s_beta = induce_structure("preradical", beta=string.beta, name=f"{string.name}:beta")
    s_gamma = induce_structure(
        "precoradical", gamma=string.gamma, name=f"{string.name}:gamma"
    )
    s_pair = induce_structure(
        "pair", beta=string.beta, gamma=string.gamma, name=f"{string.name}:pair"
    )
    s_sub = induce_structure(
        "full_subcategory", inclusion=u, name=f"{string.name}:sub"
    )

    def on_ud(a: str) -> str:
        return u.arr_map[d.arr_map[a]]

    def on_uc(a: str) -> str:
        return u.arr_map[c.arr_map[a]]

    p2g, g2p, p2b, b2p = {}, {}, {}, {}
    g2s, s2g = {}, {}
    for g, (x, y) in cat.arrows.items():
        p2g[g], g2p[g], p2b[g], b2p[g] = {}, {}, {}, {}
        g2s[g], s2g[g] = {}, {}
        for tok in s_pair.theta(g):
            lam = s_pair.payload[tok]
            p2g[g][tok] = f"c:{g}:{cat.compose(string.beta.at(y), lam)}"
            p2b[g][tok] = f"p:{g}:{cat.compose(lam, string.gamma.at(x))}"
        for tok in s_gamma.theta(g):
            phi = s_gamma.payload[tok]
            # lambda = UD(phi) . U(delta_{CX})
            lam = cat.compose(on_ud(phi), u.arr_map[string.delta.at(c.ob_map[x])])
            g2p[g][tok] = f"b:{g}:{lam}"
            g2s[g][tok] = f"s:{string.gamma.at(x)}:{c.ob_map[x]}:{phi}"
        for tok in s_beta.theta(g):
            psi = s_beta.payload[tok]
            # lambda = U(alpha_{DY}) . UC(psi)
            lam = cat.compose(u.arr_map[string.alpha.at(d.ob_map[y])], on_uc(psi))
            b2p[g][tok] = f"b:{g}:{lam}"
        for tok in s_sub.theta(g):
            g1, a, g2 = s_sub.payload[tok]
            # retract through the counit: phi = g2 . U(alpha_A . C(g1))
            g1p = u.arr_map[string.a_cat.compose(string.alpha.at(a), c.arr_map[g1])]
            s2g[g][tok] = f"c:{g}:{cat.compose(g2, g1p)}"

    morphs = {
        "pair_to_gamma": StructureMorphism("pair->gamma", s_pair, s_gamma, p2g),
        "gamma_to_pair": StructureMorphism("gamma->pair", s_gamma, s_pair, g2p),
        "pair_to_beta": StructureMorphism("pair->beta", s_pair, s_beta, p2b),
        "beta_to_pair": StructureMorphism("beta->pair", s_beta, s_pair, b2p),
        "gamma_to_sub": StructureMorphism("gamma->sub", s_gamma, s_sub, g2s),
        "sub_to_gamma": StructureMorphism("sub->gamma", s_sub, s_gamma, s2g),
    }
    diags = []
    for key, m in morphs.items():
        if key == "gamma_to_sub":
            # the section is only a per-arrow splitting of the retraction;
            # it need not commute with whiskering, so check typing alone
            for g, phi in s_gamma.all_homotopies():
                if m.at(phi) not in s_sub.theta(g):
                    diags.append(f"{m.name}: component broken at {phi} over {g}")
            continue
        diags.extend(verify_structure_morphism(m))
    for fwd, bwd in (
        ("pair_to_gamma", "gamma_to_pair"),
        ("pair_to_beta", "beta_to_pair"),
    ):
        for a, b in ((fwd, bwd), (bwd, fwd)):
            rt = compose_structure_morphisms(morphs[b], morphs[a], f"{a};{b}")
            if not is_identity_morphism(rt):
                diags.append(f"{a} and {b} are not mutually inverse")
    sect = compose_structure_morphisms(
        morphs["sub_to_gamma"], morphs["gamma_to_sub"], "gamma->sub->gamma"
    )
    if not is_identity_morphism(sect):
        diags.append("subcategory structure does not retract onto gamma")
    ideals = [ideal_of(s).arrows for s in (s_beta, s_gamma, s_pair, s_sub)]
    equal = all(z == ideals[0] for z in ideals)
    if not equal:
        diags.append("induced ideals differ")
    return CudComparison(
        s_beta, s_gamma, s_pair, s_sub,
        morphs["pair_to_gamma"], morphs["gamma_to_pair"],
        morphs["pair_to_beta"], morphs["beta_to_pair"],
        morphs["gamma_to_sub"], morphs["sub_to_gamma"],
        ideals_equal=equal,
        diagnostics=tuple(diags),
    )


# -- reflective/coreflective characterisation ------------------------------


@dataclass(frozen=True)
class PrepointedResult:
    reflection: Optional[AdjunctionData] = field(hash=False, default=None)
    coreflection: Optional[AdjunctionData] = field(hash=False, default=None)
    failed_hypothesis: Optional[str] = None


def characterize_prepointed(s: NullStructure) -> PrepointedResult:
    """If every identity has a strong kernel and a strong cokernel and the
    trivial objects are orthogonal to everything on both sides, build and
    verify the coreflection (via kernels) and reflection (via cokernels)
    onto the trivial-object subcategory.
    """
    from . import hlimits

    cat = s.base
    kernels: dict[str, hlimits.HomotopyKernelResult] = {}
    cokernels: dict[str, hlimits.HomotopyCokernelResult] = {}
    for x in cat.objects:
        k = hlimits.search_homotopy_kernel(s, cat.id_of(x))
        if k is None or not hlimits.check_strong(s, k).flag:
            return PrepointedResult(
                failed_hypothesis=f"no strong kernel of id_{x}"
            )
        kernels[x] = k
        q = hlimits.search_homotopy_cokernel(s, cat.id_of(x))
        if q is None or not hlimits.check_strong_cokernel(s, q).flag:
            return PrepointedResult(
                failed_hypothesis=f"no strong cokernel of id_{x}"
            )
        cokernels[x] = q
    triv = trivial_objects(s)
    every = frozenset(cat.objects)
    for z in triv:
        if not orthogonality_table(s, {z}, every).strict:
            return PrepointedResult(failed_hypothesis=f"{z} not left orthogonal")
        if not orthogonality_table(s, every, {z}).strict:
            return PrepointedResult(failed_hypothesis=f"{z} not right orthogonal")
    sub, incl = full_subcategory(cat, sorted(triv, key=cat.obj_index), f"{cat.name}|triv")

    n_ob = {x: kernels[x].object for x in cat.objects}
    n_arr = {}
    for g, (x, y) in cat.arrows.items():
        f = cat.compose(g, kernels[x].arrow)
        phi = s.theta(f)[0]
        n_arr[g] = kernels[y].mediators[(f, phi)]
    q_ob = {x: cokernels[x].object for x in cat.objects}
    q_arr = {}
    for g, (x, y) in cat.arrows.items():
        f = cat.compose(cokernels[y].arrow, g)
        phi = s.theta(f)[0]
        q_arr[g] = cokernels[x].mediators[(f, phi)]

    into_sub_n = FunctorData("N|", cat, sub, n_ob, n_arr)
    into_sub_q = FunctorData("Q|", cat, sub, q_ob, q_arr)
    unit_core = {}
    for a in sub.objects:
        phi = s.theta(cat.id_of(a))[0]
        unit_core[a] = kernels[a].mediators[(cat.id_of(a), phi)]
    coreflection = AdjunctionData(
        "incl-|N",
        incl,
        into_sub_n,
        NatTransData(
            "unit", identity_functor(sub), compose_functors(into_sub_n, incl, "N.incl"),
            unit_core,
        ),
        NatTransData(
            "counit", compose_functors(incl, into_sub_n, "incl.N"),
            identity_functor(cat), {x: kernels[x].arrow for x in cat.objects},
        ),
    )
    counit_refl = {}
    for a in sub.objects:
        phi = s.theta(cat.id_of(a))[0]
        counit_refl[a] = cokernels[a].mediators[(cat.id_of(a), phi)]
    reflection = AdjunctionData(
        "Q-|incl",
        into_sub_q,
        incl,
        NatTransData(
            "unit", identity_functor(cat), compose_functors(incl, into_sub_q, "incl.Q"),
            {x: cokernels[x].arrow for x in cat.objects},
        ),
        NatTransData(
            "counit", compose_functors(into_sub_q, incl, "Q.incl"),
            identity_functor(sub), counit_refl,
        ),
    )
    for adj in (coreflection, reflection):
        errs = verify_adjunction(adj)
        if errs:
            return PrepointedResult(failed_hypothesis=f"adjunction check: {errs[0]}")
    return PrepointedResult(reflection=reflection, coreflection=coreflection)


def identity_kernel_preradical(
    s: NullStructure,
) -> tuple[NatTransData, StructureMorphism, StructureMorphism]:
    """Assemble the kernel-of-identity functor into a preradical and return
    the isomorphism between its induced structure and the given one.
    """
    from . import hlimits

    cat = s.base
    kernels = {}
    for x in cat.objects:
        k = hlimits.search_homotopy_kernel(s, cat.id_of(x))
        if k is None:
            raise FinCategoryError(f"missing kernel of id_{x}")
        kernels[x] = k
    n_ob = {x: kernels[x].object for x in cat.objects}
    n_arr = {}
    for g, (x, y) in cat.arrows.items():
        f = cat.compose(g, kernels[x].arrow)
        phi = s.wl(g, kernels[x].witness)
        n_arr[g] = kernels[y].mediators[(f, phi)]
    n_fun = FunctorData("NKer", cat, cat, n_ob, n_arr)
    errs = verify_functor(n_fun)
    if errs:
        raise FinCategoryError(f"kernel assembly not functorial: {errs[0]}")
    nt = NatTransData(
        "n", n_fun, identity_functor(cat), {x: kernels[x].arrow for x in cat.objects}
    )
    errs = verify_nat_trans(nt)
    if errs:
        raise FinCategoryError(f"kernel assembly not natural: {errs[0]}")
    induced = induce_structure("preradical", beta=nt, name=f"ker_pre({s.name})")
    fwd: dict[str, dict[str, str]] = {}
    bwd: dict[str, dict[str, str]] = {}
    for g, (x, y) in cat.arrows.items():
        fwd[g], bwd[g] = {}, {}
        for phi in s.theta(g):
            psi = kernels[y].mediators[(g, phi)]
            fwd[g][phi] = f"p:{g}:{psi}"
        for tok in induced.theta(g):
            psi = induced.payload[tok]
            bwd[g][tok] = s.wr(kernels[y].witness, psi)
    m_fwd = StructureMorphism("theta->ker_pre", s, induced, fwd)
    m_bwd = StructureMorphism("ker_pre->theta", induced, s, bwd)
    diags = verify_structure_morphism(m_fwd) + verify_structure_morphism(m_bwd)
    for a, b in ((m_fwd, m_bwd), (m_bwd, m_fwd)):
        if not is_identity_morphism(
            compose_structure_morphisms(b, a, "roundtrip")
        ):
            diags.append("comparison maps not mutually inverse")
    if diags:
        raise FinCategoryError(f"kernel preradical comparison fails: {diags[0]}")
    return nt, m_fwd, m_bwd
