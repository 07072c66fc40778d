"""Finite categories: representation, validation and elementary exhaustive search.

Everything here is plain combinatorics on explicit tables: objects and arrows
are string ids, composition is either a stored table or a memoised compose
function (used for programmatically built categories whose full table would
be too large to materialise).

Canonical tie-breaking: objects and arrows carry their declaration index and
every search returns the candidate with the smallest index.  This makes all
outputs deterministic and independent of scheduling.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional, Sequence


class FinCategoryError(Exception):
    """Raised on malformed queries (unknown ids, non-composable input)."""


class FinCategory:
    """A finite category given by explicit object/arrow/composition data.

    ``arrows`` maps arrow id -> (dom, cod).  ``comp`` maps (g, f) -> g.f for
    composable pairs; alternatively ``compose_fn`` computes composites on
    demand (results are memoised).  Instances are treated as immutable once
    built; all operations on them are pure.
    """

    def __init__(
        self,
        name: str,
        objects: Sequence[str],
        arrows: Mapping[str, tuple[str, str]],
        identity: Mapping[str, str],
        comp: Optional[Mapping[tuple[str, str], str]] = None,
        compose_fn: Optional[Callable[[str, str], str]] = None,
    ):
        if comp is None and compose_fn is None:
            raise ValueError("need a composition table or a compose function")
        self.name = name
        self.objects = tuple(objects)
        self.arrows = dict(arrows)
        self.identity = dict(identity)
        self.comp = dict(comp) if comp is not None else {}
        self._compose_fn = compose_fn
        self._obj_index = {x: i for i, x in enumerate(self.objects)}
        self._arr_index = {a: i for i, a in enumerate(self.arrows)}
        self._hom: dict[tuple[str, str], tuple[str, ...]] = {}
        self._by_cod: dict[str, tuple[str, ...]] = {}
        self._by_dom: dict[str, tuple[str, ...]] = {}
        self._iso_cache: Optional[dict[str, tuple[str, ...]]] = None
        self._iso_arrows_cache: Optional[frozenset[str]] = None

    # -- basic accessors ---------------------------------------------------

    def dom(self, a: str) -> str:
        try:
            return self.arrows[a][0]
        except KeyError:
            raise FinCategoryError(f"unknown arrow {a!r} in {self.name}") from None

    def cod(self, a: str) -> str:
        try:
            return self.arrows[a][1]
        except KeyError:
            raise FinCategoryError(f"unknown arrow {a!r} in {self.name}") from None

    def id_of(self, x: str) -> str:
        try:
            return self.identity[x]
        except KeyError:
            raise FinCategoryError(f"unknown object {x!r} in {self.name}") from None

    def compose(self, g: str, f: str) -> str:
        """The composite g.f (f first)."""
        if self.cod(f) != self.dom(g):
            raise FinCategoryError(f"arrows not composable: {g!r} after {f!r}")
        key = (g, f)
        got = self.comp.get(key)
        if got is None:
            if self._compose_fn is None:
                raise FinCategoryError(f"missing composite for {g!r} after {f!r}")
            got = self._compose_fn(g, f)
            self.comp[key] = got
        return got

    def _build_indexes(self) -> None:
        # one pass over the arrow table; amortises hom queries on big categories
        hom: dict[tuple[str, str], list[str]] = {}
        by_dom: dict[str, list[str]] = {x: [] for x in self.objects}
        by_cod: dict[str, list[str]] = {x: [] for x in self.objects}
        for a, (d, c) in self.arrows.items():
            hom.setdefault((d, c), []).append(a)
            by_dom[d].append(a)
            by_cod[c].append(a)
        self._hom = {k: tuple(v) for k, v in hom.items()}
        self._by_dom = {k: tuple(v) for k, v in by_dom.items()}
        self._by_cod = {k: tuple(v) for k, v in by_cod.items()}

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        if not self._by_dom:
            self._build_indexes()
        return self._hom.get((x, y), ())

    def arrows_from(self, x: str) -> tuple[str, ...]:
        if not self._by_dom:
            self._build_indexes()
        return self._by_dom.get(x, ())

    def arrows_to(self, y: str) -> tuple[str, ...]:
        if not self._by_dom:
            self._build_indexes()
        return self._by_cod.get(y, ())

    def obj_index(self, x: str) -> int:
        return self._obj_index[x]

    def arr_index(self, a: str) -> int:
        return self._arr_index[a]

    def composable_pairs(self) -> Iterable[tuple[str, str]]:
        for g, (dg, _) in self.arrows.items():
            for f in self.arrows_to(dg):
                yield g, f

    # -- isomorphism machinery --------------------------------------------

    def iso_arrows(self) -> frozenset[str]:
        """All isomorphisms, computed once and cached."""
        if self._iso_arrows_cache is None:
            isos = set()
            for a, (x, y) in self.arrows.items():
                for b in self.hom(y, x):
                    if (
                        self.compose(b, a) == self.id_of(x)
                        and self.compose(a, b) == self.id_of(y)
                    ):
                        isos.add(a)
                        break
            self._iso_arrows_cache = frozenset(isos)
        return self._iso_arrows_cache

    def iso_classes(self) -> dict[str, tuple[str, ...]]:
        """Object id -> its isomorphism orbit (sorted by declaration index)."""
        if self._iso_cache is None:
            isos = self.iso_arrows()
            orbit: dict[str, set[str]] = {x: {x} for x in self.objects}
            for a in isos:
                x, y = self.arrows[a]
                if y not in orbit[x]:
                    merged = orbit[x] | orbit[y]
                    for z in merged:
                        orbit[z] = merged
            self._iso_cache = {
                x: tuple(sorted(orbit[x], key=self._obj_index.get))
                for x in self.objects
            }
        return self._iso_cache

    def iso_close_objects(self, objs: Iterable[str]) -> frozenset[str]:
        classes = self.iso_classes()
        out: set[str] = set()
        for x in objs:
            out.update(classes[x])
        return frozenset(out)

    def is_replete(self, objs: Iterable[str]) -> bool:
        s = set(objs)
        return s == set(self.iso_close_objects(s))

    def iso_close_arrows(self, arrs: Iterable[str]) -> frozenset[str]:
        """Closure of an arrow class under composition with isomorphisms."""
        isos = self.iso_arrows()
        out = set(arrs)
        frontier = list(out)
        while frontier:
            a = frontier.pop()
            x, y = self.arrows[a]
            for j in isos:
                if self.dom(j) == y:
                    b = self.compose(j, a)
                    if b not in out:
                        out.add(b)
                        frontier.append(b)
            for i in isos:
                if self.cod(i) == x:
                    b = self.compose(a, i)
                    if b not in out:
                        out.add(b)
                        frontier.append(b)
        return frozenset(out)

    def retracts_of(self, z: str) -> frozenset[str]:
        """Objects x admitting a split mono into z."""
        out = set()
        for x in self.objects:
            idx = self.id_of(x)
            found = False
            for a in self.hom(x, z):
                for b in self.hom(z, x):
                    if self.compose(b, a) == idx:
                        found = True
                        break
                if found:
                    break
            if found:
                out.add(x)
        return frozenset(out)

    def __repr__(self) -> str:
        return f"FinCategory({self.name!r}, {len(self.objects)} objects, {len(self.arrows)} arrows)"


# -- validation ------------------------------------------------------------


def validate_category(cat: FinCategory) -> list[str]:
    """All category-law diagnostics; empty list means the data is a category."""
    out: list[str] = []
    for a, (d, c) in cat.arrows.items():
        if d not in cat._obj_index:
            out.append(f"arrow {a}: unknown dom {d}")
        if c not in cat._obj_index:
            out.append(f"arrow {a}: unknown cod {c}")
    for x in cat.objects:
        i = cat.identity.get(x)
        if i is None:
            out.append(f"object {x}: missing identity")
        elif i not in cat.arrows:
            out.append(f"object {x}: identity {i} is not an arrow")
        elif cat.arrows[i] != (x, x):
            out.append(f"object {x}: identity {i} has dom/cod {cat.arrows[i]}")
    if out:
        return out
    for g, f in cat.composable_pairs():
        key = (g, f)
        if key not in cat.comp and cat._compose_fn is None:
            out.append(f"missing composite {g}.{f}")
            continue
        h = cat.compose(g, f)
        if h not in cat.arrows:
            out.append(f"composite {g}.{f} = {h} is not an arrow")
        elif cat.arrows[h] != (cat.dom(f), cat.cod(g)):
            out.append(
                f"dom/cod mismatch: {g}.{f} = {h} typed {cat.arrows[h]}, "
                f"expected ({cat.dom(f)}, {cat.cod(g)})"
            )
    for (g, f), h in list(cat.comp.items()):
        if g not in cat.arrows or f not in cat.arrows:
            out.append(f"composite table entry ({g}, {f}) uses unknown arrows")
        elif cat.cod(f) != cat.dom(g):
            out.append(f"composite table entry ({g}, {f}) is not composable")
    if out:
        return out
    for a, (d, c) in cat.arrows.items():
        if cat.compose(a, cat.id_of(d)) != a:
            out.append(f"unit law fails: {a}.id_{d} != {a}")
        if cat.compose(cat.id_of(c), a) != a:
            out.append(f"unit law fails: id_{c}.{a} != {a}")
    for g, f in cat.composable_pairs():
        gf = cat.compose(g, f)
        for h in cat.arrows_from(cat.cod(g)):
            if cat.compose(h, gf) != cat.compose(cat.compose(h, g), f):
                out.append(f"associativity fails on ({h}, {g}, {f})")
    return out


# -- arrow classification --------------------------------------------------


@dataclass(frozen=True)
class ArrowClassification:
    mono: bool
    epi: bool
    split_mono: bool
    split_epi: bool
    iso: bool
    left_inverse: Optional[str] = None
    right_inverse: Optional[str] = None
    inverse: Optional[str] = None


def classify_arrow(cat: FinCategory, g: str) -> ArrowClassification:
    """Mono/epi by exhaustive cancellation, split flags by inverse search."""
    x, y = cat.dom(g), cat.cod(g)
    mono = True
    for w in cat.objects:
        seen: dict[str, str] = {}
        for f in cat.hom(w, x):
            c = cat.compose(g, f)
            if c in seen and seen[c] != f:
                mono = False
                break
            seen[c] = f
        if not mono:
            break
    epi = True
    for z in cat.objects:
        seen = {}
        for h in cat.hom(y, z):
            c = cat.compose(h, g)
            if c in seen and seen[c] != h:
                epi = False
                break
            seen[c] = h
        if not epi:
            break
    left_inv = next(
        (l for l in cat.hom(y, x) if cat.compose(l, g) == cat.id_of(x)), None
    )
    right_inv = next(
        (r for r in cat.hom(y, x) if cat.compose(g, r) == cat.id_of(y)), None
    )
    inverse = next(
        (
            i
            for i in cat.hom(y, x)
            if cat.compose(i, g) == cat.id_of(x) and cat.compose(g, i) == cat.id_of(y)
        ),
        None,
    )
    return ArrowClassification(
        mono=mono,
        epi=epi,
        split_mono=left_inv is not None,
        split_epi=right_inv is not None,
        iso=inverse is not None,
        left_inverse=left_inv,
        right_inverse=right_inv,
        inverse=inverse,
    )


# -- pullbacks / pushouts --------------------------------------------------


@dataclass(frozen=True)
class PullbackResult:
    apex: str
    proj_left: str  # into dom(x)
    proj_right: str  # into dom(y)
    mediators: Mapping[tuple[str, str], str] = field(hash=False, default=None)


def _cones(cat: FinCategory, x: str, y: str) -> list[tuple[str, str]]:
    b, c = cat.dom(x), cat.dom(y)
    out = []
    for w in cat.objects:
        for f in cat.hom(w, b):
            for g in cat.hom(w, c):
                if cat.compose(x, f) == cat.compose(y, g):
                    out.append((f, g))
    return out


def pullback(cat: FinCategory, x: str, y: str) -> Optional[PullbackResult]:
    """Terminal cone over the cospan (x, y), or None if no object carries one.

    Canonical choice: smallest apex, then smallest projection pair.
    """
    if cat.cod(x) != cat.cod(y):
        raise FinCategoryError(f"not a cospan: {x!r}, {y!r}")
    b, c = cat.dom(x), cat.dom(y)
    cones = _cones(cat, x, y)
    for p in cat.objects:
        for pl in cat.hom(p, b):
            for pr in cat.hom(p, c):
                if cat.compose(x, pl) != cat.compose(y, pr):
                    continue
                mediators: dict[tuple[str, str], str] = {}
                ok = True
                for f, g in cones:
                    w = cat.dom(f)
                    ms = [
                        m
                        for m in cat.hom(w, p)
                        if cat.compose(pl, m) == f and cat.compose(pr, m) == g
                    ]
                    if len(ms) != 1:
                        ok = False
                        break
                    mediators[(f, g)] = ms[0]
                if ok:
                    return PullbackResult(p, pl, pr, mediators)
    return None


def pushout(cat: FinCategory, x: str, y: str) -> Optional[PullbackResult]:
    """Dual of pullback: x, y share a domain; projections are the coprojections."""
    if cat.dom(x) != cat.dom(y):
        raise FinCategoryError(f"not a span: {x!r}, {y!r}")
    b, c = cat.cod(x), cat.cod(y)
    cocones = []
    for w in cat.objects:
        for f in cat.hom(b, w):
            for g in cat.hom(c, w):
                if cat.compose(f, x) == cat.compose(g, y):
                    cocones.append((f, g))
    for p in cat.objects:
        for il in cat.hom(b, p):
            for ir in cat.hom(c, p):
                if cat.compose(il, x) != cat.compose(ir, y):
                    continue
                mediators: dict[tuple[str, str], str] = {}
                ok = True
                for f, g in cocones:
                    w = cat.cod(f)
                    ms = [
                        m
                        for m in cat.hom(p, w)
                        if cat.compose(m, il) == f and cat.compose(m, ir) == g
                    ]
                    if len(ms) != 1:
                        ok = False
                        break
                    mediators[(f, g)] = ms[0]
                if ok:
                    return PullbackResult(p, il, ir, mediators)
    return None


# -- distinguished objects -------------------------------------------------


@dataclass(frozen=True)
class Distinguished:
    initial: Optional[str]
    terminal: Optional[str]
    zero: Optional[str]


def find_distinguished_objects(cat: FinCategory) -> Distinguished:
    initial = next(
        (x for x in cat.objects if all(len(cat.hom(x, y)) == 1 for y in cat.objects)),
        None,
    )
    terminal = next(
        (x for x in cat.objects if all(len(cat.hom(y, x)) == 1 for y in cat.objects)),
        None,
    )
    zero = None
    if initial is not None and terminal is not None:
        classes = cat.iso_classes()
        if terminal in classes[initial]:
            zero = classes[initial][0]
    return Distinguished(initial, terminal, zero)


def compose_path(cat: FinCategory, path: Sequence[str]) -> str:
    """Left fold of a nonempty chain of composable arrows (listed g after f as [g, f])."""
    if not path:
        raise FinCategoryError("empty path")
    acc = path[0]
    for f in path[1:]:
        acc = cat.compose(acc, f)
    return acc


# -- functors, natural transformations, adjunctions ------------------------


@dataclass(frozen=True)
class FunctorData:
    name: str
    source: FinCategory = field(hash=False)
    target: FinCategory = field(hash=False)
    ob_map: Mapping[str, str] = field(hash=False)
    arr_map: Mapping[str, str] = field(hash=False)

    def on_ob(self, x: str) -> str:
        return self.ob_map[x]

    def on_arr(self, a: str) -> str:
        return self.arr_map[a]


def verify_functor(fun: FunctorData) -> list[str]:
    out: list[str] = []
    src, dst = fun.source, fun.target
    for x in src.objects:
        fx = fun.ob_map.get(x)
        if fx is None or fx not in dst._obj_index:
            out.append(f"{fun.name}: object map broken at {x}")
    for a, (d, c) in src.arrows.items():
        fa = fun.arr_map.get(a)
        if fa is None or fa not in dst.arrows:
            out.append(f"{fun.name}: arrow map broken at {a}")
            continue
        if dst.arrows[fa] != (fun.ob_map[d], fun.ob_map[c]):
            out.append(f"{fun.name}: typing broken at {a}")
    if out:
        return out
    for x in src.objects:
        if fun.arr_map[src.id_of(x)] != dst.id_of(fun.ob_map[x]):
            out.append(f"{fun.name}: does not preserve id_{x}")
    for g, f in src.composable_pairs():
        if fun.arr_map[src.compose(g, f)] != dst.compose(fun.arr_map[g], fun.arr_map[f]):
            out.append(f"{fun.name}: does not preserve {g}.{f}")
    return out


def is_full_and_faithful(fun: FunctorData) -> bool:
    src, dst = fun.source, fun.target
    for x in src.objects:
        for y in src.objects:
            image = [fun.arr_map[a] for a in src.hom(x, y)]
            target_hom = set(dst.hom(fun.ob_map[x], fun.ob_map[y]))
            if len(set(image)) != len(image) or set(image) != target_hom:
                return False
    return True


def compose_functors(outer: FunctorData, inner: FunctorData, name: str) -> FunctorData:
    return FunctorData(
        name,
        inner.source,
        outer.target,
        {x: outer.ob_map[inner.ob_map[x]] for x in inner.source.objects},
        {a: outer.arr_map[inner.arr_map[a]] for a in inner.source.arrows},
    )


def identity_functor(cat: FinCategory) -> FunctorData:
    return FunctorData(
        f"Id_{cat.name}",
        cat,
        cat,
        {x: x for x in cat.objects},
        {a: a for a in cat.arrows},
    )


@dataclass(frozen=True)
class NatTransData:
    name: str
    source: FunctorData = field(hash=False)
    target: FunctorData = field(hash=False)
    components: Mapping[str, str] = field(hash=False)

    def at(self, x: str) -> str:
        return self.components[x]


def verify_nat_trans(nt: NatTransData) -> list[str]:
    out: list[str] = []
    f, g = nt.source, nt.target
    cat = f.source
    dst = f.target
    for x in cat.objects:
        c = nt.components.get(x)
        if c is None or c not in dst.arrows:
            out.append(f"{nt.name}: missing/unknown component at {x}")
        elif dst.arrows[c] != (f.ob_map[x], g.ob_map[x]):
            out.append(f"{nt.name}: component at {x} badly typed")
    if out:
        return out
    for a, (x, y) in cat.arrows.items():
        lhs = dst.compose(nt.components[y], f.arr_map[a])
        rhs = dst.compose(g.arr_map[a], nt.components[x])
        if lhs != rhs:
            out.append(f"{nt.name}: naturality fails at {a}")
    return out


@dataclass(frozen=True)
class AdjunctionData:
    """left -| right, with left: B -> A and right: A -> B.

    unit: Id_B => right.left (components in B);
    counit: left.right => Id_A (components in A).
    """

    name: str
    left: FunctorData = field(hash=False)
    right: FunctorData = field(hash=False)
    unit: NatTransData = field(hash=False)
    counit: NatTransData = field(hash=False)


def verify_adjunction(adj: AdjunctionData) -> list[str]:
    out: list[str] = []
    left, right = adj.left, adj.right
    if left.source is not right.target or left.target is not right.source:
        return [f"{adj.name}: functors not typed as an adjoint pair"]
    out.extend(verify_functor(left))
    out.extend(verify_functor(right))
    if out:
        return out
    out.extend(verify_nat_trans(adj.unit))
    out.extend(verify_nat_trans(adj.counit))
    if out:
        return out
    b_cat, a_cat = left.source, left.target
    for x in b_cat.objects:
        lx = left.ob_map[x]
        tri = a_cat.compose(adj.counit.at(lx), left.arr_map[adj.unit.at(x)])
        if tri != a_cat.id_of(lx):
            out.append(f"{adj.name}: triangle identity (left) fails at {x}")
    for a in a_cat.objects:
        ra = right.ob_map[a]
        tri = b_cat.compose(right.arr_map[adj.counit.at(a)], adj.unit.at(ra))
        if tri != b_cat.id_of(ra):
            out.append(f"{adj.name}: triangle identity (right) fails at {a}")
    return out


def full_subcategory(cat: FinCategory, objs: Sequence[str], name: str) -> tuple[FinCategory, FunctorData]:
    """The full subcategory on ``objs`` plus its inclusion functor."""
    objs = tuple(x for x in cat.objects if x in set(objs))
    arrs = {
        a: dc
        for a, dc in cat.arrows.items()
        if dc[0] in objs and dc[1] in objs
    }
    sub = FinCategory(
        name,
        objs,
        arrs,
        {x: cat.identity[x] for x in objs},
        compose_fn=cat.compose,
    )
    incl = FunctorData(
        f"incl_{name}", sub, cat, {x: x for x in objs}, {a: a for a in arrs}
    )
    return sub, incl


def relabel(cat: FinCategory, arrow_names: Mapping[str, str], name: Optional[str] = None) -> FinCategory:
    """Rename arrows by a bijection; used by stability tests."""
    r = dict(arrow_names)
    return FinCategory(
        name or cat.name,
        cat.objects,
        {r[a]: dc for a, dc in cat.arrows.items()},
        {x: r[i] for x, i in cat.identity.items()},
        comp={(r[g], r[f]): r[h] for (g, f), h in cat.comp.items()}
        if cat._compose_fn is None
        else None,
        compose_fn=None
        if cat._compose_fn is None
        else (lambda g, f: r[cat.compose(_inv(r)[g], _inv(r)[f])]),
    )


def _inv(d: Mapping[str, str]) -> dict[str, str]:
    return {v: k for k, v in d.items()}
