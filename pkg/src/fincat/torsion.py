"""Homotopy torsion theories and their ideal-relative variants.

A torsion theory for a structure of nullhomotopies is a pair of replete
full subcategories such that every object has an exact presentation
(kernel/cokernel sharing one witness) with endpoints in the two classes,
and every arrow from the torsion class to the free class carries exactly
one homotopy (strict) or at least one (weak).  The ideal-relative variant
replaces homotopy sets by membership in an ideal of arrows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

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
    verify_adjunction,
)
from .hlimits import verify_cokernel, verify_kernel
from .nullhom import (
    IdealData,
    NullStructure,
    closure_i,
    orthogonality_table,
    trivial_objects,
)


@dataclass(frozen=True)
class TorsionPair:
    torsion: frozenset[str]
    free: frozenset[str]
    structure: NullStructure = field(hash=False)


@dataclass(frozen=True)
class ExactPresentation:
    object: str
    t_object: str
    t_arrow: str
    witness: str
    f_arrow: str
    f_object: str
    kernel_verified: bool
    cokernel_verified: bool
    t_mono: bool
    f_epi: bool
    kernel_mediators: Mapping[tuple[str, str], str] = field(hash=False, default=None)
    cokernel_mediators: Mapping[tuple[str, str], str] = field(hash=False, default=None)


@dataclass(frozen=True)
class TTVerdict:
    level: str  # strict | weak | none
    quasi_proper: bool
    presentations: Mapping[str, ExactPresentation] = field(hash=False)
    failure: Optional[str] = None


def _exact_triples(s: NullStructure, x: str) -> list[ExactPresentation]:
    """All verified exact presentations of x, regardless of endpoints."""
    cat = s.base
    out = []
    for t in cat.arrows_to(x):
        for f in cat.arrows_from(x):
            ft = cat.compose(f, t)
            for xi in s.theta(ft):
                kmed = verify_kernel(s, f, cat.dom(t), t, xi)
                if kmed is None:
                    continue
                cmed = verify_cokernel(s, t, cat.cod(f), f, xi)
                if cmed is None:
                    continue
                out.append(
                    ExactPresentation(
                        x,
                        cat.dom(t),
                        t,
                        xi,
                        f,
                        cat.cod(f),
                        True,
                        True,
                        classify_arrow(cat, t).mono,
                        classify_arrow(cat, f).epi,
                        kmed,
                        cmed,
                    )
                )
    return out


def exact_triples(s: NullStructure, x: str) -> list[ExactPresentation]:
    cache = getattr(s, "_exact_triples_cache", None)
    if cache is None:
        cache = {}
        s._exact_triples_cache = cache
    got = cache.get(x)
    if got is None:
        got = _exact_triples(s, x)
        cache[x] = got
    return got


def find_exact_presentation(
    s: NullStructure, t_objs, f_objs, x: str
) -> list[ExactPresentation]:
    """All exact presentations of x with torsion part in T and free part in F,
    in canonical (t-arrow, f-arrow, witness) order.
    """
    return [
        p
        for p in exact_triples(s, x)
        if p.t_object in t_objs and p.f_object in f_objs
    ]


def check_torsion_theory(s: NullStructure, t_objs, f_objs) -> TTVerdict:
    """Conditions of a homotopy torsion theory: repleteness, presentations
    for every object, orthogonality (strict: singleton homotopy sets on
    arrows T -> F; weak: nonempty).  Quasi-properness asks every found
    presentation of every object to have a mono torsion arrow and an epi
    free arrow.
    """
    cat = s.base
    t_objs, f_objs = frozenset(t_objs), frozenset(f_objs)
    if not cat.is_replete(t_objs):
        return TTVerdict("none", False, {}, "torsion class not replete")
    if not cat.is_replete(f_objs):
        return TTVerdict("none", False, {}, "free class not replete")
    orth = orthogonality_table(s, t_objs, f_objs)
    if not orth.weak:
        return TTVerdict(
            "none", False, {}, f"orthogonality fails at {orth.counterexample}"
        )
    presentations: dict[str, ExactPresentation] = {}
    quasi_proper = True
    for x in cat.objects:
        found = find_exact_presentation(s, t_objs, f_objs, x)
        if not found:
            return TTVerdict("none", False, {}, f"no exact presentation of {x}")
        presentations[x] = found[0]
        if any(not (p.t_mono and p.f_epi) for p in found):
            quasi_proper = False
    level = "strict" if orth.strict else "weak"
    return TTVerdict(level, quasi_proper, presentations)


# -- ideal-relative kernels and torsion theories ----------------------------


@dataclass(frozen=True)
class Z1KernelResult:
    of_arrow: str
    object: str
    arrow: str
    mediators: Mapping[str, str] = field(hash=False)


def _z1_arrows(z1) -> frozenset[str]:
    return z1.arrows if isinstance(z1, IdealData) else frozenset(z1)


def verify_z1_kernel(
    cat: FinCategory, z1, g: str, k: str
) -> Optional[dict[str, str]]:
    """Mediator table if k is an ideal-relative kernel of g, else None."""
    zarr = _z1_arrows(z1)
    x = cat.dom(g)
    if cat.cod(k) != x or cat.compose(g, k) not in zarr:
        return None
    obj = cat.dom(k)
    mediators: dict[str, str] = {}
    for f in cat.arrows_to(x):
        if cat.compose(g, f) not in zarr:
            continue
        ms = [m for m in cat.hom(cat.dom(f), obj) if cat.compose(k, m) == f]
        if len(ms) != 1:
            return None
        mediators[f] = ms[0]
    return mediators


def z1_kernel(cat: FinCategory, z1, g: str) -> Optional[Z1KernelResult]:
    x = cat.dom(g)
    candidates = sorted(
        cat.arrows_to(x), key=lambda k: (cat.obj_index(cat.dom(k)), cat.arr_index(k))
    )
    for k in candidates:
        med = verify_z1_kernel(cat, z1, g, k)
        if med is not None:
            return Z1KernelResult(g, cat.dom(k), k, med)
    return None


def verify_z1_cokernel(
    cat: FinCategory, z1, g: str, c: str
) -> Optional[dict[str, str]]:
    zarr = _z1_arrows(z1)
    y = cat.cod(g)
    if cat.dom(c) != y or cat.compose(c, g) not in zarr:
        return None
    obj = cat.cod(c)
    mediators: dict[str, str] = {}
    for f in cat.arrows_from(y):
        if cat.compose(f, g) not in zarr:
            continue
        ms = [m for m in cat.hom(obj, cat.cod(f)) if cat.compose(m, c) == f]
        if len(ms) != 1:
            return None
        mediators[f] = ms[0]
    return mediators


def z1_cokernel(cat: FinCategory, z1, g: str) -> Optional[Z1KernelResult]:
    y = cat.cod(g)
    candidates = sorted(
        cat.arrows_from(y), key=lambda c: (cat.obj_index(cat.cod(c)), cat.arr_index(c))
    )
    for c in candidates:
        med = verify_z1_cokernel(cat, z1, g, c)
        if med is not None:
            return Z1KernelResult(g, cat.cod(c), c, med)
    return None


@dataclass(frozen=True)
class Z1Presentation:
    object: str
    t_object: str
    t_arrow: str
    f_arrow: str
    f_object: str


@dataclass(frozen=True)
class Z1TTVerdict:
    z1_tt: bool
    pretorsion: Optional[bool]
    presentations: Mapping[str, Z1Presentation] = field(hash=False)
    witness: Optional[str] = None


def _z1_presentation_ok(cat, z1, t, f) -> bool:
    return (
        cat.compose(f, t) in _z1_arrows(z1)
        and verify_z1_kernel(cat, z1, f, t) is not None
        and verify_z1_cokernel(cat, z1, t, f) is not None
    )


def check_z1_torsion_theory(
    cat: FinCategory,
    z1,
    t_objs,
    f_objs,
    presentation_hints: Optional[Mapping[str, tuple[str, str]]] = None,
) -> Z1TTVerdict:
    """Ideal-relative torsion theory: replete classes, a presentation of
    every object whose torsion arrow is an ideal-relative kernel of the
    free arrow and vice versa, and all arrows T -> F inside the ideal.
    ``presentation_hints`` maps object -> (t_arrow, f_arrow); hints are
    verified against the universal properties, never trusted.  When the
    ideal is closed and the verdict is positive, the pretorsion flag
    records whether the ideal is spanned by the objects of T meet F.
    """
    t_objs, f_objs = frozenset(t_objs), frozenset(f_objs)
    zarr = _z1_arrows(z1)
    if not cat.is_replete(t_objs):
        return Z1TTVerdict(False, None, {}, "torsion class not replete")
    if not cat.is_replete(f_objs):
        return Z1TTVerdict(False, None, {}, "free class not replete")
    for g, (x, y) in cat.arrows.items():
        if x in t_objs and y in f_objs and g not in zarr:
            return Z1TTVerdict(False, None, {}, f"arrow {g} escapes the ideal")
    presentations: dict[str, Z1Presentation] = {}
    for x in cat.objects:
        pres = None
        if presentation_hints and x in presentation_hints:
            t, f = presentation_hints[x]
            if (
                cat.dom(t) in t_objs
                and cat.cod(f) in f_objs
                and _z1_presentation_ok(cat, z1, t, f)
            ):
                pres = Z1Presentation(x, cat.dom(t), t, f, cat.cod(f))
        if pres is None:
            for t in cat.arrows_to(x):
                if cat.dom(t) not in t_objs:
                    continue
                for f in cat.arrows_from(x):
                    if cat.cod(f) not in f_objs:
                        continue
                    if _z1_presentation_ok(cat, z1, t, f):
                        pres = Z1Presentation(x, cat.dom(t), t, f, cat.cod(f))
                        break
                if pres is not None:
                    break
        if pres is None:
            return Z1TTVerdict(False, None, {}, f"no presentation of {x}")
        presentations[x] = pres
    pretorsion = None
    closed = z1.closed if isinstance(z1, IdealData) else None
    if closed:
        both = t_objs & f_objs
        pretorsion = closure_i(cat, both).arrows == zarr
    return Z1TTVerdict(True, pretorsion, presentations)


# -- enumeration -------------------------------------------------------------


def _replete_subsets(cat: FinCategory) -> list[frozenset[str]]:
    classes = []
    seen = set()
    for x in cat.objects:
        orbit = cat.iso_classes()[x]
        if orbit not in seen:
            seen.add(orbit)
            classes.append(orbit)
    subsets = []
    for mask in range(1 << len(classes)):
        objs = frozenset(
            o for i, cl in enumerate(classes) if mask >> i & 1 for o in cl
        )
        subsets.append(objs)
    return subsets


def enumerate_torsion_theories(
    s: NullStructure, level: str = "strict", cap: int = 16
) -> list[TorsionPair]:
    """All replete pairs passing the torsion-theory check at the requested
    level, enumerated over isomorphism-class bitmasks in canonical order.
    """
    cat = s.base
    classes = {cat.iso_classes()[x] for x in cat.objects}
    if len(classes) > cap:
        raise FinCategoryError(f"too many iso classes ({len(classes)} > {cap})")
    # orthogonality pre-filter per object pair
    strict_ok: dict[tuple[str, str], bool] = {}
    weak_ok: dict[tuple[str, str], bool] = {}
    for a in cat.objects:
        for b in cat.objects:
            sizes = [len(s.theta(h)) for h in cat.hom(a, b)]
            strict_ok[(a, b)] = all(n == 1 for n in sizes)
            weak_ok[(a, b)] = all(n >= 1 for n in sizes)
    ok = strict_ok if level == "strict" else weak_ok
    out = []
    subsets = _replete_subsets(cat)
    for t_objs in subsets:
        for f_objs in subsets:
            if not all(ok[(a, b)] for a in t_objs for b in f_objs):
                continue
            verdict = check_torsion_theory(s, t_objs, f_objs)
            good = verdict.level == "strict" or (
                level == "weak" and verdict.level == "weak"
            )
            if good:
                out.append(TorsionPair(t_objs, f_objs, s))
    return out


def enumerate_z1_torsion_theories(
    cat: FinCategory, z1, cap: int = 16
) -> list[tuple[frozenset[str], frozenset[str]]]:
    classes = {cat.iso_classes()[x] for x in cat.objects}
    if len(classes) > cap:
        raise FinCategoryError(f"too many iso classes ({len(classes)} > {cap})")
    zarr = _z1_arrows(z1)
    in_ideal: dict[tuple[str, str], bool] = {}
    for a in cat.objects:
        for b in cat.objects:
            in_ideal[(a, b)] = all(h in zarr for h in cat.hom(a, b))
    out = []
    subsets = _replete_subsets(cat)
    for t_objs in subsets:
        for f_objs in subsets:
            if not all(in_ideal[(a, b)] for a in t_objs for b in f_objs):
                continue
            if check_z1_torsion_theory(cat, z1, t_objs, f_objs).z1_tt:
                out.append((t_objs, f_objs))
    return out


# -- reflections from a strict theory ----------------------------------------


@dataclass(frozen=True)
class ReflectionRecord:
    coreflection: AdjunctionData = field(hash=False)
    reflection: AdjunctionData = field(hash=False)


def verify_reflection(s: NullStructure, pair: TorsionPair) -> ReflectionRecord:
    """Assemble the torsion coreflection and the free reflection from the
    chosen presentations of a strict theory, then verify both adjunctions.
    """
    verdict = check_torsion_theory(s, pair.torsion, pair.free)
    if verdict.level != "strict":
        raise FinCategoryError(f"not a strict torsion theory: {verdict.failure}")
    cat = s.base
    pres = verdict.presentations

    def unique_homotopy(g: str) -> str:
        hs = s.theta(g)
        if len(hs) != 1:
            raise FinCategoryError(f"expected singleton homotopy set on {g}")
        return hs[0]

    t_ob = {x: pres[x].t_object for x in cat.objects}
    t_arr = {}
    for g, (x, y) in cat.arrows.items():
        cone = cat.compose(g, pres[x].t_arrow)
        phi = unique_homotopy(cat.compose(pres[y].f_arrow, cone))
        t_arr[g] = pres[y].kernel_mediators[(cone, phi)]
    f_ob = {x: pres[x].f_object for x in cat.objects}
    f_arr = {}
    for g, (x, y) in cat.arrows.items():
        cone = cat.compose(pres[y].f_arrow, g)
        phi = unique_homotopy(cat.compose(cone, pres[x].t_arrow))
        f_arr[g] = pres[x].cokernel_mediators[(cone, phi)]

    t_sub, t_incl = full_subcategory(
        cat, sorted(pair.torsion, key=cat.obj_index), f"{cat.name}|T"
    )
    f_sub, f_incl = full_subcategory(
        cat, sorted(pair.free, key=cat.obj_index), f"{cat.name}|F"
    )
    t_fun = FunctorData("T", cat, t_sub, t_ob, t_arr)
    f_fun = FunctorData("F", cat, f_sub, f_ob, f_arr)
    unit_t = {}
    for a in t_sub.objects:
        phi = unique_homotopy(pres[a].f_arrow)
        unit_t[a] = pres[a].kernel_mediators[(cat.id_of(a), phi)]
    coreflection = AdjunctionData(
        "inclT-|T",
        t_incl,
        t_fun,
        NatTransData(
            "unit", identity_functor(t_sub),
            compose_functors(t_fun, t_incl, "T.incl"), unit_t,
        ),
        NatTransData(
            "counit", compose_functors(t_incl, t_fun, "incl.T"),
            identity_functor(cat), {x: pres[x].t_arrow for x in cat.objects},
        ),
    )
    counit_f = {}
    for a in f_sub.objects:
        phi = unique_homotopy(pres[a].t_arrow)
        counit_f[a] = pres[a].cokernel_mediators[(cat.id_of(a), phi)]
    reflection = AdjunctionData(
        "F-|inclF",
        f_fun,
        f_incl,
        NatTransData(
            "unit", identity_functor(cat),
            compose_functors(f_incl, f_fun, "incl.F"),
            {x: pres[x].f_arrow for x in cat.objects},
        ),
        NatTransData(
            "counit", compose_functors(f_fun, f_incl, "F.incl"),
            identity_functor(f_sub), counit_f,
        ),
    )
    for adj in (coreflection, reflection):
        errs = verify_adjunction(adj)
        if errs:
            raise FinCategoryError(f"adjunction verification failed: {errs[0]}")
    return ReflectionRecord(coreflection, reflection)
