"""Homotopy kernels and cokernels by exhaustive universal-property search.

A kernel of g: X -> Y is a triple (N, n: N -> X, nu in Theta(g.n)) through
which every homotopy cone factors uniquely; the cokernel is dual.  Searches
enumerate candidates in declaration order and return the first verified
triple, so results are deterministic; uniqueness up to unique isomorphism
makes the choice immaterial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from .core import FinCategory, FinCategoryError, PullbackResult, pullback
from .nullhom import NullStructure


@dataclass(frozen=True)
class HomotopyKernelResult:
    of_arrow: str  # g
    object: str
    arrow: str  # n: N -> X
    witness: str  # nu in Theta(g.n)
    mediators: Mapping[tuple[str, str], str] = field(hash=False)
    strong: Optional[bool] = None


@dataclass(frozen=True)
class HomotopyCokernelResult:
    of_arrow: str  # g
    object: str
    arrow: str  # q: Y -> Q
    witness: str  # theta in Theta(q.g)
    mediators: Mapping[tuple[str, str], str] = field(hash=False)
    strong: Optional[bool] = None


@dataclass(frozen=True)
class StrongVerdict:
    flag: bool
    counterexample: Optional[str] = None


def _kernel_cones(s: NullStructure, g: str):
    cat = s.base
    x = cat.dom(g)
    for f in cat.arrows_to(x):
        for phi in s.theta(cat.compose(g, f)):
            yield f, phi


def verify_kernel(
    s: NullStructure, g: str, obj: str, n: str, nu: str
) -> Optional[dict[tuple[str, str], str]]:
    """Mediator table if (obj, n, nu) satisfies the universal property, else None."""
    cat = s.base
    if cat.arrows[n] != (obj, cat.dom(g)):
        return None
    if nu not in s.theta(cat.compose(g, n)):
        return None
    mediators: dict[tuple[str, str], str] = {}
    for f, phi in _kernel_cones(s, g):
        w = cat.dom(f)
        ms = [
            m
            for m in cat.hom(w, obj)
            if cat.compose(n, m) == f and s.wr(nu, m) == phi
        ]
        if len(ms) != 1:
            return None
        mediators[(f, phi)] = ms[0]
    return mediators


def search_homotopy_kernel(s: NullStructure, g: str) -> Optional[HomotopyKernelResult]:
    cat = s.base
    x = cat.dom(g)
    for obj in cat.objects:
        for n in cat.hom(obj, x):
            for nu in s.theta(cat.compose(g, n)):
                med = verify_kernel(s, g, obj, n, nu)
                if med is not None:
                    return HomotopyKernelResult(g, obj, n, nu, med)
    return None


def _cokernel_cones(s: NullStructure, g: str):
    cat = s.base
    y = cat.cod(g)
    for f in cat.arrows_from(y):
        for phi in s.theta(cat.compose(f, g)):
            yield f, phi


def verify_cokernel(
    s: NullStructure, g: str, obj: str, q: str, theta: str
) -> Optional[dict[tuple[str, str], str]]:
    cat = s.base
    if cat.arrows[q] != (cat.cod(g), obj):
        return None
    if theta not in s.theta(cat.compose(q, g)):
        return None
    mediators: dict[tuple[str, str], str] = {}
    for f, phi in _cokernel_cones(s, g):
        w = cat.cod(f)
        ms = [
            m
            for m in cat.hom(obj, w)
            if cat.compose(m, q) == f and s.wl(m, theta) == phi
        ]
        if len(ms) != 1:
            return None
        mediators[(f, phi)] = ms[0]
    return mediators


def search_homotopy_cokernel(
    s: NullStructure, g: str
) -> Optional[HomotopyCokernelResult]:
    cat = s.base
    y = cat.cod(g)
    for obj in cat.objects:
        for q in cat.hom(y, obj):
            for theta in s.theta(cat.compose(q, g)):
                med = verify_cokernel(s, g, obj, q, theta)
                if med is not None:
                    return HomotopyCokernelResult(g, obj, q, theta, med)
    return None


def check_strong(s: NullStructure, k: HomotopyKernelResult) -> StrongVerdict:
    """Unique lifting of homotopies through the kernel arrow."""
    cat = s.base
    g, n, nu = k.of_arrow, k.arrow, k.witness
    for f in cat.arrows_to(k.object):
        for phi in s.theta(cat.compose(n, f)):
            if s.wl(g, phi) != s.wr(nu, f):
                continue
            lifts = [p for p in s.theta(f) if s.wl(n, p) == phi]
            if len(lifts) != 1:
                return StrongVerdict(False, f"cone ({f}, {phi}) has {len(lifts)} lifts")
    return StrongVerdict(True)


def check_strong_cokernel(s: NullStructure, q: HomotopyCokernelResult) -> StrongVerdict:
    cat = s.base
    g, qa, theta = q.of_arrow, q.arrow, q.witness
    for f in cat.arrows_from(q.object):
        for phi in s.theta(cat.compose(f, qa)):
            if s.wr(phi, g) != s.wl(f, theta):
                continue
            lifts = [p for p in s.theta(f) if s.wr(p, qa) == phi]
            if len(lifts) != 1:
                return StrongVerdict(False, f"cone ({f}, {phi}) has {len(lifts)} lifts")
    return StrongVerdict(True)


def check_theta_strong_pullback(
    s: NullStructure, pb: PullbackResult, x: str, y: str
) -> StrongVerdict:
    """Unique pairing of homotopies over each cone of the pullback of (x, y)."""
    cat = s.base
    b, c = cat.dom(x), cat.dom(y)
    for w in cat.objects:
        for f in cat.hom(w, b):
            for g in cat.hom(w, c):
                if cat.compose(x, f) != cat.compose(y, g):
                    continue
                m = pb.mediators[(f, g)]
                for phi in s.theta(f):
                    for psi in s.theta(g):
                        if s.wl(x, phi) != s.wl(y, psi):
                            continue
                        pairs = [
                            chi
                            for chi in s.theta(m)
                            if s.wl(pb.proj_left, chi) == phi
                            and s.wl(pb.proj_right, chi) == psi
                        ]
                        if len(pairs) != 1:
                            return StrongVerdict(
                                False,
                                f"cone ({f}, {g}) pair ({phi}, {psi}) "
                                f"has {len(pairs)} fillers",
                            )
    return StrongVerdict(True)


def kernel_via_pullback(
    s: NullStructure,
    g: str,
    identity_kernel: Optional[HomotopyKernelResult] = None,
) -> Optional[HomotopyKernelResult]:
    """Kernel of g by pulling the kernel of the codomain identity back
    along g; the witness is the identity-kernel witness whiskered by the
    second projection.  The result is re-verified before return and the
    strong flag is set when both the pullback and the identity kernel are
    strong.
    """
    cat = s.base
    y = cat.cod(g)
    k0 = identity_kernel or search_homotopy_kernel(s, cat.id_of(y))
    if k0 is None:
        return None
    pb = pullback(cat, g, k0.arrow)
    if pb is None:
        return None
    n = pb.proj_left
    nu = s.wr(k0.witness, pb.proj_right)
    med = verify_kernel(s, g, pb.apex, n, nu)
    if med is None:
        return None
    strong = None
    if check_theta_strong_pullback(s, pb, g, k0.arrow).flag:
        if check_strong(s, k0).flag:
            strong = True
    return HomotopyKernelResult(g, pb.apex, n, nu, med, strong=strong)


def kernels_isomorphic(
    s: NullStructure, k1: HomotopyKernelResult, k2: HomotopyKernelResult
) -> Optional[str]:
    """The unique comparison isomorphism between two kernels of one arrow."""
    cat = s.base
    u = k2.mediators.get((k1.arrow, k1.witness))
    v = k1.mediators.get((k2.arrow, k2.witness))
    if u is None or v is None:
        return None
    if cat.compose(v, u) != cat.id_of(k1.object):
        return None
    if cat.compose(u, v) != cat.id_of(k2.object):
        return None
    return u


def cokernels_isomorphic(
    s: NullStructure, q1: HomotopyCokernelResult, q2: HomotopyCokernelResult
) -> Optional[str]:
    cat = s.base
    u = q2.mediators.get((q1.arrow, q1.witness))
    v = q1.mediators.get((q2.arrow, q2.witness))
    if u is None or v is None:
        return None
    if cat.compose(v, u) != cat.id_of(q2.object):
        return None
    if cat.compose(u, v) != cat.id_of(q1.object):
        return None
    return u
