"""The category of arrows of a finite category, its adjoint string, the
diagonal structure of nullhomotopies, and the pointed-case machinery.

Objects of the arrow category are the arrows of the base; arrows are
commuting squares (g, g0).  A square id records the component pair and
both endpoint objects, since a pair alone does not determine them.
The diagonal structure assigns to a square the set of diagonals of its
underlying rectangle; its ideal consists of the squares admitting one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from .core import (
    AdjunctionData,
    FinCategory,
    FinCategoryError,
    FunctorData,
    NatTransData,
    classify_arrow,
    compose_functors,
    find_distinguished_objects,
    identity_functor,
    pullback,
    validate_category,
    verify_adjunction,
    verify_functor,
    verify_nat_trans,
)
from .hlimits import (
    HomotopyCokernelResult,
    HomotopyKernelResult,
    verify_cokernel,
    verify_kernel,
)
from .nullhom import (
    AdjunctionString,
    IdealData,
    NullStructure,
    ideal_of,
    validate_structure,
    verify_string,
)
from .torsion import (
    Z1KernelResult,
    Z1TTVerdict,
    check_z1_torsion_theory,
    verify_z1_cokernel,
    verify_z1_kernel,
    z1_cokernel,
    z1_kernel,
)

ARR_CAP = 64
DEEP_VERIFY_LIMIT = 600  # squares; beyond this, quadratic law checks are skipped


def _sq_id(g: str, g0: str, x: str, y: str) -> str:
    return f"({g},{g0}):{x}>{y}"


@dataclass(frozen=True)
class ArrWorkspace:
    base: FinCategory = field(hash=False)
    arr: FinCategory = field(hash=False)
    squares: Mapping[str, tuple[str, str, str, str]] = field(hash=False)
    string: AdjunctionString = field(hash=False)
    h_structure: NullStructure = field(hash=False)
    z1: IdealData = field(hash=False)
    verified: bool = False

    def square(self, g: str, g0: str, x: str, y: str) -> str:
        sq = _sq_id(g, g0, x, y)
        if sq not in self.squares:
            raise FinCategoryError(f"no such square {sq}")
        return sq


def build_arr(a: FinCategory, cap: int = ARR_CAP) -> ArrWorkspace:
    """The arrow category with its adjoint string, diagonal structure and
    induced ideal.  Quadratic invariant checks run only below the deep
    verification limit; the workspace records whether they ran.
    """
    if len(a.arrows) > cap:
        raise FinCategoryError(
            f"base category has {len(a.arrows)} arrows, cap is {cap}"
        )
    objects = list(a.arrows)
    squares: dict[str, tuple[str, str, str, str]] = {}
    arrows: dict[str, tuple[str, str]] = {}
    for x in objects:
        dx, cx = a.arrows[x]
        for y in objects:
            dy, cy = a.arrows[y]
            for g in a.hom(dx, dy):
                for g0 in a.hom(cx, cy):
                    if a.compose(g0, x) == a.compose(y, g):
                        sq = _sq_id(g, g0, x, y)
                        squares[sq] = (g, g0, x, y)
                        arrows[sq] = (x, y)
    identity = {
        x: _sq_id(a.id_of(a.dom(x)), a.id_of(a.cod(x)), x, x) for x in objects
    }

    def compose_fn(hsq: str, gsq: str) -> str:
        h, h0, _, z = squares[hsq]
        g, g0, x, _ = squares[gsq]
        return _sq_id(a.compose(h, g), a.compose(h0, g0), x, z)

    arr = FinCategory(f"arr({a.name})", objects, arrows, identity, compose_fn=compose_fn)

    c_fun = FunctorData(
        "cod", arr, a,
        {x: a.cod(x) for x in objects},
        {sq: squares[sq][1] for sq in squares},
    )
    d_fun = FunctorData(
        "dom", arr, a,
        {x: a.dom(x) for x in objects},
        {sq: squares[sq][0] for sq in squares},
    )
    u_fun = FunctorData(
        "ins", a, arr,
        {o: a.id_of(o) for o in a.objects},
        {f: _sq_id(f, f, a.id_of(a.dom(f)), a.id_of(a.cod(f))) for f in a.arrows},
    )
    gamma = NatTransData(
        "gamma", identity_functor(arr), compose_functors(u_fun, c_fun, "ins.cod"),
        {x: _sq_id(x, a.id_of(a.cod(x)), x, a.id_of(a.cod(x))) for x in objects},
    )
    alpha = NatTransData(
        "alpha", compose_functors(c_fun, u_fun, "cod.ins"), identity_functor(a),
        {o: a.id_of(o) for o in a.objects},
    )
    delta = NatTransData(
        "delta", identity_functor(a), compose_functors(d_fun, u_fun, "dom.ins"),
        {o: a.id_of(o) for o in a.objects},
    )
    beta = NatTransData(
        "beta", compose_functors(u_fun, d_fun, "ins.dom"), identity_functor(arr),
        {y: _sq_id(a.id_of(a.dom(y)), y, a.id_of(a.dom(y)), y) for y in objects},
    )
    string = AdjunctionString(
        f"arr({a.name})", a, arr, c_fun, u_fun, d_fun,
        AdjunctionData("cod-|ins", c_fun, u_fun, gamma, alpha),
        AdjunctionData("ins-|dom", u_fun, d_fun, delta, beta),
    )

    homotopies: dict[str, list[str]] = {sq: [] for sq in squares}
    payload: dict[str, tuple[str, str]] = {}
    for sq, (g, g0, x, y) in squares.items():
        for lam in a.hom(a.cod(x), a.dom(y)):
            if a.compose(lam, x) == g and a.compose(y, lam) == g0:
                tok = f"h:{sq}:{lam}"
                homotopies[sq].append(tok)
                payload[tok] = (sq, lam)

    def wl_fn(hsq: str, tok: str) -> str:
        gsq, lam = payload[tok]
        new_sq = arr.compose(hsq, gsq)
        new_lam = a.compose(squares[hsq][0], lam)
        return _register(f"h:{new_sq}:{new_lam}", (new_sq, new_lam))

    def wr_fn(tok: str, fsq: str) -> str:
        gsq, lam = payload[tok]
        new_sq = arr.compose(gsq, fsq)
        new_lam = a.compose(lam, squares[fsq][1])
        return _register(f"h:{new_sq}:{new_lam}", (new_sq, new_lam))

    def _register(tok: str, data: tuple[str, str]) -> str:
        payload.setdefault(tok, data)
        return tok

    h_structure = NullStructure(
        f"H({a.name})", arr, homotopies, wl_fn=wl_fn, wr_fn=wr_fn, payload=payload
    )

    deep = len(squares) <= DEEP_VERIFY_LIMIT
    if deep:
        errs = validate_category(arr)
        errs.extend(verify_string(string))
        errs.extend(validate_structure(h_structure))
        if errs:
            raise FinCategoryError(f"arrow workspace invalid: {errs[0]}")
        z1 = ideal_of(h_structure)
    else:
        z1_arrows = frozenset(sq for sq, hs in homotopies.items() if hs)
        triv = frozenset(
            x for x in objects if homotopies[identity[x]]
        )
        z1 = IdealData(z1_arrows, triv, closed=True)
    return ArrWorkspace(a, arr, squares, string, h_structure, z1, verified=deep)


def h_kernel_direct(w: ArrWorkspace, sq: str) -> Optional[HomotopyKernelResult]:
    """Kernel of a square from the base pullback of its bottom against the
    codomain object: object the induced pairing arrow, kernel arrow
    (identity, first projection), witness the second projection.
    """
    a = w.base
    g, g0, x, y = w.squares[sq]
    pb = pullback(a, g0, y)
    if pb is None:
        return None
    pairing = pb.mediators[(x, g)]
    n = w.square(a.id_of(a.dom(x)), pb.proj_left, pairing, x)
    wit_sq = w.arr.compose(sq, n)
    nu = f"h:{wit_sq}:{pb.proj_right}"
    if nu not in w.h_structure.theta(wit_sq):
        return None
    med = verify_kernel(w.h_structure, sq, pairing, n, nu)
    if med is None:
        return None
    return HomotopyKernelResult(sq, pairing, n, nu, med)


@dataclass(frozen=True)
class ExtensionRecord:
    kernel: HomotopyKernelResult = field(hash=False)
    cokernel: HomotopyCokernelResult = field(hash=False)


def canonical_extension(w: ArrWorkspace, g: str, h: str) -> ExtensionRecord:
    """The two-square diagram on a composable pair: the object g is a
    kernel of (g, id) at h.g, and the object h is a cokernel of (id, h),
    with the identity diagonal as shared witness.
    """
    a = w.base
    if a.cod(g) != a.dom(h):
        raise FinCategoryError(f"arrows {g!r}, {h!r} not composable")
    hg = a.compose(h, g)
    x, y = a.dom(g), a.cod(g)
    z = a.cod(h)
    inner = w.square(a.id_of(x), h, g, hg)
    outer = w.square(g, a.id_of(z), hg, h)
    diag_sq = w.arr.compose(outer, inner)
    xi = f"h:{diag_sq}:{a.id_of(y)}"
    if xi not in w.h_structure.theta(diag_sq):
        raise FinCategoryError("identity diagonal missing; base data inconsistent")
    kmed = verify_kernel(w.h_structure, outer, g, inner, xi)
    cmed = verify_cokernel(w.h_structure, inner, h, outer, xi)
    if kmed is None or cmed is None:
        raise FinCategoryError("canonical extension failed verification")
    return ExtensionRecord(
        HomotopyKernelResult(outer, g, inner, xi, kmed),
        HomotopyCokernelResult(inner, h, outer, xi, cmed),
    )


# -- pointed case -----------------------------------------------------------


@dataclass(frozen=True)
class PointedWorkspace:
    base: FinCategory = field(hash=False)
    arr: FinCategory = field(hash=False)
    squares: Mapping[str, tuple[str, str, str, str]] = field(hash=False)
    zero: str = ""
    zero_arrow: Mapping[tuple[str, str], str] = field(hash=False, default=None)
    d_fun: FunctorData = field(hash=False, default=None)
    lambda_functor: FunctorData = field(hash=False, default=None)
    ker_functor: FunctorData = field(hash=False, default=None)
    d_adj: AdjunctionData = field(hash=False, default=None)
    ker_adj: AdjunctionData = field(hash=False, default=None)
    kernels: Mapping[str, Z1KernelResult] = field(hash=False, default=None)
    cokernels: Mapping[str, Z1KernelResult] = field(hash=False, default=None)
    z1_lambda: IdealData = field(hash=False, default=None)
    z1_zero: IdealData = field(hash=False, default=None)

    def square(self, g: str, g0: str, x: str, y: str) -> str:
        sq = _sq_id(g, g0, x, y)
        if sq not in self.squares:
            raise FinCategoryError(f"no such square {sq}")
        return sq


@dataclass(frozen=True)
class PointedBuild:
    workspace: Optional[PointedWorkspace]
    reason: Optional[str] = None


def _light_adjunction_check(adj: AdjunctionData) -> list[str]:
    """Adjunction laws minus the quadratic composition-preservation loop,
    for arrow categories too large to sweep; identity preservation and
    typing still run, and naturality plus both triangles run in full.
    """
    out: list[str] = []
    for fun in (adj.left, adj.right):
        src, dst = fun.source, fun.target
        for x in src.objects:
            fx = fun.ob_map.get(x)
            if fx is None or fx not in dst.objects:
                out.append(f"{fun.name}: object map broken at {x}")
            elif fun.arr_map[src.id_of(x)] != dst.id_of(fx):
                out.append(f"{fun.name}: does not preserve id_{x}")
        for a, (d, c) in src.arrows.items():
            fa = fun.arr_map.get(a)
            if fa is None or dst.arrows.get(fa) != (fun.ob_map[d], fun.ob_map[c]):
                out.append(f"{fun.name}: arrow map broken at {a}")
                break
    if out:
        return out
    out.extend(verify_nat_trans(adj.unit))
    out.extend(verify_nat_trans(adj.counit))
    if out:
        return out
    b_cat, a_cat = adj.left.source, adj.left.target
    for x in b_cat.objects:
        lx = adj.left.ob_map[x]
        if a_cat.compose(adj.counit.at(lx), adj.left.arr_map[adj.unit.at(x)]) != a_cat.id_of(lx):
            out.append(f"{adj.name}: triangle identity (left) fails at {x}")
    for o in a_cat.objects:
        ro = adj.right.ob_map[o]
        if b_cat.compose(adj.right.arr_map[adj.counit.at(o)], adj.unit.at(ro)) != b_cat.id_of(ro):
            out.append(f"{adj.name}: triangle identity (right) fails at {o}")
    return out


def build_pointed(a: FinCategory, cap: int = ARR_CAP) -> PointedBuild:
    """The pointed string on the arrow category: domain functor, the
    zero-arrow insertion, and the kernel functor, with the zero-bottom
    ideal and the zero-arrow ideal of the base.  Hypotheses (zero object,
    kernels, cokernels) are checked, not assumed.
    """
    dist = find_distinguished_objects(a)
    if dist.zero is None:
        return PointedBuild(None, "no zero object")
    zero = dist.zero
    zero_arrow: dict[tuple[str, str], str] = {}
    for x in a.objects:
        to_zero = a.hom(x, zero)[0]
        for y in a.objects:
            zero_arrow[(x, y)] = a.compose(a.hom(zero, y)[0], to_zero)
    from .nullhom import closure_i

    z1_zero = closure_i(a, {zero})
    kernels: dict[str, Z1KernelResult] = {}
    cokernels: dict[str, Z1KernelResult] = {}
    for g in a.arrows:
        k = z1_kernel(a, z1_zero, g)
        if k is None:
            return PointedBuild(None, f"no kernel of {g}")
        kernels[g] = k
        c = z1_cokernel(a, z1_zero, g)
        if c is None:
            return PointedBuild(None, f"no cokernel of {g}")
        cokernels[g] = c

    w = build_arr(a, cap=cap)
    arr, squares = w.arr, w.squares
    objects = list(a.arrows)

    lam_ob = {x: zero_arrow[(x, zero)] for x in a.objects}
    lam_arr = {
        f: _sq_id(f, a.id_of(zero), lam_ob[a.dom(f)], lam_ob[a.cod(f)])
        for f in a.arrows
    }
    lambda_functor = FunctorData("zins", a, arr, lam_ob, lam_arr)
    d_fun = w.string.d_fun

    ker_ob = {x: kernels[x].object for x in objects}
    ker_arr = {}
    for sq, (g, g0, x, y) in squares.items():
        target = a.compose(g, kernels[x].arrow)
        ker_arr[sq] = kernels[y].mediators[target]
    ker_functor = FunctorData("ker", arr, a, ker_ob, ker_arr)

    unit_d = {
        x: _sq_id(a.id_of(a.dom(x)), zero_arrow[(a.cod(x), zero)], x, lam_ob[a.dom(x)])
        for x in objects
    }
    d_adj = AdjunctionData(
        "dom-|zins",
        d_fun,
        lambda_functor,
        NatTransData(
            "unit", identity_functor(arr),
            compose_functors(lambda_functor, d_fun, "zins.dom"), unit_d,
        ),
        NatTransData(
            "counit", compose_functors(d_fun, lambda_functor, "dom.zins"),
            identity_functor(a), {o: a.id_of(o) for o in a.objects},
        ),
    )
    unit_k = {}
    for o in a.objects:
        unit_k[o] = kernels[lam_ob[o]].mediators[a.id_of(o)]
    counit_k = {
        y: _sq_id(kernels[y].arrow, zero_arrow[(zero, a.cod(y))],
                  lam_ob[kernels[y].object], y)
        for y in objects
    }
    ker_adj = AdjunctionData(
        "zins-|ker",
        lambda_functor,
        ker_functor,
        NatTransData(
            "unit", identity_functor(a),
            compose_functors(ker_functor, lambda_functor, "ker.zins"), unit_k,
        ),
        NatTransData(
            "counit", compose_functors(lambda_functor, ker_functor, "zins.ker"),
            identity_functor(arr), counit_k,
        ),
    )
    deep = len(squares) <= DEEP_VERIFY_LIMIT
    for adj in (d_adj, ker_adj):
        errs = verify_adjunction(adj) if deep else _light_adjunction_check(adj)
        if errs:
            return PointedBuild(None, f"adjunction check: {errs[0]}")
    if not deep:
        # kernel-functor composition law, recovered from the defining
        # property k_y . ker(sq) = g . k_x plus monicity of each kernel arrow
        for sq, (g, g0, x, y) in squares.items():
            if a.compose(kernels[y].arrow, ker_arr[sq]) != a.compose(g, kernels[x].arrow):
                return PointedBuild(None, f"kernel functor broken at {sq}")
        for g in a.arrows:
            if not classify_arrow(a, kernels[g].arrow).mono:
                return PointedBuild(None, f"kernel arrow of {g} not mono")

    z1l_arrows = set()
    for sq, (g, g0, x, y) in squares.items():
        if g0 == zero_arrow[(a.cod(x), a.cod(y))]:
            z1l_arrows.add(sq)
    triv = frozenset(x for x in objects if a.cod(x) == zero)
    # closedness: each member factors through the kernel of its codomain
    for sq in z1l_arrows:
        g, g0, x, y = squares[sq]
        ky = kernels[y]
        if not any(
            a.compose(ky.arrow, m) == g for m in a.hom(a.dom(g), ky.object)
        ):
            return PointedBuild(None, f"ideal member {sq} does not factor")
    z1_lambda = IdealData(frozenset(z1l_arrows), triv, closed=True)

    pw = PointedWorkspace(
        a, arr, squares, zero, zero_arrow, d_fun, lambda_functor, ker_functor,
        d_adj, ker_adj, kernels, cokernels, z1_lambda, z1_zero,
    )
    errs = _verify_pointed_formulas(pw, deep)
    if errs:
        return PointedBuild(None, errs[0])
    return PointedBuild(pw)


def z1_lambda_kernel(pw: PointedWorkspace, sq: str) -> Optional[Z1KernelResult]:
    """The explicit kernel of a square in the zero-bottom ideal calculus:
    base kernel of the left-bottom composite on top, base kernel of the
    bottom on the bottom.  Verified before return.
    """
    a = pw.base
    g, g0, x, y = pw.squares[sq]
    yg = a.compose(y, g)
    k_top = pw.kernels[yg]
    k_bot = pw.kernels[g0]
    # x' : K(y.g) -> K(g0) induced by x
    xk = a.compose(x, k_top.arrow)
    xprime = k_bot.mediators.get(xk)
    if xprime is None:
        return None
    obj = _sq_id(k_top.arrow, k_bot.arrow, xprime, x)
    if obj not in pw.squares:
        return None
    med = verify_z1_kernel(pw.arr, pw.z1_lambda, sq, obj)
    if med is None:
        return None
    return Z1KernelResult(sq, xprime, obj, med)


def z1_lambda_cokernel(pw: PointedWorkspace, sq: str) -> Optional[Z1KernelResult]:
    """Dual formula: identity on top, base cokernel of the bottom below."""
    a = pw.base
    g, g0, x, y = pw.squares[sq]
    c_bot = pw.cokernels[g0]
    new_obj = a.compose(c_bot.arrow, y)
    cok = _sq_id(a.id_of(a.dom(y)), c_bot.arrow, y, new_obj)
    if cok not in pw.squares:
        return None
    med = verify_z1_cokernel(pw.arr, pw.z1_lambda, sq, cok)
    if med is None:
        return None
    return Z1KernelResult(sq, new_obj, cok, med)


def _verify_pointed_formulas(pw: PointedWorkspace, deep: bool) -> list[str]:
    """Check the explicit kernel/cokernel formulas; against brute-force
    search everywhere when small, on a deterministic sample otherwise.
    """
    sqs = sorted(pw.squares, key=pw.arr.arr_index)
    sample = sqs if deep else sqs[:: max(1, len(sqs) // 40)]
    for sq in sample:
        k = z1_lambda_kernel(pw, sq)
        if k is None:
            return [f"kernel formula fails on {sq}"]
        c = z1_lambda_cokernel(pw, sq)
        if c is None:
            return [f"cokernel formula fails on {sq}"]
        if deep:
            bk = z1_kernel(pw.arr, pw.z1_lambda, sq)
            bc = z1_cokernel(pw.arr, pw.z1_lambda, sq)
            if bk is None or bc is None:
                return [f"brute-force search disagrees on {sq}"]
    return []


@dataclass(frozen=True)
class PointedLift:
    t_lambda: frozenset[str]
    f_lambda: frozenset[str]
    verdict: Z1TTVerdict = field(hash=False)
    induced_flag: bool = False


def lift_pointed_tt(pw: PointedWorkspace, t_objs, f_objs) -> PointedLift:
    """Lift a base zero-ideal torsion theory to the arrow category by
    codomain membership; the presentation of each object is assembled
    from the base presentation of its codomain and handed to the checker
    as a hint (verified there, not trusted).
    """
    a = pw.base
    base_verdict = check_z1_torsion_theory(a, pw.z1_zero, t_objs, f_objs)
    if not base_verdict.z1_tt:
        raise FinCategoryError(
            f"input pair is not a torsion theory on the base: {base_verdict.witness}"
        )
    t_objs, f_objs = frozenset(t_objs), frozenset(f_objs)
    t_lambda = frozenset(x for x in pw.arr.objects if a.cod(x) in t_objs)
    f_lambda = frozenset(x for x in pw.arr.objects if a.cod(x) in f_objs)
    hints: dict[str, tuple[str, str]] = {}
    for x in pw.arr.objects:
        bp = base_verdict.presentations[a.cod(x)]
        f_sq = pw.square(
            a.id_of(a.dom(x)), bp.f_arrow, x, a.compose(bp.f_arrow, x)
        )
        fk = z1_lambda_kernel(pw, f_sq)
        if fk is None:
            raise FinCategoryError(f"no lifted presentation at {x}")
        hints[x] = (fk.arrow, f_sq)
    verdict = check_z1_torsion_theory(
        pw.arr, pw.z1_lambda, t_lambda, f_lambda, presentation_hints=hints
    )
    induced = True
    for x in t_lambda:
        x0 = a.cod(x)
        for y in f_lambda:
            y0 = a.cod(y)
            for h in a.hom(x0, y0):
                if h != pw.zero_arrow[(x0, y0)]:
                    induced = False
                    break
            if not induced:
                break
        if not induced:
            break
    return PointedLift(t_lambda, f_lambda, verdict, induced)


def induced_flag_for(pw: PointedWorkspace, t_lambda, f_lambda) -> bool:
    """Whether a torsion pair on the arrow category comes from the base:
    between bottoms of torsion and free objects only the zero arrow exists.
    """
    a = pw.base
    for x in t_lambda:
        for y in f_lambda:
            x0, y0 = a.cod(x), a.cod(y)
            for h in a.hom(x0, y0):
                if h != pw.zero_arrow[(x0, y0)]:
                    return False
    return True
