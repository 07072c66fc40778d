"""Factorization systems and their correspondence with torsion theories.

A factorization system on a finite category is a pair of arrow classes
(E, M), each stable under composition with isomorphisms, such that every
arrow factors as an E-arrow followed by an M-arrow and every E-arrow
lifts against every M-arrow along commuting squares.  When the diagonal
filler is unique the system is orthogonal; when it merely exists, weakly
orthogonal.  Seen as object classes of the arrow category, (E, M) is
exactly a torsion theory for the diagonal structure: the verification
ladder below replays that correspondence rung by rung, together with its
proper, quasi-proper, and ideal-relative refinements.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .arrowcat import ArrWorkspace, build_arr
from .core import (
    FinCategory,
    FinCategoryError,
    classify_arrow,
    find_distinguished_objects,
)
from .hlimits import search_homotopy_cokernel
from .torsion import (
    TorsionPair,
    check_torsion_theory,
    check_z1_torsion_theory,
    enumerate_torsion_theories,
    enumerate_z1_torsion_theories,
    z1_cokernel,
)

FS_CAP = 16  # arrows in the base; enumeration is exponential in orbit count


@dataclass(frozen=True)
class FactorizationSystem:
    e_class: frozenset[str]
    m_class: frozenset[str]
    level: str  # orthogonal | weak
    proper: bool = False
    quasi_proper: bool = False

    def classes(self) -> tuple[frozenset[str], frozenset[str]]:
        return self.e_class, self.m_class


@dataclass(frozen=True)
class Factorization:
    e_part: str
    mid_object: str
    m_part: str


@dataclass(frozen=True)
class LiftVerdict:
    ok: bool
    counterexample: Optional[str] = None


@dataclass(frozen=True)
class FSVerdict:
    level: str  # orthogonal | weak | none
    proper: bool
    quasi_proper: bool
    witness: Optional[str] = None


def check_orthogonal(
    cat: FinCategory, e: str, m: str, unique: bool = True
) -> LiftVerdict:
    """Diagonal fillers for every commuting square from e to m; the first
    square with no filler (or several, when uniqueness is asked) is the
    counterexample.
    """
    ed, ec = cat.arrows[e]
    md, mc = cat.arrows[m]
    for h in cat.hom(ed, md):
        for h0 in cat.hom(ec, mc):
            if cat.compose(m, h) != cat.compose(h0, e):
                continue
            diags = [
                l
                for l in cat.hom(ec, md)
                if cat.compose(l, e) == h and cat.compose(m, l) == h0
            ]
            if len(diags) == 0 or (unique and len(diags) > 1):
                return LiftVerdict(
                    False,
                    f"square ({h}, {h0}) from {e} to {m} "
                    f"has {len(diags)} diagonals",
                )
    return LiftVerdict(True)


def factor_arrow(
    cat: FinCategory, fs: FactorizationSystem, x: str
) -> list[Factorization]:
    """All (e, m)-factorizations of x through every mid object, in
    declaration order.  The system must have been verified first.
    """
    if fs.level not in ("orthogonal", "weak"):
        raise FinCategoryError(f"factorization system not verified: {fs.level}")
    xd, xc = cat.arrows[x]
    out = []
    for mid in cat.objects:
        for e in cat.hom(xd, mid):
            if e not in fs.e_class:
                continue
            for m in cat.hom(mid, xc):
                if m in fs.m_class and cat.compose(m, e) == x:
                    out.append(Factorization(e, mid, m))
    return out


def _iso_stability_witness(cat: FinCategory, cls: frozenset[str]) -> Optional[str]:
    extra = cat.iso_close_arrows(cls) - cls
    if extra:
        return min(extra, key=cat.arr_index)
    return None


def _quasi_proper(
    cat: FinCategory,
    e_class: frozenset[str],
    m_class: frozenset[str],
    w: ArrWorkspace,
) -> bool:
    """Units on E-arrows epi and counits on M-arrows mono in the arrow
    category; cross-checked against the per-factorization criterion that
    the two halves of every factorization square are mono resp. epi.
    """
    arr = w.arr
    direct = True
    for e in sorted(e_class, key=cat.arr_index):
        unit = w.square(e, cat.id_of(cat.cod(e)), e, cat.id_of(cat.cod(e)))
        if not classify_arrow(arr, unit).epi:
            direct = False
            break
    if direct:
        for m in sorted(m_class, key=cat.arr_index):
            counit = w.square(cat.id_of(cat.dom(m)), m, cat.id_of(cat.dom(m)), m)
            if not classify_arrow(arr, counit).mono:
                direct = False
                break
    probe = FactorizationSystem(e_class, m_class, "weak")
    split = True
    for x in cat.arrows:
        for fac in factor_arrow(cat, probe, x):
            left = w.square(
                cat.id_of(cat.dom(x)), fac.m_part, fac.e_part, x
            )
            right = w.square(fac.e_part, cat.id_of(cat.cod(x)), x, fac.m_part)
            if not (
                classify_arrow(arr, left).mono and classify_arrow(arr, right).epi
            ):
                split = False
                break
        if not split:
            break
    if direct != split:
        raise FinCategoryError(
            "unit/counit and per-factorization quasi-properness disagree"
        )
    return direct


def check_factorization_system(
    cat: FinCategory,
    e_class,
    m_class,
    workspace: Optional[ArrWorkspace] = None,
) -> FSVerdict:
    """Iso-stability, total factorizability, and all E x M lifting checks;
    the level is the strongest one satisfied.  Properness is epi/mono on
    the base, quasi-properness epi/mono on the arrow category.
    """
    e_class, m_class = frozenset(e_class), frozenset(m_class)
    for cls, tag in ((e_class, "E"), (m_class, "M")):
        bad = _iso_stability_witness(cat, cls)
        if bad is not None:
            return FSVerdict(
                "none", False, False, f"{tag} not iso-stable, misses {bad}"
            )
    probe = FactorizationSystem(e_class, m_class, "weak")
    for x in cat.arrows:
        if not factor_arrow(cat, probe, x):
            return FSVerdict("none", False, False, f"no factorization of {x}")
    level = "orthogonal"
    witness = None
    for e in sorted(e_class, key=cat.arr_index):
        for m in sorted(m_class, key=cat.arr_index):
            weak = check_orthogonal(cat, e, m, unique=False)
            if not weak.ok:
                return FSVerdict("none", False, False, weak.counterexample)
            if level == "orthogonal":
                strict = check_orthogonal(cat, e, m, unique=True)
                if not strict.ok:
                    level = "weak"
                    witness = strict.counterexample
    proper = all(classify_arrow(cat, e).epi for e in e_class) and all(
        classify_arrow(cat, m).mono for m in m_class
    )
    if workspace is None:
        workspace = build_arr(cat)
    quasi_proper = _quasi_proper(cat, e_class, m_class, workspace)
    return FSVerdict(level, proper, quasi_proper, witness)


def fs_to_htt(w: ArrWorkspace, fs: FactorizationSystem) -> TorsionPair:
    """The torsion theory on the arrow category spanned by the E-arrows
    (torsion side) and the M-arrows (free side); verified at the level
    matching the input before return.
    """
    if fs.level not in ("orthogonal", "weak"):
        raise FinCategoryError(f"factorization system not verified: {fs.level}")
    t_objs, f_objs = frozenset(fs.e_class), frozenset(fs.m_class)
    verdict = check_torsion_theory(w.h_structure, t_objs, f_objs)
    want = "strict" if fs.level == "orthogonal" else "weak"
    if verdict.level == "none" or (want == "strict" and verdict.level != "strict"):
        raise FinCategoryError(
            f"induced pair fails the torsion check: {verdict.failure}"
        )
    return TorsionPair(t_objs, f_objs, w.h_structure)


def htt_to_fs(w: ArrWorkspace, pair: TorsionPair) -> FactorizationSystem:
    """The factorization system whose classes are the torsion and free
    objects read back as base arrows; verified at the matching level.
    """
    verdict = check_torsion_theory(w.h_structure, pair.torsion, pair.free)
    if verdict.level == "none":
        raise FinCategoryError(f"pair fails the torsion check: {verdict.failure}")
    fsv = check_factorization_system(
        w.base, pair.torsion, pair.free, workspace=w
    )
    want = "orthogonal" if verdict.level == "strict" else "weak"
    if fsv.level == "none" or (want == "orthogonal" and fsv.level != "orthogonal"):
        raise FinCategoryError(
            f"induced classes fail the factorization check: {fsv.witness}"
        )
    return FactorizationSystem(
        frozenset(pair.torsion),
        frozenset(pair.free),
        fsv.level,
        fsv.proper,
        fsv.quasi_proper,
    )


def _arrow_orbits(cat: FinCategory) -> list[frozenset[str]]:
    orbits: list[frozenset[str]] = []
    seen: set[str] = set()
    for a in cat.arrows:
        if a in seen:
            continue
        orb = cat.iso_close_arrows([a])
        seen.update(orb)
        orbits.append(orb)
    return orbits


def enumerate_fs(
    cat: FinCategory,
    level: str = "orthogonal",
    cap: int = FS_CAP,
    workspace: Optional[ArrWorkspace] = None,
) -> list[FactorizationSystem]:
    """All factorization systems at the requested level, enumerated over
    iso-stable orbit unions with a lifting-matrix pre-filter, each
    candidate re-verified in full; deterministic order.
    """
    if level not in ("orthogonal", "weak"):
        raise FinCategoryError(f"unknown level {level}")
    if len(cat.arrows) > cap:
        raise FinCategoryError(
            f"category has {len(cat.arrows)} arrows, cap is {cap}"
        )
    if workspace is None:
        workspace = build_arr(cat)
    orbits = _arrow_orbits(cat)
    n = len(orbits)
    unique = level == "orthogonal"
    # orbit-level lifting matrix: bit j of lift_row[i] says orbit i lifts
    # against orbit j at the requested strength
    lift_row = [0] * n
    for i, eorb in enumerate(orbits):
        for j, morb in enumerate(orbits):
            if all(
                check_orthogonal(cat, e, m, unique).ok
                for e in eorb
                for m in morb
            ):
                lift_row[i] |= 1 << j
    out = []
    full = (1 << n) - 1
    for emask in range(1, 1 << n):
        allowed = full
        for i in range(n):
            if emask >> i & 1:
                allowed &= lift_row[i]
        mmask = allowed
        while mmask:
            e_class = frozenset(
                a for i in range(n) if emask >> i & 1 for a in orbits[i]
            )
            m_class = frozenset(
                a for j in range(n) if mmask >> j & 1 for a in orbits[j]
            )
            probe = FactorizationSystem(e_class, m_class, "weak")
            if all(factor_arrow(cat, probe, x) for x in cat.arrows):
                fsv = check_factorization_system(
                    cat, e_class, m_class, workspace=workspace
                )
                if fsv.level == "orthogonal" or (
                    level == "weak" and fsv.level == "weak"
                ):
                    out.append(
                        FactorizationSystem(
                            e_class,
                            m_class,
                            fsv.level,
                            fsv.proper,
                            fsv.quasi_proper,
                        )
                    )
            mmask = (mmask - 1) & allowed
    out.sort(
        key=lambda fs: (
            sorted(map(cat.arr_index, fs.e_class)),
            sorted(map(cat.arr_index, fs.m_class)),
        )
    )
    return out


# -- the correspondence ladder ------------------------------------------------


@dataclass(frozen=True)
class RungRecord:
    name: str
    status: str  # pass | fail | hypothesis not met
    detail: str = ""


@dataclass(frozen=True)
class CorrespondenceReport:
    category: str
    rungs: tuple[RungRecord, ...]

    @property
    def ok(self) -> bool:
        return all(r.status != "fail" for r in self.rungs)

    def rung(self, name: str) -> RungRecord:
        for r in self.rungs:
            if r.name == name:
                return r
        raise FinCategoryError(f"no rung named {name}")


def _pair_key(t_objs, f_objs) -> tuple[tuple[str, ...], tuple[str, ...]]:
    return tuple(sorted(t_objs)), tuple(sorted(f_objs))


def _bijection_rung(
    name: str,
    w: ArrWorkspace,
    systems: Sequence[FactorizationSystem],
    pairs: Sequence[TorsionPair],
) -> RungRecord:
    """Class-for-class equality of both enumerations plus double round
    trips through the two conversion maps.
    """
    sys_keys = {_pair_key(fs.e_class, fs.m_class) for fs in systems}
    pair_keys = {_pair_key(p.torsion, p.free) for p in pairs}
    if sys_keys != pair_keys:
        return RungRecord(
            name,
            "fail",
            f"{len(sys_keys)} systems vs {len(pair_keys)} theories",
        )
    for fs in systems:
        p = fs_to_htt(w, fs)
        back = htt_to_fs(w, p)
        if (back.e_class, back.m_class) != (fs.e_class, fs.m_class):
            return RungRecord(name, "fail", "round trip moved a system")
    for p in pairs:
        fs = htt_to_fs(w, p)
        back = fs_to_htt(w, fs)
        if (back.torsion, back.free) != (frozenset(p.torsion), frozenset(p.free)):
            return RungRecord(name, "fail", "round trip moved a theory")
    return RungRecord(name, "pass", f"{len(systems)} on each side")


def verify_correspondence(w: ArrWorkspace, cap: int = FS_CAP) -> CorrespondenceReport:
    """The full ladder between factorization systems on the base and
    torsion theories on the arrow category, one record per rung; rungs
    whose hypotheses (initial or terminal objects) fail are reported as
    such rather than failed.
    """
    cat = w.base
    s = w.h_structure
    dist = find_distinguished_objects(cat)
    has_initial = dist.initial is not None
    has_terminal = dist.terminal is not None
    rungs: list[RungRecord] = []

    ofs = enumerate_fs(cat, "orthogonal", cap=cap, workspace=w)
    wfs = enumerate_fs(cat, "weak", cap=cap, workspace=w)
    tts = enumerate_torsion_theories(s, "strict", cap=cap)
    wtts = enumerate_torsion_theories(s, "weak", cap=cap)

    rungs.append(_bijection_rung("orthogonal-matches-strict", w, ofs, tts))
    rungs.append(_bijection_rung("weak-matches-weak", w, wfs, wtts))

    ids = {cat.id_of(x) for x in cat.objects}
    missing = [
        fs
        for fs in ofs
        if not (ids <= fs.e_class and ids <= fs.m_class)
    ]
    rungs.append(
        RungRecord(
            "identities-in-both-classes",
            "fail" if missing else "pass",
            f"{len(ofs)} systems checked",
        )
    )

    bad = None
    for sq in w.arr.arrows:
        q = search_homotopy_cokernel(s, sq)
        if q is not None:
            bottom = w.squares[q.arrow][1]
            if not classify_arrow(cat, bottom).iso:
                bad = f"cokernel of {sq} has non-invertible bottom {bottom}"
                break
    rungs.append(
        RungRecord(
            "cokernel-bottom-inverted", "fail" if bad else "pass", bad or ""
        )
    )

    bad = None
    for sq in w.arr.arrows:
        q = z1_cokernel(w.arr, w.z1, sq)
        if q is not None:
            bottom = w.squares[q.arrow][1]
            if not classify_arrow(cat, bottom).iso:
                bad = f"ideal cokernel of {sq} has non-invertible bottom {bottom}"
                break
    rungs.append(
        RungRecord(
            "ideal-cokernel-bottom-inverted",
            "fail" if bad else "pass",
            bad or "",
        )
    )

    offenders = [fs for fs in ofs if fs.proper and not fs.quasi_proper]
    rungs.append(
        RungRecord(
            "proper-implies-quasi-proper",
            "fail" if offenders else "pass",
            f"{sum(fs.proper for fs in ofs)} proper systems",
        )
    )

    if has_initial or has_terminal:
        offenders = [
            fs for fs in wfs if fs.quasi_proper and fs.level != "orthogonal"
        ]
        rungs.append(
            RungRecord(
                "quasi-proper-weak-is-orthogonal",
                "fail" if offenders else "pass",
                f"{sum(fs.quasi_proper for fs in wfs)} quasi-proper systems",
            )
        )
    else:
        rungs.append(
            RungRecord(
                "quasi-proper-weak-is-orthogonal",
                "hypothesis not met",
                "no initial or terminal object",
            )
        )

    if has_initial and has_terminal:
        offenders = [
            fs
            for fs in wfs
            if fs.quasi_proper and not (fs.level == "orthogonal" and fs.proper)
        ]
        rungs.append(
            RungRecord(
                "quasi-proper-weak-is-proper",
                "fail" if offenders else "pass",
                f"{sum(fs.quasi_proper for fs in wfs)} quasi-proper systems",
            )
        )
    else:
        rungs.append(
            RungRecord(
                "quasi-proper-weak-is-proper",
                "hypothesis not met",
                "needs both an initial and a terminal object",
            )
        )

    qp_wfs = {
        _pair_key(fs.e_class, fs.m_class) for fs in wfs if fs.quasi_proper
    }
    qp_wtts = {
        _pair_key(p.torsion, p.free)
        for p in wtts
        if check_torsion_theory(s, p.torsion, p.free).quasi_proper
    }
    rungs.append(
        RungRecord(
            "quasi-proper-weak-matches",
            "pass" if qp_wfs == qp_wtts else "fail",
            f"{len(qp_wfs)} on each side" if qp_wfs == qp_wtts else "mismatch",
        )
    )
    qp_ofs = {
        _pair_key(fs.e_class, fs.m_class) for fs in ofs if fs.quasi_proper
    }
    qp_tts = {
        _pair_key(p.torsion, p.free)
        for p in tts
        if check_torsion_theory(s, p.torsion, p.free).quasi_proper
    }
    rungs.append(
        RungRecord(
            "quasi-proper-orthogonal-matches",
            "pass" if qp_ofs == qp_tts else "fail",
            f"{len(qp_ofs)} on each side" if qp_ofs == qp_tts else "mismatch",
        )
    )

    ztts = enumerate_z1_torsion_theories(w.arr, w.z1, cap=cap)
    zkeys = {_pair_key(t, f) for t, f in ztts}

    bad = None
    for key in sorted(qp_wtts):
        if key not in zkeys:
            bad = f"quasi-proper theory {key[0]} | {key[1]} not ideal-relative"
            break
    rungs.append(
        RungRecord(
            "quasi-proper-gives-ideal-theory",
            "fail" if bad else "pass",
            bad or f"{len(qp_wtts)} theories transferred",
        )
    )

    bad = None
    for t, f in ztts:
        v = check_torsion_theory(s, t, f)
        if v.level == "none" or not v.quasi_proper:
            bad = f"ideal theory {_pair_key(t, f)} is not quasi-proper weak"
            break
    rungs.append(
        RungRecord(
            "ideal-theory-gives-quasi-proper-weak",
            "fail" if bad else "pass",
            bad or f"{len(ztts)} theories transferred",
        )
    )

    if has_initial or has_terminal:
        bad = None
        for t, f in ztts:
            v = check_torsion_theory(s, t, f)
            if v.level != "strict" or not v.quasi_proper:
                bad = f"ideal theory {_pair_key(t, f)} does not upgrade"
                break
        rungs.append(
            RungRecord(
                "ideal-theory-upgrades-to-strict",
                "fail" if bad else "pass",
                bad or f"{len(ztts)} theories upgraded",
            )
        )
    else:
        rungs.append(
            RungRecord(
                "ideal-theory-upgrades-to-strict",
                "hypothesis not met",
                "no initial or terminal object",
            )
        )

    if has_initial and has_terminal:
        proper_keys = {
            _pair_key(fs.e_class, fs.m_class) for fs in ofs if fs.proper
        }
        rungs.append(
            RungRecord(
                "proper-matches-ideal-theories",
                "pass" if proper_keys == zkeys else "fail",
                f"{len(proper_keys)} on each side"
                if proper_keys == zkeys
                else "mismatch",
            )
        )
    else:
        rungs.append(
            RungRecord(
                "proper-matches-ideal-theories",
                "hypothesis not met",
                "needs both an initial and a terminal object",
            )
        )

    return CorrespondenceReport(cat.name, tuple(rungs))
