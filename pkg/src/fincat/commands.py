"""Command dispatch over a parsed workspace.

Every command produces a Report; nothing is printed here.  Derived
structures are referenced as `h(<category>)` (the diagonal structure on
the arrow category) or `discrete(<ideal>)`; they are built on demand and
cached per invocation.  The enumeration cap can be overridden with the
FINCAT_CAP environment variable or a `--cap` flag.
"""

from __future__ import annotations

import os
import re
from typing import Optional

from .arrowcat import ArrWorkspace, build_arr, build_pointed, lift_pointed_tt
from .core import (
    FinCategory,
    FinCategoryError,
    classify_arrow,
    find_distinguished_objects,
    validate_category,
)
from .dsl import Workspace
from .factorization import (
    FactorizationSystem,
    check_factorization_system,
    enumerate_fs,
    fs_to_htt,
    htt_to_fs,
    verify_correspondence,
)
from .hlimits import check_strong, kernel_via_pullback, search_homotopy_kernel
from .nullhom import NullStructure, discrete_of, validate_structure
from .report import (
    EXIT_CAP_EXCEEDED,
    EXIT_INPUT_ERROR,
    CheckRecord,
    Report,
    make_report,
)
from .torsion import TorsionPair, check_torsion_theory, enumerate_torsion_theories

_H_REF = re.compile(r"^h\((?P<cat>[A-Za-z0-9_-]+)\)$")
_D_REF = re.compile(r"^discrete\((?P<ideal>[A-Za-z0-9_-]+)\)$")

COMMANDS = (
    "validate",
    "analyze",
    "arr",
    "kernel",
    "check-htt",
    "check-fs",
    "convert",
    "enumerate",
    "ladder",
    "pointed",
)


class CommandInputError(FinCategoryError):
    pass


def _usage() -> str:
    return "commands: " + ", ".join(COMMANDS)


def _default_cap(flags: dict) -> int:
    if "cap" in flags:
        return int(flags["cap"])
    env = os.environ.get("FINCAT_CAP")
    return int(env) if env else 16


def _split_flags(args: list[str]) -> tuple[list[str], dict]:
    """Positional arguments and --flag [value] pairs."""
    valued = {"--level", "--cap", "--lift"}
    pos: list[str] = []
    flags: dict = {}
    i = 0
    while i < len(args):
        a = args[i]
        if a.startswith("--"):
            if a in valued:
                if i + 1 >= len(args):
                    raise CommandInputError(f"flag {a} needs a value")
                flags[a[2:]] = args[i + 1]
                i += 2
            else:
                flags[a[2:]] = True
                i += 1
        else:
            pos.append(a)
            i += 1
    return pos, flags


class _Session:
    """Per-invocation cache of derived workspaces and structures."""

    def __init__(self, ws: Workspace):
        self.ws = ws
        self._arr: dict[str, ArrWorkspace] = {}

    def category(self, name: str) -> FinCategory:
        cat = self.ws.categories.get(name)
        if cat is None:
            raise CommandInputError(f"unknown category {name}")
        return cat

    def arr_workspace(self, name: str) -> ArrWorkspace:
        if name not in self._arr:
            self._arr[name] = build_arr(self.category(name))
        return self._arr[name]

    def structure(self, ref: str) -> NullStructure:
        got = self.ws.structures.get(ref)
        if got is not None:
            return got
        m = _H_REF.match(ref)
        if m:
            return self.arr_workspace(m.group("cat")).h_structure
        m = _D_REF.match(ref)
        if m:
            decl = self.ws.ideals.get(m.group("ideal"))
            if decl is None:
                raise CommandInputError(f"unknown ideal {m.group('ideal')}")
            return discrete_of(
                self.category(decl.category), decl.arrows, name=ref
            )
        raise CommandInputError(
            f"unknown structure {ref}; use a declared name, h(<category>), "
            "or discrete(<ideal>)"
        )


def run_command(ws: Workspace, argv: list[str]) -> Report:
    """Dispatch one command line against a workspace; never raises for
    user-level problems, encoding them in the report status instead.
    """
    if not argv:
        return make_report(
            ("?",),
            [CheckRecord("usage", "fail", (_usage(),))],
            status=EXIT_INPUT_ERROR,
        )
    cmd, rest = argv[0], list(argv[1:])
    try:
        pos, flags = _split_flags(rest)
        handler = _HANDLERS.get(cmd)
        if handler is None:
            raise CommandInputError(f"unknown command {cmd}; {_usage()}")
        checks = handler(_Session(ws), pos, flags)
        return make_report(argv, checks)
    except CommandInputError as exc:
        return make_report(
            argv,
            [CheckRecord("input", "fail", (str(exc),))],
            status=EXIT_INPUT_ERROR,
        )
    except FinCategoryError as exc:
        msg = str(exc)
        status = EXIT_CAP_EXCEEDED if "cap" in msg else EXIT_INPUT_ERROR
        return make_report(
            argv, [CheckRecord("error", "fail", (msg,))], status=status
        )


def _need(pos: list[str], n: int, usage: str) -> None:
    if len(pos) != n:
        raise CommandInputError(f"expected {usage}")


def _cls(names) -> str:
    return "{" + " ".join(sorted(names)) + "}"


def _cmd_validate(s: _Session, pos, flags):
    _need(pos, 0, "validate")
    checks = []
    for name, cat in s.ws.categories.items():
        problems = validate_category(cat)
        checks.append(
            CheckRecord(
                f"category:{name}",
                "fail" if problems else "pass",
                tuple(problems[:5]),
            )
        )
    for name, st in s.ws.structures.items():
        problems = validate_structure(st)
        checks.append(
            CheckRecord(
                f"structure:{name}",
                "fail" if problems else "pass",
                tuple(problems[:5]),
            )
        )
    if not checks:
        checks.append(CheckRecord("workspace", "info", ("empty",)))
    return checks


def _cmd_analyze(s: _Session, pos, flags):
    _need(pos, 1, "analyze <category>")
    cat = s.category(pos[0])
    checks = []
    dist = find_distinguished_objects(cat)
    checks.append(
        CheckRecord(
            "distinguished",
            "info",
            (
                f"initial={dist.initial or '-'}",
                f"terminal={dist.terminal or '-'}",
                f"zero={dist.zero or '-'}",
            ),
        )
    )
    for a in cat.arrows:
        c = classify_arrow(cat, a)
        tags = [
            t
            for t, on in (
                ("mono", c.mono),
                ("epi", c.epi),
                ("split-mono", c.split_mono),
                ("split-epi", c.split_epi),
                ("iso", c.iso),
            )
            if on
        ]
        checks.append(CheckRecord(f"classify:{a}", "info", tuple(tags) or ("plain",)))
    return checks


def _cmd_arr(s: _Session, pos, flags):
    _need(pos, 1, "arr <category>")
    w = s.arr_workspace(pos[0])
    return [
        CheckRecord("arr:squares", "info", (str(len(w.arr.arrows)),)),
        CheckRecord("arr:objects", "info", (str(len(w.arr.objects)),)),
        CheckRecord(
            "arr:ideal",
            "info",
            (
                f"arrows={len(w.z1.arrows)}",
                f"trivial-objects={len(w.z1.trivial_objects)}",
                f"closed={w.z1.closed}",
            ),
        ),
        CheckRecord(
            "arr:verified", "pass", ("deep" if w.verified else "light",)
        ),
    ]


def _cmd_kernel(s: _Session, pos, flags):
    _need(pos, 2, "kernel <structure> <arrow> [--via-pullback] [--strong]")
    st = s.structure(pos[0])
    g = pos[1]
    if g not in st.base.arrows:
        raise CommandInputError(f"unknown arrow {g} in {st.base.name}")
    if flags.get("via-pullback"):
        k = kernel_via_pullback(st, g)
        how = "via-pullback"
    else:
        k = search_homotopy_kernel(st, g)
        how = "search"
    if k is None:
        return [CheckRecord("kernel", "fail", (f"no kernel of {g} ({how})",))]
    checks = [
        CheckRecord(
            "kernel",
            "pass",
            (f"object={k.object}", f"arrow={k.arrow}", f"witness={k.witness}"),
        )
    ]
    if flags.get("strong"):
        v = check_strong(st, k)
        checks.append(
            CheckRecord(
                "kernel:strong",
                "pass" if v.flag else "fail",
                (v.counterexample,) if v.counterexample else (),
            )
        )
    return checks


def _get_pair(s: _Session, name: str):
    p = s.ws.pairs.get(name)
    if p is None:
        raise CommandInputError(f"unknown pair {name}")
    return p


def _get_system(s: _Session, name: str):
    sy = s.ws.systems.get(name)
    if sy is None:
        raise CommandInputError(f"unknown system {name}")
    return sy


def _cmd_check_htt(s: _Session, pos, flags):
    _need(pos, 2, "check-htt <structure> <pair> [--weak] [--quasi-proper]")
    ref, pair_name = pos
    p = _get_pair(s, pair_name)
    if p.target != ref:
        raise CommandInputError(
            f"pair {pair_name} is declared on {p.target}, not {ref}"
        )
    st = s.structure(ref)
    v = check_torsion_theory(st, p.torsion, p.free)
    want_weak = bool(flags.get("weak"))
    ok = v.level == "strict" or (want_weak and v.level == "weak")
    witnesses = [f"level={v.level}"]
    if v.failure:
        witnesses.append(v.failure)
    checks = [CheckRecord("torsion-theory", "pass" if ok else "fail", tuple(witnesses))]
    if flags.get("quasi-proper"):
        checks.append(
            CheckRecord(
                "quasi-proper",
                "pass" if v.quasi_proper else "fail",
                (),
            )
        )
    return checks


def _cmd_check_fs(s: _Session, pos, flags):
    _need(pos, 2, "check-fs <category> <system> [--weak]")
    catname, sys_name = pos
    sy = _get_system(s, sys_name)
    if sy.category != catname:
        raise CommandInputError(
            f"system {sys_name} is declared on {sy.category}, not {catname}"
        )
    w = s.arr_workspace(catname)
    fsv = check_factorization_system(
        w.base, sy.e_class, sy.m_class, workspace=w
    )
    want_weak = bool(flags.get("weak"))
    ok = fsv.level == "orthogonal" or (want_weak and fsv.level == "weak")
    witnesses = [f"level={fsv.level}"]
    if fsv.witness:
        witnesses.append(fsv.witness)
    return [
        CheckRecord("factorization-system", "pass" if ok else "fail", tuple(witnesses)),
        CheckRecord("proper", "info", (str(fsv.proper).lower(),)),
        CheckRecord("quasi-proper", "info", (str(fsv.quasi_proper).lower(),)),
    ]


def _cmd_convert(s: _Session, pos, flags):
    if not pos:
        raise CommandInputError("expected convert fs-to-htt <system> | htt-to-fs <pair>")
    direction = pos[0]
    if direction == "fs-to-htt":
        _need(pos, 2, "convert fs-to-htt <system>")
        sy = _get_system(s, pos[1])
        w = s.arr_workspace(sy.category)
        fsv = check_factorization_system(w.base, sy.e_class, sy.m_class, workspace=w)
        if fsv.level == "none":
            return [
                CheckRecord(
                    "convert", "fail", (f"not a factorization system: {fsv.witness}",)
                )
            ]
        fs = FactorizationSystem(
            sy.e_class, sy.m_class, fsv.level, fsv.proper, fsv.quasi_proper
        )
        pair = fs_to_htt(w, fs)
        return [
            CheckRecord(
                "convert",
                "pass",
                (f"torsion={_cls(pair.torsion)}", f"free={_cls(pair.free)}"),
            )
        ]
    if direction == "htt-to-fs":
        _need(pos, 2, "convert htt-to-fs <pair>")
        p = _get_pair(s, pos[1])
        m = _H_REF.match(p.target)
        if not m:
            raise CommandInputError(
                f"pair {pos[1]} must target h(<category>) for this conversion"
            )
        w = s.arr_workspace(m.group("cat"))
        fs = htt_to_fs(w, TorsionPair(p.torsion, p.free, w.h_structure))
        return [
            CheckRecord(
                "convert",
                "pass",
                (
                    f"e={_cls(fs.e_class)}",
                    f"m={_cls(fs.m_class)}",
                    f"level={fs.level}",
                ),
            )
        ]
    raise CommandInputError(f"unknown conversion {direction}")


def _cmd_enumerate(s: _Session, pos, flags):
    if not pos:
        raise CommandInputError("expected enumerate fs <category> | htt <structure>")
    kind = pos[0]
    cap = _default_cap(flags)
    if kind == "fs":
        _need(pos, 2, "enumerate fs <category> [--level L] [--cap N]")
        level = flags.get("level", "orthogonal")
        w = s.arr_workspace(pos[1])
        systems = enumerate_fs(w.base, level, cap=cap, workspace=w)
        checks = [CheckRecord("count", "info", (str(len(systems)),))]
        for i, fs in enumerate(systems):
            tags = [f"e={_cls(fs.e_class)}", f"m={_cls(fs.m_class)}", f"level={fs.level}"]
            if fs.proper:
                tags.append("proper")
            if fs.quasi_proper:
                tags.append("quasi-proper")
            checks.append(CheckRecord(f"fs[{i}]", "info", tuple(tags)))
        return checks
    if kind == "htt":
        _need(pos, 2, "enumerate htt <structure> [--level L] [--cap N]")
        level = flags.get("level", "strict")
        st = s.structure(pos[1])
        pairs = enumerate_torsion_theories(st, level, cap=cap)
        checks = [CheckRecord("count", "info", (str(len(pairs)),))]
        for i, p in enumerate(pairs):
            checks.append(
                CheckRecord(
                    f"htt[{i}]",
                    "info",
                    (f"torsion={_cls(p.torsion)}", f"free={_cls(p.free)}"),
                )
            )
        return checks
    raise CommandInputError(f"unknown enumeration {kind}")


def _cmd_ladder(s: _Session, pos, flags):
    _need(pos, 1, "ladder <category> [--cap N]")
    w = s.arr_workspace(pos[0])
    report = verify_correspondence(w, cap=_default_cap(flags))
    return [
        CheckRecord(r.name, r.status, (r.detail,) if r.detail else ())
        for r in report.rungs
    ]


def _cmd_pointed(s: _Session, pos, flags):
    _need(pos, 1, "pointed <category> [--lift <pair>]")
    cat = s.category(pos[0])
    built = build_pointed(cat)
    if built.workspace is None:
        return [CheckRecord("pointed:build", "fail", (built.reason,))]
    pw = built.workspace
    checks = [
        CheckRecord(
            "pointed:build",
            "pass",
            (
                f"zero={pw.zero}",
                f"squares={len(pw.arr.arrows)}",
                f"zero-bottom-ideal={len(pw.z1_lambda.arrows)}",
            ),
        )
    ]
    lift_name = flags.get("lift")
    if lift_name:
        p = _get_pair(s, lift_name)
        if p.target != pos[0]:
            raise CommandInputError(
                f"pair {lift_name} is declared on {p.target}, not {pos[0]}"
            )
        lift = lift_pointed_tt(pw, p.torsion, p.free)
        checks.append(
            CheckRecord(
                "pointed:lift",
                "pass" if lift.verdict.z1_tt else "fail",
                (
                    f"torsion={len(lift.t_lambda)}",
                    f"free={len(lift.f_lambda)}",
                    f"induced={str(lift.induced_flag).lower()}",
                ),
            )
        )
    return checks


_HANDLERS = {
    "validate": _cmd_validate,
    "analyze": _cmd_analyze,
    "arr": _cmd_arr,
    "kernel": _cmd_kernel,
    "check-htt": _cmd_check_htt,
    "check-fs": _cmd_check_fs,
    "convert": _cmd_convert,
    "enumerate": _cmd_enumerate,
    "ladder": _cmd_ladder,
    "pointed": _cmd_pointed,
}
