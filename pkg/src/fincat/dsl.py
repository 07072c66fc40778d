"""Line-oriented workspace format.

One declaration per line, `#` starts a comment, blank lines separate
blocks.  Categories list objects, arrows and composites (identities are
implicit and named `id_<object>`; composites of non-identity arrows must
be spelled out, never inferred).  Nullhomotopy structures list homotopy
tokens per arrow and both whisker tables (identity whiskers implicit).
Ideals, torsion pairs, and factorization systems are named subsets with
a target reference.  Parsing either returns a fully validated workspace
or raises with every error found, each carrying its line number and a
one-line hint; class inputs are closed under isomorphism with a warning
when that adds members.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Optional

from .core import FinCategory, FinCategoryError, relabel, validate_category
from .nullhom import NullStructure, validate_structure


@dataclass(frozen=True)
class SourceError:
    line: int
    message: str
    hint: str

    def __str__(self) -> str:
        return f"line {self.line}: {self.message} ({self.hint})"


class WorkspaceParseError(FinCategoryError):
    def __init__(self, errors: list[SourceError]):
        self.errors = errors
        super().__init__("; ".join(str(e) for e in errors))


@dataclass(frozen=True)
class IdealDecl:
    category: str
    arrows: frozenset[str]


@dataclass(frozen=True)
class PairDecl:
    target: str  # structure name, category name, or h(<category>)
    torsion: frozenset[str]
    free: frozenset[str]


@dataclass(frozen=True)
class SystemDecl:
    category: str
    e_class: frozenset[str]
    m_class: frozenset[str]


@dataclass(frozen=True)
class Workspace:
    categories: Mapping[str, FinCategory]
    structures: Mapping[str, NullStructure]
    ideals: Mapping[str, IdealDecl]
    pairs: Mapping[str, PairDecl]
    systems: Mapping[str, SystemDecl]
    spans: Mapping[str, int] = field(default_factory=dict)
    warnings: tuple[str, ...] = ()


_NAME = re.compile(r"^[A-Za-z0-9_.()-]+$")
_H_REF = re.compile(r"^h\((?P<cat>[A-Za-z0-9_-]+)\)$")


def _split_braces(rest: str) -> Optional[list[str]]:
    """Tokens of a `{a b c}` group, or None when malformed."""
    rest = rest.strip()
    if not (rest.startswith("{") and rest.endswith("}")):
        return None
    return rest[1:-1].split()


class _CategoryBlock:
    def __init__(self, name: str, line: int):
        self.name = name
        self.line = line
        self.objects: list[str] = []
        self.arrows: dict[str, tuple[str, str]] = {}
        self.arrow_lines: dict[str, int] = {}
        self.comp: dict[tuple[str, str], str] = {}


class _StructureBlock:
    def __init__(self, name: str, category: str, line: int):
        self.name = name
        self.category = category
        self.line = line
        self.homotopies: dict[str, tuple[str, ...]] = {}
        self.wl: dict[tuple[str, str], str] = {}
        self.wr: dict[tuple[str, str], str] = {}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.errors: list[SourceError] = []
        self.warnings: list[str] = []
        self.categories: dict[str, FinCategory] = {}
        self.structures: dict[str, NullStructure] = {}
        self.ideals: dict[str, IdealDecl] = {}
        self.pairs: dict[str, PairDecl] = {}
        self.systems: dict[str, SystemDecl] = {}
        self.spans: dict[str, int] = {}
        self.block: Optional[object] = None

    def err(self, line: int, message: str, hint: str) -> None:
        self.errors.append(SourceError(line, message, hint))

    def new_name(self, name: str, line: int) -> bool:
        if name in self.spans:
            self.err(line, f"duplicate name {name}", "names are global")
            return False
        self.spans[name] = line
        return True

    # -- block closers -----------------------------------------------------

    def close_block(self) -> None:
        if isinstance(self.block, _CategoryBlock):
            self.finish_category(self.block)
        elif isinstance(self.block, _StructureBlock):
            self.finish_structure(self.block)
        self.block = None

    def finish_category(self, b: _CategoryBlock) -> None:
        if not b.objects:
            self.err(b.line, f"category {b.name} has no objects", "add an objects line")
            return
        arrows = dict(b.arrows)
        identity = {}
        for x in b.objects:
            idx = f"id_{x}"
            if idx in arrows:
                self.err(
                    b.line,
                    f"arrow name {idx} is reserved",
                    "identities are implicit",
                )
                return
            arrows[idx] = (x, x)
            identity[x] = idx
        comp = dict(b.comp)
        ok = True
        for g, (gd, gc) in arrows.items():
            for f, (fd, fc) in arrows.items():
                if fc != gd:
                    continue
                if g in identity.values():
                    comp[(g, f)] = f
                elif f in identity.values():
                    comp[(g, f)] = g
                elif (g, f) not in comp:
                    self.err(
                        b.line,
                        f"missing composite {g} after {f} in {b.name}",
                        "add a compose line; composites are never inferred",
                    )
                    ok = False
        if not ok:
            return
        cat = FinCategory(b.name, b.objects, arrows, identity, comp=comp)
        for problem in validate_category(cat):
            self.err(b.line, f"category {b.name}: {problem}", "fix the tables")
            ok = False
        if ok:
            self.categories[b.name] = cat

    def finish_structure(self, b: _StructureBlock) -> None:
        cat = self.categories.get(b.category)
        if cat is None:
            return
        wl = dict(b.wl)
        wr = dict(b.wr)
        for g, toks in b.homotopies.items():
            x, y = cat.arrows[g]
            for p in toks:
                wl.setdefault((cat.id_of(y), p), p)
                wr.setdefault((p, cat.id_of(x)), p)
        s = NullStructure(b.name, cat, b.homotopies, wl, wr)
        try:
            problems = validate_structure(s)
        except FinCategoryError as exc:
            problems = [str(exc)]
        if problems:
            self.err(
                b.line,
                f"structure {b.name}: {problems[0]}",
                "whisker tables must be total and lawful",
            )
            return
        self.structures[b.name] = s

    # -- reference helpers -------------------------------------------------

    def resolve_member_universe(self, target: str, line: int) -> Optional[frozenset[str]]:
        """The legal member names for a pair on ``target``."""
        if target in self.structures:
            return frozenset(self.structures[target].base.objects)
        if target in self.categories:
            return frozenset(self.categories[target].objects)
        m = _H_REF.match(target)
        if m and m.group("cat") in self.categories:
            # objects of the arrow category are the base arrows
            return frozenset(self.categories[m.group("cat")].arrows)
        self.err(line, f"unknown target {target}", "declare it first or use h(<category>)")
        return None

    def check_members(
        self, members: list[str], universe: frozenset[str], line: int, what: str
    ) -> Optional[frozenset[str]]:
        out = []
        for m in members:
            if m not in universe:
                self.err(line, f"unknown {what} {m}", "check the spelling")
                return None
            out.append(m)
        return frozenset(out)

    # -- line dispatch -----------------------------------------------------

    def parse(self) -> Workspace:
        for lineno, raw in enumerate(self.text.splitlines(), start=1):
            line = raw.split("#", 1)[0].rstrip()
            if not line.strip():
                continue
            try:
                self.dispatch(lineno, line.strip())
            except FinCategoryError as exc:
                self.err(lineno, str(exc), "fix the declaration")
        self.close_block()
        if self.errors:
            raise WorkspaceParseError(self.errors)
        return Workspace(
            self.categories,
            self.structures,
            self.ideals,
            self.pairs,
            self.systems,
            self.spans,
            tuple(self.warnings),
        )

    def dispatch(self, n: int, line: str) -> None:
        words = line.split()
        head = words[0]
        if head == "category":
            self.close_block()
            if len(words) != 2 or not _NAME.match(words[1]):
                self.err(n, "malformed category line", "category NAME")
                return
            if self.new_name(words[1], n):
                self.block = _CategoryBlock(words[1], n)
            return
        if head == "nullhomotopy":
            self.close_block()
            if len(words) != 4 or words[2] != "on":
                self.err(n, "malformed nullhomotopy line", "nullhomotopy NAME on CATEGORY")
                return
            if words[3] not in self.categories:
                self.err(n, f"unknown category {words[3]}", "declare it first")
                return
            if self.new_name(words[1], n):
                self.block = _StructureBlock(words[1], words[3], n)
            return
        if head in ("objects", "arrow", "compose"):
            if not isinstance(self.block, _CategoryBlock):
                self.err(n, f"{head} outside a category block", "start with category NAME")
                return
            getattr(self, f"line_{head}")(n, words, self.block)
            return
        if head in ("homotopies", "wl", "wr"):
            if not isinstance(self.block, _StructureBlock):
                self.err(n, f"{head} outside a structure block", "start with nullhomotopy NAME on CATEGORY")
                return
            getattr(self, f"line_{head}")(n, words, self.block)
            return
        if head == "ideal":
            self.close_block()
            self.line_ideal(n, line)
            return
        if head == "pair":
            self.close_block()
            self.line_pair(n, line)
            return
        if head == "system":
            self.close_block()
            self.line_system(n, line)
            return
        self.err(n, f"unknown declaration {head}", "see the format reference")

    def line_objects(self, n: int, words: list[str], b: _CategoryBlock) -> None:
        if len(words) < 2:
            self.err(n, "objects line needs at least one object", "objects a b c")
            return
        for x in words[1:]:
            if x in b.objects:
                self.err(n, f"duplicate object {x}", "objects are declared once")
                return
        b.objects.extend(words[1:])

    def line_arrow(self, n: int, words: list[str], b: _CategoryBlock) -> None:
        # arrow f : a -> b
        if len(words) != 6 or words[2] != ":" or words[4] != "->":
            self.err(n, "malformed arrow line", "arrow f : a -> b")
            return
        f, d, c = words[1], words[3], words[5]
        if f in b.arrows:
            self.err(n, f"duplicate arrow {f}", "arrow names are unique per category")
            return
        if d not in b.objects or c not in b.objects:
            self.err(n, f"arrow {f} references an undeclared object", "declare objects first")
            return
        b.arrows[f] = (d, c)
        b.arrow_lines[f] = n

    def line_compose(self, n: int, words: list[str], b: _CategoryBlock) -> None:
        # compose g f = h
        if len(words) != 5 or words[3] != "=":
            self.err(n, "malformed compose line", "compose g f = h")
            return
        g, f, h = words[1], words[2], words[4]

        def ends(a: str) -> Optional[tuple[str, str]]:
            if a in b.arrows:
                return b.arrows[a]
            if a.startswith("id_") and a[3:] in b.objects:
                return (a[3:], a[3:])
            return None

        ge, fe, he = ends(g), ends(f), ends(h)
        for a, e in ((g, ge), (f, fe), (h, he)):
            if e is None:
                self.err(n, f"unknown arrow {a}", "declare arrows before composing")
                return
        if fe[1] != ge[0]:
            self.err(n, f"arrows {g} after {f} are not composable", "cod(f) must equal dom(g)")
            return
        if he != (fe[0], ge[1]):
            self.err(n, f"composite {h} has the wrong endpoints", "dom(h)=dom(f), cod(h)=cod(g)")
            return
        if (g, f) in b.comp:
            self.err(n, f"duplicate composite {g} after {f}", "one compose line per pair")
            return
        b.comp[(g, f)] = h

    def line_homotopies(self, n: int, words: list[str], b: _StructureBlock) -> None:
        # homotopies f : p q
        if len(words) < 3 or words[2] != ":":
            self.err(n, "malformed homotopies line", "homotopies f : p q")
            return
        cat = self.categories[b.category]
        f = words[1]
        if f not in cat.arrows:
            self.err(n, f"unknown arrow {f}", "homotopies attach to arrows")
            return
        if f in b.homotopies:
            self.err(n, f"duplicate homotopies line for {f}", "one line per arrow")
            return
        b.homotopies[f] = tuple(words[3:])

    def line_wl(self, n: int, words: list[str], b: _StructureBlock) -> None:
        # wl h p = r
        if len(words) != 5 or words[3] != "=":
            self.err(n, "malformed wl line", "wl h p = r")
            return
        b.wl[(words[1], words[2])] = words[4]

    def line_wr(self, n: int, words: list[str], b: _StructureBlock) -> None:
        # wr p f = s
        if len(words) != 5 or words[3] != "=":
            self.err(n, "malformed wr line", "wr p f = s")
            return
        b.wr[(words[1], words[2])] = words[4]

    def line_ideal(self, n: int, line: str) -> None:
        # ideal Z on CAT = {f g}
        m = re.match(r"^ideal\s+(\S+)\s+on\s+(\S+)\s*=\s*(\{.*\})$", line)
        if not m:
            self.err(n, "malformed ideal line", "ideal Z on CAT = {f g}")
            return
        name, catname, group = m.groups()
        members = _split_braces(group)
        cat = self.categories.get(catname)
        if cat is None:
            self.err(n, f"unknown category {catname}", "declare it first")
            return
        arrs = self.check_members(members, frozenset(cat.arrows), n, "arrow")
        if arrs is None or not self.new_name(name, n):
            return
        closed = cat.iso_close_arrows(arrs)
        if closed != arrs:
            self.warnings.append(
                f"line {n}: ideal {name} closed under isomorphism "
                f"(+{len(closed - arrs)} arrows)"
            )
        self.ideals[name] = IdealDecl(catname, closed)

    def line_pair(self, n: int, line: str) -> None:
        # pair P on TARGET torsion {..} free {..}
        m = re.match(
            r"^pair\s+(\S+)\s+on\s+(\S+)\s+torsion\s*(\{[^}]*\})\s+free\s*(\{[^}]*\})$",
            line,
        )
        if not m:
            self.err(n, "malformed pair line", "pair P on TARGET torsion {..} free {..}")
            return
        name, target, tg, fg = m.groups()
        universe = self.resolve_member_universe(target, n)
        if universe is None:
            return
        t = self.check_members(_split_braces(tg), universe, n, "object")
        f = self.check_members(_split_braces(fg), universe, n, "object")
        if t is None or f is None or not self.new_name(name, n):
            return
        if target in self.categories:
            cat = self.categories[target]
            tc, fc = cat.iso_close_objects(t), cat.iso_close_objects(f)
            if tc != t or fc != f:
                self.warnings.append(
                    f"line {n}: pair {name} classes closed under isomorphism"
                )
            t, f = tc, fc
        elif target in self.structures:
            cat = self.structures[target].base
            tc, fc = cat.iso_close_objects(t), cat.iso_close_objects(f)
            if tc != t or fc != f:
                self.warnings.append(
                    f"line {n}: pair {name} classes closed under isomorphism"
                )
            t, f = tc, fc
        self.pairs[name] = PairDecl(target, t, f)

    def line_system(self, n: int, line: str) -> None:
        # system S on CAT e {..} m {..}
        m = re.match(
            r"^system\s+(\S+)\s+on\s+(\S+)\s+e\s*(\{[^}]*\})\s+m\s*(\{[^}]*\})$",
            line,
        )
        if not m:
            self.err(n, "malformed system line", "system S on CAT e {..} m {..}")
            return
        name, catname, eg, mg = m.groups()
        cat = self.categories.get(catname)
        if cat is None:
            self.err(n, f"unknown category {catname}", "declare it first")
            return
        e = self.check_members(_split_braces(eg), frozenset(cat.arrows), n, "arrow")
        mm = self.check_members(_split_braces(mg), frozenset(cat.arrows), n, "arrow")
        if e is None or mm is None or not self.new_name(name, n):
            return
        ec, mc = cat.iso_close_arrows(e), cat.iso_close_arrows(mm)
        if ec != e or mc != mm:
            self.warnings.append(
                f"line {n}: system {name} classes closed under isomorphism"
            )
        self.systems[name] = SystemDecl(catname, ec, mc)


def parse_workspace(text: str) -> Workspace:
    return _Parser(text).parse()


# -- serialization -----------------------------------------------------------


def category_source(cat: FinCategory) -> str:
    """The canonical `.fincat` block for a category.  Identity arrows are
    renamed to the implicit `id_<object>` scheme, so parsing the output
    yields ``relabel`` of the input, not necessarily the input itself.
    """
    rename = {a: a for a in cat.arrows}
    for x in cat.objects:
        rename[cat.id_of(x)] = f"id_{x}"
    ids = {f"id_{x}" for x in cat.objects}
    lines = [f"category {cat.name}", "objects " + " ".join(cat.objects)]
    named = [(rename[a], cat.arrows[a]) for a in cat.arrows if rename[a] not in ids]
    for a, (d, c) in named:
        lines.append(f"arrow {a} : {d} -> {c}")
    for g, _ in named:
        for f, _ in named:
            if cat.cod(_unrename(cat, rename, f)) != cat.dom(_unrename(cat, rename, g)):
                continue
            h = rename[cat.compose(_unrename(cat, rename, g), _unrename(cat, rename, f))]
            lines.append(f"compose {g} {f} = {h}")
    return "\n".join(lines) + "\n"


def _unrename(cat: FinCategory, rename: Mapping[str, str], name: str) -> str:
    for old, new in rename.items():
        if new == name:
            return old
    raise FinCategoryError(f"unknown arrow {name}")


def normalized_category(cat: FinCategory) -> FinCategory:
    """The category as the parser would rebuild it from its source."""
    rename = {a: a for a in cat.arrows}
    for x in cat.objects:
        rename[cat.id_of(x)] = f"id_{x}"
    return relabel(cat, rename)


def format_workspace(ws: Workspace) -> str:
    """Canonical text for a workspace; parse . format is idempotent."""
    chunks = [category_source(c) for c in ws.categories.values()]
    for name, s in ws.structures.items():
        lines = [f"nullhomotopy {name} on {s.base.name}"]
        for g in s.base.arrows:
            toks = s.theta(g)
            if toks:
                lines.append(f"homotopies {g} : " + " ".join(toks))
        cat = s.base
        ids = set(cat.identity.values())
        for g, phi in s.all_homotopies():
            x, y = cat.arrows[g]
            for h in cat.arrows_from(y):
                if h not in ids:
                    lines.append(f"wl {h} {phi} = {s.wl(h, phi)}")
            for f in cat.arrows_to(x):
                if f not in ids:
                    lines.append(f"wr {phi} {f} = {s.wr(phi, f)}")
        chunks.append("\n".join(lines) + "\n")
    for name, idl in ws.ideals.items():
        chunks.append(
            f"ideal {name} on {idl.category} = "
            "{" + " ".join(sorted(idl.arrows)) + "}\n"
        )
    for name, p in ws.pairs.items():
        chunks.append(
            f"pair {name} on {p.target} torsion "
            "{" + " ".join(sorted(p.torsion)) + "} free "
            "{" + " ".join(sorted(p.free)) + "}\n"
        )
    for name, sy in ws.systems.items():
        chunks.append(
            f"system {name} on {sy.category} e "
            "{" + " ".join(sorted(sy.e_class)) + "} m "
            "{" + " ".join(sorted(sy.m_class)) + "}\n"
        )
    return "\n".join(chunks)
