"""Built-in fixture categories used by the test corpus and shipped as .fincat files.

- c1: one object, identity only
- c2: the poset chain a < b
- c3: the poset chain 0 < 1 < 2
- sq: the commutative-square poset (2x2 grid), has initial and terminal objects
- m2: one object with an idempotent endomorphism e (e.e = e)
- v2: matrices over the 2-element field between spaces of dimension 0, 1, 2
      (zero object, kernels and cokernels; 31 arrows)
"""

from __future__ import annotations

import itertools

from .core import FinCategory


def c1() -> FinCategory:
    return FinCategory(
        "c1", ["star"], {"id_star": ("star", "star")}, {"star": "id_star"},
        comp={("id_star", "id_star"): "id_star"},
    )


def _poset(name: str, objects: list[str], order: set[tuple[str, str]]) -> FinCategory:
    """Finite poset as a category; arrow x->y named u_x_y, identities id_x."""
    rel = set(order) | {(x, x) for x in objects}
    arrows = {}
    for x, y in sorted(rel, key=lambda p: (objects.index(p[0]), objects.index(p[1]))):
        aid = f"id_{x}" if x == y else f"u_{x}_{y}"
        arrows[aid] = (x, y)
    name_of = {(d, c): a for a, (d, c) in arrows.items()}
    comp = {}
    for g, (dg, cg) in arrows.items():
        for f, (df, cf) in arrows.items():
            if cf == dg:
                comp[(g, f)] = name_of[(df, cg)]
    return FinCategory(name, objects, arrows, {x: f"id_{x}" for x in objects}, comp=comp)


def c2() -> FinCategory:
    return _poset("c2", ["a", "b"], {("a", "b")})


def c3() -> FinCategory:
    return _poset("c3", ["o0", "o1", "o2"], {("o0", "o1"), ("o1", "o2"), ("o0", "o2")})


def sq() -> FinCategory:
    return _poset(
        "sq",
        ["a", "b", "c", "d"],
        {("a", "b"), ("a", "c"), ("b", "d"), ("c", "d"), ("a", "d")},
    )


def m2() -> FinCategory:
    return FinCategory(
        "m2",
        ["dot"],
        {"id_dot": ("dot", "dot"), "e": ("dot", "dot")},
        {"dot": "id_dot"},
        comp={
            ("id_dot", "id_dot"): "id_dot",
            ("id_dot", "e"): "e",
            ("e", "id_dot"): "e",
            ("e", "e"): "e",
        },
    )


# -- v2: F2-linear maps between spaces of dimension 0, 1, 2 ----------------

_V2_DIMS = (0, 1, 2)
_V2_OBJ = {0: "d0", 1: "d1", 2: "d2"}


def _mat_name(dom: int, cod: int, bits: tuple[int, ...]) -> str:
    body = "".join(str(b) for b in bits)
    return f"m{dom}{cod}_{body}" if body else f"m{dom}{cod}"


def _mats(rows: int, cols: int):
    return list(itertools.product((0, 1), repeat=rows * cols))


def _matmul(a: tuple[int, ...], ar: int, ac: int, b: tuple[int, ...], br: int, bc: int):
    # a is ar x ac, b is br x bc, ac == br; entries row-major over F2
    out = []
    for i in range(ar):
        for j in range(bc):
            s = 0
            for k in range(ac):
                s ^= a[i * ac + k] & b[k * bc + j]
            out.append(s)
    return tuple(out)


def v2() -> FinCategory:
    arrows: dict[str, tuple[str, str]] = {}
    data: dict[str, tuple[int, int, tuple[int, ...]]] = {}
    for dom in _V2_DIMS:
        for cod in _V2_DIMS:
            for bits in _mats(cod, dom):
                aid = _mat_name(dom, cod, bits)
                arrows[aid] = (_V2_OBJ[dom], _V2_OBJ[cod])
                data[aid] = (dom, cod, bits)
    name_of = {v: k for k, v in data.items()}
    identity = {}
    for d in _V2_DIMS:
        eye = tuple(1 if i == j else 0 for i in range(d) for j in range(d))
        identity[_V2_OBJ[d]] = name_of[(d, d, eye)]
    comp = {}
    for g, (gd, gc, gm) in data.items():
        for f, (fd, fc, fm) in data.items():
            if fc == gd:
                comp[(g, f)] = name_of[(fd, gc, _matmul(gm, gc, gd, fm, gd, fd))]
    return FinCategory("v2", [_V2_OBJ[d] for d in _V2_DIMS], arrows, identity, comp=comp)


def v2_matrix(aid: str) -> tuple[int, int, tuple[int, ...]]:
    """Decode a v2 arrow id back to (dom dim, cod dim, row-major bits)."""
    dom, cod = int(aid[1]), int(aid[2])
    body = aid[4:] if len(aid) > 3 else ""
    return dom, cod, tuple(int(ch) for ch in body)


ALL = {"c1": c1, "c2": c2, "c3": c3, "sq": sq, "m2": m2, "v2": v2}


def get(name: str) -> FinCategory:
    return ALL[name]()
