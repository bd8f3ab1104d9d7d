"""Finite windows of ``Z|_{n-1}Q``, complete tau-slices and their algebras.

The window over levels ``a..b`` has a vertex ``(i,t)`` for each vertex ``i``
and level ``t``.  Arrows of ``Q`` stay on their level; the returning arrow of
``p`` in ``M_n`` climbs one level.  Relations are lifted from
``rho ∪ rho_M ∪ rho_0`` by walking each path from a start level; a relation is
kept only when every lifted path stays inside the window.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Mapping

from .algebra import LinComb, Presentation, graded_basis, homogeneity_degree, normalize_relations
from .errors import QuiverDualError, QuiverError, WindowTooSmallError
from .quiver import Arrow, Path, Quiver
from .resolution import KoszulReport, koszul_witness
from .trivext import trivial_extension


def vertex_name(i: str, t: int) -> str:
    return f"({i},{t})"


def arrow_name(a: str, t: int) -> str:
    return f"({a},{t})"


@dataclass
class WindowQuiver:
    base: Presentation
    n: int
    a: int
    b: int
    quiver: Quiver
    relations: tuple
    place: dict  # window vertex -> (base vertex, level)
    origin: dict  # window arrow -> (base arrow in Q~, level of its source)
    trivext_quadratic: bool
    notes: list = field(default_factory=list)

    def tau(self, v: str) -> str | None:
        i, t = self.place[v]
        return vertex_name(i, t - 1) if t - 1 >= self.a else None

    @property
    def presentation(self) -> Presentation:
        return Presentation(self.quiver, self.relations)


def _lift(qt: Quiver, returning: set, p: Path, start: int) -> tuple[list, int]:
    names = []
    level = start
    for a in p.arrows:
        names.append(arrow_name(a, level))
        if a in returning:
            level += 1
    return names, level


def znq_window(p: Presentation, a: int, b: int) -> WindowQuiver:
    if a > b:
        raise QuiverDualError("window needs a <= b")
    te = trivial_extension(p, twist="identity")
    raq = te.raq
    qt = raq.quiver
    returning = set(raq.returning_map)
    levels = range(a, b + 1)
    place = {vertex_name(i, t): (i, t) for t in levels for i in qt.vertices}
    arrows, origin = [], {}
    for t in levels:
        for x in qt.arrows:
            up = 1 if x.name in returning else 0
            if t + up > b:
                continue
            name = arrow_name(x.name, t)
            arrows.append(Arrow(name, vertex_name(x.source, t), vertex_name(x.target, t + up)))
            origin[name] = (x.name, t)
    wq = Quiver(tuple(place), tuple(arrows))
    rels = []
    source_rels = te.relations.rho + te.relations.rho_M + te.relations.rho_0
    for r in source_rels:
        for s in levels:
            terms = {}
            fits = True
            for path, c in r.items():
                names, end = _lift(qt, returning, path, s)
                if end > b:
                    fits = False
                    break
                terms[wq.path(names, source=vertex_name(path.source, s))] = c
            if fits:
                rels.append(LinComb(terms))
    notes = []
    if te.n % 2:
        notes.append("n is odd: the window uses the untwisted rho_0, not the nu-twisted one")
    return WindowQuiver(te.presentation, te.n, a, b, wq, tuple(rels), place, origin,
                        te.quadraticity.passed, notes)


@dataclass(frozen=True)
class SliceSpec:
    levels: Mapping  # base vertex -> level

    @classmethod
    def constant(cls, q: Quiver, t: int = 0) -> "SliceSpec":
        return cls({v: t for v in q.vertices})

    def shifted(self, k: int) -> "SliceSpec":
        return SliceSpec({v: t + k for v, t in self.levels.items()})

    def vertices(self) -> list[str]:
        return [vertex_name(i, t) for i, t in self.levels.items()]


def _reach(q: Quiver, starts, forward: bool) -> set:
    seen = set(starts)
    todo = deque(starts)
    while todo:
        v = todo.popleft()
        nxt = q.arrows_from(v) if forward else q.arrows_to(v)
        for x in nxt:
            w = x.target if forward else x.source
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def slice_problem(w: WindowQuiver, s: SliceSpec) -> str | None:
    """Why ``s`` is not a complete tau-slice of ``w``, or ``None``."""
    base = w.base.quiver.vertices
    unknown = [v for v in s.levels if v not in base]
    if unknown:
        raise QuiverError(f"slice names unknown vertices: {', '.join(map(str, unknown))}")
    missing = [v for v in base if v not in s.levels]
    if missing:
        return f"orbits without a slice vertex: {', '.join(missing)}"
    for v, t in s.levels.items():
        if not w.a < t < w.b:
            raise WindowTooSmallError(f"window too small: slice vertex {vertex_name(v, t)} "
                                      f"is not strictly inside [{w.a},{w.b}]")
    inside = set(s.vertices())
    after = _reach(w.quiver, inside, True)
    before = _reach(w.quiver, inside, False)
    bad = sorted((after & before) - inside)
    if bad:
        return f"not convex: paths between slice vertices pass through {', '.join(bad)}"
    return None


def is_complete_tau_slice(w: WindowQuiver, s: SliceSpec) -> bool:
    return slice_problem(w, s) is None


def slice_presentation(w: WindowQuiver, s: SliceSpec) -> Presentation:
    """Full bound subquiver on the slice, with levels dropped from the names."""
    why = slice_problem(w, s)
    if why:
        raise QuiverError(f"not a complete tau-slice: {why}")
    inside = set(s.vertices())
    vname = {v: w.place[v][0] for v in inside}
    arrows = []
    aname = {}
    for x in w.quiver.arrows:
        if x.source in inside and x.target in inside:
            aname[x.name] = w.origin[x.name][0]
            arrows.append(Arrow(aname[x.name], vname[x.source], vname[x.target]))
    order = [v for v in w.base.quiver.vertices]
    q = Quiver(tuple(order), tuple(arrows))
    rels = []
    for r in w.relations:
        if r.source in inside and r.target in inside:
            rels.append(LinComb({q.path([aname[a] for a in p.arrows], source=vname[p.source]): c
                                 for p, c in r.items()}))
    return normalize_relations(Presentation(q, tuple(rels)))


@dataclass
class Characterization:
    tau_slice: bool
    n: int | None
    trivext_quadratic: bool | None
    koszul: KoszulReport | None

    def as_dict(self) -> dict:
        return {
            "tau_slice_algebra": self.tau_slice,
            "n": self.n,
            "trivext_quadratic": self.trivext_quadratic,
            "koszul": self.koszul.as_dict() if self.koszul else None,
        }


def characterize(p: Presentation, depth: int = 6) -> Characterization:
    p = normalize_relations(p)
    if not p.quiver.is_acyclic():
        raise QuiverError("characterization needs an acyclic quiver")
    gb = graded_basis(p)
    n = homogeneity_degree(gb)
    if n is None:
        return Characterization(False, None, None, None)
    quad = trivial_extension(p).quadraticity.passed
    kos = koszul_witness(p, depth, gb)
    return Characterization(True, n, quad, kos)
