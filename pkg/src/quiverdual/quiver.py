"""Finite quivers and their paths.

Paths are stored in traversal order (first arrow applied first) and printed
right to left, so the path ``a0`` followed by ``a1`` prints as ``a1.a0``.
The product ``q * p`` of two paths is the path that runs ``p`` first and then
``q``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable

from .errors import QuiverError


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str

    def __post_init__(self):
        if not self.name:
            raise QuiverError("arrow name must be nonempty")


@dataclass(frozen=True, order=False)
class Path:
    source: str
    target: str
    arrows: tuple = ()

    def __post_init__(self):
        if not self.arrows and self.source != self.target:
            raise QuiverError("a trivial path must start and end at the same vertex")

    @classmethod
    def trivial(cls, vertex: str) -> "Path":
        return cls(vertex, vertex, ())

    def __len__(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    def __mul__(self, other: "Path") -> "Path":
        """``self * other``: traverse ``other`` first, then ``self``."""
        if not isinstance(other, Path):
            return NotImplemented
        if other.target != self.source:
            raise QuiverError(f"cannot compose {self} after {other}: {other.target} != {self.source}")
        return Path(other.source, self.target, other.arrows + self.arrows)

    def composable_after(self, other: "Path") -> bool:
        return other.target == self.source

    def __str__(self) -> str:
        if not self.arrows:
            return f"e_{self.source}"
        return ".".join(reversed(self.arrows))

    def __repr__(self) -> str:
        return f"Path({self})"


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("vertex ids must be unique")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise QuiverError("arrow names must be unique")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise QuiverError(f"arrow {a.name} uses an undeclared vertex")

    @classmethod
    def build(cls, vertices: Iterable, arrows: Iterable[tuple[str, str, str]]) -> "Quiver":
        """Convenience constructor from ``(name, source, target)`` triples."""
        return cls(tuple(str(v) for v in vertices), tuple(Arrow(n, str(s), str(t)) for n, s, t in arrows))

    @cached_property
    def arrow_index(self) -> dict:
        return {a.name: k for k, a in enumerate(self.arrows)}

    @cached_property
    def vertex_index(self) -> dict:
        return {v: k for k, v in enumerate(self.vertices)}

    def arrow(self, name: str) -> Arrow:
        try:
            return self.arrows[self.arrow_index[name]]
        except KeyError:
            raise QuiverError(f"unknown arrow {name!r}") from None

    def arrow_path(self, name: str) -> Path:
        a = self.arrow(name)
        return Path(a.source, a.target, (a.name,))

    def arrows_from(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def arrows_to(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.target == v]

    def path(self, names: Iterable[str], source: str | None = None) -> Path:
        """Path from arrow names in traversal order; ``source`` is needed for trivial paths."""
        names = tuple(names)
        if not names:
            if source is None or source not in self.vertex_index:
                raise QuiverError("a trivial path needs a declared vertex")
            return Path.trivial(source)
        first = self.arrow(names[0])
        cur = first.target
        for k, n in enumerate(names[1:], start=1):
            a = self.arrow(n)
            if a.source != cur:
                raise QuiverError(
                    f"arrows {names[k - 1]!r} and {n!r} do not compose (position {k}): "
                    f"{names[k - 1]} ends at {cur}, {n} starts at {a.source}"
                )
            cur = a.target
        if source is not None and source != first.source:
            raise QuiverError(f"path starts at {first.source}, not {source}")
        return Path(first.source, cur, names)

    def validate(self, p: Path) -> None:
        if p.is_trivial:
            if p.source not in self.vertex_index:
                raise QuiverError(f"unknown vertex {p.source!r}")
            return
        q = self.path(p.arrows)
        if (q.source, q.target) != (p.source, p.target):
            raise QuiverError(f"path {p} has inconsistent endpoints")

    def check_vertex(self, v: str) -> None:
        if v not in self.vertex_index:
            raise QuiverError(f"unknown vertex {v!r}")

    def path_key(self, p: Path) -> tuple:
        """Sort key: lexicographic on the printed (right-to-left) arrow list."""
        if p.is_trivial:
            return (self.vertex_index[p.source],)
        idx = self.arrow_index
        return tuple(idx[a] for a in reversed(p.arrows))

    def paths(self, t: int) -> dict:
        """All length-``t`` paths, grouped by ``(source, target)`` in path order."""
        return _paths_by_block(self, t)

    def paths_of_length(self, t: int, i: str, j: str) -> list[Path]:
        if t < 0:
            raise QuiverError("path length must be nonnegative")
        self.check_vertex(i)
        self.check_vertex(j)
        return list(self.paths(t).get((i, j), ()))

    def all_paths(self, t: int) -> list[Path]:
        out = [p for block in self.paths(t).values() for p in block]
        out.sort(key=self.path_key)
        return out

    def adjacency_matrix(self) -> list[list[int]]:
        """``A[i][j]`` counts arrows from vertex ``i`` to vertex ``j``."""
        n = len(self.vertices)
        m = [[0] * n for _ in range(n)]
        for a in self.arrows:
            m[self.vertex_index[a.source]][self.vertex_index[a.target]] += 1
        return m

    def is_acyclic(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        ready = [v for v in self.vertices if indeg[v] == 0]
        seen = 0
        while ready:
            v = ready.pop()
            seen += 1
            for a in self.arrows_from(v):
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    ready.append(a.target)
        return seen == len(self.vertices)

    def opposite(self, suffix: str = "") -> "Quiver":
        return Quiver(self.vertices, tuple(Arrow(a.name + suffix, a.target, a.source) for a in self.arrows))

    def longest_path_length(self) -> int:
        """Length of the longest path; only meaningful for acyclic quivers."""
        if not self.is_acyclic():
            raise QuiverError("quiver has a directed cycle")
        best = {v: 0 for v in self.vertices}
        order = self._topological_order()
        for v in order:
            for a in self.arrows_from(v):
                best[a.target] = max(best[a.target], best[v] + 1)
        return max(best.values(), default=0)

    def _topological_order(self) -> list[str]:
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        ready = [v for v in self.vertices if indeg[v] == 0]
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for a in self.arrows_from(v):
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    ready.append(a.target)
        return order


@lru_cache(maxsize=512)
def _paths_by_block(q: Quiver, t: int) -> dict:
    if t == 0:
        return {(v, v): (Path.trivial(v),) for v in q.vertices}
    prev = _paths_by_block(q, t - 1)
    blocks: dict = {}
    for (i, j), ps in prev.items():
        for a in q.arrows_from(j):
            for p in ps:
                blocks.setdefault((i, a.target), []).append(Path(i, a.target, p.arrows + (a.name,)))
    return {k: tuple(sorted(v, key=q.path_key)) for k, v in blocks.items()}


def paths_of_length(q: Quiver, t: int, i: str, j: str) -> list[Path]:
    """All length-``t`` paths from ``i`` to ``j``, in path order."""
    return q.paths_of_length(t, i, j)


def is_acyclic(q: Quiver) -> bool:
    return q.is_acyclic()


def opposite_quiver(q: Quiver, suffix: str = "") -> Quiver:
    """Reverse every arrow; names get ``suffix`` appended (default: unchanged)."""
    return q.opposite(suffix)
