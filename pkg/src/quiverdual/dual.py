"""Quadratic duals through the path-basis pairing on ``kQ_2``.

Length-2 paths form a self-dual orthonormal system, so the dual relations in
a ``(source, target)`` block are the orthogonal complement of the span of the
original relations in that block.  Arrow names are shared between an algebra
and its dual.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .algebra import LinComb, Presentation, as_lincomb, normalize_relations
from .errors import AmbientMismatchError, NotQuadraticError
from .linalg import Subspace
from .quiver import Quiver


@dataclass(frozen=True)
class BlockSpace:
    """Coordinates on one ``(source, target)`` block of ``kQ_t``.

    Columns run from the largest path down, so canonical bases have a unit
    coefficient on their largest path.
    """

    quiver: Quiver
    degree: int
    source: str
    target: str
    paths: tuple

    @classmethod
    def of(cls, q: Quiver, degree: int, source: str, target: str) -> "BlockSpace":
        ps = q.paths(degree).get((source, target), ())
        return cls(q, degree, source, target, tuple(sorted(ps, key=q.path_key, reverse=True)))

    @property
    def dim(self) -> int:
        return len(self.paths)

    def vector(self, x) -> tuple:
        x = as_lincomb(x)
        idx = {p: k for k, p in enumerate(self.paths)}
        v = [Fraction(0)] * len(self.paths)
        for p, c in x.items():
            if p not in idx:
                raise AmbientMismatchError(f"path {p} is not in block {self.source}->{self.target}")
            v[idx[p]] += c
        return tuple(v)

    def span(self, elements: Iterable) -> Subspace:
        return Subspace.span([self.vector(x) for x in elements], self.dim)

    def element(self, v) -> LinComb:
        return LinComb({p: c for p, c in zip(self.paths, v) if c})

    def elements(self, s: Subspace) -> list[LinComb]:
        return [self.element(row) for row in s.basis]


def degree_blocks(q: Quiver, degree: int) -> list[BlockSpace]:
    """Nonempty blocks of ``kQ_degree`` in vertex order."""
    vi = q.vertex_index
    keys = sorted(q.paths(degree), key=lambda ij: (vi[ij[0]], vi[ij[1]]))
    return [BlockSpace.of(q, degree, i, j) for i, j in keys]


def block_spans(q: Quiver, elements: Iterable, degree: int = 2) -> dict:
    """Span of ``elements`` inside each nonempty block of ``kQ_degree``."""
    grouped: dict = {}
    for x in elements:
        for (s, t, d), part in as_lincomb(x).blocks().items():
            if d != degree:
                raise NotQuadraticError(f"element of length {d} in a degree-{degree} comparison")
            grouped.setdefault((s, t), []).append(part)
    return {(b.source, b.target): (b, b.span(grouped.get((b.source, b.target), ())))
            for b in degree_blocks(q, degree)}


@dataclass(frozen=True)
class QuadraticPair:
    original: Presentation
    dual: Presentation
    blocks: dict  # (i, j) -> (BlockSpace, span of rho, span of rho-perp)


def quadratic_pair(p: Presentation) -> QuadraticPair:
    p = normalize_relations(p)
    if not p.is_quadratic:
        raise NotQuadraticError("quadratic dual needs a quadratic presentation")
    blocks = {}
    rels = []
    for key, (space, rho) in block_spans(p.quiver, p.relations).items():
        perp = rho.complement()
        blocks[key] = (space, rho, perp)
        rels.extend(space.elements(perp))
    return QuadraticPair(p, Presentation(p.quiver, tuple(rels)), blocks)


def quadratic_dual(p: Presentation) -> Presentation:
    """Same quiver, relations the canonical basis of the blockwise complement."""
    return quadratic_pair(p).dual


def pairing(x, y) -> Fraction:
    """``<x, y> = sum of coefficient products`` on one block of length-2 paths."""
    x, y = as_lincomb(x), as_lincomb(y)
    keys = {(p.source, p.target, len(p)) for p in list(x) + list(y)}
    if len(keys) > 1:
        raise AmbientMismatchError("pairing needs both arguments in the same block")
    return sum((c * y.coeff(p) for p, c in x.items()), Fraction(0))


def relation_span_equal(a: Presentation, b: Presentation, degree: int = 2) -> bool:
    """Blockwise equality of relation spans in ``kQ_degree``."""
    if a.quiver != b.quiver:
        return False
    sa = block_spans(a.quiver, a.relations, degree)
    sb = block_spans(b.quiver, b.relations, degree)
    return all(sa[k][1] == sb[k][1] for k in sa)
