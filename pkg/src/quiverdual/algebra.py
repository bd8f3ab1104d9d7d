"""Graded quotients ``kQ/(rho)`` computed degree by degree.

The ideal is built blockwise: ``I_t[i, j]`` is spanned by the relations of
length ``t`` together with ``arrow * I_{t-1}`` and ``I_{t-1} * arrow``.  Each
block is reduced with pivots on the largest paths (in path order), so the
leftover non-pivot paths form the monomial basis ``M_t`` and reduction
against the block gives normal forms.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import (
    DegreeNotComputedError,
    NotAdmissibleError,
    NotFiniteDimensionalError,
    NotHomogeneousError,
    QuiverError,
)
from .linalg import _rref_rows
from .quiver import Path, Quiver


class LinComb(Mapping):
    """Immutable linear combination of paths with nonzero rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for p, c in items:
            if not isinstance(p, Path):
                raise TypeError(f"expected Path, got {type(p).__name__}")
            acc[p] = acc.get(p, Fraction(0)) + Fraction(c)
        self._terms = {p: c for p, c in acc.items() if c != 0}
        self._hash = None

    @classmethod
    def of(cls, p: Path, c=1) -> "LinComb":
        return cls({p: c})

    def __getitem__(self, p):
        return self._terms[p]

    def __iter__(self) -> Iterator[Path]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, LinComb):
            return self._terms == other._terms
        return NotImplemented

    def coeff(self, p: Path) -> Fraction:
        return self._terms.get(p, Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "LinComb") -> "LinComb":
        return LinComb(list(self.items()) + list(other.items()))

    def __neg__(self) -> "LinComb":
        return LinComb({p: -c for p, c in self.items()})

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + (-other)

    def scale(self, c) -> "LinComb":
        return LinComb({p: c * v for p, v in self.items()})

    def map_coeffs(self, fn) -> "LinComb":
        return LinComb({p: fn(p, c) for p, c in self.items()})

    def blocks(self) -> dict:
        """Split by ``(source, target, length)``."""
        out: dict = {}
        for p, c in self.items():
            out.setdefault((p.source, p.target, len(p)), {})[p] = c
        return {k: LinComb(v) for k, v in out.items()}

    @property
    def is_homogeneous(self) -> bool:
        return len({(p.source, p.target, len(p)) for p in self}) <= 1

    def _single(self, attr):
        vals = {attr(p) for p in self}
        if len(vals) != 1:
            raise NotAdmissibleError("combination is not homogeneous")
        return vals.pop()

    @property
    def source(self) -> str:
        return self._single(lambda p: p.source)

    @property
    def target(self) -> str:
        return self._single(lambda p: p.target)

    @property
    def degree(self) -> int:
        return self._single(len)

    def sorted_terms(self, key=None) -> list[tuple[Path, Fraction]]:
        """Terms with the largest path first."""
        key = key or (lambda p: (len(p), tuple(reversed(p.arrows)), p.source))
        return sorted(self.items(), key=lambda pc: key(pc[0]), reverse=True)

    def render(self, key=None) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, (p, c) in enumerate(self.sorted_terms(key)):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = str(p) if mag == 1 else f"{mag}*{p}"
            parts.append(("-" if sign == "-" else "") + body if k == 0 else f" {sign} {body}")
        return "".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"LinComb({self.render()})"


def as_lincomb(x) -> LinComb:
    if isinstance(x, LinComb):
        return x
    if isinstance(x, Path):
        return LinComb.of(x)
    return LinComb(x)


@dataclass(frozen=True)
class Presentation:
    """A bound quiver: quiver plus relations."""

    quiver: Quiver
    relations: tuple = ()

    def __post_init__(self):
        rels = tuple(as_lincomb(r) for r in self.relations)
        object.__setattr__(self, "relations", rels)
        for k, r in enumerate(rels):
            if r.is_zero:
                raise NotAdmissibleError(f"relation {k} is zero")
            for p in r:
                try:
                    self.quiver.validate(p)
                except QuiverError as exc:
                    raise QuiverError(f"relation {k}: {exc}") from None

    @property
    def is_quadratic(self) -> bool:
        return all(len(p) == 2 for r in self.relations for p in r)

    @property
    def is_normalized(self) -> bool:
        return all(r.is_homogeneous for r in self.relations)

    def render_relations(self) -> list[str]:
        return [r.render(self.quiver.path_key) for r in self.relations]


def normalize_relations(p: Presentation) -> Presentation:
    """Split every relation into its ``(source, target, length)`` components."""
    out = []
    for k, r in enumerate(p.relations):
        for (s, t, length), part in sorted(r.blocks().items(), key=lambda kv: _block_sort(p.quiver, kv[0])):
            if length < 2:
                raise NotAdmissibleError(f"not admissible: relation {k} involves a path of length {length}")
            out.append(part)
    return Presentation(p.quiver, tuple(out))


def _block_sort(q: Quiver, key):
    s, t, length = key
    return (length, q.vertex_index[s], q.vertex_index[t])


class _Block:
    """Ideal and basis data for one ``(degree, source, target)`` block."""

    __slots__ = ("paths", "col", "rows", "pivots", "basis")

    def __init__(self, paths: tuple, gens: list[Mapping], key):
        # columns are in elimination order; pivots land on the earliest columns
        self.paths = paths
        self.col = {p: k for k, p in enumerate(paths)}
        self.rows, self.pivots = _rref_rows([self.vector(g) for g in gens], len(paths))
        piv = set(self.pivots)
        self.basis = tuple(sorted((p for k, p in enumerate(paths) if k not in piv), key=key))

    def vector(self, x: Mapping) -> list[Fraction]:
        v = [Fraction(0)] * len(self.paths)
        for p, c in x.items():
            v[self.col[p]] += c
        return v

    def reduce(self, v: list[Fraction]) -> list[Fraction]:
        for row, c in zip(self.rows, self.pivots):
            f = v[c]
            if f != 0:
                v = [a - f * b for a, b in zip(v, row)]
        return v


class GradedBasis:
    """Per-degree monomial bases ``M_t`` and normal forms for ``kQ/(rho)``.

    ``order="lex"`` eliminates against the path order; ``order="revlex"``
    reverses it, which selects a different (equally valid) ``M_t``.
    """

    def __init__(self, presentation: Presentation, max_degree: int, order: str = "lex"):
        if order not in ("lex", "revlex"):
            raise ValueError("order must be 'lex' or 'revlex'")
        if not presentation.is_normalized:
            presentation = normalize_relations(presentation)
        self.presentation = presentation
        self.quiver = presentation.quiver
        self.order = order
        self.max_degree = -1
        self._blocks: list[dict] = []
        self._rels_by_block: dict = {}
        for r in presentation.relations:
            self._rels_by_block.setdefault((r.degree, r.source, r.target), []).append(r)
        self.extend(max_degree)

    def _column_order(self, paths) -> tuple:
        key = self.quiver.path_key
        ordered = sorted(paths, key=key, reverse=(self.order == "lex"))
        return tuple(ordered)

    def extend(self, max_degree: int) -> None:
        q = self.quiver
        for t in range(self.max_degree + 1, max_degree + 1):
            level: dict = {}
            prev = self._blocks[t - 1] if t > 0 else {}
            for (i, j), paths in q.paths(t).items():
                gens: list[Mapping] = list(self._rels_by_block.get((t, i, j), ()))
                if t >= 1:
                    for a in q.arrows_to(j):
                        pb = prev.get((i, a.source))
                        if pb is not None and pb.rows:
                            ap = q.arrow_path(a.name)
                            for row in pb.rows:
                                gens.append({ap * pb.paths[c]: x for c, x in enumerate(row) if x})
                    for a in q.arrows_from(i):
                        pb = prev.get((a.target, j))
                        if pb is not None and pb.rows:
                            ap = q.arrow_path(a.name)
                            for row in pb.rows:
                                gens.append({pb.paths[c] * ap: x for c, x in enumerate(row) if x})
                level[(i, j)] = _Block(self._column_order(paths), gens, q.path_key)
            self._blocks.append(level)
            self.max_degree = t

    def _level(self, t: int) -> dict:
        if t < 0 or t > self.max_degree:
            raise DegreeNotComputedError(f"degree {t} not computed (max {self.max_degree})")
        return self._blocks[t]

    def block(self, t: int, i: str, j: str) -> _Block | None:
        return self._level(t).get((i, j))

    def basis(self, t: int) -> tuple:
        """``M_t`` in path order."""
        out = [p for blk in self._level(t).values() for p in blk.basis]
        return tuple(sorted(out, key=self.quiver.path_key))

    def block_basis(self, t: int, i: str, j: str) -> tuple:
        blk = self.block(t, i, j)
        return blk.basis if blk else ()

    def dim(self, t: int) -> int:
        return sum(len(b.basis) for b in self._level(t).values())

    def dims(self) -> list[int]:
        return [self.dim(t) for t in range(self.max_degree + 1)]

    def block_dims(self, t: int) -> dict:
        return {k: len(b.basis) for k, b in self._level(t).items() if b.basis}

    def ideal_dim(self, t: int) -> int:
        return sum(len(b.rows) for b in self._level(t).values())

    def ideal_rows(self, t: int, i: str, j: str) -> list[LinComb]:
        blk = self.block(t, i, j)
        if blk is None:
            return []
        return [LinComb({blk.paths[c]: x for c, x in enumerate(r) if x}) for r in blk.rows]

    def expand(self, x) -> LinComb:
        """Normal form of a homogeneous combination over ``M_t``."""
        x = as_lincomb(x)
        out: dict = {}
        for (s, t_, deg), part in x.blocks().items():
            blk = self.block(deg, s, t_)
            if blk is None:
                continue
            v = blk.reduce(blk.vector(part))
            for c, val in enumerate(v):
                if val != 0:
                    out[blk.paths[c]] = val
        return LinComb(out)

    def coordinates(self, x) -> tuple:
        """Coordinate row of ``x`` over ``M_t`` (``t`` is the degree of ``x``)."""
        x = as_lincomb(x)
        if x.is_zero:
            raise ValueError("cannot infer the degree of the zero combination")
        t = x._single(len)
        e = self.expand(x)
        return tuple(e.coeff(m) for m in self.basis(t))

    def is_zero(self, x) -> bool:
        return self.expand(x).is_zero

    def multiply(self, x, y) -> LinComb:
        """Normal form of ``x * y`` (``y`` first) for homogeneous-degree inputs."""
        x, y = as_lincomb(x), as_lincomb(y)
        prod: dict = {}
        for p, a in x.items():
            for r, b in y.items():
                if p.composable_after(r):
                    pr = p * r
                    prod[pr] = prod.get(pr, Fraction(0)) + a * b
        if not prod:
            return LinComb()
        top = max(len(p) for p in prod)
        if top > self.max_degree:
            self.extend(top)
        return self.expand(LinComb(prod))

    @property
    def top_degree(self) -> int:
        """Largest computed degree with a nonzero component."""
        nz = [t for t in range(self.max_degree + 1) if self.dim(t)]
        return max(nz) if nz else -1

    def vanishes_from(self) -> int | None:
        """First computed degree with ``dim = 0`` (all higher degrees vanish too)."""
        for t in range(self.max_degree + 1):
            if self.dim(t) == 0:
                return t
        return None


def graded_basis(p: Presentation, max_degree: int | None = None, order: str = "lex",
                 bound: int = 64) -> GradedBasis:
    """Graded basis up to ``max_degree``.

    With ``max_degree=None`` the computation continues until the first
    vanishing degree; a quiver with cycles whose algebra does not vanish by
    ``bound`` raises :class:`NotFiniteDimensionalError`.
    """
    if max_degree is not None:
        if max_degree < 0:
            raise ValueError("max_degree must be nonnegative")
        return GradedBasis(p, max_degree, order)
    q = p.quiver
    if q.is_acyclic():
        return GradedBasis(p, q.longest_path_length() + 1, order)
    gb = GradedBasis(p, 1, order)
    t = 1
    while gb.dim(t):
        t += 1
        if t > bound:
            raise NotFiniteDimensionalError(f"algebra does not vanish by degree {bound}")
        gb.extend(t)
    return gb


def hilbert_table(p: Presentation, max_degree: int) -> list[int]:
    return GradedBasis(p, max_degree).dims()


def expand(gb: GradedBasis, x) -> LinComb:
    return gb.expand(x)


def _extensions(gb: GradedBasis, p: Path) -> Iterator[Path]:
    q = gb.quiver
    for a in q.arrows_from(p.target):
        yield q.arrow_path(a.name) * p
    for a in q.arrows_to(p.source):
        yield p * q.arrow_path(a.name)


def _require_top(gb: GradedBasis) -> int:
    top = gb.top_degree
    if gb.max_degree <= top:
        gb.extend(top + 1)
        if gb.dim(top + 1):
            raise NotFiniteDimensionalError("graded basis does not reach a vanishing degree")
    return top


def maximal_bound_paths(gb: GradedBasis) -> list[tuple[Path, int]]:
    """Bound paths with no nonzero one-arrow extension on either side."""
    top = _require_top(gb)
    out = []
    for t in range(top + 1):
        for p in gb.quiver.all_paths(t):
            if gb.is_zero(p):
                continue
            if all(gb.is_zero(e) for e in _extensions(gb, p)):
                out.append((p, t))
    return out


def homogeneity_degree(gb: GradedBasis) -> int | None:
    """``n`` if every maximal bound path has length ``n``, else ``None``."""
    lengths = {t for _, t in maximal_bound_paths(gb)}
    if len(lengths) != 1:
        return None
    return lengths.pop()


def top_degree_basis(gb: GradedBasis, n: int) -> tuple:
    if homogeneity_degree(gb) != n:
        raise NotHomogeneousError(f"algebra is not {n}-homogeneous")
    return gb.basis(n)


def require_homogeneous(gb: GradedBasis) -> int:
    n = homogeneity_degree(gb)
    if n is None:
        raise NotHomogeneousError("maximal bound paths have different lengths")
    return n
