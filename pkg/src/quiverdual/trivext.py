"""Twisted trivial extensions ``Lambda ⋉ D(Lambda)^sigma`` of n-homogeneous algebras.

Elements are dictionaries keyed by ``("L", m)`` for ``m`` in some ``M_t`` and
``("D", m)`` for the dual basis vector ``m*``.  The dual actions are
``(a.f)(z) = f(z a)`` and ``(f.a)(z) = f(a z)``; the twist acts on the right
factor, ``f . b = f sigma(b)``.  With these conventions ``m*`` runs from
``t(m)`` back to ``s(m)``, which is the direction of the returning arrow.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .algebra import GradedBasis, LinComb, Presentation, graded_basis, normalize_relations, require_homogeneous
from .dual import BlockSpace
from .errors import NotHomogeneousError, QuiverError
from .linalg import Matrix, Subspace, kernel
from .quiver import Arrow, Path, Quiver

RET_PREFIX = "ret:"


@dataclass(frozen=True)
class Twist:
    """Diagonal graded automorphism: every arrow is scaled by a unit."""

    kind: str
    scalars: tuple  # ((arrow name, Fraction), ...)

    @classmethod
    def identity(cls, q: Quiver) -> "Twist":
        return cls("identity", tuple((a.name, Fraction(1)) for a in q.arrows))

    @classmethod
    def nu(cls, q: Quiver, n: int) -> "Twist":
        s = Fraction((-1) ** n)
        return cls(f"nu({n})", tuple((a.name, s) for a in q.arrows))

    @classmethod
    def named(cls, name: str, q: Quiver, n: int) -> "Twist":
        if name in ("id", "identity"):
            return cls.identity(q)
        if name == "nu":
            return cls.nu(q, n)
        raise ValueError(f"unknown twist {name!r}")

    def on_path(self, p: Path) -> Fraction:
        table = dict(self.scalars)
        out = Fraction(1)
        for a in p.arrows:
            out *= table[a]
        return out

    @property
    def is_identity(self) -> bool:
        return all(s == 1 for _, s in self.scalars)


@dataclass(frozen=True)
class ReturningArrowQuiver:
    quiver: Quiver  # original arrows followed by one returning arrow per top path
    base: Quiver
    returning: tuple  # ((name, p), ...) with p in M_n

    @property
    def returning_map(self) -> dict:
        return dict(self.returning)

    def arrow_for(self, p: Path) -> str:
        for name, q in self.returning:
            if q == p:
                return name
        raise KeyError(f"no returning arrow for {p}")

    def is_returning(self, name: str) -> bool:
        return name in self.returning_map

    def count_returning(self, p: Path) -> int:
        rm = self.returning_map
        return sum(1 for a in p.arrows if a in rm)

    def mixed_paths(self) -> list[Path]:
        return [p for p in self.quiver.all_paths(2) if self.count_returning(p) == 1]


def returning_arrow_quiver(gb: GradedBasis, n: int) -> ReturningArrowQuiver:
    if require_homogeneous(gb) != n:
        raise NotHomogeneousError(f"algebra is not {n}-homogeneous")
    base = gb.quiver
    taken = set(base.arrow_index)
    ret = []
    arrows = list(base.arrows)
    for p in gb.basis(n):
        name = RET_PREFIX + str(p)
        if name in taken:
            raise QuiverError(f"returning arrow name {name!r} clashes with an existing arrow")
        taken.add(name)
        arrows.append(Arrow(name, p.target, p.source))
        ret.append((name, p))
    return ReturningArrowQuiver(Quiver(base.vertices, tuple(arrows)), base, tuple(ret))


def _add(acc: dict, key, c) -> None:
    v = acc.get(key, Fraction(0)) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


class TrivExtAlgebra:
    """Structure constants of ``Lambda ⊕ D(Lambda)`` with a diagonal twist."""

    def __init__(self, gb: GradedBasis, n: int, twist: Twist):
        if gb.max_degree < n + 1:
            gb.extend(n + 1)
        self.gb = gb
        self.n = n
        self.twist = twist

    def untwisted(self) -> "TrivExtAlgebra":
        return TrivExtAlgebra(self.gb, self.n, Twist.identity(self.gb.quiver))

    def basis(self) -> list:
        out = []
        for t in range(self.n + 1):
            out.extend(("L", m) for m in self.gb.basis(t))
        for t in range(self.n + 1):
            out.extend(("D", m) for m in self.gb.basis(t))
        return out

    @property
    def dim(self) -> int:
        return len(self.basis())

    def degree(self, key) -> int:
        kind, m = key
        return len(m) if kind == "L" else self.n + 1 - len(m)

    def degree_dims(self) -> list[int]:
        dims = [0] * (self.n + 2)
        for key in self.basis():
            dims[self.degree(key)] += 1
        return dims

    def _basis_product(self, k1, k2) -> dict:
        (s1, a), (s2, b) = k1, k2
        gb = self.gb
        out: dict = {}
        if s1 == "L" and s2 == "L":
            if a.composable_after(b):
                for m, c in gb.multiply(a, b).items():
                    out[("L", m)] = c
        elif s1 == "L" and s2 == "D":
            # (a . b*)(z) = b*(z a)
            t = len(b) - len(a)
            if t >= 0 and a.source == b.source:
                for z in gb.block_basis(t, a.target, b.target):
                    c = gb.multiply(z, a).coeff(b)
                    if c:
                        out[("D", z)] = c
        elif s1 == "D" and s2 == "L":
            # (a* . sigma(b))(z) = sigma(b) a*(b z)
            t = len(a) - len(b)
            if t >= 0 and b.target == a.target:
                sb = self.twist.on_path(b)
                for z in gb.block_basis(t, a.source, b.source):
                    c = gb.multiply(b, z).coeff(a)
                    if c:
                        out[("D", z)] = sb * c
        return out

    def multiply(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for k1, c1 in x.items():
            for k2, c2 in y.items():
                for k, c in self._basis_product(k1, k2).items():
                    _add(out, k, c1 * c2 * c)
        return out

    def unit(self, v: str) -> dict:
        return {("L", Path.trivial(v)): Fraction(1)}


def trivext_multiply(alg: TrivExtAlgebra, x: dict, y: dict) -> dict:
    return alg.multiply(x, y)


def mu_sigma(raq: ReturningArrowQuiver, alg: TrivExtAlgebra, path: Path) -> dict:
    """Image of a path of the returning-arrow quiver in the trivial extension."""
    if path.is_trivial:
        return alg.unit(path.source)
    rm = raq.returning_map
    out = None
    for name in path.arrows:
        if name in rm:
            gen = {("D", rm[name]): Fraction(1)}
        else:
            gen = {("L", raq.base.arrow_path(name)): Fraction(1)}
        out = gen if out is None else alg.multiply(gen, out)
        if not out:
            return {}
    return out


def _image_matrix(raq, alg, paths: list[Path]) -> Matrix:
    images = [mu_sigma(raq, alg, p) for p in paths]
    keys = sorted({k for im in images for k in im}, key=lambda k: (k[0], raq.base.path_key(k[1]), k[1].source))
    return Matrix.from_rows(([im.get(k, Fraction(0)) for im in images] for k in keys), len(paths))


def _mixed_blocks(raq: ReturningArrowQuiver) -> list[BlockSpace]:
    grouped: dict = {}
    for p in raq.mixed_paths():
        grouped.setdefault((p.source, p.target), []).append(p)
    vi = raq.quiver.vertex_index
    key = raq.quiver.path_key
    return [
        BlockSpace(raq.quiver, 2, i, j, tuple(sorted(ps, key=key, reverse=True)))
        for (i, j), ps in sorted(grouped.items(), key=lambda kv: (vi[kv[0][0]], vi[kv[0][1]]))
    ]


def mixed_kernel(raq: ReturningArrowQuiver, alg: TrivExtAlgebra) -> list[LinComb]:
    """Canonical basis of ``Ker mu`` on the mixed block, for ``alg``'s own twist."""
    out = []
    for space in _mixed_blocks(raq):
        ker = kernel(_image_matrix(raq, alg, list(space.paths)))
        out.extend(space.elements(ker))
    return out


def twist_mixed(raq: ReturningArrowQuiver, twist: Twist, elements: Iterable[LinComb]) -> list[LinComb]:
    """Apply the twist to the arrow of every ``beta_p ⊗ alpha`` term (``alpha`` traversed first)."""
    rm = raq.returning_map

    def scale(p: Path, c: Fraction) -> Fraction:
        if p.arrows[1] in rm:
            return c * twist.on_path(raq.base.arrow_path(p.arrows[0]))
        return c

    return [x.map_coeffs(scale) for x in elements]


def _canonical(raq: ReturningArrowQuiver, elements: list[LinComb]) -> list[LinComb]:
    out = []
    spaces = {(s.source, s.target): s for s in _mixed_blocks(raq)}
    grouped: dict = {}
    for x in elements:
        grouped.setdefault((x.source, x.target), []).append(x)
    for key, space in spaces.items():
        out.extend(space.elements(space.span(grouped.get(key, ()))))
    return out


@dataclass
class TrivExtRelations:
    raq: ReturningArrowQuiver
    twist: Twist
    rho: tuple
    rho_M: tuple
    rho_0: tuple
    rho_sigma_0: tuple
    mixed_dim: int
    mixed_rank: int
    degree2_rank: int

    @property
    def relations(self) -> tuple:
        return self.rho + self.rho_M + self.rho_sigma_0

    @property
    def presentation(self) -> Presentation:
        return Presentation(self.raq.quiver, self.relations)


def trivext_relations(raq: ReturningArrowQuiver, alg: TrivExtAlgebra) -> TrivExtRelations:
    q = raq.quiver
    rm = raq.returning_map
    lam = alg.gb.presentation
    rho = tuple(LinComb({q.path(p.arrows): c for p, c in r.items()}) for r in lam.relations)
    rho_M = tuple(
        LinComb.of(p) for p in q.all_paths(2) if all(a in rm for a in p.arrows)
    )
    plain = alg.untwisted()
    rho_0 = tuple(mixed_kernel(raq, plain))
    rho_sigma_0 = tuple(_canonical(raq, twist_mixed(raq, alg.twist, rho_0)))
    mixed = raq.mixed_paths()
    mixed_rank = _image_matrix(raq, alg, mixed).rank() if mixed else 0
    all2 = q.all_paths(2)
    degree2_rank = _image_matrix(raq, alg, all2).rank() if all2 else 0
    return TrivExtRelations(raq, alg.twist, rho, rho_M, rho_0, rho_sigma_0,
                            len(mixed), mixed_rank, degree2_rank)


@dataclass
class QuadraticityReport:
    passed: bool
    cover_dims: list
    expected_dims: list
    message: str

    def as_dict(self) -> dict:
        return {"passed": self.passed, "cover_dims": self.cover_dims,
                "expected_dims": self.expected_dims, "message": self.message}


def is_trivext_quadratic(raq: ReturningArrowQuiver, alg: TrivExtAlgebra, guard: int | None = None,
                         rels: TrivExtRelations | None = None) -> QuadraticityReport:
    """Compare the quadratic cover ``kQ~/(rho~)`` with the graded dimensions of the extension."""
    n = alg.n
    top = max(guard or 0, n + 2)
    lam = alg.gb
    expected = [lam.dim(t) + (lam.dim(n + 1 - t) if 0 <= n + 1 - t <= n else 0) for t in range(n + 2)]
    expected += [0] * (top + 1 - len(expected))
    if not lam.presentation.is_quadratic:
        return QuadraticityReport(False, [], expected, "trivial extension not quadratic: base relations are not quadratic")
    rels = rels or trivext_relations(raq, alg)
    cover = GradedBasis(rels.presentation, top).dims()
    if cover == expected:
        return QuadraticityReport(True, cover, expected, "trivial extension is quadratic")
    bad = next(t for t, (a, b) in enumerate(zip(cover, expected)) if a != b)
    return QuadraticityReport(
        False, cover, expected,
        f"trivial extension not quadratic: quadratic cover has dimension {cover[bad]} "
        f"in degree {bad}, expected {expected[bad]}",
    )


@dataclass
class TrivialExtension:
    """Everything built from ``Lambda`` on the way to ``Delta_sigma Lambda``."""

    presentation: Presentation
    gb: GradedBasis
    n: int
    raq: ReturningArrowQuiver
    alg: TrivExtAlgebra
    relations: TrivExtRelations
    quadraticity: QuadraticityReport = field(default=None)

    @property
    def cover(self) -> Presentation:
        return self.relations.presentation


def trivial_extension(p: Presentation, twist: str = "nu", order: str = "lex") -> TrivialExtension:
    p = normalize_relations(p)
    gb = graded_basis(p, order=order)
    n = require_homogeneous(gb)
    raq = returning_arrow_quiver(gb, n)
    alg = TrivExtAlgebra(gb, n, Twist.named(twist, p.quiver, n))
    rels = trivext_relations(raq, alg)
    quad = is_trivext_quadratic(raq, alg, rels=rels)
    return TrivialExtension(p, gb, n, raq, alg, rels, quad)
