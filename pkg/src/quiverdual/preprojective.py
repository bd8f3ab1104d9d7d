"""Relations of the (n+1)-preprojective algebra of ``Gamma = Lambda^{!,op}``.

The presentation lives on the same extended quiver ``Q~`` as the trivial
extension: Gamma's quadratic relations ``rho^perp`` plus one relation
``zeta_q`` for each ``q`` in ``M_{n-1}``.  The closed formula reads the
coefficients straight off ``expand``.  ``fstar_oracle`` reaches the same element
through the Koszul bimodule complex of Gamma instead, using only the subspaces
``K_t = ∩ V^a R V^b`` and the pairing with ``M_n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import GradedBasis, LinComb, Presentation, graded_basis, normalize_relations, require_homogeneous
from .dual import BlockSpace, degree_blocks, quadratic_dual
from .errors import DegreeNotComputedError, InconsistencyError, NotQuadraticError, QuiverError
from .linalg import Matrix, Subspace
from .quiver import Path, Quiver
from .resolution import KoszulReport, koszul_witness
from .trivext import ReturningArrowQuiver, returning_arrow_quiver


@dataclass
class StructureCoefficients:
    gb: GradedBasis
    n: int
    raq: ReturningArrowQuiver
    left: dict   # (arrow, q) -> expand(arrow . q) over M_n
    right: dict  # (q, arrow) -> expand(q . arrow) over M_n

    def a_left(self, alpha: str, q: Path, p: Path) -> Fraction:
        return self.left.get((alpha, q), LinComb()).coeff(p)

    def a_right(self, q: Path, alpha: str, p: Path) -> Fraction:
        return self.right.get((q, alpha), LinComb()).coeff(p)


def structure_coefficients(gb: GradedBasis, n: int, raq: ReturningArrowQuiver | None = None) -> StructureCoefficients:
    if n < 1:
        raise QuiverError("structure coefficients need n >= 1")
    if gb.max_degree < n:
        raise DegreeNotComputedError(f"graded basis only reaches degree {gb.max_degree}, need {n}")
    raq = raq or returning_arrow_quiver(gb, n)
    q = gb.quiver
    left, right = {}, {}
    for m in gb.basis(n - 1):
        for a in q.arrows_from(m.target):
            left[(a.name, m)] = gb.multiply(q.arrow_path(a.name), m)
        for a in q.arrows_to(m.source):
            right[(m, a.name)] = gb.multiply(m, q.arrow_path(a.name))
    return StructureCoefficients(gb, n, raq, left, right)


def zeta(sc: StructureCoefficients, q: Path) -> LinComb:
    """``sum a^{alpha,q}_p beta_p alpha + (-1)^n sum a^{q,alpha}_p alpha beta_p``."""
    qt = sc.raq.quiver
    sign = Fraction((-1) ** sc.n)
    terms: dict = {}
    for (alpha, m), x in sc.left.items():
        if m != q:
            continue
        for p, c in x.items():
            path = qt.path([alpha, sc.raq.arrow_for(p)])
            terms[path] = terms.get(path, 0) + c
    for (m, alpha), x in sc.right.items():
        if m != q:
            continue
        for p, c in x.items():
            path = qt.path([sc.raq.arrow_for(p), alpha])
            terms[path] = terms.get(path, 0) + sign * c
    return LinComb(terms)


# -- Koszul bimodule complex of Gamma ---------------------------------------


def _concat(q: Quiver, parts) -> LinComb:
    """Product of path-linear-combinations listed in traversal order."""
    out = None
    for part in parts:
        part = part if isinstance(part, LinComb) else LinComb.of(part)
        if out is None:
            out = dict(part.items())
            continue
        nxt: dict = {}
        for p, c in out.items():
            for r, d in part.items():
                if r.source == p.target:
                    k = r * p
                    nxt[k] = nxt.get(k, 0) + c * d
        out = nxt
    return LinComb(out or {})


def koszul_spaces(q: Quiver, rels, top: int) -> dict:
    """``K_t = ∩_{a+b=t-2} V^a R V^b`` for ``t <= top``, blockwise.

    Returns ``t -> {(i, j): (BlockSpace, Subspace)}``.
    """
    rels = [LinComb(r) if not isinstance(r, LinComb) else r for r in rels]
    out = {}
    for t in range(top + 1):
        blocks = {}
        for space in degree_blocks(q, t):
            if t < 2:
                blocks[(space.source, space.target)] = (space, Subspace.full(space.dim))
                continue
            inter = Subspace.full(space.dim)
            for a in range(t - 1):
                b = t - 2 - a
                vecs = []
                for r in rels:
                    for v in q.paths(b).get((space.source, r.source), ()):
                        for u in q.paths(a).get((r.target, space.target), ()):
                            vecs.append(space.vector(_concat(q, [v, r, u])))
                inter = inter & Subspace.span(vecs, space.dim)
            blocks[(space.source, space.target)] = (space, inter)
        out[t] = blocks
    return out


@dataclass
class KoszulBimoduleComplex:
    """``f_t: Gamma ⊗ K_t ⊗ Gamma -> Gamma ⊗ K_{t-1} ⊗ Gamma`` for ``t = 1..n``.

    Middle factors are written in path coordinates.  A term is keyed by
    ``(x, u, y)`` and stands for ``x ⊗ u ⊗ y``; read as a product, ``y`` is
    traversed first.
    """

    gb_lambda: GradedBasis
    gb_gamma: GradedBasis
    n: int
    spaces: dict

    def generators(self, t: int) -> list[LinComb]:
        out = []
        for space, sub in self.spaces[t].values():
            out.extend(space.elements(sub))
        return out

    def apply(self, t: int, elem: dict) -> dict:
        g = self.gb_gamma
        q = g.quiver
        sign = Fraction((-1) ** t)
        out: dict = {}

        def add(key, c):
            v = out.get(key, Fraction(0)) + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)

        for (x, u, y), c0 in elem.items():
            for p, c in (u.items() if isinstance(u, LinComb) else [(u, Fraction(1))]):
                last, first = p.arrows[-1], p.arrows[0]
                chi_l = Path(p.source, q.arrow(last).source, p.arrows[:-1])
                chi_r = Path(q.arrow(first).target, p.target, p.arrows[1:])
                for x2, d in g.multiply(x, q.arrow_path(last)).items():
                    add((x2, chi_l, y), c0 * c * d)
                for y2, d in g.multiply(q.arrow_path(first), y).items():
                    add((x, chi_r, y2), sign * c0 * c * d)
        return out

    def image(self, t: int, w: LinComb) -> dict:
        """``f_t(1 ⊗ w ⊗ 1)``."""
        start = {(Path.trivial(w.target), p, Path.trivial(w.source)): c for p, c in w.items()}
        return self.apply(t, start)

    def matrix(self, t: int) -> tuple[list, Matrix]:
        gens = self.generators(t)
        images = [self.image(t, w) for w in gens]
        keys = sorted({k for im in images for k in im}, key=lambda k: tuple(map(str, k)))
        return keys, Matrix.from_rows(([im.get(k, Fraction(0)) for im in images] for k in keys), len(gens))

    def composite_vanishes(self, t: int) -> bool:
        """``f_{t-1} f_t = 0`` on every generator of ``K_t``."""
        return all(not self.apply(t - 1, self.image(t, w)) for w in self.generators(t))

    def squares_vanish(self) -> bool:
        return all(self.composite_vanishes(t) for t in range(2, self.n + 1))


def koszul_complex_maps(gb_lambda: GradedBasis, gb_gamma: GradedBasis, n: int) -> KoszulBimoduleComplex:
    q = gb_gamma.quiver
    spaces = koszul_spaces(q, gb_gamma.presentation.relations, n)
    return KoszulBimoduleComplex(gb_lambda, gb_gamma, n, spaces)


def fstar_oracle(cx: KoszulBimoduleComplex, raq: ReturningArrowQuiver, q: Path) -> LinComb:
    """``f_n^*(q^*)`` projected onto the arrows of ``Q~``, with ``beta_p`` for ``p in M_n``.

    ``K_n`` is paired with the span of ``M_n``; inverting that pairing turns the
    coefficients on the ``K_n`` generators into coefficients on the ``p``.
    """
    n = cx.n
    lam = cx.gb_lambda
    qt = raq.quiver
    sign = Fraction((-1) ** n)
    terms: dict = {}
    for (i, j), (space, sub) in cx.spaces[n].items():
        ms = lam.block_basis(n, i, j)
        if not ms or sub.dim == 0:
            continue
        ws = space.elements(sub)
        if len(ws) != len(ms):
            raise InconsistencyError(f"K_{n} block {i}->{j} has dimension {len(ws)}, expected {len(ms)}")
        pair = Matrix.from_rows([[w.coeff(p) for w in ws] for p in ms], len(ws))
        x = pair.inverse()
        for jdx, w in enumerate(ws):
            cl: dict = {}
            cr: dict = {}
            for p, c in w.items():
                if p.arrows[:-1] == q.arrows and p.source == q.source:
                    cl[p.arrows[-1]] = cl.get(p.arrows[-1], 0) + c
                if p.arrows[1:] == q.arrows and p.target == q.target:
                    cr[p.arrows[0]] = cr.get(p.arrows[0], 0) + c
            for pidx, m in enumerate(ms):
                xjp = x.rows[jdx][pidx]
                if not xjp:
                    continue
                beta = raq.arrow_for(m)
                for alpha, c in cl.items():
                    path = qt.path([alpha, beta])
                    terms[path] = terms.get(path, 0) + c * xjp
                for alpha, c in cr.items():
                    path = qt.path([beta, alpha])
                    terms[path] = terms.get(path, 0) + sign * c * xjp
    return LinComb(terms)


# -- the presentation --------------------------------------------------------


@dataclass
class PreprojPresentation:
    raq: ReturningArrowQuiver
    rho_perp: tuple
    zeta_index: dict  # q -> zeta_q
    n: int
    koszul: KoszulReport | None = field(default=None)

    @property
    def rho_M_perp(self) -> tuple:
        return tuple(self.zeta_index.values())

    @property
    def relations(self) -> tuple:
        return self.rho_perp + tuple(z for z in self.rho_M_perp if not z.is_zero)

    @property
    def presentation(self) -> Presentation:
        return Presentation(self.raq.quiver, self.relations)


def zeta_rank(raq: ReturningArrowQuiver, zetas) -> int:
    """Rank of the zeta family inside the mixed part of ``kQ~_2``."""
    total = 0
    groups: dict = {}
    for z in zetas:
        if not z.is_zero:
            groups.setdefault((z.source, z.target), []).append(z)
    for (i, j), zs in groups.items():
        total += BlockSpace.of(raq.quiver, 2, i, j).span(zs).dim
    return total


def preproj_presentation(p: Presentation, gb: GradedBasis | None = None, depth: int | None = None,
                         check_koszul: bool = False) -> PreprojPresentation:
    """``Pi(Lambda^{!,op}) = kQ~/(rho^perp ∪ rho_{M perp})`` from a quadratic ``Lambda``."""
    p = normalize_relations(p)
    if not p.is_quadratic:
        raise NotQuadraticError("preprojective presentation needs a quadratic presentation")
    if not p.quiver.is_acyclic():
        raise QuiverError("preprojective presentation needs an acyclic quiver")
    gb = gb or graded_basis(p)
    n = require_homogeneous(gb)
    if n < 1:
        raise QuiverError("preprojective presentation needs n >= 1")
    raq = returning_arrow_quiver(gb, n)
    report = koszul_witness(p, depth or max(2 * (n + 1), 6), gb) if check_koszul else None
    sc = structure_coefficients(gb, n, raq)
    zetas = {m: zeta(sc, m) for m in gb.basis(n - 1)}
    rank = zeta_rank(raq, zetas.values())
    if rank != len(zetas) or rank != gb.dim(n - 1):
        raise InconsistencyError(f"zeta family has rank {rank}, expected {gb.dim(n - 1)}")
    dual = quadratic_dual(p)
    rho_perp = tuple(LinComb({raq.quiver.path(x.arrows): c for x, c in r.items()}) for r in dual.relations)
    return PreprojPresentation(raq, rho_perp, zetas, n, report)


def oracle_agrees(p: Presentation) -> dict:
    """``{q: (zeta_q, oracle_q)}`` for every ``q`` in ``M_{n-1}``; used by tests and the CLI."""
    p = normalize_relations(p)
    gb = graded_basis(p)
    n = require_homogeneous(gb)
    raq = returning_arrow_quiver(gb, n)
    sc = structure_coefficients(gb, n, raq)
    dual = quadratic_dual(p)
    gg = GradedBasis(dual, n)
    cx = koszul_complex_maps(gb, gg, n)
    return {m: (zeta(sc, m), fstar_oracle(cx, raq, m)) for m in gb.basis(n - 1)}
