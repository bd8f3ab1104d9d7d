"""Mechanical check of ``Pi(Lambda^{!,op}) = (Delta_nu Lambda)^{!,op}``.

Both sides are relation spaces in ``kQ~_2``.  The left one is built from the
trivial extension (``rho ∪ rho_M ∪ rho_{nu,0}``), the right one from the
structure coefficients (``rho^perp ∪ {zeta_q}``).  The theorem is the statement
that they are orthogonal complements of each other in every block.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .algebra import GradedBasis, Presentation, graded_basis, homogeneity_degree, normalize_relations
from .dual import BlockSpace, block_spans, pairing, quadratic_dual
from .errors import AmbientMismatchError, InconsistencyError, NotQuadraticError, QuiverError
from .linalg import Subspace
from .preprojective import PreprojPresentation, preproj_presentation
from .resolution import koszul_witness
from .trivext import TrivialExtension, trivial_extension

STAGES = (
    "n-homogeneous",
    "trivext-quadratic",
    "koszul-witness",
    "orthogonality",
    "dimension-sum",
    "complement-equality",
)
HYPOTHESES = STAGES[:3]

PASS, UNMET, VIOLATION = 0, 1, 2


@dataclass
class Stage:
    name: str
    passed: bool | None  # None: skipped
    detail: str

    @property
    def status(self) -> str:
        return "skip" if self.passed is None else ("pass" if self.passed else "FAIL")


@dataclass
class VerificationReport:
    name: str
    depth: int
    n: int | None = None
    stages: list = field(default_factory=list)
    corroboration: Stage | None = None
    dims: dict = field(default_factory=dict)
    blocks: list = field(default_factory=list)  # rows of the kQ~_2 block table
    diagnostics: list = field(default_factory=list)
    forced: bool = False

    def stage(self, name: str) -> Stage | None:
        return next((s for s in self.stages if s.name == name), None)

    @property
    def passed(self) -> bool:
        checks = self.stages + ([self.corroboration] if self.corroboration else [])
        return len(self.stages) == len(STAGES) and all(s.passed for s in checks)

    @property
    def hypothesis_unmet(self) -> bool:
        return any(s.passed is False for s in self.stages if s.name in HYPOTHESES)

    @property
    def exit_code(self) -> int:
        if self.passed:
            return PASS
        return UNMET if self.hypothesis_unmet else VIOLATION

    @property
    def outcome(self) -> str:
        return {PASS: "pass", UNMET: "hypothesis unmet", VIOLATION: "theorem violation"}[self.exit_code]

    def as_dict(self) -> dict:
        def st(s):
            return {"name": s.name, "status": s.status, "detail": s.detail}

        return {
            "name": self.name,
            "n": self.n,
            "depth": self.depth,
            "forced": self.forced,
            "outcome": self.outcome,
            "exit_code": self.exit_code,
            "stages": [st(s) for s in self.stages],
            "corroboration": st(self.corroboration) if self.corroboration else None,
            "dims": self.dims,
            "blocks": self.blocks,
            "diagnostics": self.diagnostics,
        }

    def to_machine(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        lines = [f"theorem check for {self.name} (n = {self.n}, depth {self.depth})"]
        for k, s in enumerate(self.stages, 1):
            lines.append(f"  [{s.status}] {k} {s.name}: {s.detail}")
        for name in STAGES[len(self.stages):]:
            lines.append(f"  [skip] - {name}: not reached")
        if self.corroboration:
            c = self.corroboration
            lines.append(f"  [{c.status}] corroboration: {c.detail}")
        if self.dims:
            lines.append("graded dimensions:")
            for key in sorted(self.dims):
                lines.append(f"  {key}: {' '.join(map(str, self.dims[key]))}")
        if self.blocks:
            lines.append("blocks of kQ~_2 (source->target: paths, rho~nu, rho~*, complement):")
            for b in self.blocks:
                mark = "yes" if b["complement"] else "no"
                lines.append(f"  {b['source']}->{b['target']}: {b['paths']}, {b['rho_nu']}, {b['rho_star']}, {mark}")
        for d in self.diagnostics:
            lines.append(f"note: {d}")
        lines.append(f"outcome: {self.outcome}")
        return "\n".join(lines) + "\n"


def _kind(raq, p) -> str:
    return ("VV", "N", "MM")[raq.count_returning(p)]


def verify_orthogonality(lhs, rhs) -> bool:
    """Every pairing between the two lists vanishes; elements in different blocks are ignored."""
    for z in lhs:
        for w in rhs:
            if z.is_zero or w.is_zero:
                continue
            if (z.source, z.target, z.degree) != (w.source, w.target, w.degree):
                continue
            if pairing(z, w) != 0:
                return False
    return True


def _check_blockwise_orthogonality(lhs, rhs) -> bool:
    """Like ``verify_orthogonality`` but insists both lists sit in degree-2 blocks."""
    for x in list(lhs) + list(rhs):
        if not x.is_zero and x.degree != 2:
            raise AmbientMismatchError("orthogonality is checked in kQ~_2 only")
    return verify_orthogonality(lhs, rhs)


def _restricted(space: BlockSpace, keep) -> BlockSpace:
    return BlockSpace(space.quiver, space.degree, space.source, space.target,
                      tuple(p for p in space.paths if keep(p)))


def _span_in(space: BlockSpace, elements) -> Subspace:
    inside = {p for p in space.paths}
    rows = [x for x in elements if x.source == space.source and x.target == space.target
            and all(p in inside for p in x)]
    return space.span(rows)


@dataclass
class DimsComparison:
    depth: int
    rows: list  # per degree: {"degree", "a", "b", "blocks": {"i->j": [da, db]}, "equal"}

    @property
    def equal(self) -> bool:
        return all(r["equal"] for r in self.rows)

    @property
    def first_mismatch(self) -> int | None:
        return next((r["degree"] for r in self.rows if not r["equal"]), None)


def compare_graded_dims(a: Presentation, b: Presentation, depth: int) -> DimsComparison:
    if a.quiver != b.quiver:
        raise AmbientMismatchError("graded dimension comparison needs the same quiver")
    ga, gb = GradedBasis(a, depth), GradedBasis(b, depth)
    rows = []
    for t in range(depth + 1):
        da, db = ga.block_dims(t), gb.block_dims(t)
        keys = sorted(set(da) | set(db), key=str)
        blocks = {f"{i}->{j}": [da.get((i, j), 0), db.get((i, j), 0)] for i, j in keys}
        rows.append({"degree": t, "a": ga.dim(t), "b": gb.dim(t), "blocks": blocks, "equal": da == db})
    return DimsComparison(depth, rows)


def verify_main_theorem(p: Presentation, depth: int | None = None, order: str = "lex",
                        force: bool = False, name: str = "input") -> VerificationReport:
    """Run the six stages; with ``force`` the subspace stages run even when the trivial
    extension is not quadratic, but the outcome still records the unmet hypothesis."""
    p = normalize_relations(p)
    if not p.is_quadratic:
        raise NotQuadraticError("theorem check needs a quadratic presentation")
    if not p.quiver.is_acyclic():
        raise QuiverError("theorem check needs an acyclic quiver")
    gb = graded_basis(p, order=order)
    n = homogeneity_degree(gb)
    rep = VerificationReport(name, depth or 6, n, forced=force)
    rep.dims["Lambda"] = gb.dims()[: gb.top_degree + 1]

    # 1
    if n is None or n < 1:
        rep.stages.append(Stage(STAGES[0], False, "maximal bound paths have different lengths"
                                if n is None else "no arrows"))
        return rep
    rep.depth = depth if depth is not None else max(2 * (n + 1), 6)
    rep.stages.append(Stage(STAGES[0], True, f"every maximal bound path has length {n}"))

    # 2
    te: TrivialExtension = trivial_extension(p, twist="nu", order=order)
    quad = te.quadraticity
    rep.dims["Delta"] = te.alg.degree_dims()
    rep.dims["Delta quadratic cover"] = quad.cover_dims
    rep.stages.append(Stage(STAGES[1], quad.passed,
                            quad.message + ("" if quad.passed else "; theorem hypothesis unmet")))

    # 3
    gamma = quadratic_dual(p)
    gg = graded_basis(gamma)
    rep.dims["Gamma"] = gg.dims()[: gg.top_degree + 1]
    kl = koszul_witness(p, rep.depth, gb)
    kg = koszul_witness(gamma, rep.depth, gg)
    ok = kl.passed and kg.passed
    detail = (f"witnessed to depth {rep.depth} for Lambda and Gamma" if ok else
              f"Lambda: {kl.message}; Gamma: {kg.message}")
    rep.stages.append(Stage(STAGES[2], ok, detail))

    if not quad.passed and not force:
        return rep
    if not quad.passed:
        rep.diagnostics.append("stages 4-6 forced although the trivial extension is not quadratic")

    # 4-6
    try:
        pp = preproj_presentation(p, gb=gb)
    except InconsistencyError as exc:
        rep.stages.append(Stage(STAGES[3], False, f"could not build rho~*: {exc}"))
        return rep
    _subspace_stages(rep, te, pp, gb)
    _corroborate(rep, te, pp)
    return rep


def _subspace_stages(rep: VerificationReport, te: TrivialExtension, pp: PreprojPresentation, gb) -> None:
    raq = te.raq
    rels = te.relations
    lhs = list(rels.relations)
    rhs = list(pp.relations)

    # orthogonality: the lemma on N, then everything
    lemma = verify_orthogonality(rels.rho_sigma_0, pp.rho_M_perp)
    whole = _check_blockwise_orthogonality(lhs, rhs)
    bad = [(z, w) for z in rels.rho_sigma_0 for w in pp.rho_M_perp
           if (z.source, z.target) == (w.source, w.target) and pairing(z, w) != 0]
    for z, w in bad[:3]:
        k = raq.quiver.path_key
        rep.diagnostics.append(f"<{z.render(k)}, {w.render(k)}> = {pairing(z, w)}")
    rep.stages.append(Stage(STAGES[3], lemma and whole,
                            f"{len(rels.rho_sigma_0)} x {len(pp.rho_M_perp)} pairings on N vanish"
                            if lemma and whole else "nonzero pairing found"))

    # dimension sum and complement equality, block by block
    spans_l = block_spans(raq.quiver, lhs)
    spans_r = block_spans(raq.quiver, rhs)
    dim_ok = True
    comp_ok = True
    total = [0, 0, 0]
    for key, (space, a) in spans_l.items():
        b = spans_r[key][1]
        comp = a.complement() == b and b.complement() == a
        rep.blocks.append({"source": key[0], "target": key[1], "paths": space.dim,
                           "rho_nu": a.dim, "rho_star": b.dim, "complement": comp})
        total[0] += space.dim
        total[1] += a.dim
        total[2] += b.dim
        dim_ok &= a.dim + b.dim == space.dim
        comp_ok &= comp
        # forced pieces: rho against rho^perp on V⊗V, rho_M fills V_M⊗V_M, the lemma on N
        for kind, left, right in (
            ("VV", rels.rho, pp.rho_perp),
            ("N", rels.rho_sigma_0, pp.rho_M_perp),
            ("MM", rels.rho_M, ()),
        ):
            sub = _restricted(space, lambda p, kind=kind: _kind(raq, p) == kind)
            if not sub.dim:
                continue
            sa, sb = _span_in(sub, left), _span_in(sub, right)
            if sa.complement() != sb:
                comp_ok = False
                rep.diagnostics.append(f"{kind} part of block {key[0]}->{key[1]} is not a complement pair")
    rep.stages.append(Stage(STAGES[4], dim_ok,
                            f"{total[1]} + {total[2]} = {total[0]} = dim kQ~_2" if dim_ok
                            else f"{total[1]} + {total[2]} != {total[0]}"))
    rep.stages.append(Stage(STAGES[5], comp_ok,
                            "span(rho~nu)^perp = span(rho~*) in every block" if comp_ok
                            else "complement mismatch"))


def _corroborate(rep: VerificationReport, te: TrivialExtension, pp: PreprojPresentation) -> None:
    q = te.raq.quiver
    left = Presentation(q, tuple(te.relations.relations))
    dual_of_delta = quadratic_dual(left)
    cmp = compare_graded_dims(pp.presentation, dual_of_delta, rep.depth)
    rep.dims["Pi"] = [r["a"] for r in cmp.rows]
    rep.dims["Delta dual"] = [r["b"] for r in cmp.rows]
    detail = (f"graded dimensions agree through degree {rep.depth}" if cmp.equal
              else f"first mismatch in degree {cmp.first_mismatch}")
    rep.corroboration = Stage("corroboration", cmp.equal, detail)
