"""JSON quiver documents.

::

    {
      "vertices": ["1", "2", "3"],
      "arrows": [{"name": "alpha", "from": "1", "to": "2"}, ...],
      "relations": [[{"coeff": "1", "path": ["alpha", "beta"]}], ...],
      "n": 1
    }

Paths are listed in traversal order: ``["alpha", "beta"]`` walks ``alpha``
first.  Rendered relations elsewhere in the toolkit compose right to left, so
the same path prints as ``beta.alpha``.  Coefficients are rational strings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path as FsPath

from .algebra import LinComb, Presentation
from .errors import DocumentError, QuiverDualError, QuiverError
from .quiver import Arrow, Quiver

_KEYS = ("vertices", "arrows", "relations", "n")


@dataclass(frozen=True)
class QuiverDocument:
    presentation: Presentation
    n: int | None = None


def parse_rational(text, location: str) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise DocumentError("coefficient must be a string like \"-1/2\"", location)
    s = str(text).strip().replace("−", "-")
    try:
        value = Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise DocumentError(f"malformed rational {text!r}", location) from None
    return value


def _expect(cond: bool, message: str, location: str) -> None:
    if not cond:
        raise DocumentError(message, location)


def from_dict(data) -> QuiverDocument:
    _expect(isinstance(data, dict), "document must be an object", "$")
    extra = sorted(set(data) - set(_KEYS))
    _expect(not extra, f"unknown fields {extra}", "$")
    for key in ("vertices", "arrows"):
        _expect(key in data, "missing field", key)
    verts = data["vertices"]
    _expect(isinstance(verts, list), "must be a list", "vertices")
    for k, v in enumerate(verts):
        _expect(isinstance(v, str) and v != "", "vertex names must be nonempty strings", f"vertices[{k}]")
    arrows = []
    raw_arrows = data["arrows"]
    _expect(isinstance(raw_arrows, list), "must be a list", "arrows")
    for k, a in enumerate(raw_arrows):
        loc = f"arrows[{k}]"
        _expect(isinstance(a, dict) and set(a) == {"name", "from", "to"}, "arrow needs exactly name, from, to", loc)
        for f in ("name", "from", "to"):
            _expect(isinstance(a[f], str) and a[f] != "", "must be a nonempty string", f"{loc}.{f}")
        arrows.append(Arrow(a["name"], a["from"], a["to"]))
    try:
        q = Quiver(tuple(verts), tuple(arrows))
    except QuiverError as exc:
        raise DocumentError(str(exc), "arrows") from None
    rels = []
    raw_rels = data.get("relations", [])
    _expect(isinstance(raw_rels, list), "must be a list", "relations")
    for r, rel in enumerate(raw_rels):
        rloc = f"relations[{r}]"
        _expect(isinstance(rel, list) and rel, "relation must be a nonempty list of terms", rloc)
        terms = []
        for t, term in enumerate(rel):
            tloc = f"{rloc}[{t}]"
            _expect(isinstance(term, dict) and set(term) == {"coeff", "path"}, "term needs exactly coeff and path", tloc)
            c = parse_rational(term["coeff"], f"{tloc}.coeff")
            names = term["path"]
            _expect(isinstance(names, list) and names, "path must be a nonempty list of arrow names", f"{tloc}.path")
            for k, nm in enumerate(names):
                _expect(nm in q.arrow_index, f"unknown arrow {nm!r}", f"{tloc}.path[{k}]")
            try:
                terms.append((q.path(names), c))
            except QuiverError as exc:
                raise DocumentError(str(exc), f"{tloc}.path") from None
        rels.append(LinComb(terms))
    n = data.get("n")
    _expect(n is None or (isinstance(n, int) and not isinstance(n, bool) and n >= 0),
            "must be a nonnegative integer", "n")
    try:
        pres = Presentation(q, tuple(rels))
    except QuiverDualError as exc:
        raise DocumentError(str(exc), "relations") from None
    return QuiverDocument(pres, n)


def to_dict(p: Presentation, n: int | None = None) -> dict:
    q = p.quiver
    out = {
        "vertices": list(q.vertices),
        "arrows": [{"name": a.name, "from": a.source, "to": a.target} for a in q.arrows],
        "relations": [
            [{"coeff": str(c), "path": list(path.arrows)} for path, c in r.sorted_terms(q.path_key)]
            for r in p.relations
        ],
    }
    if n is not None:
        out["n"] = n
    return out


def parse(text: str) -> Presentation:
    return parse_document(text).presentation


def parse_document(text: str) -> QuiverDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc.msg}", f"line {exc.lineno}, column {exc.colno}") from None
    return from_dict(data)


def serialize(p: Presentation, n: int | None = None) -> str:
    return json.dumps(to_dict(p, n), indent=2, ensure_ascii=False) + "\n"


def load(path) -> QuiverDocument:
    path = FsPath(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read file: {exc.strerror}", str(path)) from None
    return parse_document(text)


def load_levels(path) -> dict:
    """Slice file: ``{"levels": {"1": 0, "2": 0, "3": -1}}``."""
    path = FsPath(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise DocumentError(f"cannot read file: {exc.strerror}", str(path)) from None
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc.msg}", f"line {exc.lineno}") from None
    _expect(isinstance(data, dict) and isinstance(data.get("levels"), dict), "needs a levels object", "$")
    for v, t in data["levels"].items():
        _expect(isinstance(t, int) and not isinstance(t, bool), "level must be an integer", f"levels.{v}")
    return dict(data["levels"])
