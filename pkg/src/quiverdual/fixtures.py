"""Small named presentations shared by the tests and the CLI demos."""

from __future__ import annotations

from .algebra import LinComb, Presentation
from .quiver import Quiver


def _rel(q: Quiver, *terms) -> LinComb:
    """``terms`` are ``(coeff, [arrow names in traversal order])`` pairs."""
    return LinComb({q.path(names): c for c, names in terms})


def linear_a(m: int, radical_square_zero: bool = False) -> Presentation:
    """Linearly oriented ``A_m``: vertices ``1..m``, arrows ``a1: 1->2, ...``.

    ``radical_square_zero`` kills every composite of two arrows.
    """
    if m < 1:
        raise ValueError("m must be positive")
    q = Quiver.build(range(1, m + 1), [(f"a{k}", k, k + 1) for k in range(1, m)])
    rels = []
    if radical_square_zero:
        rels = [_rel(q, (1, [f"a{k}", f"a{k + 1}"])) for k in range(1, m - 1)]
    return Presentation(q, tuple(rels))


def a3_named(radical_square_zero: bool = True) -> Presentation:
    """``A_3`` with arrows ``alpha: 1->2`` and ``beta: 2->3``."""
    q = Quiver.build(["1", "2", "3"], [("alpha", "1", "2"), ("beta", "2", "3")])
    rels = (_rel(q, (1, ["alpha", "beta"])),) if radical_square_zero else ()
    return Presentation(q, rels)


def beilinson() -> Presentation:
    """Arrows ``a0, b0: 0->1`` and ``a1, b1: 1->2`` with exterior relations."""
    q = Quiver.build(["0", "1", "2"], [("a0", "0", "1"), ("b0", "0", "1"), ("a1", "1", "2"), ("b1", "1", "2")])
    rels = (
        _rel(q, (1, ["a0", "b1"]), (1, ["b0", "a1"])),
        _rel(q, (1, ["a0", "a1"])),
        _rel(q, (1, ["b0", "b1"])),
    )
    return Presentation(q, rels)


def unequal_branches() -> Presentation:
    """``1 -> 2`` and ``1 -> 3 -> 4`` without relations."""
    q = Quiver.build(["1", "2", "3", "4"], [("a", "1", "2"), ("b", "1", "3"), ("c", "3", "4")])
    return Presentation(q, ())


NAMED = {
    "a3-rad2": lambda: a3_named(True),
    "a3-free": lambda: a3_named(False),
    "a2": lambda: linear_a(2),
    "beilinson": beilinson,
    "unequal-branches": unequal_branches,
    **{f"a{m}-rad2": (lambda m=m: linear_a(m, True)) for m in range(4, 8)},
}
