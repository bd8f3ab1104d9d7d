import os
import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from quiverdual.algebra import LinComb, Presentation
from quiverdual.dual import degree_blocks
from quiverdual.fixtures import NAMED
from quiverdual.quiver import Quiver

settings.register_profile(
    "default",
    deadline=None,
    max_examples=int(os.environ.get("QD_EXAMPLES", "40")),
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

FIXTURES_DIR = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def random_acyclic_quiver(rng: random.Random, max_vertices=5, max_parallel=2) -> Quiver:
    k = rng.randint(2, max_vertices)
    arrows = []
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            if j - i > 2:
                continue
            for m in range(rng.randint(0, max_parallel)):
                arrows.append((f"x{i}{j}{'abc'[m]}", str(i), str(j)))
    return Quiver.build([str(i) for i in range(1, k + 1)], arrows)


def random_quadratic(rng: random.Random, max_vertices=5, max_parallel=2, density=0.5) -> Presentation:
    q = random_acyclic_quiver(rng, max_vertices, max_parallel)
    rels = []
    for space in degree_blocks(q, 2):
        for _ in range(space.dim):
            if rng.random() > density:
                continue
            v = [Fraction(rng.choice([-2, -1, 0, 0, 1, 1, 3])) for _ in range(space.dim)]
            if any(v):
                rels.append(space.element(v))
    return Presentation(q, tuple(rels))


@st.composite
def quadratic_presentations(draw, max_vertices=5, max_parallel=2):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_quadratic(random.Random(seed), max_vertices, max_parallel)


def rational_matrices(max_rows=5, max_cols=5, lo=-3, hi=3):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


@pytest.fixture(params=["a3-rad2", "beilinson"])
def named_fixture(request):
    return request.param, NAMED[request.param]()


def rel(q: Quiver, *terms) -> LinComb:
    return LinComb({q.path(names): Fraction(c) for c, names in terms})


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS):
        terminalreporter.write_line(line)
