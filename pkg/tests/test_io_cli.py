import json
import os
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import FIXTURES_DIR, random_quadratic
from quiverdual import io
from quiverdual.cli import main
from quiverdual.dual import relation_span_equal
from quiverdual.errors import DocumentError
from quiverdual.fixtures import NAMED


def fx(name):
    return os.path.join(FIXTURES_DIR, f"{name}.json")


def doc(relations, arrows=None):
    return {
        "vertices": ["1", "2", "3"],
        "arrows": arrows or [{"name": "alpha", "from": "1", "to": "2"}, {"name": "beta", "from": "2", "to": "3"}],
        "relations": relations,
    }


@pytest.mark.parametrize("name", sorted(n for n in NAMED if os.path.exists(fx(n))))
def test_fixture_files_round_trip(name):
    path = fx(name)
    text = open(path, encoding="utf-8").read()
    p = io.parse(text)
    assert io.serialize(p) == text
    assert relation_span_equal(p, NAMED[name]())


def test_rationals():
    assert io.parse_rational("−1/2", "x") == Fraction(-1, 2)
    assert io.parse_rational(" 3 ", "x") == 3
    assert io.parse_rational(4, "x") == 4
    for bad in ["1/0", "one", "1//2", 0.5, True]:
        with pytest.raises(DocumentError):
            io.parse_rational(bad, "loc")
    p = io.from_dict(doc([[{"coeff": "−1/2", "path": ["alpha", "beta"]}]])).presentation
    assert io.to_dict(p)["relations"][0][0]["coeff"] == "-1/2"


def test_error_locations():
    with pytest.raises(DocumentError) as e:
        io.from_dict(doc([[{"coeff": "1", "path": ["alpha", "gamma"]}]]))
    assert e.value.location == "relations[0][0].path[1]"
    assert "unknown arrow 'gamma'" in str(e.value)
    with pytest.raises(DocumentError) as e:
        io.from_dict(doc([[{"coeff": "1", "path": ["beta", "alpha"]}]]))
    assert e.value.location == "relations[0][0].path"
    with pytest.raises(DocumentError) as e:
        io.from_dict(doc([[{"coeff": "1/x", "path": ["alpha", "beta"]}]]))
    assert e.value.location == "relations[0][0].coeff"
    with pytest.raises(DocumentError) as e:
        io.from_dict(doc([], arrows=[{"name": "a", "from": "1", "to": "9"}]))
    assert e.value.location == "arrows"
    with pytest.raises(DocumentError, match="unknown fields"):
        io.from_dict({**doc([]), "extra": 1})
    with pytest.raises(DocumentError, match="not valid JSON"):
        io.parse("{")
    with pytest.raises(DocumentError):
        io.from_dict({**doc([]), "n": -1})


def test_declared_n_kept():
    d = io.from_dict({**doc([]), "n": 1})
    assert d.n == 1
    assert json.loads(io.serialize(d.presentation, 1))["n"] == 1


@given(st.integers(0, 2**32 - 1))
def test_serialize_round_trip(seed):
    p = random_quadratic(random.Random(seed))
    text = io.serialize(p)
    back = io.parse(text)
    assert back == p
    assert io.serialize(back) == text


# -- command line -------------------------------------------------------------


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cli_check_and_hilbert(capsys):
    code, out, _ = run(capsys, "check", fx("beilinson"))
    assert code == 0
    assert "n-homogeneous: yes (n = 2)" in out
    assert "koszul witness: certified to depth 6" in out
    code, out, _ = run(capsys, "hilbert", fx("beilinson"), "--max-degree", "2")
    rows = [line.split("\t")[:2] for line in out.splitlines()[1:]]
    assert code == 0 and rows == [["0", "3"], ["1", "4"], ["2", "1"]]


def test_cli_dual(capsys):
    code, out, _ = run(capsys, "dual", fx("beilinson"))
    assert code == 0
    assert io.parse(out).render_relations() == ["b1.a0 - a1.b0"]


def test_cli_trivext_and_preproj(capsys):
    code, out, err = run(capsys, "trivext", fx("a3-rad2"))
    assert code == 0 and "trivial extension is quadratic" in err
    assert len(io.parse(out).relations) == 3
    code, out, err = run(capsys, "trivext", fx("beilinson"), "--twist", "id")
    assert code == 0 and "not quadratic" in err
    code, out, err = run(capsys, "preproj", fx("beilinson"), "--verify-oracle")
    assert code == 0 and "oracle agrees on all 4" in err
    assert len(io.parse(out).relations) == 5


def test_cli_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify-theorem", fx("a4-rad2"))
    assert code == 0 and out.rstrip().endswith("outcome: pass")
    code, out, err = run(capsys, "verify-theorem", fx("a2"))
    assert code == 1 and "hypothesis unmet" in err
    code, out, _ = run(capsys, "verify-theorem", fx("beilinson"), "--force", "--format", "machine")
    data = json.loads(out)
    assert code == 1 and data["forced"] and data["corroboration"]["status"] == "pass"


def test_cli_verify_is_deterministic(capsys):
    outs = {run(capsys, "verify-theorem", fx("a3-rad2"), "--format", "machine")[1] for _ in range(2)}
    assert len(outs) == 1


def test_cli_znq(capsys):
    code, out, err = run(capsys, "znq", fx("a3-rad2"), "--from", "-2", "--to", "2",
                         "--slice", fx("a3-staircase-slice"))
    assert code == 0 and "n is odd" in err
    assert len(io.parse(out).quiver.vertices) == 3
    code, _, err = run(capsys, "znq", fx("a3-rad2"), "--from", "-2", "--to", "2",
                       "--slice", fx("a3-nonconvex-slice"))
    assert code == 1 and "not convex" in err
    code, _, err = run(capsys, "znq", fx("a3-rad2"), "--from", "0", "--to", "1",
                       "--slice", fx("a3-staircase-slice"))
    assert code == 3 and "window too small" in err
    code, out, _ = run(capsys, "znq", fx("a3-rad2"), "--from", "0", "--to", "1")
    assert code == 0 and len(io.parse(out).quiver.vertices) == 6


def test_cli_bad_input(capsys, tmp_path):
    code, _, err = run(capsys, "check", str(tmp_path / "missing.json"))
    assert code == 3 and "cannot read file" in err
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc([[{"coeff": "1", "path": ["alpha", "gamma"]}]])))
    code, _, err = run(capsys, "dual", str(bad))
    assert code == 3 and "relations[0][0].path[1]" in err
    code, _, _ = run(capsys, "hilbert", fx("a2"), "--max-degree", "-1")
    assert code == 3
    code, _, _ = run(capsys, "nonsense")
    assert code == 3
    cyclic = tmp_path / "cyclic.json"
    cyclic.write_text(json.dumps({"vertices": ["1"], "arrows": [{"name": "x", "from": "1", "to": "1"}],
                                  "relations": [[{"coeff": "1", "path": ["x", "x"]}]]}))
    code, _, err = run(capsys, "verify-theorem", str(cyclic))
    assert code == 3 and "acyclic" in err
