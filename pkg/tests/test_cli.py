import io
import json
import math
import subprocess
import sys
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from partiality import simplex as sx
from partiality import spectra as sp
from partiality.cli import run_command
from partiality.documents import parse_state_document, serialize_document
from partiality.errors import InvariantViolation, MalformedJson, ResolutionTooLarge, SchemaViolation
from partiality.svg import classify_grid, emit_updown_svg


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(p)
    return write


# -- documents -----------------------------------------------------------------


def test_parse_examples():
    doc = parse_state_document(b'{"kind":"classical","p":[0.5,0.5]}')
    assert doc.kind == "classical" and doc.value == sx.uniform(2)
    with pytest.raises(InvariantViolation) as e:
        parse_state_document(b'{"kind":"classical","p":[0.5,0.6]}')
    assert e.value.detail.startswith("sum")
    rho = parse_state_document(b'{"kind":"density","re":[[0.5,0],[0,0.5]],"im":[[0,0],[0,0]]}').value
    assert np.allclose(rho.matrix, np.eye(2) / 2)


def test_rational_entries_select_exact_mode():
    doc = parse_state_document('{"kind":"classical","p":[[1,3],[2,3],0]}')
    assert doc.value.exact and doc.value.p == (F(1, 3), F(2, 3), 0)
    mixed = parse_state_document('{"kind":"classical","p":[[1,4],0.75]}')
    assert not mixed.value.exact


@pytest.mark.parametrize("text,err,loc", [
    (b"{not json", MalformedJson, "/"),
    (b'{"kind":"classical","p":[NaN, 1]}', MalformedJson, "/"),
    (b'[1, 2]', SchemaViolation, "/"),
    (b'{"kind":"vector","p":[1]}', SchemaViolation, "/kind"),
    (b'{"kind":"classical"}', SchemaViolation, "/p"),
    (b'{"kind":"classical","p":[1,0],"extra":1}', SchemaViolation, "/extra"),
    (b'{"kind":"classical","p":[1,"0"]}', SchemaViolation, "/p/1"),
    (b'{"kind":"classical","p":[[1,0],[1,1]]}', SchemaViolation, "/p/0/1"),
    (b'{"kind":"classical","p":[1.5,-0.5]}', InvariantViolation, "/p/0"),
    (b'{"kind":"classical","p":[1]}', InvariantViolation, "/p"),
    (b'{"kind":"density","re":[[0.5,0],[0,0.5]],"im":[[0,0]]}', SchemaViolation, "/im/0"),
    (b'{"kind":"density","re":[[1.2,0],[0,-0.2]],"im":[[0,0],[0,0]]}', InvariantViolation, "/"),
    (b'{"kind":"interval","lo":2,"hi":1}', InvariantViolation, "/"),
    (b'{"kind":"observable","frame_re":[[1,1],[0,1]],"frame_im":[[0,0],[0,0]]}', InvariantViolation, "/"),
])
def test_parse_errors_carry_locations(text, err, loc):
    with pytest.raises(err) as e:
        parse_state_document(text)
    assert e.value.location == loc


def test_density_invariant_is_named():
    with pytest.raises(InvariantViolation) as e:
        parse_state_document(b'{"kind":"density","re":[[0.6,0],[0,0.6]],"im":[[0,0],[0,0]]}')
    assert e.value.detail.startswith("unit-trace")


def _roundtrip(text):
    doc = parse_state_document(text)
    again = parse_state_document(serialize_document(doc))
    assert again.kind == doc.kind
    assert serialize_document(again) == serialize_document(doc)
    return doc, again


def test_roundtrip_each_kind():
    rng = np.random.default_rng(0)
    u = sp.random_unitary(3, rng)
    docs = [
        '{"kind":"classical","p":[[1,6],[1,3],[1,2]]}',
        '{"kind":"classical","p":[0.1,0.2,0.7]}',
        serialize_document(sp.sample_density(3, rng)),
        '{"kind":"interval","lo":-1.5,"hi":2.25}',
        serialize_document(sp.Observable(u)),
    ]
    for text in docs:
        doc, again = _roundtrip(text)
        if doc.kind == "classical":
            assert doc.value == again.value
        elif doc.kind == "density":
            assert doc.value.close_to(again.value, 0)
        elif doc.kind == "observable":
            assert np.array_equal(doc.value.frame, again.value.frame)
        else:
            assert doc.value == again.value


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(0.001, 1), min_size=2, max_size=6))
def test_classical_float_roundtrip(ws):
    total = math.fsum(ws)
    vals = [w / total for w in ws]
    vals[0] += 1 - math.fsum(vals)
    x = sx.ClassicalState.of(vals)
    assert parse_state_document(serialize_document(x)).value == x


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 50), min_size=2, max_size=6).filter(any))
def test_classical_exact_roundtrip(ws):
    x = sx.ClassicalState.of([F(w, sum(ws)) for w in ws])
    assert parse_state_document(serialize_document(x)).value == x


# -- commands --------------------------------------------------------------------


def test_order_command(files):
    bot = files("bot.json", {"kind": "classical", "p": [[1, 3], [1, 3], [1, 3]]})
    e1 = files("e1.json", {"kind": "classical", "p": [1, 0, 0]})
    assert run("order", "--a", bot, "--b", e1)[:2] == (0, "true\n")
    code, out, _ = run("order", "--a", e1, "--b", bot, "--explain")
    assert code == 1 and out.startswith("false\nfailing index:")
    code, out, _ = run("order", "--a", bot, "--b", e1, "--explain")
    assert out == "true\npermutation: 0 1 2\n"


def test_order_command_on_densities(files):
    a = files("a.json", {"kind": "density", "re": [[1 / 3, 0], [0, 2 / 3]], "im": [[0, 0], [0, 0]]})
    b = files("b.json", {"kind": "density", "re": [[0.25, 0], [0, 0.75]], "im": [[0, 0], [0, 0]]})
    plus = files("p.json", {"kind": "density", "re": [[0.5, 0.5], [0.5, 0.5]], "im": [[0, 0], [0, 0]]})
    assert run("order", "--a", a, "--b", b)[:2] == (0, "true\n")
    code, out, _ = run("order", "--a", a, "--b", plus, "--explain")
    assert code == 1 and "do not commute" in out


def test_order_input_errors(files):
    bad = files("bad.json", '{"kind":"classical","p":[0.5,0.6]}')
    ok = files("ok.json", {"kind": "classical", "p": [0.5, 0.5]})
    three = files("three.json", {"kind": "classical", "p": [0.2, 0.3, 0.5]})
    code, _, err = run("order", "--a", bad, "--b", ok)
    assert code == 2 and json.loads(err)["error"] == "invariant-violation"
    assert run("order", "--a", ok, "--b", three)[0] == 2
    assert run("order", "--a", ok, "--b", "/nonexistent.json")[0] == 2


def test_entropy_command(files):
    bot = files("bot.json", {"kind": "classical", "p": [[1, 3], [1, 3], [1, 3]]})
    code, out, _ = run("entropy", "--in", bot)
    assert code == 0 and abs(float(out) - math.log(3)) < 1e-12
    code, out, _ = run("entropy", "--in", bot, "--base", "3")
    assert abs(float(out) - 1) < 1e-12


def test_irreducibles_and_hasse_commands():
    code, out, _ = run("irreducibles", "--n", "3", "--format", "json")
    body = json.loads(out)
    assert code == 0 and body["count"] == 7 and len(body["states"]) == 7
    code, out, _ = run("irreducibles", "--n", "2")
    assert out.splitlines()[0].startswith("{0,1}")
    code, out, _ = run("hasse", "--n", "3")
    assert out.count("->") == 9
    assert len(json.loads(run("hasse", "--n", "4", "--format", "json")[1])["nodes"]) == 15


def test_embed_command(files):
    x = files("x.json", {"kind": "classical", "p": [0.1, 0.6, 0.3]})
    y = files("y.json", {"kind": "classical", "p": [0.02, 0.9, 0.08]})
    code, out, _ = run("embed", "--in", x, "--b", y)
    body = json.loads(out)
    assert code == 0 and body["entropy_agrees"] and body["order"]["agrees"]
    assert body["spectrum"] == pytest.approx([0.6, 0.3, 0.1])


def test_derivative_and_fixpoint_commands():
    code, out, _ = run("derivative", "--f", "square", "--p", "2")
    assert code == 0 and abs(json.loads(out)["estimate"] - 4) < 1e-4
    code, out, _ = run("fixpoint", "--f", "half-plus-one", "--lo", "0", "--hi", "10", "--steps", "60")
    body = json.loads(out)
    assert body["lo"] <= 2 <= body["hi"] and body["width"] < 1e-9
    assert run("fixpoint", "--f", "cos", "--lo", "1", "--hi", "0")[0] == 2


def test_bad_flags_and_unknown_subcommand(capsys):
    assert run("bogus")[0] == 2
    assert run("order", "--a", "x.json")[0] == 2
    assert run("derivative", "--f", "tan", "--p", "0")[0] == 2


def test_check_command_is_deterministic():
    a = run("check", "--seed", "7", "--samples", "5", "--only", "simplex")
    b = run("check", "--seed", "7", "--samples", "5", "--only", "simplex")
    assert a == b and a[0] == 0
    body = json.loads(a[1])
    assert body["passed"] and all(p["name"].startswith("simplex") for p in body["properties"])
    assert run("check", "--only", "nothing")[0] == 2


def test_module_entry_point(tmp_path):
    p = tmp_path / "x.json"
    p.write_text('{"kind":"classical","p":[[1,2],[1,2]]}')
    r = subprocess.run([sys.executable, "-m", "partiality", "entropy", "--in", str(p)],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and abs(float(r.stdout) - math.log(2)) < 1e-12


# -- svg -------------------------------------------------------------------------


def test_updown_of_bottom_covers_everything():
    pts, up, down = classify_grid(sx.uniform(3, exact=True), 12)
    assert up.all() and down.sum() == 1


def test_updown_of_pure_state():
    pts, up, down = classify_grid(sx.pure(3, 0, exact=True), 12)
    assert up.sum() == 1 and tuple(pts[up][0]) == (12, 0, 0)


def test_down_set_of_half_half_lies_on_the_tie_line():
    x = sx.ClassicalState.of([F(1, 2), F(1, 2), 0])
    pts, up, down = classify_grid(x, 30)
    assert down.sum() > 1
    assert all(p[0] == p[1] for p in pts[down])


def test_grid_classifier_matches_decider():
    for x in (sx.ClassicalState.of([0.5, 0.3, 0.2]), sx.ClassicalState.of([F(1, 2), F(1, 4), F(1, 4)])):
        pts, up, down = classify_grid(x, 15)
        for k, p in enumerate(pts):
            y = sx.ClassicalState.of([F(int(v), 15) for v in p], exact=x.exact)
            assert up[k] == sx.bayesian_leq(x, y) and down[k] == sx.bayesian_leq(y, x)


def test_svg_output(files, tmp_path):
    x = sx.ClassicalState.of([0.5, 0.3, 0.2])
    svg = emit_updown_svg(x, 20)
    assert svg.startswith(b"<svg") and b'class="x"' in svg and b'class="bottom"' in svg
    assert svg == emit_updown_svg(x, 20)
    with pytest.raises(ResolutionTooLarge):
        emit_updown_svg(x, 2001)
    src = files("x.json", {"kind": "classical", "p": [0.5, 0.3, 0.2]})
    out = tmp_path / "x.svg"
    assert run("plot-updown", "--in", src, "--grid", "20", "--out", str(out))[0] == 0
    assert out.read_bytes() == svg
    code, _, err = run("plot-updown", "--in", src, "--grid", "5000")
    assert code == 2 and json.loads(err)["error"] == "resolution-too-large"
