import json

import pytest

from decograph import parse_decorated_graph, run_command, serialize_decorated_graph

WHEEL46 = """\
vertex W : x y z
edge x y
boundary z
alpha x 4
alpha y -4
alpha z 2
beta W x y 6
"""

WHEEL20 = """\
vertex W : x y z
edge x y
boundary z
alpha x 2
alpha y -2
alpha z 2
"""

WHEEL30 = WHEEL20.replace("alpha x 2", "alpha x 3").replace("alpha y -2", "alpha y -3")

FIG_A = """\
vertex A : x y u
vertex B : z w v
edge u v
alpha x 2
alpha y 0
alpha u 0
alpha v 0
alpha z 0
alpha w 2
"""


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in [
        ("wheel46", WHEEL46), ("wheel20", WHEEL20),
        ("wheel30", WHEEL30), ("fig_a", FIG_A),
    ]:
        p = tmp_path / f"{name}.dg"
        p.write_text(text)
        paths[name] = str(p)
    paths["dir"] = str(tmp_path)
    return paths


class TestValidate:
    def test_ok(self, files, capsys):
        assert run_command(["validate", files["wheel46"]]) == 0
        out = capsys.readouterr().out
        assert "ok: decorated graph" in out and "genus [1]" in out

    def test_missing_file(self, files, capsys):
        assert run_command(["validate", files["dir"] + "/nope.dg"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_syntax_error(self, tmp_path, capsys):
        p = tmp_path / "bad.dg"
        p.write_text("vertex W x y z\n")
        assert run_command(["validate", str(p)]) == 2
        assert "line 1" in capsys.readouterr().err


class TestInvariants:
    def test_json(self, files, capsys):
        assert run_command(["invariants", files["wheel46"], "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["genus"] == 1 and data["a_tilde"] == 2

    def test_needs_decoration(self, tmp_path, capsys):
        p = tmp_path / "bare.dg"
        p.write_text("vertex W : x y z\nedge x y\n")
        assert run_command(["invariants", str(p)]) == 2


class TestEquiv:
    def test_equivalent_pair(self, files, capsys):
        code = run_command(
            ["equiv", files["wheel46"], files["wheel20"], "--map", "z=z"]
        )
        assert code == 0
        assert "equivalent" in capsys.readouterr().out

    def test_inequivalent_pair(self, files, capsys):
        code = run_command(["equiv", files["wheel46"], files["wheel30"]])
        assert code == 1
        assert "not equivalent" in capsys.readouterr().out

    def test_bad_map(self, files, capsys):
        assert run_command(
            ["equiv", files["wheel46"], files["wheel20"], "--map", "zz"]
        ) == 2


class TestTransformers:
    def test_ih_then_validate(self, files, tmp_path, capsys):
        out = str(tmp_path / "moved.dg")
        assert run_command(
            ["ih", files["fig_a"], "--edge", "u-v", "--pairing", "b", "-o", out]
        ) == 0
        assert run_command(["validate", out]) == 0

    def test_ih_bad_edge(self, files, tmp_path):
        out = str(tmp_path / "moved.dg")
        assert run_command(
            ["ih", files["fig_a"], "--edge", "x-y", "--pairing", "b", "-o", out]
        ) == 2

    def test_plan_and_run_round_trip(self, files, tmp_path, capsys):
        script = str(tmp_path / "plan.moves")
        result = str(tmp_path / "result.dg")
        assert run_command(
            ["plan", files["wheel46"], files["wheel46"], "-o", script]
        ) == 0
        assert run_command(
            ["run", files["wheel46"], script, "-o", result]
        ) == 0
        g, dec = parse_decorated_graph(open(result).read())
        g0, dec0 = parse_decorated_graph(WHEEL46)
        assert (g, dec) == (g0, dec0)

    def test_normalize(self, files, tmp_path, capsys):
        out1 = str(tmp_path / "n1.dg")
        out2 = str(tmp_path / "n2.dg")
        assert run_command(["normalize", files["wheel46"], "-o", out1]) == 0
        rep1 = json.loads(capsys.readouterr().out.splitlines()[-1])
        assert run_command(["normalize", files["wheel20"], "-o", out2]) == 0
        rep2 = json.loads(capsys.readouterr().out.splitlines()[-1])
        assert rep1 == rep2
        assert open(out1).read() == open(out2).read()


class TestOrbitAndDot:
    def test_orbit(self, files, capsys):
        assert run_command(
            ["orbit", files["wheel30"], "--bound", "1", "--depth", "2"]
        ) == 0
        assert "classification constant on orbit: yes" in capsys.readouterr().out

    def test_dot_stdout(self, files, capsys):
        assert run_command(["dot", files["wheel46"]]) == 0
        assert capsys.readouterr().out.startswith("graph decorated {")

    def test_dot_file(self, files, tmp_path):
        out = str(tmp_path / "g.dot")
        assert run_command(["dot", files["wheel46"], "-o", out]) == 0
        assert open(out).read().startswith("graph decorated {")


class TestByteStability:
    def test_serializer_is_canonical_projection(self, files):
        for key in ("wheel46", "wheel20", "fig_a"):
            g, dec = parse_decorated_graph(open(files[key]).read())
            text = serialize_decorated_graph(g, dec)
            g2, dec2 = parse_decorated_graph(text)
            assert serialize_decorated_graph(g2, dec2) == text
