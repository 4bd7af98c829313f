"""Command-line interface: exit codes, JSON output, file side effects."""

import json

import pytest

from ohg.cli import main
from ohg.model import OrientedHypergraph, dump, load, make_Lk
from ohg.shunting import generate_optimal_shunting


def write(tmp_path, name, g):
    path = tmp_path / name
    dump(g, path)
    return str(path)


@pytest.fixture
def triangle_file(tmp_path):
    g = OrientedHypergraph.build(
        ["v1", "v2", "v3"], ["e1", "e2", "e3"],
        [("i1", "v1", "e1", 1), ("i2", "v2", "e1", -1),
         ("i3", "v2", "e2", 1), ("i4", "v3", "e2", -1),
         ("i5", "v3", "e3", 1), ("i6", "v1", "e3", 1)])
    return write(tmp_path, "triangle.json", g)


@pytest.fixture
def l3_file(tmp_path):
    return write(tmp_path, "l3.json", make_Lk(3, 3))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestValidateInfo:
    def test_validate_ok(self, capsys, triangle_file):
        code, out, _ = run(capsys, "validate", triangle_file)
        assert code == 0
        assert json.loads(out)["ok"] is True

    def test_validate_bad_file(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{broken")
        code, _, err = run(capsys, "validate", str(bad))
        assert code == 2
        assert "error" in json.loads(err)

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "validate", str(tmp_path / "nope.json"))
        assert code == 2

    def test_info(self, capsys, triangle_file):
        code, out, _ = run(capsys, "info", triangle_file)
        payload = json.loads(out)
        assert code == 0
        assert payload["vertices"] == 3
        assert payload["edges"] == 3
        assert payload["cyclomatic_number"] == 1
        assert payload["balanced"] is False
        assert payload["balanceable"] is True

    def test_info_human(self, capsys, triangle_file):
        code, out, _ = run(capsys, "info", triangle_file, "--human")
        assert code == 0
        assert "vertices" in out
        with pytest.raises(json.JSONDecodeError):
            json.loads(out)


class TestMatrixGamma:
    def test_matrix_default_field(self, capsys, triangle_file):
        code, out, _ = run(capsys, "matrix", triangle_file)
        payload = json.loads(out)
        assert code == 0
        assert payload["domain"] == "Q"
        assert payload["rows"] == ["v1", "v2", "v3"]
        assert payload["cols"] == ["e1", "e2", "e3"]
        assert payload["entries"] == [[1, 0, 1], [-1, 1, 0], [0, -1, 1]]

    def test_matrix_gf2_and_csv(self, capsys, tmp_path, triangle_file):
        csv_path = tmp_path / "m.csv"
        code, out, _ = run(capsys, "matrix", triangle_file,
                           "--field", "2", "--csv", str(csv_path))
        assert code == 0
        payload = json.loads(out)
        assert payload["domain"] == "GF(2)"
        assert payload["entries"][0] == [1, 0, 1]
        text = csv_path.read_text()
        assert text.splitlines()[0] == ",e1,e2,e3"

    def test_matrix_bad_field(self, capsys, triangle_file):
        code, _, err = run(capsys, "matrix", triangle_file,
                           "--field", "4")
        assert code == 2
        code, _, err = run(capsys, "matrix", triangle_file,
                           "--field", "weird")
        assert code == 2

    def test_gamma_dot(self, capsys, tmp_path, triangle_file):
        dot = tmp_path / "g.dot"
        code, out, _ = run(capsys, "gamma", triangle_file,
                           "--dot", str(dot))
        assert code == 0
        assert "graph" in dot.read_text()


class TestBalanceCommands:
    def test_balance_negative(self, capsys, triangle_file):
        code, out, _ = run(capsys, "balance", triangle_file,
                           "--certificate")
        payload = json.loads(out)
        assert code == 1
        assert payload["balanced"] is False
        assert payload["certificate"]["sign"] == -1

    def test_balanceable_yes(self, capsys, triangle_file):
        code, out, _ = run(capsys, "balanceable", triangle_file)
        assert code == 0
        assert json.loads(out)["balanceable"] is True

    def test_balanceable_no_with_certificate(self, capsys, l3_file):
        code, out, _ = run(capsys, "balanceable", l3_file,
                           "--certificate")
        payload = json.loads(out)
        assert code == 1
        assert payload["balanceable"] is False
        assert payload["certificate"]["kind"] == "cross"
        assert len(payload["certificate"]["paths"]) == 3

    def test_camion_roundtrip(self, capsys, tmp_path, triangle_file):
        out_path = tmp_path / "balanced.json"
        code, out, _ = run(capsys, "camion", triangle_file,
                           "--out", str(out_path))
        payload = json.loads(out)
        assert code == 0
        assert payload["balanced"] is True
        assert payload["strategy"] == "bfs"
        assert payload["seed"] == 0
        code2, out2, _ = run(capsys, "balance", str(out_path))
        assert code2 == 0
        assert json.loads(out2)["balanced"] is True

    def test_camion_unbalanceable_exit(self, capsys, l3_file):
        code, out, _ = run(capsys, "camion", l3_file)
        assert code == 1
        assert json.loads(out)["balanced"] is False

    def test_frustration_exact(self, capsys, triangle_file):
        code, out, _ = run(capsys, "frustration", triangle_file,
                           "--mode", "exact")
        payload = json.loads(out)
        assert code == 0
        assert payload["value"] == 1
        assert payload["exact"] is True
        assert len(payload["witness"]) == 1

    def test_frustration_undefined(self, capsys, l3_file):
        code, _, err = run(capsys, "frustration", l3_file,
                           "--mode", "exact")
        assert code == 2
        assert "balanceable" in json.loads(err)["error"]

    def test_frustration_seed_echoed(self, capsys, triangle_file):
        code, out, _ = run(capsys, "frustration", triangle_file,
                           "--mode", "local-search", "--seed", "7")
        payload = json.loads(out)
        assert code == 0
        assert payload["seed"] == 7
        assert payload["mode"] == "local-search"


class TestCircuits:
    def test_circuits_gf2(self, capsys, tmp_path):
        from ohg.model import make_complete_hypergraph
        path = write(tmp_path, "k3.json", make_complete_hypergraph(3, 1))
        code, out, _ = run(capsys, "circuits", path, "--field", "2")
        payload = json.loads(out)
        assert code == 0
        assert payload["count"] == 14
        supports = {tuple(c["edges"]) for c in payload["circuits"]}
        assert ("e4", "e5", "e6") in supports

    def test_max_size(self, capsys, tmp_path):
        from ohg.model import make_complete_hypergraph
        path = write(tmp_path, "k3.json", make_complete_hypergraph(3, 1))
        code, out, _ = run(capsys, "circuits", path, "--field", "3",
                           "--max-size", "3")
        assert code == 0
        assert json.loads(out)["count"] == 6

    def test_cap_exit_code(self, capsys, tmp_path, monkeypatch):
        from ohg.model import make_complete_hypergraph
        monkeypatch.setenv("OHG_MAX_SUBSETS", "5")
        path = write(tmp_path, "k3.json", make_complete_hypergraph(3, 1))
        code, _, err = run(capsys, "circuits", path, "--field", "q")
        assert code == 3
        assert "OHG_MAX_SUBSETS" in json.loads(err)["error"]


class TestShuntVerify:
    def test_valid_decomposition(self, capsys, tmp_path):
        g, d = generate_optimal_shunting(2)
        g_path = write(tmp_path, "shunt.json", g)
        d_path = tmp_path / "decomp.json"
        d_path.write_text(d.to_json())
        code, out, _ = run(capsys, "shunt-verify", g_path, str(d_path))
        payload = json.loads(out)
        assert code == 0
        assert payload["ok"] is True
        assert payload["balanceable"] is True
        assert payload["optimal"] is True

    def test_invalid_decomposition(self, capsys, tmp_path):
        g, d = generate_optimal_shunting(2)
        g_path = write(tmp_path, "shunt.json", g)
        broken = json.loads(d.to_json())
        broken["flowers"] = broken["flowers"][:-1]
        d_path = tmp_path / "decomp.json"
        d_path.write_text(json.dumps(broken))
        code, out, _ = run(capsys, "shunt-verify", g_path, str(d_path))
        payload = json.loads(out)
        assert code == 1
        assert payload["ok"] is False


class TestDemo:
    def test_fano_text(self, capsys):
        code, out, _ = run(capsys, "demo", "fano")
        assert code == 0
        assert "GF(2) circuits (14 total" in out
        assert "shared circuits: 13" in out

    def test_fano_deterministic(self, capsys):
        _, first, _ = run(capsys, "demo", "fano")
        _, second, _ = run(capsys, "demo", "fano")
        assert first == second

    def test_lk(self, capsys):
        code, out, _ = run(capsys, "demo", "lk", "--k", "5",
                           "--entrant", "2")
        payload = json.loads(out)
        assert code == 0
        assert payload["k"] == 5
        assert payload["minimum"] == 4
        assert payload["negative_circles"] == 4
        assert payload["verified"] is True

    def test_lk_bad_k(self, capsys):
        code, _, err = run(capsys, "demo", "lk", "--k", "1")
        assert code == 2
