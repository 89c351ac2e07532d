import json
from fractions import Fraction

import pytest

from ribboncells import ordinary_graph, permgraph
from ribboncells.cli import main


@pytest.fixture
def theta_file(tmp_path):
    g = ordinary_graph([(0, 2, 4), (1, 3, 5)])
    f = tmp_path / "theta.json"
    f.write_text(permgraph.dumps(g))
    return f


class TestInspect:
    def test_text_report(self, theta_file, capsys):
        assert main(["inspect", str(theta_file)]) == 0
        out = capsys.readouterr().out
        assert "genus: 1" in out and "edges: 3" in out and "faces: 1" in out

    def test_json_report(self, theta_file, capsys):
        assert main(["inspect", str(theta_file), "--format", "json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["genus"] == 1 and data["aut_order"] == 6

    def test_round_trip_lossless(self, theta_file, tmp_path, capsys):
        out = tmp_path / "copy.json"
        assert main(["inspect", str(theta_file), "--roundtrip", str(out)]) == 0
        assert permgraph.loads(out.read_text()) == permgraph.loads(
            theta_file.read_text())

    def test_dot_export(self, theta_file, tmp_path, capsys):
        dot = tmp_path / "g.dot"
        assert main(["inspect", str(theta_file), "--dot", str(dot)]) == 0
        text = dot.read_text()
        assert text.startswith("digraph") and text.count("->") == 3

    def test_malformed_file(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"half_edges": 6,,}')
        assert main(["inspect", str(bad)]) == 2
        assert "offset" in capsys.readouterr().err


class TestContract:
    def test_contract_to_stdout(self, theta_file, capsys):
        assert main(["contract", "--graph", str(theta_file), "--edges", "0"]) == 0
        g = permgraph.loads(capsys.readouterr().out)
        assert g.num_edges == 2 and len(g.vertices) == 1

    def test_forbidden_contraction(self, theta_file, capsys):
        assert main(["contract", "--graph", str(theta_file),
                     "--edges", "0,1,2"]) == 1
        assert "error" in capsys.readouterr().err


class TestEnumerateCmd:
    def test_writes_classes_and_index(self, tmp_path, capsys):
        out = tmp_path / "e03"
        assert main(["enumerate", "--genus", "0", "--faces", "3",
                     "--out", str(out)]) == 0
        index = json.loads((out / "index.json").read_text())
        assert index["count"] == 4
        for entry in index["classes"]:
            g = permgraph.loads((out / entry["file"]).read_text())
            assert g.num_edges == entry["edges"] == 3

    def test_all_cells_mode(self, tmp_path, capsys):
        out = tmp_path / "c11"
        assert main(["enumerate", "--genus", "1", "--faces", "1",
                     "--all-cells", "--out", str(out)]) == 0
        index = json.loads((out / "index.json").read_text())
        assert index["count"] == 3
        assert index["boundary"]

    def test_size_guard_exit(self, tmp_path, capsys):
        assert main(["enumerate", "--genus", "0", "--faces", "5",
                     "--out", str(tmp_path / "x")]) == 1
        assert "guard" in capsys.readouterr().err


class TestCellsCmd:
    def test_writes_polytopes(self, tmp_path, capsys):
        out = tmp_path / "cells"
        assert main(["cells", "--genus", "0", "--faces", "3",
                     "--perimeters", "3,5,7", "--out", str(out)]) == 0
        index = json.loads((out / "index.json").read_text())
        tops = [c for c in index["cells"] if not c["empty"]]
        assert tops
        one = json.loads((out / index["cells"][0]["file"]).read_text())
        assert "edge_charts" in one and "incidence" in one


class TestIntersectCmd:
    def test_values(self, capsys):
        assert main(["intersect", "--genus", "1", "--d", "1"]) == 0
        assert capsys.readouterr().out.strip() == "1/24"

    def test_ledger(self, tmp_path, capsys):
        ledger = tmp_path / "ledger.json"
        assert main(["intersect", "--genus", "0", "--d", "0,0,0",
                     "--ledger", str(ledger)]) == 0
        data = json.loads(ledger.read_text())
        assert data["value"] == "1/1"
        total = sum(Fraction(c["contribution"]) for c in data["cells"])
        assert total == 1

    def test_p_independence_flag(self, capsys):
        assert main(["intersect", "--genus", "0", "--d", "0,0,0",
                     "--check-p-independence"]) == 0

    def test_bad_exponents(self, capsys):
        assert main(["intersect", "--genus", "0", "--d", "1,1,1"]) == 1


class TestModel0Cmd:
    def test_points_parsing(self, capsys):
        assert main(["model0", "--points", "0,1,1/2+3i,inf"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["n"] == 4 and len(data["maps"]) == 4
        for m in data["maps"]:
            assert len(m["coords"]) == 3

    def test_coincident_points(self, capsys):
        assert main(["model0", "--points", "0,0,1"]) == 2


class TestCheckCmd:
    def test_suite_runs_clean(self, capsys):
        assert main(["check", "--suite", "alpha", "--seed", "5",
                     "--cases", "20"]) == 0
        assert "alpha: 20 cases, ok" in capsys.readouterr().out

    def test_unknown_suite_rejected(self, capsys):
        with pytest.raises(SystemExit):
            main(["check", "--suite", "nonsense"])

    def test_deterministic_given_seed(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        main(["check", "--suite", "contraction", "--seed", "9",
              "--cases", "10", "--report", str(a)])
        main(["check", "--suite", "contraction", "--seed", "9",
              "--cases", "10", "--report", str(b)])
        ra = json.loads(a.read_text())
        rb = json.loads(b.read_text())
        for x in ra + rb:
            x.pop("wall_time")
        assert ra == rb


class TestCache:
    def test_cache_env_round_trip(self, tmp_path, monkeypatch):
        from ribboncells.cli import cached_trivalent

        monkeypatch.setenv("RIBBONCELLS_CACHE", str(tmp_path))
        first = cached_trivalent(0, 3)
        assert (tmp_path / "trivalent_g0_n3.json").exists()
        second = cached_trivalent(0, 3)
        assert [permgraph.to_json_dict(g) for g in first] == \
            [permgraph.to_json_dict(g) for g in second]
