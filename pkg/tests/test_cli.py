import json

import pytest

from treeres.cli import main
from treeres.complexes import complex_from_json
from treeres.homology import betti_from_json
from treeres.resolution import free_complex_from_json, labeled_complex_from_json

from helpers import SIX_VAR_IDEAL_TEXT, STAR_IDEAL_TEXT

HOLLOW_JSON = json.dumps(
    {"vertices": ["a", "b", "c"], "facets": [["a", "b"], ["b", "c"], ["c", "a"]]}
)


@pytest.fixture
def six_var_file(tmp_path):
    path = tmp_path / "ideal.txt"
    path.write_text(SIX_VAR_IDEAL_TEXT)
    return str(path)


@pytest.fixture
def hollow_file(tmp_path):
    path = tmp_path / "hollow.json"
    path.write_text(HOLLOW_JSON)
    return str(path)


class TestVerify:
    def test_six_var_ideal(self, six_var_file, capsys):
        assert main(["verify", "--input", six_var_file]) == 0
        out = capsys.readouterr().out
        assert "pd(I)=1" in out
        assert "dual is quasi-tree (leaf order F1,F2,F3,F4)" in out
        assert "tree supports minimal resolution" in out

    def test_four_cycle_is_false_but_consistent(self, tmp_path, capsys):
        path = tmp_path / "cycle.txt"
        path.write_text("vars x1 x2 x3 x4\nx1*x2, x2*x3, x3*x4, x4*x1\n")
        assert main(["verify", "--input", str(path)]) == 1
        out = capsys.readouterr().out
        assert "pd(I)=2" in out
        assert "not a quasi-forest" in out

    def test_principal_full_support(self, tmp_path, capsys):
        path = tmp_path / "p.txt"
        path.write_text("x1*x2\n")
        assert main(["verify", "--input", str(path)]) == 0
        assert "pd(I)=0" in capsys.readouterr().out


class TestPd:
    def test_six_var(self, six_var_file, capsys):
        assert main(["pd", "--input", six_var_file]) == 0
        assert capsys.readouterr().out.strip() == "1"

    def test_principal(self, tmp_path, capsys):
        path = tmp_path / "p.txt"
        path.write_text("x1*x2\n")
        assert main(["pd", "--input", str(path)]) == 0
        assert capsys.readouterr().out.strip() == "0"


class TestDualAndSr:
    def test_dual_text(self, six_var_file, capsys):
        assert main(["dual", "--input", six_var_file]) == 0
        out = capsys.readouterr().out
        assert "F1 = {x2,x4,x5}" in out
        assert "F4 = {x1,x2,x3}" in out

    def test_dual_json_reparses(self, six_var_file, capsys):
        assert main(["dual", "--input", six_var_file, "--format", "json"]) == 0
        D = complex_from_json(json.loads(capsys.readouterr().out))
        assert [sorted(f) for f in D.facets][0] == ["x2", "x4", "x5"]

    def test_sr_both_directions(self, tmp_path, capsys):
        ideal = tmp_path / "i.txt"
        ideal.write_text("vars x1 x2\nx1*x2\n")
        assert main(["sr", "--input", str(ideal), "--format", "json"]) == 0
        complex_json = capsys.readouterr().out
        D = complex_from_json(json.loads(complex_json))
        assert {tuple(sorted(f)) for f in D.facets} == {("x1",), ("x2",)}

        cpath = tmp_path / "c.json"
        cpath.write_text(complex_json)
        assert main(["sr", "--input", str(cpath)]) == 0
        assert "x1*x2" in capsys.readouterr().out

    def test_sr_full_simplex_reports_zero_ideal(self, tmp_path, capsys):
        cpath = tmp_path / "full.json"
        cpath.write_text(json.dumps({"vertices": ["a", "b"], "facets": [["a", "b"]]}))
        assert main(["sr", "--input", str(cpath)]) == 0
        assert "zero ideal" in capsys.readouterr().out


class TestQuasiforest:
    def test_hollow_triangle_exit_one(self, hollow_file, capsys):
        assert main(["quasiforest", "--input", hollow_file]) == 1
        out = capsys.readouterr().out
        assert "quasi-forest: no" in out
        assert "no leaf order" in out

    def test_dual_complex_exit_zero(self, tmp_path, six_var_file, capsys):
        assert main(["dual", "--input", six_var_file, "--format", "json",
                     "--output", str(tmp_path / "d.json")]) == 0
        assert main(["quasiforest", "--input", str(tmp_path / "d.json")]) == 0
        out = capsys.readouterr().out
        assert "quasi-forest: yes" in out
        assert "recognizers: greedy=yes exhaustive=yes induced=yes" in out
        assert "quasi-tree" in out


class TestTreeCommands:
    def test_tree_with_dot(self, tmp_path, six_var_file, capsys):
        dual_path = tmp_path / "d.json"
        assert main(["dual", "--input", six_var_file, "--format", "json",
                     "--output", str(dual_path)]) == 0
        dot_path = tmp_path / "tree.dot"
        assert main(["tree", "--input", str(dual_path), "--dot", str(dot_path),
                     "--format", "json"]) == 0
        tree = labeled_complex_from_json(json.loads(capsys.readouterr().out))
        assert len(tree.complex.facets) == 3
        dot = dot_path.read_text()
        assert "x1*x4*x6" in dot

    def test_tree_joint_all(self, tmp_path, capsys):
        star = tmp_path / "star.txt"
        star.write_text(STAR_IDEAL_TEXT)
        dual_path = tmp_path / "d.json"
        assert main(["dual", "--input", str(star), "--format", "json",
                     "--output", str(dual_path)]) == 0
        assert main(["tree", "--input", str(dual_path), "--joint", "all",
                     "--format", "json"]) == 0
        trees = json.loads(capsys.readouterr().out)
        assert len(trees) == 16

    def test_floystad(self, six_var_file, capsys):
        assert main(["floystad", "--input", six_var_file, "--format", "json"]) == 0
        tree = labeled_complex_from_json(json.loads(capsys.readouterr().out))
        assert len(tree.complex.facets) == 3


class TestResolve:
    def test_json_payload(self, six_var_file, capsys):
        assert main(["resolve", "--input", six_var_file, "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        F = free_complex_from_json(payload["free_complex"])
        assert F.ranks == (1, 4, 3)
        assert payload["supports_resolution"] is True
        assert payload["minimal"] is True

    def test_text_summary(self, six_var_file, capsys):
        assert main(["resolve", "--input", six_var_file]) == 0
        out = capsys.readouterr().out
        assert "ranks: 1 4 3" in out
        assert "supports resolution: yes" in out

    def test_rejects_high_pd(self, tmp_path, capsys):
        path = tmp_path / "cycle.txt"
        path.write_text("vars x1 x2 x3 x4\nx1*x2, x2*x3, x3*x4, x4*x1\n")
        assert main(["resolve", "--input", str(path)]) == 2


class TestOracleCommands:
    def test_taylor(self, six_var_file, capsys):
        assert main(["taylor", "--input", six_var_file, "--format", "json"]) == 0
        F = free_complex_from_json(json.loads(capsys.readouterr().out))
        assert F.ranks == (1, 4, 6, 4, 1)

    def test_betti_json_round_trip(self, six_var_file, capsys):
        assert main(["betti", "--input", six_var_file, "--format", "json"]) == 0
        table = betti_from_json(json.loads(capsys.readouterr().out))
        assert table.totals() == (1, 4, 3)

    def test_betti_text(self, six_var_file, capsys):
        assert main(["betti", "--input", six_var_file]) == 0
        assert "total: 1 4 3" in capsys.readouterr().out


class TestPolarize:
    def test_text(self, tmp_path, capsys):
        path = tmp_path / "i.txt"
        path.write_text("x^2*y, y^2\n")
        assert main(["polarize", "--input", str(path)]) == 0
        out = capsys.readouterr().out
        assert "x_1*x_2*y_1" in out
        assert "y_1*y_2" in out
        assert "x_2=x.2" in out

    def test_json(self, tmp_path, capsys):
        path = tmp_path / "i.txt"
        path.write_text("x^2*y, y^2\n")
        assert main(["polarize", "--input", str(path), "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["map"]["x_1"] == ["x", 1]


class TestCensusCommand:
    def test_three_vertices(self, capsys):
        assert main(["census", "--max-vertices", "3"]) == 0
        out = capsys.readouterr().out
        assert "complexes on <= 3 vertices: 12" in out
        assert "violations: 0" in out


class TestErrors:
    def test_parse_error_exit_code(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_text("x1*&\n")
        assert main(["pd", "--input", str(path)]) == 2
        err = capsys.readouterr().err
        assert "line 1" in err

    def test_unknown_flag_rejected(self, six_var_file):
        with pytest.raises(SystemExit):
            main(["pd", "--input", six_var_file, "--frobnicate"])

    def test_missing_file(self, capsys):
        assert main(["pd", "--input", "/nonexistent/ideal.txt"]) == 2
