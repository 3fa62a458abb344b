import json
import subprocess
import sys

import pytest

from doubleoctic.cli import main
from doubleoctic.fixtures import list_fixtures


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestAnalyze:
    def test_text_report(self, capsys):
        code, out, _ = run(capsys, "analyze", "--family", "main", "--param", "3")
        assert code == 0
        assert "p_4^1" in out and "25" in out

    def test_json_schema(self, capsys):
        code, out, _ = run(capsys, "analyze", "--family", "main", "--param", "0", "--format", "json")
        doc = json.loads(out)
        assert code == 0
        assert set(doc) == {"label", "param", "lines", "points", "counts", "admissible"}
        (p51,) = [p for p in doc["points"] if p["type"] == "p_5^1"]
        assert p51 == {"coords": ["0", "0", "0", "1"], "planes": [1, 2, 3, 4, 5], "type": "p_5^1"}
        assert doc["counts"]["double_lines"] == 25

    def test_output_is_deterministic(self, capsys):
        a = run(capsys, "analyze", "--family", "main", "--param", "5", "--format", "json")[1]
        b = run(capsys, "analyze", "--family", "main", "--param", "5", "--format", "json")[1]
        assert a == b

    def test_quadratic_parameter(self, capsys):
        code, out, _ = run(capsys, "analyze", "--family", "155", "--param", "(-1+sqrt(-3))/2", "--format", "json")
        assert code == 0
        assert json.loads(out)["param"] == "-1/2+1/2*sqrt(-3)"

    def test_file_input(self, capsys, tmp_path):
        path = tmp_path / "arr.txt"
        path.write_text("x\ny\nz\nv\nx+y+z+v\nx+2*y+3*z+5*v\nx-y+4*z-2*v\n2*x+3*y-z+7*v\n")
        code, out, _ = run(capsys, "analyze", "--file", str(path), "--format", "json")
        assert code == 0
        assert json.loads(out)["counts"]["double_lines"] == 28

    def test_out_file(self, capsys, tmp_path):
        dest = tmp_path / "r.json"
        code, out, _ = run(capsys, "analyze", "--family", "main", "--param", "3", "--format", "json", "--out", str(dest))
        assert code == 0 and out == ""
        assert json.loads(dest.read_text())["counts"]["triple_lines"] == 1

    def test_degenerate_exit_code(self, capsys):
        code, _, err = run(capsys, "analyze", "--family", "main", "--param", "infinity")
        assert code == 2 and "L5, L6" in err

    def test_degenerate_file(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("x\ny\n2*x\nz\nv\nx+y\nx+z\nx+v\n")
        assert run(capsys, "analyze", "--file", str(path))[0] == 2

    @pytest.mark.parametrize(
        "argv",
        [
            ("analyze", "--family", "main"),
            ("analyze", "--family", "nope", "--param", "1"),
            ("analyze", "--family", "main", "--param", "t"),
            ("analyze",),
            ("analyze", "--family", "153", "--param", "infinity"),
        ],
    )
    def test_usage_errors(self, capsys, argv):
        assert run(capsys, *argv)[0] == 1

    def test_parse_error_in_file(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("x\ny*z\n")
        code, _, err = run(capsys, "analyze", "--file", str(path))
        assert code == 1 and "line 2" in err


class TestPf:
    def test_json(self, capsys):
        code, out, _ = run(capsys, "pf", "--operator", "pf153", "--format", "json", "--order", "4")
        doc = json.loads(out)
        assert code == 0
        assert set(doc) == {"operator", "order", "riemann_symbol", "point", "exponents", "frobenius",
                            "logs_required", "monodromy"}
        assert doc["exponents"] == ["0", "1/2", "3/2", "2"]
        assert doc["monodromy"]["verdict"] == "Finite(2)"
        assert doc["riemann_symbol"]["total"] == "12"
        assert not doc["logs_required"]

    def test_pullback(self, capsys):
        code, out, _ = run(capsys, "pf", "--operator", "pf153", "--pullback", "2", "--format", "json")
        assert json.loads(out)["pullback"]["exponents"] == ["0", "1", "3", "4"]

    def test_log_point_text(self, capsys):
        code, out, _ = run(capsys, "pf", "--operator", "pf153", "--point", "1", "--order", "3")
        assert code == 0
        assert "log^1" in out and "Infinite" in out

    def test_operator_file(self, capsys, tmp_path):
        path = tmp_path / "op.txt"
        path.write_text("Theta^2 - t*(Theta + 1/2)^2\n")
        code, out, _ = run(capsys, "pf", "--operator", str(path), "--format", "json")
        assert code == 0 and json.loads(out)["exponents"] == ["0", "0"]

    @pytest.mark.parametrize(
        "argv",
        [
            ("pf", "--operator", "no-such-operator"),
            ("pf", "--operator", "pf153", "--point", "zz"),
            ("pf", "--operator", "pf153", "--order", "-1"),
            ("pf", "--operator", "pf153", "--pullback", "0"),
            ("pf", "--operator", "pf153", "--point", "3"),
        ],
    )
    def test_usage_errors(self, capsys, argv):
        assert run(capsys, *argv)[0] == 1

    def test_operator_is_required(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["pf"])
        assert info.value.code == 1


class TestHodge:
    @pytest.mark.parametrize("name", ["vanishing-cycles", "blowup-Z0", "semistable-limit"])
    def test_scenarios(self, capsys, name):
        code, out, _ = run(capsys, "hodge", "--scenario", name)
        assert code == 0 and out.startswith(f"scenario {name}: PASS")

    def test_json(self, capsys):
        code, out, _ = run(capsys, "hodge", "--scenario", "blowup-Z0", "--format", "json")
        assert json.loads(out)["results"]["h_Z0"] == [46, 2, 46]

    def test_unknown(self, capsys):
        assert run(capsys, "hodge", "--scenario", "nope")[0] == 1

    def test_failing_fixture(self, capsys, tmp_path):
        from doubleoctic.fixtures import load_cohomology

        doc = load_cohomology()
        doc["expected"]["blowup_z0"] = [46, 2, 45]
        path = tmp_path / "c.json"
        path.write_text(json.dumps(doc))
        code, out, _ = run(capsys, "hodge", "--scenario", "blowup-Z0", "--file", str(path))
        assert code == 1 and "FAIL" in out


class TestDumpFixtures:
    def test_export(self, capsys, tmp_path):
        code, out, _ = run(capsys, "dump-fixtures", "--out", str(tmp_path))
        assert code == 0
        for name in list_fixtures():
            assert (tmp_path / name).exists()

    def test_exported_family_round_trips(self, capsys, tmp_path):
        run(capsys, "dump-fixtures", "--out", str(tmp_path))
        code, out, _ = run(capsys, "analyze", "--file", str(tmp_path / "families/main.arr"), "--param", "3",
                           "--format", "json")
        assert code == 0 and json.loads(out)["counts"]["double_lines"] == 25

    def test_json(self, capsys):
        code, out, _ = run(capsys, "dump-fixtures", "--format", "json")
        assert sorted(json.loads(out)) == list_fixtures()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "doubleoctic", "hodge", "--scenario", "vanishing-cycles"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "PASS" in proc.stdout


def test_bad_subcommand():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 1
