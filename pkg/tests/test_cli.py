import json
import re

from resdp.cli import main


def strip_timestamp(text):
    data = json.loads(text)
    data.pop("timestamp")
    return data


class TestCasimirCommand:
    def test_equator_value(self, capsys):
        code = main(["casimir", "--n", "2", "--m", "1", "--sign", "plus",
                     "--point", "1,0,0"])
        out = capsys.readouterr().out
        assert code == 0
        assert "value 1.2599210498948732" in out
        assert "gradient" in out

    def test_off_domain_exit_code(self, capsys):
        code = main(["casimir", "--n", "1", "--m", "1", "--point", "0,0,1"])
        assert code == 3
        assert "error" in capsys.readouterr().err

    def test_json_output(self, tmp_path, capsys):
        path = tmp_path / "cas.json"
        code = main(["casimir", "--n", "1", "--m", "1", "--point", "3,0,4",
                     "--json", str(path)])
        capsys.readouterr()
        assert code == 0
        data = json.loads(path.read_text())
        assert data["value"] == 5.0
        assert "timestamp" in data


class TestUsageErrors:
    def test_unknown_command(self, capsys):
        assert main(["frobnicate"]) == 2
        capsys.readouterr()

    def test_bad_point_format(self, capsys):
        assert main(["casimir", "--point", "1,2"]) == 2
        capsys.readouterr()

    def test_bad_geometry_params(self, tmp_path, capsys):
        code = main(["mesh", "--n", "1", "--m", "1", "--c", "-1",
                     "--out", str(tmp_path / "m.obj")])
        assert code == 2
        capsys.readouterr()

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        capsys.readouterr()


class TestGeometryCommands:
    def test_curve_csv(self, tmp_path, capsys):
        path = tmp_path / "curve.csv"
        code = main(["curve", "--n", "1", "--m", "1", "--c", "1",
                     "--samples", "50", "--out", str(path)])
        capsys.readouterr()
        assert code == 0
        lines = path.read_text().splitlines()
        assert lines[0] == "y,z"
        assert len(lines) == 51

    def test_curve_two_sheets_writes_both(self, tmp_path, capsys):
        path = tmp_path / "hyper.csv"
        code = main(["curve", "--n", "1", "--m", "1", "--sign", "minus",
                     "--c", "1", "--samples", "20", "--out", str(path)])
        capsys.readouterr()
        assert code == 0
        assert path.exists()
        assert (tmp_path / "hyper_lower.csv").exists()

    def test_mesh_two_sheets_single_obj(self, tmp_path, capsys):
        path = tmp_path / "h.obj"
        code = main(["mesh", "--n", "1", "--m", "1", "--sign", "minus", "--c", "1",
                     "--slices", "16", "--rings", "8", "--out", str(path)])
        out = capsys.readouterr().out
        assert code == 0
        assert "2 component(s)" in out
        lines = path.read_text().splitlines()
        vcount = sum(1 for l in lines if l.startswith("v "))
        assert vcount == 2 * 16 * 8


class TestFlowCommands:
    def test_upstairs_csv(self, tmp_path, capsys):
        path = tmp_path / "traj.csv"
        code = main(["flow", "upstairs", "--n", "2", "--m", "1",
                     "--hamiltonian", "R", "--a0", "1,0,1,0",
                     "--dt", "0.01", "--T", "0.1", "--out", str(path)])
        capsys.readouterr()
        assert code == 0
        lines = path.read_text().splitlines()
        assert lines[0] == "t,x1,y1,x2,y2,H"
        assert len(lines) == 12

    def test_downstairs_csv(self, tmp_path, capsys):
        path = tmp_path / "dtraj.csv"
        code = main(["flow", "downstairs", "--n", "1", "--m", "1",
                     "--p0", "1,0,0", "--gamma", "1.0",
                     "--dt", "0.01", "--T", "0.1", "--out", str(path)])
        capsys.readouterr()
        assert code == 0
        lines = path.read_text().splitlines()
        assert lines[0] == "t,x,y,z,C,H"

    def test_downstairs_domain_exit_code(self, tmp_path, capsys):
        code = main(["flow", "downstairs", "--n", "1", "--m", "2", "--sign", "minus",
                     "--p0", "0.2,0,1.2", "--alpha", "3.0", "--gamma", "0",
                     "--dt", "0.001", "--T", "20", "--out", str(tmp_path / "x.csv")])
        assert code == 3
        capsys.readouterr()


class TestVerifyCommand:
    def test_bracket_table_passes(self, tmp_path, capsys):
        path = tmp_path / "report.json"
        code = main(["verify", "bracket-table", "--n", "3", "--m", "2",
                     "--sign", "plus", "--samples", "100", "--seed", "42",
                     "--tol", "1e-7", "--json", str(path)])
        out = capsys.readouterr().out
        assert code == 0
        assert "[PASS]" in out
        data = json.loads(path.read_text())
        assert data["check"] == "bracket-table"
        assert data["pass"] is True
        assert data["n"] == 3 and data["m"] == 2 and data["sign"] == "plus"
        assert data["seed"] == 42
        assert all(d["tolerance"] == 1e-7 for d in data["details"])

    def test_reports_byte_identical_except_timestamp(self, tmp_path, capsys):
        paths = [tmp_path / "a.json", tmp_path / "b.json"]
        for path in paths:
            code = main(["verify", "identity", "--n", "2", "--m", "1",
                         "--samples", "200", "--seed", "7", "--json", str(path)])
            assert code == 0
        capsys.readouterr()
        texts = [p.read_text() for p in paths]
        assert strip_timestamp(texts[0]) == strip_timestamp(texts[1])
        normalize = lambda t: re.sub(r'"timestamp": "[^"]*"', '"timestamp": "T"', t)
        assert normalize(texts[0]) == normalize(texts[1])

    def test_seed_from_environment(self, capsys, monkeypatch):
        monkeypatch.setenv("RESDP_SEED", "12345")
        code = main(["verify", "conservation", "--n", "1", "--m", "1",
                     "--samples", "5"])
        out = capsys.readouterr().out
        assert code == 0
        assert "seed=12345" in out

    def test_several_checks_pass(self, capsys):
        for what, args in [("equivariance", ["--sign", "minus", "--samples", "50"]),
                           ("transitivity", ["--samples", "50"]),
                           ("dual-pair", ["--n", "2", "--m", "1", "--samples", "30"]),
                           ("leaf-correspondence",
                            ["--n", "1", "--m", "2", "--sign", "minus",
                             "--samples", "30"]),
                           ("integrability", ["--n", "2", "--m", "2", "--samples", "6"]),
                           ("casimir", ["--n", "2", "--m", "1", "--samples", "60"])]:
            code = main(["verify", what] + args)
            assert code == 0, (what, capsys.readouterr())
            capsys.readouterr()

    def test_failing_check_exits_one(self, capsys):
        # An absurd tolerance forces a verification failure.
        code = main(["verify", "identity", "--n", "1", "--m", "1",
                     "--samples", "100", "--tol", "1e-30"])
        out = capsys.readouterr().out
        assert code == 1
        assert "[FAIL]" in out
