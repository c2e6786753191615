import json

import pytest

from bianchi_integrals.cli import main


def run(capsys, argv):
    """Invoke the CLI in-process; returns (exit_code, stdout, stderr)."""
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


class TestCatalog:
    def test_json_lists_six_models(self, capsys):
        code, out, _ = run(capsys, ["catalog", "--k", "1/2"])
        assert code == 0
        payload = json.loads(out)
        assert [m["model"] for m in payload["models"]] == [
            "I", "II", "VI0", "VII0", "VIII", "IX",
        ]
        entry = payload["models"][5]
        assert entry["n"] == [1, 1, 1]
        assert entry["k"] == "1/2"
        assert len(entry["components"]) == 6
        assert entry["components"][0] == "-x1*x4 + x1*x5 + x1*x6"

    def test_text_format(self, capsys):
        code, out, _ = run(capsys, ["catalog", "--format", "text"])
        assert code == 0
        assert out.startswith("Bianchi I ")
        assert "dx1/dt = " in out

    def test_byte_stable(self, capsys):
        _, out1, _ = run(capsys, ["catalog"])
        _, out2, _ = run(capsys, ["catalog"])
        assert out1 == out2


class TestFind:
    def test_model_II_passes(self, capsys):
        code, out, _ = run(capsys, ["find", "--model", "II", "--k", "1/2", "--max-degree", "3"])
        assert code == 0
        payload = json.loads(out)
        assert payload["pass"] is True
        assert [d["dim"] for d in payload["degrees"]] == [1, 1, 1]
        assert payload["degrees"][0]["basis"] == ["x5 - x6"]
        assert payload["engine"]["pivot_rule"] == "first-nonzero"

    def test_model_IX_symbolic(self, capsys):
        code, out, _ = run(capsys, ["find", "--model", "IX", "--k", "symbolic", "--max-degree", "2"])
        assert code == 0
        payload = json.loads(out)
        assert payload["mode"] == "symbolic-k"
        assert [d["dim"] for d in payload["degrees"]] == [0, 0]

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "find.json"
        code, out, _ = run(
            capsys,
            ["find", "--model", "I", "--max-degree", "2", "--out", str(path)],
        )
        assert code == 0
        assert out == ""
        payload = json.loads(path.read_text())
        assert payload["model"] == "I"


class TestVerify:
    @pytest.mark.parametrize("tag", ["I", "II", "VI0", "VII0", "VIII", "IX"])
    def test_all_models_symbolic_default(self, capsys, tag):
        code, out, _ = run(capsys, ["verify", "--model", tag])
        assert code == 0
        payload = json.loads(out)
        assert payload["k"] == "symbolic"
        assert payload["pass"] is True
        kinds = [c["kind"] for c in payload["checks"]]
        assert kinds[0] == "weighted-power"
        assert all(c["witness"] == "0" for c in payload["checks"])

    def test_fixed_k(self, capsys):
        code, out, _ = run(capsys, ["verify", "--model", "II", "--k", "2/3"])
        assert code == 0
        payload = json.loads(out)
        assert payload["k"] == "2/3"
        assert any(c["integral"] == "x5 - x6" for c in payload["checks"])


class TestSimulate:
    def test_csv_and_sidecar(self, capsys, tmp_path):
        path = tmp_path / "orbit.csv"
        code, _, _ = run(
            capsys,
            [
                "simulate", "--model", "IX", "--k", "1/2",
                "--t-end", "0.2", "--tol", "1e-10", "--out", str(path),
            ],
        )
        assert code == 0
        lines = path.read_text().splitlines()
        assert lines[0] == "t,x1,x2,x3,x4,x5,x6"
        assert len(lines) > 2
        sidecar = json.loads((tmp_path / "orbit.drift.json").read_text())
        assert sidecar["model"] == "IX"
        assert sidecar["x0"] == "1,1,1,1,2,3"
        assert sidecar["drift"]["status"] == "completed"
        names = [e["name"] for e in sidecar["drift"]["invariants"]]
        assert names == ["H"]
        assert sidecar["drift"]["invariants"][0]["max_relative_drift"] < 1e-6

    def test_symbolic_k_is_usage_error(self, capsys):
        code, _, err = run(capsys, ["simulate", "--model", "IX", "--k", "symbolic"])
        assert code == 1
        assert "fixed rational k" in err

    def test_bad_x0_is_usage_error(self, capsys):
        code, _, err = run(
            capsys, ["simulate", "--model", "IX", "--x0", "1,2,3", "--t-end", "0.1"]
        )
        assert code == 1
        assert "six" in err


class TestLemma:
    def test_estrella_pass(self, capsys):
        code, out, _ = run(
            capsys, ["lemma", "estrella", "--a", "1,0,0", "--k", "1/2", "--degree", "3"]
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["hypothesis_holds"] is True
        assert payload["dimension"] == 0
        assert payload["pass"] is True

    def test_estrella_resonant_case_reports_basis(self, capsys):
        # equal weights a = m(k-1)/2 with m=1, k=1/2 -> a = -1/4, degree 2
        code, out, _ = run(
            capsys,
            ["lemma", "estrella", "--a=-1/4,-1/4,-1/4", "--k", "1/2", "--degree", "2"],
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["hypothesis_holds"] is False
        assert payload["dimension"] >= 1
        assert payload["pass"] is True

    def test_dificil(self, capsys):
        code, out, _ = run(capsys, ["lemma", "dificil", "--k", "1/2", "--n", "4"])
        assert code == 0
        payload = json.loads(out)
        assert payload["solution"]["dimension"] == 1
        assert payload["solution"]["conforms"] is True

    def test_sn(self, capsys):
        code, out, _ = run(capsys, ["lemma", "sn", "--n", "5"])
        assert code == 0
        assert json.loads(out)["identity_holds"] is True

    def test_bad_n_is_usage_error(self, capsys):
        code, _, err = run(capsys, ["lemma", "sn", "--n", "1"])
        assert code == 1


class TestReport:
    def test_full_report_passes(self, capsys):
        code, out, _ = run(capsys, ["report", "--max-degree", "3"])
        assert code == 0
        payload = json.loads(out)
        assert payload["pass"] is True
        assert payload["m_max"] == 3
        assert payload["k_samples"] == ["0", "1/2", "2/3", "9/10"]
        # 6 models x (4 fixed k + symbolic)
        assert len(payload["cells"]) == 30
        by_model = {}
        for cell in payload["cells"]:
            by_model.setdefault(cell["model"], []).append(cell)
        assert set(by_model) == {"I", "II", "VI0", "VII0", "VIII", "IX"}
        for cells in by_model.values():
            assert [c["k"] for c in cells] == ["0", "1/2", "2/3", "9/10", "symbolic"]
        for cell in by_model["I"]:
            assert cell["dimensions"] == [2, 3, 4]
            assert cell["statement"].startswith("(a)")
        for cell in by_model["II"]:
            assert cell["dimensions"] == [1, 1, 1]
        for tag in ("VI0", "VII0", "VIII", "IX"):
            for cell in by_model[tag]:
                assert cell["dimensions"] == [0, 0, 0]
        # independence ranks only at fixed k for the integrable models
        for cell in by_model["I"][:4]:
            assert cell["independence"]["rank"] == 5
        for cell in by_model["II"][:4]:
            assert cell["independence"]["rank"] == 2
        assert "independence" not in by_model["IX"][0]
        assert all(c["energy_integral_identity"] for c in payload["cells"])

    def test_byte_stable(self, capsys, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        run(capsys, ["report", "--max-degree", "2", "--out", str(a)])
        run(capsys, ["report", "--max-degree", "2", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()


class TestUsageErrors:
    def test_unknown_model_exits_one(self, capsys):
        code, _, err = run(capsys, ["find", "--model", "X"])
        assert code == 1
        assert "error" in err

    def test_missing_subcommand_exits_one(self, capsys):
        code, _, _ = run(capsys, [])
        assert code == 1

    def test_bad_k_exits_one(self, capsys):
        code, _, _ = run(capsys, ["find", "--model", "I", "--k", "zebra"])
        assert code == 1
