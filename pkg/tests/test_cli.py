import json

import pytest

from bdops.cli import main


class TestTableCommand:
    def test_table_with_reference_noise_fails(self, capsys):
        # tables 1-6 all contain cells whose published digits deviate
        # beyond 5e-7 from the recomputed values; exit code reports it
        assert main(["table", "--id", "1"]) == 1
        out = capsys.readouterr().out
        assert "FLAGGED" in out
        assert "beyond tolerance" in out

    def test_table_with_loose_tolerance_passes(self, capsys):
        assert main(["table", "--id", "4", "--tolerance", "1e-5"]) == 0

    def test_unknown_table(self, capsys):
        assert main(["table", "--id", "9"]) == 2


class TestFigureCommand:
    def test_emit(self, tmp_path, capsys):
        out = tmp_path / "f.csv"
        assert main(["figure", "--id", "2", "--points", "51", "--out", str(out)]) == 0
        assert out.exists()

    def test_bad_id(self, tmp_path):
        assert main(["figure", "--id", "13", "--points", "51",
                     "--out", str(tmp_path / "x.csv")]) == 2


class TestMomentsCommand:
    @pytest.mark.parametrize("family", ["u1", "tilde2", "tilde3"])
    def test_consistent(self, family, capsys):
        assert main(["moments", "--family", family, "--n", "8", "--x", "1/3"]) == 0
        assert "all consistent" in capsys.readouterr().out

    def test_bad_x(self, capsys):
        assert main(["moments", "--family", "u1", "--n", "8", "--x", "5/3"]) == 2


class TestOrderCommand:
    def test_runs(self, capsys):
        code = main(["order", "--family", "tilde2", "--x", "0.7",
                     "--n-list", "8", "16", "32", "64"])
        assert code == 0
        assert "slope" in capsys.readouterr().out


class TestBoundCommand:
    def test_holds(self, capsys):
        assert main(["bound", "--n", "10", "--function", "g2"]) == 0
        assert "holds" in capsys.readouterr().out


class TestSuiteCommand:
    def test_summary_written(self, tmp_path, capsys):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"tasks": [{"kind": "bound", "n": 5, "function": "g3"}]}))
        out = tmp_path / "summary.json"
        assert main(["suite", "--config", str(cfg), "--out", str(out)]) == 0
        assert json.loads(out.read_text())["passed"] is True

    def test_failing_task_exits_nonzero(self, tmp_path):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"tasks": [{"kind": "lemma", "id": "tilde3-central",
                                              "n": [4]}]}))
        assert main(["suite", "--config", str(cfg)]) == 1

    def test_config_error_exits_2(self, tmp_path):
        cfg = tmp_path / "c.json"
        cfg.write_text("{broken")
        assert main(["suite", "--config", str(cfg)]) == 2

    def test_missing_config_exits_2(self, tmp_path):
        assert main(["suite", "--config", str(tmp_path / "none.json")]) == 2


class TestBackendFlag:
    def test_numpy_backend_selected(self, capsys):
        from bdops import backend

        before = backend.backend_name()
        try:
            assert main(["--backend", "numpy", "bound", "--n", "5", "--function", "g3"]) == 0
            assert backend.backend_name() == "numpy"
        finally:
            backend.set_backend(before)
