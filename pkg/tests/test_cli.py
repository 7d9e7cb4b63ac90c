import json

import pytest

from alpha2minor import emit_graph6, named
from alpha2minor.cli import main, parse_target
from alpha2minor.minors import CliqueJoinIndependent, CompleteGraph

C5 = emit_graph6(named("cycle", 5))
C6 = emit_graph6(named("cycle", 6))
PC = emit_graph6(named("petersen_complement"))


def run(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io
        import sys

        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


class TestVerify:
    def test_single_cycle(self, capsys, monkeypatch, tmp_path):
        src = tmp_path / "in.g6"
        src.write_text(C5 + "\n")
        code, out, _ = run(capsys, ["verify", str(src)])
        assert code == 0
        assert "# processed=1 succeeded=1 failed=0 skipped=0" in out
        assert f"1,{C5},1,chi,ok," in out

    def test_high_independence_skipped(self, capsys, monkeypatch, tmp_path):
        src = tmp_path / "in.g6"
        src.write_text(C6 + "\n")
        code, out, _ = run(capsys, ["verify", str(src)])
        assert code == 0
        assert "skipped=1" in out

    def test_empty_input(self, capsys, monkeypatch):
        code, out, _ = run(capsys, ["verify"], stdin="", monkeypatch=monkeypatch)
        assert code == 0
        assert "# processed=0" in out

    def test_malformed_line_reports_and_continues(self, capsys, monkeypatch, tmp_path):
        src = tmp_path / "in.g6"
        src.write_text("ThisIsNotGraph6!!!\n" + C5 + "\n")
        code, out, _ = run(capsys, ["verify", str(src)])
        assert code == 1
        assert "malformed graph6" in out
        assert f"2,{C5},1,chi,ok," in out

    def test_emit_writes_certificates(self, capsys, monkeypatch, tmp_path):
        src = tmp_path / "in.g6"
        src.write_text(C5 + "\n")
        out_dir = tmp_path / "certs"
        code, _, _ = run(capsys, ["verify", str(src), "--emit", str(out_dir)])
        assert code == 0
        files = sorted(out_dir.iterdir())
        assert len(files) == 1
        payload = json.loads(files[0].read_text())
        assert payload["validated"] is True
        assert payload["input_graph6"] == C5

    def test_half_form_and_single_ell(self, capsys, monkeypatch, tmp_path):
        src = tmp_path / "in.g6"
        src.write_text(PC + "\n")
        code, out, _ = run(capsys, ["verify", str(src), "--half", "--ell", "2"])
        assert code == 0
        assert f"1,{PC},2,half,ok," in out

    def test_json_format(self, capsys, monkeypatch, tmp_path):
        src = tmp_path / "in.g6"
        src.write_text(C5 + "\n")
        code, out, _ = run(capsys, ["verify", str(src), "--format", "json"])
        assert code == 0
        payload = json.loads(out)
        assert payload["totals"]["succeeded"] == 1

    def test_missing_file(self, capsys, monkeypatch):
        code, _, err = run(capsys, ["verify", "/nonexistent/path.g6"])
        assert code == 2
        assert "error" in err


class TestSweep:
    def test_small_sweep_clean(self, capsys, monkeypatch):
        code, out, _ = run(capsys, ["sweep", "5"])
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "n,ell,graphs,checks,ok,failed,failures"
        assert "5,0,14,0,0,0," in lines
        assert any(line.startswith("5,1,14,") for line in lines)
        assert all(line.split(",")[5] == "0" for line in lines[1:])

    def test_single_vertex(self, capsys, monkeypatch):
        code, out, _ = run(capsys, ["sweep", "1"])
        assert code == 0
        assert "1,0,1,0,0,0," in out

    def test_five_wheel_exception_recorded(self, capsys, monkeypatch):
        code, out, _ = run(capsys, ["sweep", "6", "--format", "json"])
        assert code == 0
        # the exceptional graph is counted as checked but never as failed
        rows = json.loads(out)
        row = next(r for r in rows if r["n"] == 6 and r["ell"] == 2)
        assert row["failed"] == 0

    def test_cap_respected(self, capsys, monkeypatch):
        code, _, err = run(capsys, ["sweep", "11"])
        assert code == 2
        assert "capped" in err

    def test_external_universe_file(self, capsys, monkeypatch, tmp_path):
        # a graph6 file can replace the built-in enumeration; graphs with
        # independence number above two are dropped from the universe
        src = tmp_path / "universe.g6"
        src.write_text(C5 + "\n" + C6 + "\n")
        code, out, _ = run(capsys, ["sweep", "5..6", "--input", str(src)])
        assert code == 0
        lines = out.strip().splitlines()
        assert "5,0,1,0,0,0," in lines  # one 5-vertex graph accepted
        assert "6,0,0,0,0,0," in lines  # the 6-cycle was rejected

    def test_bad_range(self, capsys, monkeypatch):
        code, _, err = run(capsys, ["sweep", "x..y"])
        assert code == 2


class TestOracleCheck:
    def test_matching_target(self, capsys, monkeypatch, tmp_path):
        src = tmp_path / "in.g6"
        src.write_text(C5 + "\n")
        code, out, _ = run(capsys, ["oracle-check", str(src), "--target", "K1,2"])
        assert code == 0
        assert 'ok,oracle=found' in out

    def test_non_constructive_target_skipped(self, capsys, monkeypatch, tmp_path):
        src = tmp_path / "in.g6"
        src.write_text(C5 + "\n")
        code, out, _ = run(capsys, ["oracle-check", str(src), "--target", "K4"])
        assert code == 0
        assert "skipped,oracle=absent" in out

    def test_petersen_complement(self, capsys, monkeypatch, tmp_path):
        src = tmp_path / "in.g6"
        src.write_text(PC + "\n")
        code, out, _ = run(capsys, ["oracle-check", str(src), "--target", "K2,3"])
        assert code == 0
        assert "ok,oracle=found" in out

    def test_target_parsing(self):
        assert parse_target("K5") == CompleteGraph(5)
        assert parse_target("K2,3") == CliqueJoinIndependent(2, 3)
        assert parse_target("2,3") == CliqueJoinIndependent(2, 3)

    def test_bad_target(self, capsys, monkeypatch):
        code, _, err = run(capsys, ["oracle-check", "--target", "Kx"], stdin="",
                           monkeypatch=monkeypatch)
        assert code == 2


class TestGen:
    def test_exhaustive(self, capsys, monkeypatch):
        code, out, _ = run(capsys, ["gen", "4"])
        assert code == 0
        assert len(out.strip().splitlines()) == 7

    def test_random_deterministic(self, capsys, monkeypatch):
        code1, out1, _ = run(capsys, ["gen", "9", "--random", "5", "--seed", "3"])
        code2, out2, _ = run(capsys, ["gen", "9", "--random", "5", "--seed", "3"])
        assert code1 == code2 == 0
        assert out1 == out2
        assert len(out1.strip().splitlines()) == 5

    def test_cap(self, capsys, monkeypatch):
        code, _, err = run(capsys, ["gen", "12"])
        assert code == 2


class TestUsage:
    def test_unknown_command_exits_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_jobs_parallel_matches_serial(self, capsys, monkeypatch):
        code1, out1, _ = run(capsys, ["sweep", "5", "--jobs", "2"])
        code2, out2, _ = run(capsys, ["sweep", "5"])
        assert code1 == code2 == 0
        assert out1 == out2
