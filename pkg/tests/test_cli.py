import json

import pytest

from supersingular import cli
from supersingular.qseries import relations


@pytest.fixture
def run(capsys, cache_dir):
    def _run(*argv):
        code = cli.main([str(a) for a in argv])
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return _run


def test_ssp_level1(run):
    code, out, _ = run("ssp", "level1", 37)
    assert code == 0
    assert "(X + 29)(X^2 + 31*X + 31)" in out


def test_ssp_fricke_and_resultant(run):
    code, out, _ = run("ssp", "2*", 37)
    assert code == 0 and "(Y + 3)(Y + 25)(Y + 27)(Y^2 + 14*Y + 34)" in out
    code, out, _ = run("ssp", "2*", 37, "--route", "resultant", "--format", "json")
    rec = json.loads(out)
    assert rec["route"] == "resultant_radical"
    assert rec["resultant"]["factored"] == "(Y + 3)(Y + 25)^2(Y + 27)^2(Y^2 + 14*Y + 34)^2"
    assert rec["coefficients"][0] == 1 and rec["linear_factors"] == 3


def test_ssp_heun_route(run):
    code, out, _ = run("ssp", "5*", 13, "--route", "heun", "--format", "json")
    rec = json.loads(out)
    assert code == 0 and rec["route"] == "heun"
    assert rec["notes"]["descends"] and rec["notes"]["root_independent"]
    _, out2, _ = run("ssp", "5*", 13, "--format", "json")
    assert json.loads(out2)["coefficients"] == rec["coefficients"]


def test_classnum(run):
    assert run("classnum", 74)[:2] == (0, "10\n")
    code, out, _ = run("classnum", 37, "--format", "json")
    assert json.loads(out) == {"d": 37, "h": 2}
    assert run("classnum", 12)[0] == cli.EXIT_USAGE


def test_rn_and_cache(run, cache_dir):
    cache_dir.mkdir(parents=True, exist_ok=True)
    code, out, _ = run("cache", "status", "--cache-dir", cache_dir, "--format", "json")
    assert json.loads(out)["entries"] == 0
    code, out, _ = run("rn", 2, "--cache-dir", cache_dir)
    assert code == 0
    assert "a_2 = Y^2 - 207*Y + 3456" in out
    assert "b_2 = Y^3 + 432*Y^2 + 62208*Y + 2985984" in out
    code, out, _ = run("cache", "rebuild", "--cache-dir", cache_dir, "--format", "json")
    assert json.loads(out)["revalidated"] == 1
    code, out, _ = run("cache", "clear", "--cache-dir", cache_dir, "--format", "json")
    assert json.loads(out)["removed"] == 1
    code, out, _ = run("cache", "status", "--cache-dir", cache_dir, "--format", "json")
    assert json.loads(out)["entries"] == 0


def test_corrupted_cache_is_structural(run, cache_dir):
    run("rn", 3, "--cache-dir", cache_dir)
    path = relations.cache_path(3, cache_dir)
    rec = json.loads(path.read_text())
    rec["b_coeffs"][0] = "7"
    path.write_text(json.dumps(rec))
    relations._memory.pop(3, None)
    code, _, err = run("rn", 3, "--cache-dir", cache_dir)
    assert code == cli.EXIT_STRUCTURAL
    assert "checksum" in err
    relations._memory.pop(3, None)
    path.unlink()


def test_rn_3c(run):
    code, out, _ = run("rn", "3C")
    assert code == 0
    assert out.splitlines()[1] == "X^3: -Y^9 + 2232*Y^6 - 1069956*Y^3 + 36864000"


def test_series(run):
    code, out, _ = run("series", "j", 1)
    assert out.split()[:3] == ["1", "744", "196884"]
    code, out, _ = run("series", "j7*", 1, "--format", "json")
    assert json.loads(out)["coefficients"] == ["1", "9", "51"]
    assert run("series", "nonsense", 3)[0] == cli.EXIT_USAGE


def test_verify_text_and_exit_codes(run):
    code, out, _ = run("verify", "T1.2", "--pmax", 60)
    assert code == 0
    assert out.strip().splitlines()[-1].startswith("PASS T1.2 [theorem]")
    # conjecture failures warn but do not change the exit code
    code, out, _ = run("verify", "C-HEUN", "--pmax", 20)
    assert code == 0
    assert "WARN" in out


def test_usage_errors(run):
    assert run("verify", "nope")[0] == cli.EXIT_USAGE
    assert run("verify", "T1.2", "--pmin", 50, "--pmax", 10)[0] == cli.EXIT_USAGE
    assert run("verify", "C-DEG", "--levels", "4")[0] == cli.EXIT_USAGE
    assert run("ssp", "level1", 35)[0] == cli.EXIT_USAGE
    assert run("ssp", "5*", 5)[0] == cli.EXIT_USAGE
    assert run("bogus")[0] == cli.EXIT_USAGE
    assert run("cache", "status", "--cache-dir", "/nonexistent/dir")[0] == cli.EXIT_USAGE


def test_report_round_trip(run, tmp_path):
    code, out, _ = run("verify", "C-LNSTAR", "--pmax", 40, "--levels", "11,13", "--format", "json")
    rows = tmp_path / "rows.jsonl"
    rows.write_text(out)
    code, summary, _ = run("report", rows, "--format", "json")
    assert code == 0
    first = [json.loads(x) for x in summary.splitlines()]
    again = tmp_path / "summary.jsonl"
    again.write_text(summary)
    code, summary2, _ = run("report", again, "--format", "json")
    assert [json.loads(x) for x in summary2.splitlines()] == first
    entry = first[0]
    assert entry["check_id"] == "C-LNSTAR" and entry["undefined-skip"] == 2


def test_report_theorem_failure_and_garbage(run, tmp_path):
    bad = tmp_path / "bad.jsonl"
    bad.write_text(json.dumps({"check_id": "T1.2", "verdict": "fail"}) + "\n")
    assert run("report", bad)[0] == cli.EXIT_THEOREM
    bad.write_text("not json\n")
    assert run("report", bad)[0] == cli.EXIT_STRUCTURAL


def test_csv_output(run, tmp_path):
    target = tmp_path / "rows.csv"
    code, _, _ = run("verify", "T1.5", "--pmax", 20, "--format", "csv", "--output", target)
    assert code == 0
    header = target.read_text().splitlines()[0]
    assert header.startswith("check_id,p,N,deg,L,h_p,h_2p,h_3p,h_Np,lhs,rhs,verdict")
