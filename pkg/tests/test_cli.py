import json

import pytest

from wildprim import serialize
from wildprim.cli import main
from wildprim.errors import InvariantViolation, PrecisionExhausted


def run(args, tmp_path, monkeypatch):
    monkeypatch.setenv("WILDPRIM_CACHE_DIR", str(tmp_path / "cache"))
    monkeypatch.chdir(tmp_path)
    return main(args)


def test_enumerate_quartics_json(tmp_path, monkeypatch):
    out = tmp_path / "cat.json"
    code = run(["enumerate", "--p", "2", "--f", "1", "--char", "0", "--n", "2",
                "--out", str(out)], tmp_path, monkeypatch)
    assert code == 0
    cat = json.loads(out.read_bytes())
    assert cat["schema_version"] == 1
    assert len(cat["records"]) == 4
    assert sorted(r["closure_label"] for r in cat["records"]) == \
        ["A4", "S4", "S4", "S4"]
    assert cat["metadata"]["base"] == {"p": 2, "f": 1, "char": "0"}


def test_enumerate_charp_level_bound_counts(tmp_path, monkeypatch):
    out = tmp_path / "cat.json"
    code = run(["enumerate", "--p", "2", "--f", "1", "--char", "p", "--n", "1",
                "--level-bound", "5", "--out", str(out)], tmp_path, monkeypatch)
    assert code == 0
    assert len(json.loads(out.read_bytes())["records"]) == 15


def test_byte_identical_reruns_and_thread_modes(tmp_path, monkeypatch):
    outs = []
    for name, extra in [("a.json", []), ("b.json", []),
                        ("c.json", ["--single-thread"]),
                        ("d.json", ["--workers", "7"])]:
        out = tmp_path / name
        code = run(["enumerate", "--p", "2", "--f", "1", "--char", "0", "--n", "2",
                    "--out", str(out)] + extra, tmp_path, monkeypatch)
        assert code == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1] == outs[2] == outs[3]


def test_cache_cold_warm_and_delete(tmp_path, monkeypatch):
    cache = tmp_path / "cache"
    args = ["enumerate", "--p", "2", "--f", "1", "--char", "0", "--n", "2"]
    out1, out2, out3 = (tmp_path / n for n in ("1.json", "2.json", "3.json"))
    assert run(args + ["--out", str(out1)], tmp_path, monkeypatch) == 0
    assert cache.exists() and list(cache.iterdir())
    assert run(args + ["--out", str(out2)], tmp_path, monkeypatch) == 0
    for f in cache.iterdir():
        f.unlink()
    assert run(args + ["--out", str(out3)], tmp_path, monkeypatch) == 0
    assert out1.read_bytes() == out2.read_bytes() == out3.read_bytes()


def test_csv_json_round_trip(tmp_path, monkeypatch):
    jout, cout = tmp_path / "cat.json", tmp_path / "cat.csv"
    base_args = ["enumerate", "--p", "2", "--f", "1", "--char", "0", "--n", "2"]
    assert run(base_args + ["--out", str(jout)], tmp_path, monkeypatch) == 0
    assert run(base_args + ["--format", "csv", "--out", str(cout)],
               tmp_path, monkeypatch) == 0
    from_json = serialize.records_from_json(jout.read_bytes())
    from_csv = serialize.records_from_csv(cout.read_text())
    assert from_json == from_csv


def test_reps_output(tmp_path, monkeypatch, capsys):
    code = run(["reps", "--p", "2", "--f", "1", "--char", "0", "--n", "2"],
               tmp_path, monkeypatch)
    assert code == 0
    text = capsys.readouterr().out
    assert "simple classes of dimension 2: 2" in text
    assert "2d-0" in text and "2d-1" in text


def test_reps_n1(tmp_path, monkeypatch, capsys):
    code = run(["reps", "--p", "2", "--f", "1", "--char", "0", "--n", "1"],
               tmp_path, monkeypatch)
    assert code == 0
    assert "simple classes of dimension 1: 1" in capsys.readouterr().out


def test_exit_code_invariant_violation(tmp_path, monkeypatch):
    def boom(*a, **k):
        raise InvariantViolation("forced")
    monkeypatch.setattr("wildprim.cli.enumerate_primitive", boom)
    code = run(["enumerate", "--p", "2", "--f", "1", "--char", "0", "--n", "1"],
               tmp_path, monkeypatch)
    assert code == 2


def test_exit_code_precision_exhausted(tmp_path, monkeypatch):
    def boom(*a, **k):
        raise PrecisionExhausted("forced")
    monkeypatch.setattr("wildprim.cli.enumerate_primitive", boom)
    code = run(["enumerate", "--p", "2", "--f", "1", "--char", "0", "--n", "1"],
               tmp_path, monkeypatch)
    assert code == 3


def test_missing_level_bound_is_a_usage_error(tmp_path, monkeypatch, capsys):
    code = run(["enumerate", "--p", "2", "--f", "1", "--char", "p", "--n", "1"],
               tmp_path, monkeypatch)
    assert code == 1
    assert "level bound" in capsys.readouterr().err


def test_verify_quick_suite(tmp_path, monkeypatch, capsys):
    report_path = tmp_path / "report.json"
    code = run(["verify", "--suite", "quick", "--out", str(report_path)],
               tmp_path, monkeypatch)
    text = capsys.readouterr().out
    assert code == 0
    assert "all checks passed" in text
    report = json.loads(report_path.read_text())
    assert report["passed"] is True
    assert all(c["passed"] for c in report["checks"])


def test_stdout_output(tmp_path, monkeypatch, capsys):
    code = run(["enumerate", "--p", "2", "--f", "1", "--char", "0", "--n", "1"],
               tmp_path, monkeypatch)
    assert code == 0
    captured = capsys.readouterr().out
    cat = json.loads(captured)
    assert len(cat["records"]) == 7


def test_cache_env_var_respected(tmp_path, monkeypatch):
    custom = tmp_path / "elsewhere"
    monkeypatch.setenv("WILDPRIM_CACHE_DIR", str(custom))
    monkeypatch.chdir(tmp_path)
    out = tmp_path / "cat.json"
    assert main(["enumerate", "--p", "2", "--f", "1", "--char", "0", "--n", "1",
                 "--out", str(out)]) == 0
    assert custom.exists()


def test_no_cache_flag(tmp_path, monkeypatch):
    monkeypatch.setenv("WILDPRIM_CACHE_DIR", str(tmp_path / "cache"))
    monkeypatch.chdir(tmp_path)
    out = tmp_path / "cat.json"
    assert main(["enumerate", "--p", "2", "--f", "1", "--char", "0", "--n", "1",
                 "--no-cache", "--out", str(out)]) == 0
    assert not (tmp_path / "cache").exists()


def test_full_suite_tower_list_is_well_formed():
    from wildprim.cli import FULL_TOWERS
    for base, n, bound in FULL_TOWERS:
        assert base.char in (0, base.p)
        assert (bound is not None) == (base.char != 0)


@pytest.mark.slow
def test_verify_full_suite_end_to_end(tmp_path, monkeypatch, capsys):
    code = run(["verify", "--suite", "full"], tmp_path, monkeypatch)
    text = capsys.readouterr().out
    assert code == 0, text
    assert "all checks passed" in text
    assert "FAIL" not in text
