import csv
import io
import json
import subprocess
import sys

import pytest

from gridplans import cli
from gridplans.grid import GridGraph, read_partition, validate_partition


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def cache(tmp_path):
    return ["--cache-dir", str(tmp_path / "cache")]


def test_count(cache):
    assert run("count", "--n", "5", *cache) == (0, "4006\n")
    assert run("count", "--n", "1", "--no-cache") == (0, "1\n")


def test_count_cache_hit_identical(cache, tmp_path):
    first = run("count", "--n", "4", "--histogram", *cache)
    files = list((tmp_path / "cache").glob("*.json"))
    assert len(files) == 1
    record = json.loads(files[0].read_text())
    assert record["op"] == "cut_histogram" and record["version"]
    assert "wall_time" in record
    assert run("count", "--n", "4", "--histogram", *cache) == first
    assert run("count", "--n", "4", "--histogram", "--no-cache") == first
    assert first[1].splitlines()[:2] == ["117", "cut,count"]


def test_cache_version_mismatch(cache, tmp_path):
    run("count", "--n", "3", *cache)
    path = next((tmp_path / "cache").glob("*.json"))
    record = json.loads(path.read_text())
    record["version"], record["result"] = "0.0.0-old", "999"
    path.write_text(json.dumps(record))
    assert run("count", "--n", "3", *cache) == (0, "10\n")


def test_global_flags_either_side(cache):
    assert run(*cache, "--threads", "2", "count", "--n", "4") == (0, "117\n")
    assert run("count", "--n", "4", "--threads", "2", *cache) == (0, "117\n")


def test_env_override(monkeypatch, tmp_path):
    monkeypatch.setenv("GRIDPLANS_CACHE_DIR", str(tmp_path / "envcache"))
    assert run("count", "--n", "3") == (0, "10\n")
    assert list((tmp_path / "envcache").glob("count_plans-*.json"))


def test_bounds(cache):
    code, text = run("bounds", "--n-max", "6", *cache)
    rows = list(csv.reader(io.StringIO(text)))
    assert code == 0
    assert rows[0] == ["n", "lower", "exact", "upper", "log_lower", "log_exact", "log_upper"]
    assert len(rows) - 1 == 6
    assert rows[6][:3] == ["6", "27", "451206"]


def test_tau(cache):
    code, text = run("tau", "--n-max", "3", *cache)
    lines = text.splitlines()
    assert lines[0] == "n,tau,log_tau_over_n2"
    assert lines[-1].split(",")[1] == "192"


def test_constants():
    code, text = run("constants", "--digits", "12")
    table = dict(csv.reader(io.StringIO(text)))
    assert table["catalan"] == "0.915965594177"
    assert table["b"].startswith("3.2099")
    assert 0.03 < float(table["epsilon_threshold"]) < 0.04


def test_cutstats(cache):
    code, text = run("cutstats", "--n", "4", "--eps", "0.036", "0.25", *cache)
    rows = list(csv.DictReader(io.StringIO(text)))
    assert rows[0]["compact_plans"] == "0" and rows[0]["compact_upper"] == "0"
    assert rows[1]["compact_upper"] == "12650"
    assert int(rows[1]["compact_plans"]) <= 12650


def test_perturb_enumerate(tmp_path):
    out = tmp_path / "fam"
    code, _ = run("perturb", "--n", "6", "--enumerate", "--out", str(out))
    assert code == 0
    members = sorted(out.glob("member_*.txt"))
    assert len(members) == 27
    manifest = list(csv.DictReader((out / "manifest.csv").open()))
    assert len(manifest) == 27 and manifest[0] == {"choice": "000", "file": "member_00.txt"}
    keys = set()
    for path in members:
        p = read_partition(path)
        assert validate_partition(GridGraph(6), p).ok
        keys.add(p.key())
    assert len(keys) == 27


def test_perturb_sample_and_residue(tmp_path):
    code, _ = run("perturb", "--n", "12", "--sample", "3", "--seed", "4", "--out", str(tmp_path / "s"))
    assert code == 0 and len(list((tmp_path / "s").glob("member_*.txt"))) == 3
    assert run("perturb", "--n", "5", "--enumerate", "--out", str(tmp_path / "x"))[0] == 4
    assert run("perturb", "--n", "12", "--enumerate", "--out", str(tmp_path / "y"))[0] == 3


def test_sample_outputs_revalidate(tmp_path):
    out = tmp_path / "smp"
    code, text = run("sample", "--n", "3", "--count", "4", "--seed", "2", "--threads", "1",
                     "--out", str(out))
    assert code == 0
    assert text == (out / "stats.csv").read_text()
    files = sorted(out.glob("sample_*.txt"))
    assert len(files) == 4
    assert run("validate", *map(str, files))[0] == 0
    assert run("sample", "--n", "3", "--count", "4", "--seed", "2", "--threads", "2")[1] == text


def test_sample_exact_uniform(tmp_path):
    code, text = run("sample", "--n", "3", "--count", "6", "--seed", "1", "--exact-uniform")
    assert code == 0 and text.splitlines()[1].startswith("6,6,")


def test_sample_attempt_cap():
    code, _ = run("sample", "--n", "4", "--count", "500", "--max-attempts", "20", "--threads", "1")
    assert code == 3


def test_enumerate_cmd(tmp_path):
    code, text = run("enumerate", "--n", "3", "--out", str(tmp_path / "e"))
    assert (code, text) == (0, "10\n")
    files = sorted((tmp_path / "e").glob("plan_*.txt"))
    assert len(files) == 10
    assert files[0].read_text() == "0 0 0\n1 1 1\n2 2 2\n"
    assert run("enumerate", "--n", "4", "--limit", "7") == (0, "7\n")


def test_validate_exit_codes(tmp_path):
    good, bad, junk = tmp_path / "g.txt", tmp_path / "b.txt", tmp_path / "j.txt"
    good.write_text("# ok\n0 1\n0 1\n")
    bad.write_text("0 1\n1 0\n")
    junk.write_text("0 1 2\n0 1 2\n")
    assert run("validate", str(good))[0] == 0
    code, text = run("validate", str(good), str(bad))
    assert code == 1 and "invalid" in text and "connected=False" in text
    assert run("validate", str(junk))[0] == 2


def test_budget_exit(cache):
    assert run("count", "--n", "8", "--budget-seconds", "0.3", *cache)[0] == 3


def test_usage_errors():
    with pytest.raises(SystemExit) as exc:
        cli.main(["count", "--n", "0"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 2


def test_console_script_entry(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "gridplans.cli", "count", "--n", "3", "--no-cache"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "10\n"
