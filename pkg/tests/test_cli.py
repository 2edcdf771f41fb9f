from __future__ import annotations

import json
import subprocess
import sys

import pytest

from kschur import cli
from kschur.bases import ResidualError, kschur
from kschur.cache import LOG_NAME, ResultCache, cache_key, resolve_dir
from kschur.verify import SuiteReport

EX7_PSI = "1,3;1,4;1,5;1,6;2,5;2,6;3,6"


@pytest.fixture(autouse=True)
def _isolated(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("KSCHUR_CACHE_DIR", raising=False)


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out.rstrip("\n"), err


# -- outputs


def test_kconj(capsys):
    code, out, _ = run(capsys, "kconj", "6,5,5,3,1,1", "--k", "7", "--no-cache")
    assert code == 0
    assert out == "omega=(3,3,3,2,2,2,1,1,1,1,1,1) d=8 core=(12,6,6,3,1,1) inner=(6,1,1)"
    code, out, _ = run(capsys, "kconj", "1", "--k", "5", "--no-cache")
    assert out.startswith("omega=(1) d=0")


def test_kconj_json_and_latex(capsys):
    _, out, _ = run(capsys, "kconj", "2,1", "--k", "2", "--format", "json", "--no-cache")
    assert json.loads(out) == {"lambda": [2, 1], "k": 2, "omega": [1, 1, 1], "d": 1, "core": [3, 1], "inner": [1]}
    _, out, _ = run(capsys, "kconj", "2,1", "--k", "2", "--format", "latex", "--no-cache")
    assert r"\omega_{2}" in out and "d_{2}(\\lambda) = 1" in out


def test_domain_error_exit(capsys):
    code, out, err = run(capsys, "kconj", "3,3", "--k", "2", "--no-cache")
    assert code == 2
    assert out == ""
    assert "not k-bounded" in err


def test_bad_partition_exit(capsys):
    code, _, err = run(capsys, "kschur", "1,2", "--k", "2", "--no-cache")
    assert code == 2 and err.startswith("error:")


@pytest.mark.parametrize(
    "argv, want",
    [
        (["2,1", "--k", "2"], "s[2,1] + q s[3]"),
        (["1,1,1", "--k", "3"], "s[1,1,1]"),
        (["1,1,1", "--k", "1"], "s[1,1,1] + (q + q^2) s[2,1] + q^3 s[3]"),
    ],
)
def test_kschur(capsys, argv, want):
    code, out, _ = run(capsys, "kschur", *argv, "--no-cache")
    assert (code, out) == (0, want)


def test_kschur_latex(capsys):
    _, out, _ = run(capsys, "kschur", "2,1", "--k", "2", "--format", "latex", "--no-cache")
    assert out == r"\tilde{s}^{(2)}_{21} = \tilde{s}_{21} + q\tilde{s}_{3}"


def test_catalan(capsys):
    assert run(capsys, "catalan", "--psi", "", "2,1", "--n", "3", "--no-cache")[1] == "s[2,1]"
    _, out, _ = run(capsys, "catalan", "--psi", "full", "1,1,1", "--n", "3", "--no-cache")
    assert out == "s[1,1,1] + (q + q^2) s[2,1] + q^3 s[3]"
    _, out, _ = run(capsys, "catalan", "--psi", EX7_PSI, "6,5,5,3,1,1", "--n", "6", "--no-cache")
    assert out == kschur((6, 5, 5, 3, 1, 1), 7, 6).to_text()


def test_catalan_psi_of_forms(capsys):
    a = run(capsys, "catalan", "--psi-of", "2", "2,1", "--n", "3", "--no-cache")[1]
    b = run(capsys, "catalan", "--psi", "psi-of:2", "2,1", "--n", "3", "--no-cache")[1]
    assert a == b == "s[2,1] + q s[3]"
    _, out, _ = run(capsys, "catalan", "--psi-of", "2", "2,1", "--n", "3", "--show-ideal", "--no-cache")
    assert out.splitlines()[0].startswith("o")


def test_catalan_bad_ideal(capsys):
    code, _, err = run(capsys, "catalan", "--psi", "2,3", "1", "--n", "3", "--no-cache")
    assert code == 2
    code, _, _ = run(capsys, "catalan", "--psi", "x", "1", "--n", "3", "--no-cache")
    assert code == 2


def test_macdonald(capsys):
    _, out, _ = run(capsys, "macdonald", "2,1", "--no-cache")
    data = json.loads(out)
    assert data["m"] == 3 and data["lambda"] == [2, 1]
    _, out, _ = run(capsys, "macdonald", "2,1", "--format", "text", "--no-cache")
    assert out == "t s[1,1,1] + (1 + qt) s[2,1] + q s[3]"


# -- verify and sweep


def test_verify_involution(capsys):
    code, out, _ = run(capsys, "verify", "involution", "--m-max", "8")
    assert code == 0 and out.startswith("involution: PASS")


def test_verify_refined_table(capsys):
    code, out, _ = run(capsys, "verify", "refined-macdonald", "--m-max", "3")
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("refined-macdonald: PASS")
    assert any(line.strip().startswith("(2,1) k=2: ok") for line in lines)


def test_verify_oracle_equivalence(capsys):
    code, out, _ = run(capsys, "verify", "oracle-equivalence", "--m-max", "6", "--format", "json")
    assert code == 0 and json.loads(out)["passed"] is True


def test_verify_failure_exit(capsys, monkeypatch):
    from kschur import verify

    def broken(**_):
        return SuiteReport("involution", 1, [{"input": [1], "detail": "forced"}])

    monkeypatch.setitem(verify.SUITES, "involution", broken)
    code, out, _ = run(capsys, "verify", "involution")
    assert code == 1
    assert "first counterexample" in out


def test_internal_error_exit(capsys, monkeypatch):
    def boom(*_):
        raise ResidualError("forced residual")

    monkeypatch.setattr(cli, "payload_kschur", boom)
    code, _, err = run(capsys, "kschur", "2,1", "--k", "2", "--no-cache")
    assert code == 3 and "forced residual" in err


def test_sweep_csv_and_json(capsys):
    _, out, _ = run(capsys, "sweep", "--m-max", "3")
    lines = out.splitlines()
    assert lines[0] == "lambda,k,omega,d,top_degree,socle,terms"
    assert "2 1,2,1 1 1,1,1,3,2" in lines
    _, out, _ = run(capsys, "sweep", "--m-max", "4", "--format", "json")
    rows = json.loads(out)
    assert all(r["top_degree"] == r["d"] for r in rows)
    assert all(r["socle"] == [r["expected_socle"]] for r in rows)


# -- determinism and cache


def test_byte_determinism(capsys):
    argv = ["catalan", "--psi", "full", "2,1,1", "--n", "4", "--format", "json", "--no-cache"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_module_entry_point(tmp_path):
    cmd = [sys.executable, "-m", "kschur.cli", "kschur", "2,1", "--k", "2", "--no-cache"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second == b"s[2,1] + q s[3]\n"


def test_cache_roundtrip(capsys, tmp_path, monkeypatch):
    cache = str(tmp_path / "c")
    argv = ["kschur", "2,1,1", "--k", "2", "--format", "json"]
    plain = run(capsys, *argv, "--no-cache")[1]
    first = run(capsys, *argv, "--cache-dir", cache)[1]
    assert (tmp_path / "c" / LOG_NAME).exists()

    def boom(*_):
        raise AssertionError("cache miss")

    monkeypatch.setattr(cli, "payload_kschur", boom)
    second = run(capsys, *argv, "--cache-dir", cache)[1]
    assert plain == first == second


def test_verify_cache_detects_tampering(capsys, tmp_path, monkeypatch):
    cache = tmp_path / "c"
    argv = ["kschur", "2,1", "--k", "2", "--cache-dir", str(cache)]
    run(capsys, *argv)
    store = ResultCache(cache, cli.__version__)
    inputs = {"lambda": [2, 1], "k": 2, "n": None}
    assert store.get("kschur", inputs) is not None
    # rewrite the log with a wrong value under the same key
    rec = json.loads((cache / LOG_NAME).read_text())
    rec["value"]["k"] = 99
    (cache / LOG_NAME).write_text(json.dumps(rec) + "\n")
    (cache / "index.json").unlink()
    code, _, err = run(capsys, *argv, "--verify-cache")
    assert code == 3 and "differs" in err


def test_env_overrides_flag(capsys, tmp_path, monkeypatch):
    env_dir, flag_dir = tmp_path / "env", tmp_path / "flag"
    monkeypatch.setenv("KSCHUR_CACHE_DIR", str(env_dir))
    run(capsys, "kconj", "2,1", "--k", "2", "--cache-dir", str(flag_dir))
    assert (env_dir / LOG_NAME).exists()
    assert not flag_dir.exists()
    assert resolve_dir(str(flag_dir)) == env_dir


def test_default_cache_dir(capsys, tmp_path):
    run(capsys, "kconj", "2,1", "--k", "2")
    assert (tmp_path / ".kschur-cache" / LOG_NAME).exists()


def test_cache_survives_torn_write(tmp_path):
    store = ResultCache(tmp_path, "v")
    store.put("op", {"a": 1}, {"x": 1})
    with open(tmp_path / LOG_NAME, "a") as fh:
        fh.write('{"key": "trunc')
    fresh = ResultCache(tmp_path, "v")
    assert fresh.get("op", {"a": 1}) == {"x": 1}
    fresh.put("op", {"a": 2}, {"x": 2})
    assert ResultCache(tmp_path, "v").get("op", {"a": 2}) == {"x": 2}
    # a rescan without the index must recover both records
    (tmp_path / "index.json").unlink()
    rescanned = ResultCache(tmp_path, "v")
    assert rescanned.get("op", {"a": 1}) == {"x": 1}
    assert rescanned.get("op", {"a": 2}) == {"x": 2}


def test_cache_key_depends_on_version():
    assert cache_key("op", {"a": 1}, "1") != cache_key("op", {"a": 1}, "2")
    assert cache_key("op", {"a": 1, "b": 2}, "1") == cache_key("op", {"b": 2, "a": 1}, "1")
