import argparse
import io
import json
import os

import pytest

from lml import cli


def run(argv, env=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    code = cli.dispatch(argv, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def xy_ideal(tmp_path):
    path = tmp_path / "f.json"
    path.write_text(json.dumps({"ring": {"vars": ["x", "y", "t"], "coeff": "QQ"}, "gens": ["x*y - t"]}))
    return str(path)


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for var in cli.ENV.values():
        monkeypatch.delenv(var, raising=False)


def test_alcove_enum():
    code, out, _ = run(["alcove", "enum", "--n", "2", "--r", "1", "--json"])
    assert code == 0
    assert len(json.loads(out)["alcoves"]) == 3


def test_human_summary_is_default():
    code, out, _ = run(["alcove", "enum", "--n", "2", "--r", "1"])
    assert code == 0
    with pytest.raises(json.JSONDecodeError):
        json.loads(out)


def test_ideal_membership_exit_codes(xy_ideal):
    assert run(["ideal", "member", "--ideal", xy_ideal, "--poly", "t"])[0] == 1
    assert run(["ideal", "member", "--ideal", xy_ideal, "--poly", "x^2*y - x*t"])[0] == 0


def test_ideal_operations(xy_ideal):
    code, out, _ = run(["ideal", "gb", "--ideal", xy_ideal, "--json"])
    assert code == 0 and json.loads(out)["gens"]
    code, out, _ = run(["ideal", "eliminate", "--ideal", xy_ideal, "--vars", "t", "--json"])
    assert code == 0 and json.loads(out)["gens"] == []
    code, out, _ = run(["ideal", "colon", "--ideal", xy_ideal, "--poly", "x", "--json"])
    assert code == 0


def test_verify_hs():
    code, out, _ = run(["verify", "hs", "--n", "2", "--p", "3", "--json"])
    rep = json.loads(out)
    assert code == 0 and rep["status"] == "pass"
    assert set(rep) >= {"theorem", "params", "status", "evidence", "ms", "manifest"}


def test_verify_not_applicable_exits_zero():
    code, out, _ = run(["verify", "nonnormal", "--n", "3", "--r", "2", "--json"])
    assert code == 0 and json.loads(out)["status"] == "not-applicable"


def test_budget_exit_code():
    code, out, _ = run(["verify", "torsion", "--n", "3", "--r", "1", "--budget", "5", "--json"])
    assert code == 3 and json.loads(out)["status"] == "budget"


def test_env_budget(monkeypatch):
    monkeypatch.setenv("LML_BUDGET", "5")
    assert run(["verify", "torsion", "--n", "3", "--r", "1"])[0] == 3
    monkeypatch.setenv("LML_BUDGET", "5000000")
    code, out, _ = run(["verify", "torsion", "--n", "3", "--r", "1", "--json"])
    assert code == 0 and json.loads(out)["manifest"]["budgets"]["reduction_steps"] == 5000000


def test_config_precedence():
    ns = argparse.Namespace(budget=None, p=7, pk=None, D=None, threads=None)
    cfg = cli.resolve_config(ns, {"LML_P": "5", "LML_K": "6"})
    assert cfg["p"] == 7 and cfg["pk"] == 6 and cfg["budget"] == 10 ** 6
    assert cli.resolve_config(argparse.Namespace(), {})["pk"] == 4
    with pytest.raises(cli.UsageError):
        cli.resolve_config(ns, {"LML_K": "four"})


def test_bad_env_is_usage_error(monkeypatch):
    monkeypatch.setenv("LML_BUDGET", "lots")
    assert run(["verify", "kr", "--n", "2"])[0] == 2


def test_usage_errors(tmp_path):
    assert run(["frobnicate"])[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["ideal", "gb", "--ideal", str(bad)])[0] == 2
    assert run(["chart", "build", "--case", "gl", "--n", "3", "--r", "0"])[0] == 2


def test_hom_check(xy_ideal, tmp_path):
    tgt = tmp_path / "uv.json"
    tgt.write_text(json.dumps({"ring": {"vars": ["u", "v", "t"], "coeff": "QQ"}, "gens": ["u*v - t"]}))
    m = json.dumps({"x": "u", "y": "v", "t": "t"})
    assert run(["hom", "check", "--source", xy_ideal, "--target", str(tgt), "--map", m])[0] == 0
    m = json.dumps({"x": "u", "y": "u", "t": "t"})
    assert run(["hom", "check", "--source", xy_ideal, "--target", str(tgt), "--map", m])[0] == 1


def test_artifacts_are_written_atomically(tmp_path):
    target = tmp_path / "rep.json"
    code, _, _ = run(["verify", "kr", "--n", "3", "-o", str(target)])
    assert code == 0
    rep = json.loads(target.read_text())
    assert rep["manifest"]["command"][:2] == ["verify", "kr"]
    assert not [p for p in os.listdir(tmp_path) if p.endswith(".tmp")]


def test_atomic_write_keeps_old_file_on_error(tmp_path, monkeypatch):
    target = tmp_path / "x.json"
    target.write_text("old")

    def boom(*a, **k):
        raise OSError("disk full")

    monkeypatch.setattr(cli.os, "replace", boom)
    with pytest.raises(OSError):
        cli.atomic_write(str(target), "new")
    assert target.read_text() == "old"
    assert os.listdir(tmp_path) == ["x.json"]


def test_thread_count_does_not_change_output():
    argv = ["verify", "splitting", "--n", "3", "--r", "1", "--json"]
    a = json.loads(run(argv + ["--threads", "1"])[1])
    b = json.loads(run(argv)[1])
    assert cli._dump(cli.strip_timing(a)) == cli._dump(cli.strip_timing(b))


def test_replay(tmp_path):
    target = tmp_path / "chart.json"
    assert run(["verify", "chart", "--n", "3", "--r", "1", "--json", str(target)])[0] == 0
    code, out, _ = run(["replay", str(target)])
    assert code == 0 and "matches" in out
    data = json.loads(target.read_text())
    data["evidence"][0]["ok"] = not data["evidence"][0]["ok"]
    target.write_text(json.dumps(data))
    assert run(["replay", str(target)])[0] == 1


def test_chart_and_veronese_commands():
    code, out, _ = run(["chart", "build", "--case", "gl-component", "--n", "3", "--r", "1", "--json"])
    assert code == 0 and json.loads(out)["ring"]["vars"][-1] == "t"
    code, out, _ = run(["veronese", "gens", "--n", "2", "--g", "3", "--json"])
    assert code == 0
    assert run(["veronese", "check-sort", "--n", "3", "--g", "2"])[0] == 0
