import json
import time

import pytest

from k3verify import cli

FAST = ["bo-character-table", "j-invariants", "lattice-twist-reduction", "intersection-number-h4",
        "hyperplane-permutations"]


def test_catalog():
    names = [d.name for d in cli.list_checks()]
    assert len(names) >= 20 and len(set(names)) == len(names)
    assert {"bo-character-table", "rep-two-dim-subreps", "aut-intersection"} <= set(names)
    assert {d.runtime for d in cli.list_checks()} == {"fast", "enumerative"}
    modules = {d.module for d in cli.list_checks()}
    assert {"exactfield", "polyring", "groups", "reps", "varieties", "maps", "lattices", "autint"} <= modules


def test_single_check_fast():
    start = time.perf_counter()
    report = cli.run(["bo-character-table"])
    assert report["overall"] == "pass"
    assert time.perf_counter() - start < 1.0 or report["checks"][0]["seconds"] < 1.0


def test_unknown_check_runs_nothing(monkeypatch):
    called = []
    monkeypatch.setattr(cli, "run_check", lambda *a: called.append(a))
    with pytest.raises(cli.ConfigError, match="unknown check"):
        cli.run(["bo-character-table", "no-such-check"])
    assert called == []
    assert cli.main(["verify", "--check", "no-such-check"]) == 2


def test_bad_configuration_exit_codes():
    assert cli.main(["verify", "--prime", "7", "--check", "j-invariants"]) == 2
    assert cli.main(["verify", "--workers", "0", "--check", "j-invariants"]) == 2
    assert cli.main(["verify", "--format", "yaml"]) == 2


def test_deterministic_json_and_ordering():
    a = cli.canonical_json(cli.run(FAST), timings=False)
    b = cli.canonical_json(cli.run(list(reversed(FAST)), workers=3), timings=False)
    assert a == b
    names = [c["name"] for c in json.loads(a)["checks"]]
    assert names == sorted(names)


def test_report_dir_and_exit_code(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(cli.REPORT_DIR_ENV, str(tmp_path))
    assert cli.main(["verify", "--check", "j-invariants", "--format", "json"]) == 0
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["overall"] == "pass" and report["config"]["primes"] == [73, 97]
    assert json.loads(capsys.readouterr().out) == report


def test_small_closure_cap_is_undetermined():
    report = cli.run(["aut-group-order"], cli.Config(closure_cap=100))
    assert report["checks"][0]["status"] == "undetermined"
    assert cli.exit_code(report) == 1


def test_primes_are_configurable():
    report = cli.run(["s-smooth-mod-p"], cli.Config(primes=(73,)))
    assert report["overall"] == "pass"
    assert list(report["checks"][0]["details"]) == ["73"]
