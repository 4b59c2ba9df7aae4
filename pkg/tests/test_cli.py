import json
import shutil
from pathlib import Path

import pytest

from hocolim import cli, corpus, suites

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="module")
def fx(tmp_path_factory):
    d = tmp_path_factory.mktemp("fixtures")
    corpus.write_fixtures(d, N=3)
    return d


def test_shipped_fixtures_match_generator(fx):
    for p in sorted(fx.iterdir()):
        assert (FIXTURES / p.name).read_bytes() == p.read_bytes(), p.name


def test_validate_ok(fx, capsys):
    assert cli.main(["validate", str(fx / "simplex-2.json"), str(fx / "swap-over-chain-1.json")]) == 0
    out = capsys.readouterr().out
    assert "ok (TruncatedSimplicialSet)" in out and "ok (SimplicialDiagram)" in out


def test_validate_broken_identity_names_it(fx, capsys):
    assert cli.main(["validate", str(fx / "broken-identity.json")]) == 1
    out = capsys.readouterr().out
    assert "identity" in out and "level 2" in out


def test_validate_bad_json_and_missing(fx, capsys):
    assert cli.main(["validate", str(fx / "not-json.json")]) == 1
    assert cli.main(["validate", str(fx / "nope.json")]) == 2
    # missing outranks invalid
    assert cli.main(["validate", str(fx / "not-json.json"), str(fx / "nope.json")]) == 2
    assert "file not found" in capsys.readouterr().out


def test_validate_dangling_reference(fx, tmp_path):
    shutil.copy(fx / "swap-over-chain-1.json", tmp_path / "swap.json")
    assert cli.main(["validate", str(tmp_path / "swap.json")]) == 2


def test_run_argument_errors(fx, tmp_path):
    assert cli.main(["run", "--suite", "no-such-suite"]) == 2
    assert cli.main(["run", "--suite", "left-only-counterexample", str(fx / "chain-1.json")]) == 2
    assert cli.main(["run", "--suite", "tau-components", str(fx / "missing.json")]) == 2
    assert cli.main(["run", "--suite", "tau-components", str(fx / "not-json.json")]) == 2
    assert cli.main(["run", "--suite", "tau-components", "-N", "0"]) == 2
    # a simplicial set where a category is expected
    assert cli.main(["run", "--suite", "tau-components", "--out", str(tmp_path / "r.json"),
                     str(fx / "simplex-2.json")]) == 2


def test_run_with_inputs(fx, tmp_path):
    out = tmp_path / "r.json"
    code = cli.main(["run", "--suite", "left-fibration-transfer", "--out", str(out),
                     str(fx / "left-only-map.json"), str(fx / "rep-to-terminal.json")])
    assert code == 0
    rep = json.loads(out.read_text())
    assert [i["name"] for i in rep["inputs"]] == ["left-only-map.json", "rep-to-terminal.json"]
    assert all(len(i["sha256"]) == 64 for i in rep["inputs"])
    assert rep["passed"] and rep["summary"]["fail"] == 0


def test_run_tau_on_representable(fx, tmp_path):
    out = tmp_path / "tau.json"
    assert cli.main(["run", "--suite", "tau-components", "--out", str(out), str(fx / "chain-2.json")]) == 0
    rep = json.loads(out.read_text())
    for c in rep["checks"]:
        for b, v in c["details"]["per_object"].items():
            assert v["components_with_initial_and_terminal"]


def test_budget_exit_code_and_env(tmp_path, monkeypatch):
    low, full = tmp_path / "low.json", tmp_path / "full.json"
    assert cli.main(["run", "--suite", "left-only-counterexample", "--budget", "20", "--out", str(low)]) == 3
    monkeypatch.setenv("HOCOLIM_BUDGET", "20")
    assert cli.main(["run", "--suite", "left-only-counterexample", "--out", str(tmp_path / "env.json")]) == 3
    assert (tmp_path / "env.json").read_bytes() == low.read_bytes()
    # an explicit flag wins over the environment
    assert cli.main(["run", "--suite", "left-only-counterexample", "--budget", "100000", "--out", str(full)]) == 0
    monkeypatch.setenv("HOCOLIM_BUDGET", "many")
    assert cli.main(["run", "--suite", "left-only-counterexample", "--out", str(tmp_path / "x.json")]) == 0


def test_reports_are_deterministic_and_timings_separate(tmp_path):
    paths = [tmp_path / f"r{i}.json" for i in range(2)]
    for p in paths:
        assert cli.main(["run", "--suite", "explicit-retracts", "--out", str(p),
                         "--timings", str(p.with_suffix(".timings.json"))]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    text = paths[0].read_text()
    def no_floats(v):
        raise AssertionError(f"float {v} in report")

    json.loads(text, parse_float=no_floats)
    assert "total_ms" in json.loads(paths[0].with_suffix(".timings.json").read_text())
    assert "total_ms" not in text


def test_report_goes_to_stdout(capsys):
    assert cli.main(["run", "--suite", "left-only-counterexample"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["suite"] == "left-only-counterexample"


def test_diff(tmp_path, capsys):
    low, full, again = (tmp_path / n for n in ("low.json", "full.json", "again.json"))
    cli.main(["run", "--suite", "left-only-counterexample", "--budget", "20", "--out", str(low)])
    cli.main(["run", "--suite", "left-only-counterexample", "--out", str(full)])
    cli.main(["run", "--suite", "left-only-counterexample", "--out", str(again)])
    capsys.readouterr()
    assert cli.main(["diff", str(full), str(again)]) == 0
    assert cli.main(["diff", str(low), str(full)]) == 1
    d = json.loads(capsys.readouterr().out.split("\n}\n")[-2] + "\n}")
    assert d["resolved"] and all(c["status"][0] == suites.BUDGET for c in d["changed"])
    assert d["parameters"]["budget"] == [20, None]
    other = tmp_path / "other.json"
    cli.main(["run", "--suite", "zigzag", "--out", str(other)])
    assert cli.main(["diff", str(full), str(other)]) == 2
    assert cli.main(["diff", str(full), str(tmp_path / "absent.json")]) == 2


def test_diff_metadata_only():
    a, _ = suites.run_suite("left-only-counterexample")
    b = json.loads(suites.canonical_report(a))
    b["tool_version"] = "9.9.9"
    d = cli.report_diff(a, b)
    assert d["metadata"] == {"tool_version": [a["tool_version"], "9.9.9"]}
    assert cli.diff_is_empty(d) and not cli.diff_is_empty(d, ignore_metadata=False)


def test_suites_listing(capsys):
    assert cli.main(["suites"]) == 0
    out = capsys.readouterr().out
    for name in suites.SUITES:
        assert name in out
