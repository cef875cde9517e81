import csv
import io
import json

import pytest

from faultdiag.harness import (
    SWEEP_COLUMNS,
    ConfigError,
    MajorityWarning,
    ScenarioConfig,
    main,
    run_scenario,
    sweep,
    transcript_to_dict,
)
from faultdiag.world import ParseError


def simulate_json(capsys, *argv):
    assert main(["simulate", *argv]) == 0
    return capsys.readouterr().out


def test_run_scenario_three_of_each():
    config = ScenarioConfig("KKKVVVNNN", "find_reliable_pairing", "seeded_random", seed=7)
    transcript, summary = run_scenario(config)
    assert summary.bound == 7
    assert summary.questions_used <= 7 and summary.within_bound
    assert summary.majority_ok
    assert transcript.question_count == summary.questions_used


def test_run_scenario_bad_world():
    with pytest.raises(ParseError, match="position 1"):
        run_scenario(ScenarioConfig("KQ", "line_scan"))


@pytest.mark.parametrize(
    "config",
    [
        ScenarioConfig("KV", "nope"),
        ScenarioConfig("KV", "line_scan", "scripted"),
        ScenarioConfig("KV", "line_scan", "seeded_random"),
        ScenarioConfig("KV", "line_scan", "sometimes"),
    ],
)
def test_run_scenario_config_errors(config):
    with pytest.raises(ConfigError):
        run_scenario(config)


def test_run_scenario_warns_without_majority():
    with pytest.warns(MajorityWarning):
        _, summary = run_scenario(ScenarioConfig("KNN", "find_reliable_pairing", "always_yes"))
    assert not summary.majority_ok


def test_simulate_kvn_always_no(capsys):
    doc = json.loads(simulate_json(capsys, "--world", "KVN", "--algorithm", "find_all_knights", "--strategy", "always_no"))
    assert doc["result"]["knights"] == [0]
    assert doc["questions"] == 5 == len(doc["entries"])
    assert doc["summary"]["within_bound"]


def test_transcript_schema(capsys):
    doc = json.loads(
        simulate_json(capsys, "--world", "NKVKN", "--algorithm", "identify_normals", "--strategy", "seeded_random", "--seed", "3")
    )
    assert {"world", "algorithm", "entries", "result", "questions"} <= set(doc)
    assert doc["world"] == "NKVKN" and doc["algorithm"] == "identify_normals"
    for k, e in enumerate(doc["entries"]):
        assert set(e) == {"i", "respondent", "predicate", "answer"}
        assert e["i"] == k
        assert e["predicate"]["kind"] in {"is_normal", "is_knight", "is_reliable"}
        assert e["answer"] in {"yes", "no"}
    assert doc["result"] == {"normals": [0, 4]}


def test_simulate_deterministic(capsys):
    args = ("--world", "KKKVVVNNN", "--algorithm", "identify_normals", "--strategy", "seeded_random", "--seed", "11")
    assert simulate_json(capsys, *args) == simulate_json(capsys, *args)


def test_simulate_scripted(capsys):
    doc = json.loads(simulate_json(capsys, "--world", "NKV", "--algorithm", "find_reliable_pairing",
                                   "--strategy", "scripted", "--script", "no"))
    assert doc["result"] == {"trusted": 2}


@pytest.mark.filterwarnings("ignore::faultdiag.harness.MajorityWarning")
def test_cli_exit_codes(capsys):
    assert main(["simulate", "--world", "KQ", "--algorithm", "line_scan"]) == 2
    assert main(["simulate", "--world", "KV", "--algorithm", "line_scan", "--strategy", "seeded_random"]) == 2
    assert main(["frobnicate"]) == 2
    assert main([]) == 2
    assert main(["simulate", "--world", "NN", "--algorithm", "line_scan"]) == 1
    assert main(["simulate", "--world", "NK", "--algorithm", "line_scan", "--strategy", "scripted", "--script", ""]) == 1
    assert main(["verify", "--n-max", "0"]) == 2


def test_verify_small(capsys):
    assert main(["verify", "--n-max", "4"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["passed"] and report["failures"] == []
    assert report["worlds_checked"] == 2 + 4 + 20 + 48


def test_trace_output(capsys):
    assert main(["trace", "--world", "KNV", "--algorithm", "find_all_knights"]) == 0
    out = capsys.readouterr().out
    assert "Q1" in out and "if and only if you are a Knight?" in out
    assert "4 questions (bound 5, within bound)" in out


def test_out_dir_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("FAULTDIAG_OUT_DIR", str(tmp_path))
    assert main(["simulate", "--world", "KV", "--algorithm", "line_scan", "--out", "run.json"]) == 0
    assert json.loads((tmp_path / "run.json").read_text())["questions"] == 1


def test_sweep_rows_and_bounds():
    rows = sweep(2, 20, "find_reliable_pairing", 100, 1)
    assert len(rows) == 1900
    assert all(r["within_bound"] and r["majority_ok"] for r in rows)


@pytest.mark.parametrize("algorithm", ["line_scan", "find_all_knights", "identify_normals"])
def test_sweep_other_algorithms(algorithm):
    rows = sweep(1, 15, algorithm, 20, 5)
    assert all(r["within_bound"] for r in rows)


def test_sweep_cli_csv(tmp_path):
    out = tmp_path / "s.csv"
    args = ["sweep", "--n-from", "2", "--n-to", "6", "--algorithm", "identify_normals", "--trials", "7", "--seed", "3"]
    assert main(args + ["--out", str(out)]) == 0
    first = out.read_text()
    assert main(args + ["--out", str(out)]) == 0
    assert out.read_text() == first
    rows = list(csv.DictReader(io.StringIO(first)))
    assert tuple(rows[0]) == SWEEP_COLUMNS
    assert len(rows) == 35


def test_transcript_to_dict_roundtrip():
    config = ScenarioConfig("KVNK", "line_scan")
    t, s = run_scenario(config)
    doc = transcript_to_dict(config.world, config.algorithm, t, s)
    assert json.loads(json.dumps(doc)) == doc
