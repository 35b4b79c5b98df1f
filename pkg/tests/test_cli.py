"""End-to-end runs of the installed command line.

Core claims:
    - the documented examples run with the documented outputs and exits
    - exit codes: 0 success, 1 domain error as JSON, 2 usage
    - --log-base only rescales the displayed logarithmic quantities
    - rerunning the embedded config of any result reproduces it byte
      for byte, JSON and CSV alike
"""

import json
import math
import subprocess
import sys
from pathlib import Path

import pytest
from pytest import approx

REPO = Path(__file__).resolve().parent.parent
FAMILIES = REPO / "families"


def run_cli(*argv, expect=0):
    proc = subprocess.run(
        [sys.executable, "-m", "rankshift", *argv],
        capture_output=True, text=True)
    assert proc.returncode == expect, proc.stdout + proc.stderr
    return proc


def run_json(*argv):
    return json.loads(run_cli(*argv).stdout)


@pytest.fixture(scope="module")
def g1_path():
    return str(FAMILIES / "g1.json")


@pytest.fixture()
def bad_family(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(
        {"rank": 1, "alphabet": ["0", "1"], "matrices": [[[0, 0], [1, 1]]]}))
    return str(path)


@pytest.fixture()
def pot_path(tmp_path):
    path = tmp_path / "pot.json"
    path.write_text(json.dumps({
        "window": [0], "default": 0.0,
        "entries": [{"word": {"shape": [0], "labels": [1]}, "value": 0.5}],
    }))
    return str(path)


# -- Documented examples ---------------------------------------------------------

def test_validate_example(g1_path):
    data = run_json("validate", "-f", g1_path)
    assert data["status"] == "valid"
    assert data["config"]["command"] == "validate"


def test_entropy_example(g1_path):
    data = run_json("entropy", "-f", g1_path, "--p", "1", "--mode", "both",
                    "--k", "1", "--n-max", "40")
    assert data["exact"] == approx(math.log((1 + math.sqrt(5)) / 2), abs=1e-9)
    assert data["abs_error"] <= 1e-6
    assert len(data["sequence"]) == 40 and len(data["diffs"]) == 39


def test_search_gap_example(tmp_path):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (out1, out2):
        run_cli("search-gap", "-f", "/dev/null", "--exhaustive", "--size", "2",
                "--format", "csv", "--out", str(out))
    assert out1.read_bytes() == out2.read_bytes()
    lines = out1.read_text().splitlines()
    assert lines[0].startswith("# config: ")
    assert lines[1] == "fingerprint,alphabet_size,matrices,r1,r2,r_prod,gap"
    assert len(lines) == 24  # config + header + 22 records


# -- Exit codes --------------------------------------------------------------------

def test_validate_reports_invalid_but_exits_zero(bad_family):
    data = run_json("validate", "-f", bad_family)
    assert data["status"] == "invalid"
    assert data["violations"][0]["code"] == "NoSources"


def test_domain_error_exits_one(bad_family):
    proc = run_cli("entropy", "-f", bad_family, "--p", "1", expect=1)
    payload = json.loads(proc.stdout)
    assert payload["error"] == "InvalidFamily"


def test_zero_direction_exits_one(g1_path):
    proc = run_cli("entropy", "-f", g1_path, "--p", "0", expect=1)
    assert json.loads(proc.stdout)["error"] == "ZeroDirection"


def test_usage_errors_exit_two(g1_path):
    run_cli("no-such-command", "-f", g1_path, expect=2)
    proc = run_cli("entropy", "-f", g1_path, "--p", "1", "--n-max", "1",
                   expect=2)
    assert "usage error" in proc.stderr


def test_missing_family_file_is_parse_error():
    proc = run_cli("validate", "-f", "/no/such/file.json", expect=1)
    assert json.loads(proc.stdout)["error"] == "ParseError"


# -- Display options ---------------------------------------------------------------

def test_log_base_two_rescales(g1_path):
    base_e = run_json("entropy", "-f", g1_path, "--p", "1", "--n-max", "10")
    base_2 = run_json("entropy", "-f", g1_path, "--p", "1", "--n-max", "10",
                      "--log-base", "2")
    assert base_2["exact"] == approx(base_e["exact"] / math.log(2), rel=1e-9)
    assert base_2["estimate"] == approx(base_e["estimate"] / math.log(2),
                                        rel=1e-9)


def test_words_origin_and_limit(g1_path):
    data = run_json("words", "-f", g1_path, "--shape", "2", "--origin", "1")
    assert data["total"] == "2"
    assert [w["labels"] for w in data["words"]] == [[1, 0, 0], [1, 0, 1]]
    limited = run_json("words", "-f", g1_path, "--shape", "2", "--limit", "2")
    assert limited["total"] == "5" and limited["returned"] == 2


def test_words_csv(g1_path):
    proc = run_cli("words", "-f", g1_path, "--shape", "2", "--limit", "2",
                   "--format", "csv")
    lines = proc.stdout.splitlines()
    assert lines[1] == "index,word"
    assert lines[2] == "0,2:0.0.0"
    assert lines[3] == "1,2:0.0.1"


def test_count_check(g1_path):
    data = run_json("count-check", "-f", str(FAMILIES / "g3.json"),
                    "--max-shape", "2,2")
    assert data["ok"] is True and len(data["rows"]) == 9
    csv_proc = run_cli("count-check", "-f", g1_path, "--max-shape", "3",
                       "--format", "csv")
    assert "shape,enumerated,matrix_count,equal" in csv_proc.stdout


def test_action_entropy(g1_path):
    data = run_json("action-entropy", "-f", str(FAMILIES / "g3.json"), "--n", "5")
    assert data["value"] > 0
    with_k = run_json("action-entropy", "-f", str(FAMILIES / "g3.json"),
                      "--n", "5", "--k", "2")
    assert with_k["value"] > data["value"]  # bigger cube, same scaling


def test_pressure_oracle(g1_path, pot_path):
    data = run_json("pressure", "-f", g1_path, "--p", "1", "--n-max", "40",
                    "--potential", pot_path, "--oracle")
    closed = math.log((1 + math.sqrt(1 + 4 * math.exp(0.5))) / 2)
    assert data["oracle"] == approx(closed, abs=1e-9)
    assert data["abs_error"] <= 1e-6
    zero = run_json("pressure", "-f", g1_path, "--p", "1", "--n-max", "30",
                    "--oracle")
    assert zero["oracle"] == approx(math.log((1 + math.sqrt(5)) / 2), abs=1e-9)


def test_lemma_check(g1_path):
    data = run_json("lemma-check", "-f", str(FAMILIES / "g2.json"),
                    "--p", "1", "--max-shape", "1")
    assert data["pairs"] == 36
    assert data["failures"] == 0
    assert data["all_partial_isometries"] is True


# -- Embedded-config reproducibility ------------------------------------------------

def _argv_from_config(config):
    argv = [config["command"]]
    for key, value in config.items():
        if key == "command" or value is None:
            continue
        flag = "--" + key.replace("_", "-")
        if key == "family":
            flag = "-f"
        if isinstance(value, bool):
            if value:
                argv.append(flag)
            continue
        argv.extend([flag, str(value)])
    return argv


def test_embedded_config_reproduces_json(g1_path):
    first = run_cli("entropy", "-f", g1_path, "--p", "1", "--n-max", "12")
    config = json.loads(first.stdout)["config"]
    second = run_cli(*_argv_from_config(config))
    assert second.stdout == first.stdout


def test_embedded_config_reproduces_csv(tmp_path):
    first = run_cli("search-gap", "-f", "/dev/null", "--trials", "25",
                    "--seed", "11", "--density", "0.5", "--format", "csv")
    config_line = first.stdout.splitlines()[0]
    config = json.loads(config_line[len("# config: "):])
    second = run_cli(*_argv_from_config(config))
    assert second.stdout == first.stdout
