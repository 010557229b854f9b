import json

import pytest

from powerops.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_tn_examples(capsys):
    code, out = run(capsys, "tn", "--module", "Z/5", "--n", "2")
    assert code == 0 and "Z/5 + Z/5" in out
    code, out = run(capsys, "tn", "--module", "Z", "--n", "4")
    assert code == 0 and out.count("Z") >= 5
    code, out = run(capsys, "tn", "--module", "0", "--n", "3")
    assert code == 0 and "group: 0" in out


def test_json_round_trip_and_determinism(capsys):
    args = ("transfer", "--m", "3", "--p", "3", "--basis", "paper",
            "--format", "json")
    code, out1 = run(capsys, *args)
    assert code == 0
    doc = json.loads(out1)
    assert set(doc) == {"command", "inputs", "result", "citations"}
    assert doc["result"]["matrix"] == [[10, 1, 8], [1, 10, 8], [8, 8, 19]]
    assert json.dumps(doc, sort_keys=True, separators=(", ", ": ")) + "\n" \
        == out1
    _, out2 = run(capsys, *args)
    assert out1 == out2


def test_complete_examples(capsys):
    code, out = run(capsys, "complete", "--expr", "Z + Zp_inf", "--p", "3")
    assert code == 0 and "L0: Zp_hat" in out and "L1: Zp_hat" in out
    code, out = run(capsys, "complete", "--expr", "Z/6", "--p", "2")
    assert code == 0 and "L0: Z/2" in out and "L1: 0" in out
    code, out = run(capsys, "complete", "--expr", "Z[1/p]", "--p", "5")
    assert code == 0 and "L0: 0" in out and "L1: 0" in out


def test_keyconst_and_adams(capsys):
    code, out = run(capsys, "keyconst", "--n", "2", "--p", "2",
                    "--format", "json")
    assert code == 0 and json.loads(out)["result"]["k"] == 2
    code, out = run(capsys, "adams", "--n", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["result"]["terms"] == {"l1(e1)*l1(e1)": 1, "l2(e1)": -2}


def test_theta_subcommand(capsys):
    code, out = run(capsys, "theta", "--module", "Z/2", "--p", "2",
                    "--n", "2")
    assert code == 0 and "Z/4" in out


def test_exit_code_usage_error(capsys):
    code, _ = run(capsys, "complete", "--expr", "garbage!", "--p", "2")
    assert code == 2
    code, _ = run(capsys, "keyconst", "--n", "2", "--p", "4")
    assert code == 2
    with pytest.raises(SystemExit) as e:
        main(["tn", "--module", "Z"])     # missing --n
    assert e.value.code == 2


def test_exit_code_unsupported_input(capsys):
    code, _ = run(capsys, "tn", "--module", "Zp_inf", "--n", "2", "--p", "2")
    assert code == 3
    code, _ = run(capsys, "theta", "--module", "Z/6", "--p", "2", "--n", "2")
    assert code == 3


def test_verify_suites(capsys):
    code, out = run(capsys, "verify", "--suite", "none")
    assert code == 0 and "passed: True" in out
    code, out = run(capsys, "verify", "--suite", "t2cyclic", "--max-m", "12")
    assert code == 0 and "[ok]" in out and "FAIL" not in out
    code, out = run(capsys, "verify", "--suite", "appendix-b")
    assert code == 0
    code, out = run(capsys, "verify", "--suite", "completion",
                    "--format", "json")
    assert code == 0 and json.loads(out)["result"]["passed"] is True
    code, _ = run(capsys, "verify", "--suite", "bogus")
    assert code == 2


def test_tsv_format(capsys):
    code, out = run(capsys, "keyconst", "--n", "1", "--p", "3",
                    "--format", "tsv")
    assert code == 0
    rows = dict(line.split("\t", 1) for line in out.strip().splitlines())
    assert rows["result.k"] == "1"
