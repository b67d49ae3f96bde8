import json

import pytest

from rootsum.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_pmf_json(capsys):
    code, out, _ = call(capsys, "pmf", "--N", "4", "--l", "1", "--m", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["denominator"] == "6" and len(data["atoms"]) == 5
    assert data["uniformity"]["support_size"] == "5"


def test_output_is_byte_identical(capsys, tmp_path):
    argv = ["moments", "--N", "9", "--l", "2", "--m", "4", "--k-max", "9"]
    first = call(capsys, *argv)[1]
    assert first == call(capsys, *argv)[1]
    f = tmp_path / "out.json"
    assert run(argv + ["--output", str(f)]) == 0
    assert f.read_text() == first


def test_table_and_csv(capsys):
    code, out, _ = call(capsys, "pmf", "--N", "4", "--l", "1", "--m", "2", "--format", "table")
    assert code == 0 and "1/3" in out
    code, out, _ = call(capsys, "identities", "--name", "chu_vandermonde_central", "--limit", "3", "--format", "csv")
    assert out.splitlines()[0] == "name,params,lhs,rhs,holds" and len(out.splitlines()) == 4


def test_verify_sweep_exit_zero(capsys):
    code, out, _ = call(capsys, "verify", "--N-range", "2..10", "--k-max", "8")
    data = json.loads(out)
    assert code == 0 and data["failures"] == [] and data["verdict"] == "pass"


@pytest.mark.parametrize("suite", ["closed-form", "trig"])
def test_verify_other_suites(capsys, suite):
    assert call(capsys, "verify", "--suite", suite, "--N-range", "2..12", "--l-max", "5")[0] == 0


def test_scan_reports_counterexample_as_failure(capsys):
    code, out, _ = call(capsys, "scan-conjecture", "--N-max", "9")
    data = json.loads(out)
    assert code == 1
    assert {c["N"] for c in data["counterexamples"]} == {9}


def test_bernoulli_and_sample(capsys):
    code, out, _ = call(capsys, "bernoulli", "--N", "6", "--l", "1", "--m", "2")
    assert code == 0 and json.loads(out)["variance"] == "4/3"
    code, out, _ = call(capsys, "sample", "--N", "5", "--l", "1", "--m", "2", "--trials", "20000", "--seed", "7",
                        "--cross-check")
    assert code == 0 and json.loads(out)["passed"]


def test_coherence(capsys):
    code, out, _ = call(capsys, "coherence", "--N", "7", "--rows", "1,2,4")
    assert code == 0 and json.loads(out)["satisfied"]
    assert call(capsys, "coherence", "--N", "64", "--m", "8", "--seed", "3")[0] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["pmf", "--N", "4", "--l", "1", "--m", "9"],
        ["pmf", "--N", "4", "--l", "7", "--m", "1"],
        ["pmf", "--N", "4"],
        ["sample", "--N", "4", "--l", "1", "--m", "2", "--trials", "10"],
        ["coherence", "--N", "8", "--m", "3"],
        ["identities", "--name", "nope"],
        ["bogus"],
    ],
)
def test_usage_exit_code(capsys, argv):
    assert call(capsys, *argv)[0] == 2


def test_budget_exit_code(capsys):
    code, _, err = call(capsys, "pmf", "--N", "40", "--l", "1", "--m", "20", "--budget", "1000", "--method", "enumerate")
    assert code == 3 and "budget" in err
