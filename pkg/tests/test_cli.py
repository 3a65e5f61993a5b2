import csv
import io
import json

import pytest

from qtrace.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, GQ_CLOSED_FORM, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_nf_text():
    code, text = run("nf", "x^1_1 x^1_2")
    assert code == EXIT_OK
    assert text.strip() == "(q^-2 - 1) x^1_2 x^2_2 + x^1_2 x^1_1"


def test_nf_classical():
    code, text = run("nf", "--classical", "x^1_1 x^1_2")
    assert text.strip() == "x^1_2 x^1_1"


def test_nf_two_copies():
    code, text = run("nf", "--m", "2", "y^1_2 x^1_2")
    assert text.strip() == "q^2 x(1)^1_2 x(2)^1_2"


def test_nf_json_envelope():
    code, text = run("nf", "--format", "json", "x^2_2 x^1_2")
    data = json.loads(text)
    assert set(data) == {"command", "params", "results", "versions"}
    assert data["command"] == "nf"
    assert data["params"]["expr"] == "x^2_2 x^1_2"
    assert data["results"][0]["detail"] == "q^2 x^1_2 x^2_2"
    assert "qtrace" in data["versions"]


@pytest.mark.parametrize(
    "argv",
    [
        ("nf", "x^9_1"),
        ("nf", "Tr_q(x^1_1)"),
        ("verify", "--name", "no_such_identity"),
        ("verify", "--name", "ch2", "--N", "3"),
        ("span", "--deg", "1"),
        ("span", "--deg", "a,b"),
        ("hilbert", "--cap", "50"),
        ("hilbert", "--which", "Q"),
        ("nf", "--memory-budget", "-5", "x^1_1"),
        ("frobnicate",),
        (),
    ],
)
def test_usage_errors(argv, capsys):
    code, _ = run(*argv)
    assert code == EXIT_USAGE


def test_verify_single():
    code, text = run("verify", "--name", "ch2")
    assert code == EXIT_OK
    assert text.startswith("PASS  ch2 (N=2, m=1)  residual = 0")


def test_verify_csv():
    code, text = run("verify", "--name", "qtryx", "--format", "csv")
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["name", "passed", "detail"]
    assert rows[1][:2] == ["qtryx (N=2, m=2)", "True"]


def test_verify_filtered_by_parameters():
    code, text = run("verify", "--N", "3")
    assert code == EXIT_OK
    assert text.splitlines()[0].startswith("PASS  rea_product (N=3, m=2)")


def test_verify_all_reports_the_failing_contraction():
    code, text = run("verify", "--name", "all", "--N", "2", "--m", "2")
    assert code == EXIT_FAIL
    failing = [l for l in text.splitlines() if l.startswith("FAIL")]
    assert len(failing) == 1 and "hecke_id_image (N=2" in failing[0]


def test_hilbert_csv():
    code, text = run("hilbert", "--which", "T", "--cap", "2", "--format", "csv")
    assert text.splitlines() == ["d1,dim", "0,1", "1,2", "2,3"]


def test_hilbert_compare():
    code, text = run("hilbert", "--compare", "1/((1-s)*(1-s**2))")
    assert code == EXIT_OK and text.strip().endswith("match")
    code, text = run("hilbert", "--compare", "1/(1-s)")
    assert code == EXIT_FAIL and "MISMATCH" in text


def test_hilbert_json_table():
    code, text = run("hilbert", "--m", "2", "--cap", "1", "--format", "json")
    data = json.loads(text)
    assert data["table"]["entries"][1] == {"degree": [0, 1], "dim": 1}


def test_span():
    code, text = run("span", "--deg", "2,1")
    assert code == EXIT_OK
    assert text.strip() == "rank 3 from 12 products; invariant dimension 3"


def test_gq():
    code, text = run("gq-hilbert", "--cap", "3")
    assert code == EXIT_OK
    assert f"compare with {GQ_CLOSED_FORM}: match" in text


def test_present():
    code, text = run("present-t22", "--cap", "3")
    assert code == EXIT_OK
    assert "free on I, X, Y, XY: ok" in text


def test_iso():
    code, text = run("iso-t22", "--format", "json")
    data = json.loads(text)
    assert code == EXIT_OK and len(data["results"]) == 17


def test_degree_cap_flag_beats_environment(monkeypatch):
    monkeypatch.setenv("QTR_DEGREE_CAP", "3")
    assert run("hilbert", "--cap", "4")[0] == EXIT_USAGE
    assert run("hilbert", "--cap", "4", "--degree-cap", "5")[0] == EXIT_OK


def test_memory_budget_flag(monkeypatch):
    code, text = run("nf", "--memory-budget", "1M", "--format", "json", "x^1_1")
    assert json.loads(text)["params"]["memory_budget"] == "1M"


@pytest.mark.slow
def test_selftest_is_deterministic():
    code1, text1 = run("selftest", "--samples", "10")
    code2, text2 = run("selftest", "--samples", "10")
    assert text1 == text2
    assert text1.startswith("R for N=2:")
    # the contraction check fails both at q and at q = 1
    assert code1 == EXIT_FAIL
    assert text1.strip().endswith("2 of 45 checks FAILED")
