import json

import pytest

from orthomorph.cli import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count(capsys):
    code, out, _ = run(capsys, "count", "exponential", "--n", "4")
    assert code == EXIT_OK and out.strip() == "1"


@pytest.mark.parametrize("n", range(2, 10))
def test_count_oracle_agrees(capsys, n):
    _, fast, _ = run(capsys, "count", "additive", "--n", str(n))
    _, slow, _ = run(capsys, "count", "additive", "--n", str(n), "--oracle")
    assert fast == slow


def test_bound(capsys):
    code, out, _ = run(capsys, "bound", "--n", "14")
    assert code == EXIT_OK
    assert out.strip() == "64 (exact: 442368/6912)"


def test_bound_rejects_inadmissible(capsys):
    code, _, err = run(capsys, "bound", "--n", "10")
    assert code == EXIT_USAGE and "squarefree" in err


def test_bad_arguments_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["count", "division", "--n", "4"])
    assert exc.value.code == EXIT_USAGE
    code, _, _ = run(capsys, "split", "--group", "4,2")
    assert code == EXIT_USAGE


def test_enumerate_verify_roundtrip(capsys, tmp_path):
    out = tmp_path / "certs.jsonl"
    code, _, _ = run(capsys, "enumerate", "exponential", "--n", "6", "--out", str(out))
    assert code == EXIT_OK
    records = [json.loads(line) for line in out.read_text().splitlines()]
    assert len(records) == 36
    assert set(records[0]) == {"n", "kind", "sigma", "image"}
    code, text, _ = run(capsys, "verify", "--in", str(out))
    assert code == EXIT_OK and "36" in text


def test_verify_tampered(capsys, tmp_path):
    good = tmp_path / "good.jsonl"
    run(capsys, "enumerate", "additive", "--n", "5", "--out", str(good))
    lines = good.read_text().splitlines()
    rec = json.loads(lines[1])
    rec["image"][2] = rec["image"][0]
    lines[1] = json.dumps(rec)
    bad = tmp_path / "bad.jsonl"
    bad.write_text("\n".join(lines) + "\n")
    code, _, err = run(capsys, "verify", "--in", str(bad))
    assert code == EXIT_VERIFY
    assert "record 2" in err and "x=3" in err


def test_construct_outputs_verified_certificates(capsys, tmp_path):
    out = tmp_path / "c.jsonl"
    code, _, _ = run(capsys, "construct", "--n", "14", "--all", "--out", str(out))
    assert code == EXIT_OK
    assert len(out.read_text().splitlines()) >= 64
    assert run(capsys, "verify", "--in", str(out))[0] == EXIT_OK
    code, text, _ = run(capsys, "construct", "--n", "22")
    assert code == EXIT_OK and json.loads(text)["n"] == 22


def test_exists_table(capsys):
    code, out, _ = run(capsys, "exists", "multiplicative", "--n-max", "6", "--json")
    assert code == EXIT_OK
    rows = [json.loads(line) for line in out.splitlines()]
    assert [(r["n"], r["exists"]) for r in rows] == [(2, True), (3, False), (4, False), (5, False), (6, False)]


def test_budget_exhaustion_exit_4(capsys, monkeypatch):
    monkeypatch.setenv("ORTHO_NODE_BUDGET", "10")
    code, out, _ = run(capsys, "count", "additive", "--n", "11")
    assert code == EXIT_BUDGET and out.startswith(">=")
    code, out, _ = run(capsys, "exists", "additive", "--n-max", "12", "--n-min", "12")
    assert code == EXIT_BUDGET and "unknown" in out


def test_split(capsys):
    code, out, _ = run(capsys, "split", "--group", "5", "--json")
    rec = json.loads(out)
    assert code == EXIT_OK and rec["count"] == 52 and rec["meets_bound"]
    code, out, _ = run(capsys, "split", "--group", "3", "--enumerate", "--json")
    assert len(json.loads(out)["splits"]) == 8


def test_report(capsys):
    code, out, _ = run(capsys, "report", "--n-max", "14", "--json")
    assert code == EXIT_OK
    rows = {r["n"]: r for r in map(json.loads, out.splitlines())}
    assert rows[10]["exponential"] is False
    assert rows[2]["multiplicative"] is True
    assert rows[14]["exponential_count"] >= rows[14]["theorem3_bound"] == 64
    assert rows[9]["emm_ratio"] is not None and rows[10]["emm_ratio"] is None


def test_report_csv(capsys):
    code, out, _ = run(capsys, "report", "--n-max", "5", "--csv")
    assert code == EXIT_OK
    assert out.splitlines()[0].startswith("n,additive,multiplicative,exponential")
