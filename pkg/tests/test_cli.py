import json
import subprocess
import sys
from importlib import resources

from sizesem.cli import main


def data_path(name):
    return str(resources.files("sizesem.fixtures").joinpath(f"data/{name}"))


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_system(capsys):
    code, out, _ = run_cli(capsys, "validate", "--system", data_path("fact34-1.json"))
    assert code == 0
    assert "ok: system" in out


def test_validate_mu(capsys):
    code, out, _ = run_cli(capsys, "validate", "--mu", data_path("prop41-82-mu.json"))
    assert code == 0


def test_validate_rejects_bad_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"universe": ["x"], "domain": [[]], "ideals": {}}')
    code, _, err = run_cli(capsys, "validate", "--system", str(bad))
    assert code == 2
    assert "EmptySetInDomain" in err


def test_check_emf_example(capsys):
    code, out, _ = run_cli(
        capsys, "check", "--system", data_path("fact34-1.json"), "--props", "eMF"
    )
    assert code == 0
    assert "FAILS" in out and "X={x,z}" in out and "A={z}" in out


def test_check_json_is_stable(capsys):
    args = ("check", "--system", data_path("fact34-1.json"), "--all", "--json")
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    payload = json.loads(out1)
    assert payload["records"][0]["condition"] == "Opt"


def test_rules_verb(capsys):
    code, out, _ = run_cli(
        capsys, "rules", "--system", data_path("ex38-3.json"), "--rules", "OR:3,CM:3,RatM"
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("OR:3") and "holds" in lines[0]
    assert lines[2].startswith("RatM") and "FAILS" in lines[2]


def test_mu_rules_verb(capsys):
    code, out, _ = run_cli(
        capsys, "mu", "--mu", data_path("prop41-82-mu.json"), "--rules", "mu-CUT,mu-CUM"
    )
    assert code == 0
    assert out.count("holds") == 2


def test_mu_correspondence_verb(capsys):
    code, out, _ = run_cli(
        capsys, "mu", "--row", "8", "--direction", "bwd", "--max-size", "3"
    )
    assert code == 0
    assert "non-implication confirmed" in out


def test_derive_verb(capsys):
    code, out, _ = run_cli(
        capsys, "derive", "--system", data_path("fact34-2.json"), "--json"
    )
    assert code == 0
    payload = json.loads(out)
    assert [["x", "z"], ["z"]] in payload["pairs"]


def test_search_verb_capacity(capsys):
    code, _, err = run_cli(
        capsys, "search", "--size", "5", "--mode", "count"
    )
    assert code == 3
    assert "capacity" in err.lower()


def test_search_verb_counterexample(capsys):
    code, out, _ = run_cli(
        capsys,
        "search", "--size", "3", "--required", "Opt,iM,eMI,I-omega",
        "--target", "eMF", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["found"] is not None


def test_search_log_appends_json_lines(tmp_path, capsys):
    log = tmp_path / "found.jsonl"
    args = (
        "search", "--size", "3", "--required", "Opt,iM,eMI,I-omega",
        "--target", "eMF", "--log", str(log),
    )
    assert run_cli(capsys, *args)[0] == 0
    assert run_cli(capsys, *args)[0] == 0
    lines = log.read_text().splitlines()
    assert len(lines) == 2
    assert json.loads(lines[0]) == json.loads(lines[1])


def test_every_fixture_id_has_expected_verdicts():
    from sizesem import fixtures

    table = fixtures.expected_table()
    assert set(table) == set(fixtures.FIXTURE_IDS)


def test_repro_pass(capsys):
    code, out, _ = run_cli(capsys, "repro", "fact-3.4-1")
    assert code == 0
    assert out.strip() == "PASS fact-3.4-1"


def test_repro_unknown_id(capsys):
    code, _, err = run_cli(capsys, "repro", "zzz")
    assert code == 2


def test_expect_mismatch_exits_one(tmp_path, capsys):
    expect = tmp_path / "expect.json"
    expect.write_text(json.dumps({"records": [{"condition": "eMF", "holds": True}]}))
    code, _, err = run_cli(
        capsys,
        "check", "--system", data_path("fact34-1.json"), "--props", "eMF",
        "--expect", str(expect),
    )
    assert code == 1
    assert "expect" in err


def test_expect_match_exits_zero(tmp_path, capsys):
    expect = tmp_path / "expect.json"
    expect.write_text(json.dumps({"records": [{"condition": "eMF", "holds": False}]}))
    code, _, _ = run_cli(
        capsys,
        "check", "--system", data_path("fact34-1.json"), "--props", "eMF",
        "--expect", str(expect),
    )
    assert code == 0


def test_repro_replays_every_fixture_id():
    from sizesem import fixtures

    table = fixtures.expected_table()
    for fid in fixtures.FIXTURE_IDS:
        produced = fixtures.run_fixture(fid)
        assert fixtures.compare_records(produced, table[fid]) == [], fid


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "sizesem.cli", "repro", "fact-3.5:2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert "PASS" in proc.stdout
