import json

import pytest

from monkbench.ba import presentation_to_json
from monkbench.cli import main
from monkbench.errors import UsageError
from monkbench.forcing import amalgam_instance_to_json
from monkbench.generators import gen_amalgam_instance
from monkbench.harness import SUITE_NAMES, SuiteConfig, run_suite
from monkbench.reporting import write_report


def strip_wall_time(obj):
    if isinstance(obj, dict):
        return {k: strip_wall_time(v) for k, v in obj.items() if k != "wall_time"}
    if isinstance(obj, list):
        return [strip_wall_time(v) for v in obj]
    return obj


def test_run_suite_rejects_bad_config():
    with pytest.raises(UsageError):
        run_suite(SuiteConfig("no-such-suite", 1, 5))
    with pytest.raises(UsageError):
        SuiteConfig("freeness", 1, 0)


def test_reports_are_deterministic_and_parallel_invariant():
    a = run_suite(SuiteConfig("amalgam-2.8", 1, 10))
    b = run_suite(SuiteConfig("amalgam-2.8", 1, 10))
    c = run_suite(SuiteConfig("amalgam-2.8", 1, 10, parallel=True))
    assert strip_wall_time(a.to_json()) == strip_wall_time(b.to_json())
    assert strip_wall_time(a.to_json()) == strip_wall_time(c.to_json())
    assert a.ok


def test_different_seeds_give_different_cases():
    a = run_suite(SuiteConfig("freeness", 1, 5))
    b = run_suite(SuiteConfig("freeness", 2, 5))
    assert [c.seed for c in a.cases] != [c.seed for c in b.cases]


@pytest.mark.parametrize("suite", SUITE_NAMES)
def test_every_suite_passes_a_short_run(suite):
    count = 8 if suite != "cut-calculus" else 9
    report = run_suite(SuiteConfig(suite, 99, count))
    assert report.ok, [c.checks for c in report.failures]
    assert len(report.cases) == count


def test_failure_records_carry_reproducer_seeds():
    report = run_suite(SuiteConfig("novelty", 3, 4))
    for case in report.cases:
        assert case.seed != 0
        assert case.digest
    assert report.to_json()["failures"] == []


def test_write_report_renders_all_artifacts(tmp_path):
    report = run_suite(SuiteConfig("symbolic-pichi", 0, 4))
    paths = write_report(report, str(tmp_path))
    obj = json.loads((tmp_path / "report.json").read_text())
    assert obj["suite"] == "symbolic-pichi"
    assert obj["summary"] == {"total": 4, "failed": 0}
    csv_lines = (tmp_path / "report.csv").read_text().splitlines()
    assert csv_lines[0].startswith("suite,index,seed,digest")
    assert len(csv_lines) == 5
    png = (tmp_path / "report.png").read_bytes()
    assert png[:8] == b"\x89PNG\r\n\x1a\n"


def test_cli_verify_exit_codes_and_seed_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("MONKBENCH_SEED", "5")
    assert main(["verify", "grid-gadgets", "--count", "4"]) == 0
    out = capsys.readouterr().out
    assert "PASS grid-gadgets" in out and "seed 5" in out
    assert main(["verify", "grid-gadgets", "--count", "4", "--json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["seed"] == 5 and obj["summary"]["failed"] == 0


def test_cli_verify_writes_report_dir(tmp_path):
    out_dir = tmp_path / "out"
    assert main(["verify", "symbolic-pichi", "--seed", "1", "--out-dir", str(out_dir)]) == 0
    assert sorted(p.name for p in out_dir.iterdir()) == [
        "report.csv", "report.json", "report.png",
    ]


def test_cli_amalgam_run_positive_and_negative(tmp_path, capsys):
    pos = amalgam_instance_to_json(gen_amalgam_instance(11, 1, 4))
    neg = amalgam_instance_to_json(gen_amalgam_instance(11, 1, 3))
    pos_path, neg_path = tmp_path / "pos.json", tmp_path / "neg.json"
    pos_path.write_text(json.dumps(pos))
    neg_path.write_text(json.dumps(neg))
    cert_path = tmp_path / "cert.json"
    assert main(["amalgam", "run", "--input", str(pos_path), "--out", str(cert_path)]) == 0
    cert = json.loads(cert_path.read_text())
    assert cert["pass"] is True
    assert cert["q"]["w"]
    assert main(["amalgam", "run", "--input", str(neg_path)]) == 1
    assert "clause (g)" in capsys.readouterr().err


def test_cli_interval_report(capsys):
    assert main(["interval", "report", "--order", "lexQ:lambda1", "--json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["pichi"] == {"kind": "reg", "token": "lambda1", "rank": 1}
    assert main(["interval", "report", "--order", "fin:3"]) == 0
    assert "ultrafilters: 3" in capsys.readouterr().out
    assert main(["interval", "report", "--order", "nope"]) == 2


def test_cli_pi_fixture(tmp_path, capsys):
    from monkbench.ba import Presentation

    p2 = Presentation.from_bit_rows([0, 1], [(0, 0), (1, 0), (0, 1)])
    path = tmp_path / "p2.json"
    path.write_text(json.dumps(presentation_to_json(p2)))
    assert main(["pi", "--input", str(path)]) == 0
    assert capsys.readouterr().out.strip() == "3"
    assert main(["pi", "--input", str(path), "--json"]) == 0
    assert json.loads(capsys.readouterr().out) == {"pi": 3}


def test_cli_bad_input_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["pi", "--input", str(bad)]) == 2
    assert main(["pi", "--input", str(tmp_path / "missing.json")]) == 2
    assert "error:" in capsys.readouterr().err
