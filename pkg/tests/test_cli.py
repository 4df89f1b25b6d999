import json
import shutil
import subprocess

import pytest

from g2verify import cli
from g2verify.checks import REGISTRY, SUITES, SuiteConfig, checks_for, run_suite
from g2verify.report import REPORT_VERSION


def test_catalog(capsys):
    assert cli.main(["list"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == len(REGISTRY) > 0
    ids = {ln.split("\t")[0] for ln in lines}
    assert {"appendix-squashed-nearly-parallel", "phi-contraction-identities", "15fam-rank"} <= ids
    assert all(ln.split("\t")[1] in SUITES for ln in lines)


def test_every_check_has_an_anchor_in_the_source_text():
    with open("paper.md") as fh:
        text = fh.read()
    for chk in REGISTRY.values():
        assert chk.anchor and chk.anchor in text, chk.check_id


def test_suites_partition_the_registry():
    assert sum(len(checks_for(s)) for s in SUITES) == len(checks_for("all"))


def test_algebra_suite_json(capsys):
    assert cli.main(["suite", "algebra", "--points", "1"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["version"] == REPORT_VERSION and d["suite"] == "algebra"
    assert set(d) == {"version", "suite", "seed", "points", "runs"}
    ids = [r["check_id"] for r in d["runs"]]
    assert ids == sorted(ids)
    assert all(r["status"] == "pass" and r["anchor"] for r in d["runs"])


def test_reports_are_byte_identical(tmp_path):
    a, b, c = (tmp_path / n for n in ("a.json", "b.json", "c.md"))
    assert cli.main(["suite", "structures", "--points", "2", "--seed", "4", "--report", str(a)]) == 0
    assert cli.main(["suite", "structures", "--points", "2", "--seed", "4", "--report", str(b), "--parallel", "2"]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert cli.main(["suite", "structures", "--points", "2", "--seed", "4", "--report", str(c), "--format", "md"]) == 0
    assert c.read_text().startswith("# g2verify report")


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\nsuite = algebra\npoints = 3\nseed = 8\nexclude-axes = true\n")
    assert cli.main(["suite", "--config", str(cfg), "--seed", "2"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert (d["suite"], d["points"], d["seed"]) == ("algebra", 3, 2)


@pytest.mark.parametrize(
    "argv",
    [
        ["suite", "algebra", "--points", "0"],
        ["suite", "algebra", "--structures", "round"],
        ["suite", "algebra", "--connections", "A7"],
        ["suite"],
    ],
)
def test_configuration_errors(argv):
    assert cli.main(argv) == 2


def test_bad_config_file(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    assert cli.main(["suite", "algebra", "--config", str(cfg)]) == 2
    assert cli.main(["suite", "algebra", "--config", str(tmp_path / "missing.cfg")]) == 2


def test_unknown_suite_is_a_usage_error():
    with pytest.raises(SystemExit) as exc:
        cli.main(["suite", "bogus"])
    assert exc.value.code == 2


def test_failing_check_sets_exit_code(monkeypatch, capsys):
    from g2verify import checks

    forced = checks.Check("zz-forced-failure", "algebra", "x", lambda cfg: checks.outcome("", "", 0).fail({"forced": True}))
    monkeypatch.setitem(REGISTRY, forced.check_id, forced)
    assert not run_suite(SuiteConfig(name="algebra", points=1)).passed
    assert cli.main(["suite", "algebra", "--points", "1"]) == 1
    d = json.loads(capsys.readouterr().out)
    assert d["runs"][-1]["witness"] == {"forced": True}


@pytest.mark.skipif(shutil.which("g2verify") is None, reason="console script not installed")
def test_console_script():
    out = subprocess.run(["g2verify", "list"], capture_output=True, text=True, check=True).stdout
    assert "hym-a0" in out
