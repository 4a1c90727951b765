import io
import json
import re
import shutil
import subprocess
import sys

import pytest

from twobridge import cli
from twobridge.cli import dumps, main

NUMERIC = re.compile(r"-?\d+$")

COMMANDS = [
    ["classify", "--word", "1,1"],
    ["classify", "--pq", "105,64"],
    ["alex", "--word", "1,-1,1,-1"],
    ["alex", "--pq", "5,3"],
    ["covering", "--pq", "5,3", "--profile"],
    ["covering", "--pq", "4630395,-1279081"],
    ["family", "--construction", "tree", "--n", "2"],
    ["family", "--construction", "torus", "--n", "3"],
    ["sw", "--family", "tree", "--n", "2"],
    ["sw", "--family", "torus", "--n", "1"],
    ["certify", "--left", "105,-29", "--right", "105,-41"],
    ["verify", "qprime"],
    ["report", "--n", "2"],
]


def run(argv):
    buf = io.StringIO()
    code = main(argv, out=buf)
    return code, buf.getvalue()


def run_json(argv):
    code, text = run(argv + ["--json"])
    return code, text, json.loads(text)


def untagged_numbers(node, path=""):
    """Paths to numeric leaves that are not inside an {"op", "value"} record."""
    if isinstance(node, dict):
        if "op" in node:
            return []
        return [x for k, v in node.items() for x in untagged_numbers(v, f"{path}.{k}")]
    if isinstance(node, list):
        return [x for i, v in enumerate(node) for x in untagged_numbers(v, f"{path}[{i}]")]
    if isinstance(node, str) and NUMERIC.match(node):
        return [path]
    return []


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(a))
def test_json_round_trip_and_tags(argv):
    code, text, doc = run_json(argv)
    assert code == 0
    assert dumps(doc) == text
    assert untagged_numbers(doc["results"]) == []
    assert doc["summary"]["passed"] is True
    # deterministic
    assert run_json(argv)[1] == text


def test_classify_examples():
    _, _, doc = run_json(["classify", "--word", "1,1"])
    assert doc["results"]["knot"]["value"] == "b(3,-1)"
    assert doc["results"]["fibered"]["value"] is True
    _, _, doc = run_json(["classify", "--pq", "105,64"])
    assert doc["results"]["knot"]["value"] == "b(105,-41)"


def test_big_integers_are_strings():
    _, _, doc = run_json(["report", "--n", "3"])
    pq = doc["results"]["members"][0]["pq"]["value"]
    assert all(isinstance(x, str) for x in pq)
    assert int(pq[0]) > 2**64


def test_covering_profile_and_budget():
    _, _, doc = run_json(["covering", "--pq", "5,3", "--profile"])
    assert doc["results"]["offdiag"]["value"] == ["1", "-1", "-1", "1"]
    assert doc["results"]["d"]["value"] == "0"
    _, _, doc = run_json(["covering", "--pq", "105,-29", "--profile", "--budget-profile", "10"])
    assert "offdiag" not in doc["results"]
    assert doc["results"]["d"]["value"] == "4"


def test_certify_and_report():
    _, _, doc = run_json(["certify", "--left", "105,-29", "--right", "105,-41"])
    assert doc["results"]["certificate"]["value"]["verdict"] == "Distinguished"
    _, _, doc = run_json(["certify", "--left", "105,-29", "--right", "105,-29"])
    assert doc["results"]["certificate"]["value"]["verdict"] == "Inconclusive"
    for n, classes in [(0, 1), (1, 2), (2, 2)]:
        _, _, doc = run_json(["report", "--n", str(n)])
        assert len(doc["results"]["members"]) == 2**n
        assert doc["results"]["distinct_abs_d"]["value"] == str(classes)


@pytest.mark.parametrize("argv", [
    ["classify", "--word", "1"],
    ["classify", "--word", "1,x"],
    ["classify", "--word", "1,1", "--pq", "3,1"],
    ["classify", "--pq", "9,3"],
    ["covering", "--pq", "4,1"],
    ["family", "--construction", "torus", "--n", "0"],
    ["family", "--construction", "tree", "--n", "1", "--i", "5"],
    ["certify", "--left", "5,3", "--right", "7,3"],
    ["report", "--n", "4"],
    ["sw", "--family", "tree", "--n", "4"],
])
def test_usage_errors_exit_2(argv, capsys):
    code, _ = run(argv)
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_parse_error_reports_position(capsys):
    assert run(["classify", "--word", "1,x"])[0] == 2
    assert "position 2" in capsys.readouterr().err


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nonsense"], out=io.StringIO())
    assert exc.value.code == 2


def test_verification_failure_exit_1(monkeypatch):
    code, text = run(["alex", "--word", "1,1", "--quiet"])
    assert code == 0 and text.strip() == "PASS"
    original = cli.validate_alexander

    def broken(w, f, **kw):
        rep = original(w, f, **kw)
        rep.checks["palindromic"] = False
        return rep
    monkeypatch.setattr(cli, "validate_alexander", broken)
    code, text = run(["alex", "--word", "1,1", "--quiet"])
    assert code == 1 and text.startswith("FAIL")


def test_verify_suites_quiet():
    for suite in ("const1", "qprime", "diag-torus", "certificates", "kanenobu"):
        code, text = run(["verify", suite, "--quiet"])
        assert (code, text.strip()) == (0, "PASS")
    code, _, doc = run_json(["verify", "same-sw", "--n", "2"])
    assert code == 0
    assert doc["results"]["suites"]["same-sw"] is True


def test_text_output():
    code, text = run(["family", "--construction", "tree", "--n", "1"])
    assert code == 0
    assert "K(1,1)" in text and "[w_word]" in text


@pytest.mark.skipif(shutil.which("twobridge") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["twobridge", "classify", "--word", "1"], capture_output=True, text=True)
    assert proc.returncode == 2
    proc = subprocess.run([sys.executable, "-m", "twobridge.cli", "classify", "--word", "1,1",
                           "--json"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["knot"]["value"] == "b(3,-1)"
