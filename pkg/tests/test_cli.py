import json
import shutil
import subprocess
import sys

import pytest

from lqca.cli import REPORT_KEYS, run
from lqca.io import parse_lqca

from conftest import AUTOMATA


def qca(capsys, *argv):
    code = run([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name, code", [
    ("B.lqca", 0),
    ("Bprime.lqca", 1),
    ("F.lqca", 1),
    ("rotation.lqca", 0),
    ("shift.lqca", 0),
    ("sparse.lqca", 0),
])
def test_exit_codes(capsys, name, code):
    assert qca(capsys, "check", AUTOMATA / name)[0] == code


def test_text_report(capsys):
    code, out, _ = qca(capsys, "check", AUTOMATA / "Bprime.lqca")
    assert code == 1
    assert "NOT well-formed" in out
    assert "config 'p@0' has column squared norm 1/4" in out
    assert "orthogonality check: skipped" in out


def test_json_schema(capsys):
    code, out, _ = qca(capsys, "check", AUTOMATA / "B.lqca", "--format", "json")
    report = json.loads(out)
    assert code == 0
    assert set(report) == set(REPORT_KEYS)
    assert report["well_formed"] is True
    assert (report["n"], report["r"], report["span"], report["expansion_factor"]) == (8, 2, 2, "1")
    assert report["norm_check"] == {"status": "passed"}
    assert report["witness"] is None


def test_json_norm_witness(capsys):
    code, out, _ = qca(capsys, "check", AUTOMATA / "Bprime.lqca", "--format", "json", "--emit-witness")
    report = json.loads(out)
    assert code == 1
    assert report["witness"]["config"] == "p@0"
    assert report["witness"]["sq_norm"] == "1/4"
    assert report["witness"]["cycle"] == ["q p", "p q"]
    assert report["orthogonality_check"]["status"] == "skipped"


def test_json_orthogonality_witness(capsys):
    _, out, _ = qca(capsys, "check", AUTOMATA / "F.lqca", "--format", "json", "--emit-witness")
    w = json.loads(out)["witness"]
    assert (w["kind"], w["config"], w["config2"], w["inner_product"]) == ("orthogonality", "", "p@0", "3/5")


def test_full_report(capsys, tmp_path):
    path = tmp_path / "both.lqca"
    path.write_text("states q p\nquiescent q\nneighborhood 0 1\n"
                    "q q -> q:1\nq p -> q:1/2\np q -> p:1\np p -> q:1\n")
    _, out, _ = qca(capsys, "check", path, "--format", "json", "--full-report", "--emit-witness")
    report = json.loads(out)
    assert report["norm_check"]["status"] == "failed"
    assert report["orthogonality_check"]["status"] == "failed"
    assert report["orthogonality_check"]["witness"]["kind"] == "orthogonality"


def test_sparse_report(capsys):
    _, out, _ = qca(capsys, "check", AUTOMATA / "sparse.lqca", "--format", "json")
    report = json.loads(out)
    assert report["span"] == 3 and report["expansion_factor"] == "4/3"


def test_span_limit_is_error(capsys):
    code, _, err = qca(capsys, "check", AUTOMATA / "sparse.lqca", "--span-limit", "2")
    assert code == 2 and "span" in err


def test_batch(capsys, tmp_path):
    for name in ("B.lqca", "F.lqca"):
        shutil.copy(AUTOMATA / name, tmp_path / name)
    (tmp_path / "notes.txt").write_text("ignored")
    code, out, _ = qca(capsys, "check", tmp_path, "--format", "json")
    data = json.loads(out)
    assert code == 1
    assert [e["file"] for e in data["files"]] == ["B.lqca", "F.lqca"]
    assert data["summary"] == {"well_formed": 1, "not_well_formed": 1, "errors": 0}

    (tmp_path / "F.lqca").unlink()
    assert qca(capsys, "check", tmp_path)[0] == 0
    (tmp_path / "bad.lqca").write_text("states q\n")
    code, out, _ = qca(capsys, "check", tmp_path)
    assert code == 2 and "bad.lqca: error" in out


def test_parse_error(capsys, tmp_path):
    path = tmp_path / "x.lqca"
    path.write_text("states q p\nquiescent q\nneighborhood 0 1\nq q -> p:1\n")
    code, _, err = qca(capsys, "check", path)
    assert code == 2 and "line 4" in err and "quiescent" in err


def test_usage_errors(capsys):
    assert qca(capsys)[0] == 2
    assert qca(capsys, "check")[0] == 2
    assert qca(capsys, "check", "/nonexistent.lqca")[0] == 2


class TestOracle:
    def test_inner(self, capsys):
        code, out, _ = qca(capsys, "oracle", "inner", AUTOMATA / "F.lqca", "--config", "", "--config2", "p@0")
        assert code == 0 and out.strip() == "3/5"

    def test_inner_direct(self, capsys):
        _, out, _ = qca(capsys, "oracle", "inner", AUTOMATA / "Bprime.lqca", "--config", "p@0",
                        "--config2", "p@0", "--direct", "--interval=-1:0")
        assert out.strip() == "1/4"

    def test_norm(self, capsys):
        _, out, _ = qca(capsys, "oracle", "norm", AUTOMATA / "Bprime.lqca", "--config", "p@0")
        assert out.strip() == "1/4"

    def test_step(self, capsys):
        _, out, _ = qca(capsys, "oracle", "step", AUTOMATA / "rotation.lqca", "--config", "b@0")
        assert out.splitlines() == ["4/5\t'a@0'", "3/5\t'b@0'"]

    def test_window(self, capsys):
        code, out, _ = qca(capsys, "oracle", "window", AUTOMATA / "F.lqca", "--radius", "1")
        assert code == 1 and "'' and 'p@0'" in out
        assert qca(capsys, "oracle", "window", AUTOMATA / "B.lqca")[0] == 0

    def test_bound(self, capsys, monkeypatch):
        monkeypatch.setenv("QCA_RESOURCE_BOUND", "10")
        code, _, err = qca(capsys, "oracle", "window", AUTOMATA / "B.lqca", "--radius", "2")
        assert code == 2 and "bound is 10" in err
        code, _, _ = qca(capsys, "oracle", "window", AUTOMATA / "B.lqca", "--radius", "1", "--bound", "1000")
        assert code == 0


def test_normalize(capsys, tmp_path):
    out_path = tmp_path / "Bn.lqca"
    assert qca(capsys, "normalize", AUTOMATA / "B.lqca", "-o", out_path)[0] == 0
    a = parse_lqca(out_path.read_text())
    assert all(a.local_sq_norm(w) == 1 for w in a.words())
    assert (tmp_path / "Bn.lqca.scales").read_text().splitlines()[1] == "q q : 1"
    assert qca(capsys, "check", out_path)[0] == 0

    code, out, err = qca(capsys, "normalize", AUTOMATA / "F.lqca")
    assert parse_lqca(out) == parse_lqca((AUTOMATA / "F.lqca").read_text())
    assert "p p : 1" in err


def test_simplify(capsys, tmp_path):
    out_path = tmp_path / "s.lqca"
    code, _, err = qca(capsys, "simplify", AUTOMATA / "sparse.lqca", "-o", out_path)
    assert code == 0 and "expansion factor 4/3" in err and "-> 16" in err
    a = parse_lqca(out_path.read_text())
    assert a.neighborhood.offsets == (-1, 0, 1)
    assert qca(capsys, "check", out_path)[0] == 0


def test_plqca(capsys, tmp_path):
    path = AUTOMATA / "rotation.plqca"
    code, out, _ = qca(capsys, "plqca", "check", path, "--format", "json")
    assert code == 0 and json.loads(out) == {"unitary": True, "well_formed": True, "agree": True}
    out_path = tmp_path / "c.lqca"
    assert qca(capsys, "plqca", "compose", path, "-o", out_path)[0] == 0
    assert qca(capsys, "check", out_path)[0] == 0

    bad = tmp_path / "bad.plqca"
    bad.write_text(path.read_text().replace("Q 1.0 <- 1.0 : 3/5", "Q 1.0 <- 1.0 : 1/2"))
    code, out, _ = qca(capsys, "plqca", "check", bad)
    assert code == 1 and "Q unitary: False" in out


def test_console_script():
    exe = shutil.which("qca")
    cmd = [exe] if exe else [sys.executable, "-c", "from lqca.cli import main; main()"]
    proc = subprocess.run(cmd + ["check", str(AUTOMATA / "Bprime.lqca"), "--format", "json", "--emit-witness"],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["witness"]["config"] == "p@0"
