import json
import subprocess
import sys

import pytest

from finmorph import corpus
from finmorph.cli import main


def run(*args):
    proc = subprocess.run([sys.executable, "-m", "finmorph", *map(str, args)],
                          capture_output=True, text=True, timeout=120)
    return proc.returncode, proc.stdout, proc.stderr


@pytest.fixture
def write_system(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return path
    return write


@pytest.fixture
def newton2(tmp_path):
    path = tmp_path / "newton2.sys"
    assert main(["corpus", "newton-2", "--out", str(path)]) == 0
    return path


@pytest.mark.parametrize("entry", corpus.finite_entries(), ids=lambda e: e.name)
def test_certify_then_verify(tmp_path, entry):
    sys_path = tmp_path / "s.sys"
    cert_path = tmp_path / "s.cert.json"
    assert main(["corpus", entry.name, "--out", str(sys_path)]) == 0
    code, out, _ = run("certify", sys_path, "--out", cert_path)
    assert code == 0, out
    code, out, _ = run("verify", sys_path, cert_path)
    assert code == 0 and out.startswith("OK"), out


def test_edited_coefficient_fails(tmp_path, newton2):
    cert_path = tmp_path / "c.json"
    assert main(["certify", str(newton2), "--out", str(cert_path)]) == 0
    doc = json.loads(cert_path.read_text())
    doc["lifted"][0][1][0][1] = "1/3"  # 1/2*x -> 1/3*x
    cert_path.write_text(json.dumps(doc))
    assert main(["verify", str(newton2), str(cert_path)]) == 1


def test_certificate_for_wrong_system_fails(tmp_path, newton2, write_system, capsys):
    cert_path = tmp_path / "c.json"
    assert main(["certify", str(newton2), "--out", str(cert_path)]) == 0
    other = write_system("other.sys", "variables: x, y\nx + y\nx*y\n")
    assert main(["verify", str(other), str(cert_path)]) == 1
    assert "bound to fnv1a64:" in capsys.readouterr().out


def test_corrupted_certificate_is_input_error(tmp_path, newton2):
    cert_path = tmp_path / "c.json"
    cert_path.write_text("{ this is not json")
    assert main(["verify", str(newton2), str(cert_path)]) == 2
    assert main(["verify", str(newton2), str(tmp_path / "missing.json")]) == 2


def test_check_outcomes(newton2, write_system, capsys):
    assert main(["check", str(newton2)]) == 0
    assert "yes" in capsys.readouterr().out
    bad = write_system("bad.sys", "variables: x, y\nx^2\nx*y\n")
    assert main(["check", str(bad)]) == 1
    out = capsys.readouterr().out
    assert "witness chart: 2" in out
    assert main(["certify", str(bad)]) == 1


@pytest.mark.parametrize(
    "text",
    [
        "variables: x, y\nx\ny\nx + y\n",  # three polynomials in two unknowns
        "variables: x, y\nx^2 + y\nx*y\n",  # not homogeneous
        "variables: x, y\n2x\ny\n",  # implicit multiplication
        "x\ny\n",  # no header
    ],
)
def test_input_errors(write_system, text, capsys):
    path = write_system("e.sys", text)
    assert main(["check", str(path)]) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_fiber(write_system):
    path = write_system("f.sys", "variables: x, y\nx + y\nx*y\n")
    code, out, _ = run("fiber", path, "1,-6")
    assert code == 0 and out.strip() == "length 2"
    bad = write_system("g.sys", "variables: x, y\nx^2\nx*y\n")
    code, out, _ = run("fiber", bad, "0,0")
    assert code == 0 and out.strip() == "POSITIVE_DIMENSIONAL"
    assert main(["fiber", str(path), "1"]) == 2


def test_rewrite(tmp_path, newton2, capsys):
    cert_path = tmp_path / "c.json"
    assert main(["certify", str(newton2), "--out", str(cert_path)]) == 0
    capsys.readouterr()
    assert main(["rewrite", str(newton2), str(cert_path), "x^3"]) == 0
    out = capsys.readouterr().out
    assert "substitution check: ok" in out
    assert main(["rewrite", str(newton2), str(cert_path), "4,5"]) == 0
    assert main(["rewrite", str(newton2), str(cert_path), "q^2"]) == 2


def test_budget_exit_code(write_system):
    path = write_system("b.sys", "variables: x, y, z\nx^3 + y^3 - z^3\nx*y*z + y^2*z\nx^2*y - z^3 + y^3\n")
    assert main(["check", "--budget", "2", str(path)]) == 3


def test_nilpotent():
    code, out, _ = run("nilpotent", "sl2", "0,1,0")
    assert code == 0 and "nilpotent: yes (routes agree)" in out
    assert main(["nilpotent", "sl2", "1,0,0"]) == 0
    assert main(["nilpotent", "e8", "1"]) == 2
    assert main(["nilpotent", "sl2", "1,0"]) == 2


def test_liealg_audit(capsys):
    assert main(["liealg-audit", "sl2", "--samples", "10"]) == 0
    assert "FAIL" not in capsys.readouterr().out


def test_corpus_listing_and_dump(tmp_path, capsys):
    assert main(["corpus"]) == 0
    assert "reject-x2-xy" in capsys.readouterr().out
    assert main(["corpus", "--out", str(tmp_path / "all")]) == 0
    assert len(list((tmp_path / "all").glob("*.sys"))) == len(corpus.all_entries())
    assert main(["corpus", "random", "--n", "2", "--degrees", "2,3", "--seed", "4"]) == 0
    assert main(["corpus", "random", "--degrees", "9,9"]) == 2
    assert main(["corpus", "nope"]) == 2
    assert main([]) == 2
