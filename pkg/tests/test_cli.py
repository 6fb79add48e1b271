import io
import json

import pytest

from abelred.cli import main


def run(argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def catalog_text(*args):
    code, out, _ = run(["catalog", *args])
    assert code == 0
    return out


def test_heisenberg_equivalence_pipeline():
    code, out, _ = run(["equivalence", "--mu", "Z=1", "--json"], catalog_text("heisenberg", "1"))
    assert code == 0
    assert json.loads(out)["status"] == "EQUIVALENT"


def test_cartan_asimple_negative():
    code, out, _ = run(["asimple", "--json"], catalog_text("cartan"))
    payload = json.loads(out)
    assert code == 1 and payload["status"] == "PROVEN_NO"
    assert "7 > 6" in payload["reason"]


def test_f24_random_equivalence():
    code, out, _ = run(["equivalence", "--random", "--trials", "5", "--seed", "7", "--json"], catalog_text("f24"))
    payload = json.loads(out)
    assert code == 0 and payload["seed"] == 7 and payload["trials"] == 5
    assert [s["orbit_dim"] for s in payload["samples"]] == [4] * 5
    assert all(s["status"] == "EQUIVALENT" for s in payload["samples"])


def test_output_is_deterministic():
    text = catalog_text("f24")
    first = run(["equivalence", "--random", "--seed", "3"], text)
    assert first == run(["equivalence", "--random", "--seed", "3"], text)


def test_json_and_human_share_fields():
    text = catalog_text("heisenberg", "2")
    _, human, _ = run(["equivalence", "--mu", "Z=2,X1=1"], text)
    _, js, _ = run(["equivalence", "--mu", "Z=2,X1=1", "--json"], text)
    keys = [line.split(":", 1)[0] for line in human.splitlines() if not line.startswith(" ")]
    assert keys == list(json.loads(js))


@pytest.mark.parametrize("family", [["heisenberg", "2"], ["f24"], ["jet", "2", "1", "1"], ["filiform", "5"]])
def test_catalog_certificates_verify(family):
    code, out, _ = run(["asimple", "--json"], catalog_text(*family))
    payload = json.loads(out)
    assert code == 0 and payload["reason"] == "supplied certificate verified"


def test_analyze_every_family():
    for fam in (["heisenberg", "1"], ["cartan"], ["f24"], ["filiform", "4"], ["jet", "1", "2", "1"], ["se2"]):
        code, out, _ = run(["analyze", "--json"], catalog_text(*fam))
        assert code == 0 and "step" in json.loads(out)


def test_basis_and_psi():
    text = catalog_text("f24")
    code, out, _ = run(["basis", "--json"], text)
    payload = json.loads(out)
    assert code == 0 and payload["Z0"] == "1 Z2"
    code, out, _ = run(["psi", "--mu", "Z2=3", "--json"], text)
    assert code == 0 and json.loads(out)["psi"] == "9"
    code, out, _ = run(["psi", "--mu", "X1=1", "--json"], text)
    assert code == 1 and json.loads(out)["psi"] == "0"
    code, out, _ = run(["basis"], catalog_text("cartan"))
    assert code == 1 and "NO_CERTIFICATE" in out


def test_shift():
    text = catalog_text("heisenberg", "1")
    code, out, _ = run(["shift", "--mu", "Z=2,X1=1", "--mu-tilde", "Z=2,X1=5", "--json"], text)
    assert code == 0 and json.loads(out)["Y"] == "2 Y1"
    code, out, _ = run(["shift", "--mu", "Y1=1", "--mu-tilde", "Y1=1,X1=1"], text)
    assert code == 1 and "NO_SHIFT" in out
    code, _, err = run(["shift", "--mu", "Z=1", "--mu-tilde", "Z=2"], text)
    assert code == 2 and "RestrictionMismatch" in err


def test_semidirect(tmp_path):
    h = tmp_path / "so2.txt"
    h.write_text("dim 1\nbasis R\n")
    act = tmp_path / "act.txt"
    act.write_text("names E1 E2\naction R = 0 -1 ; 1 0\n")
    code, out, _ = run(["semidirect", str(h), "--action", str(act), "--nu", "E1=1", "--json"])
    assert code == 0 and json.loads(out)["stabilizer_dim"] == 0
    code, out, _ = run(["semidirect", str(h), "--action", str(act)])
    assert code == 1
    code, out, _ = run(["semidirect", str(h), "--action", str(act), "--emit"])
    assert code == 0 and "bracket R E1 = 1 E2" in out
    code, out, _ = run(["equivalence", "--mu", "R=1"], out)
    assert code == 1 and "Lie-algebra level" in out


def test_cert_file(tmp_path):
    cert = tmp_path / "cert.txt"
    cert.write_text("certificate\nwitness X1 Y1\nwitness X2 Y2\n")
    code, out, _ = run(["asimple", "--cert", str(cert)], catalog_text("f24", "--no-certificate"))
    assert code == 0 and "supplied certificate verified" in out
    cert.write_text("certificate\nwitness X1 Y1\nwitness X2 Y1\n")
    code, out, _ = run(["asimple", "--cert", str(cert)], catalog_text("f24", "--no-certificate"))
    assert code == 0 and "rejected at witness 2" in out


@pytest.mark.parametrize("argv, stdin", [
    (["analyze"], "dim 2\nbasis A\n"),
    (["equivalence", "--mu", "Q=1"], "dim 1\nbasis A\n"),
    (["equivalence"], "dim 1\nbasis A\n"),
    (["equivalence", "--mu", "A=1", "--random"], "dim 1\nbasis A\n"),
    (["catalog", "jet", "1"], ""),
    (["catalog", "unknown"], ""),
    (["analyze", "/nonexistent/file"], ""),
    (["frobnicate"], ""),
])
def test_input_errors_exit_2(argv, stdin):
    code, _, _ = run(argv, stdin)
    assert code == 2


def test_catalog_list():
    code, out, _ = run(["catalog", "list"])
    assert code == 0 and "heisenberg" in out and "jet (3 parameters)" in out
