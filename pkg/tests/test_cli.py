import json
import subprocess
import sys

import pytest

from cubforge.cli import EXIT_DATA, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main, run


def _status(*argv):
    return run(list(argv))[0]


def test_design_catalog_and_verify(tmp_path):
    assert _status("designs", "catalog", "fano").status == EXIT_OK
    assert _status("designs", "catalog", "rtbd-4-27").status == EXIT_DATA
    (tmp_path / "bad.txt").write_text("v=4 t=2 lambda=1\n0 1\n1 2\n")
    assert _status("designs", "verify", str(tmp_path / "bad.txt")).status == EXIT_FAIL


def test_oa_generate_then_verify(tmp_path):
    out = tmp_path / "nr.txt"
    assert _status("oa", "gen-nr", "--out", str(out)).status == EXIT_OK
    assert _status("oa", "verify", str(out), "--t", "5").status == EXIT_OK
    assert _status("oa", "verify", str(out), "--t", "6").status == EXIT_FAIL


def test_cubature_gen_transform_verify(tmp_path):
    orth, gauss = tmp_path / "o.txt", tmp_path / "g.txt"
    assert _status("cubature", "gen", "--catalog", "lem42i", "--m", "4", "--out", str(orth)).status == EXIT_OK
    assert _status("cubature", "verify", str(orth), "--index", "2").status == EXIT_OK
    assert _status("cubature", "transform", str(orth), "--sqrt", "--out", str(gauss)).status == EXIT_OK
    assert _status("cubature", "verify", str(gauss), "--index", "4").status == EXIT_OK
    printed = tmp_path / "p.txt"
    _status("cubature", "gen", "--catalog", "lem62i", "--m", "8", "--variant", "printed", "--out", str(printed))
    assert _status("cubature", "verify", str(printed), "--index", "3").status == EXIT_FAIL


def test_victoir_run_json(capsys):
    code = main(["victoir", "run", "--pipeline", "ex45_s6_91", "--json"])
    body = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK and body["status"] == "pass" and body["data"]["points"] == 91


def test_reflect_commands():
    assert _status("reflect", "orbit", "--group", "F4").payload["sizes"] == {1: 24, 2: 96, 3: 96, 4: 24}
    assert _status("reflect", "certify", "--group", "H4", "--degree", "24").status == EXIT_OK
    assert _status("reflect", "certify", "--group", "H4", "--degree", "22").status == EXIT_FAIL
    assert _status("reflect", "certify", "--group", "A3", "--degree", "4").status == EXIT_DATA
    assert _status("reflect", "orbit", "--group", "G2").status == EXIT_USAGE


def test_hilbert_commands(tmp_path):
    out = tmp_path / "k.txt"
    assert _status("hilbert", "catalog", "--name", "kurschak", "--k", "2", "--out", str(out)).status == EXIT_OK
    assert _status("hilbert", "verify", str(out)).status == EXIT_OK
    assert _status("hilbert", "catalog", "--name", "sawa91_as_printed").status == EXIT_FAIL
    assert _status("hilbert", "nopm1", "--m", "3").status == EXIT_OK


def test_repro_orbit_sizes():
    assert _status("repro", "orbit-sizes").status == EXIT_OK


def test_usage_errors():
    assert _status("bogus").status == EXIT_USAGE
    assert _status("oa", "verify").status == EXIT_USAGE
    assert _status("designs", "verify", "/nonexistent/file.txt", "--t", "2").status == EXIT_USAGE


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cubforge", "designs", "catalog", "sqs8", "--json"],
                          capture_output=True, text=True)
    assert proc.returncode == EXIT_OK
    assert json.loads(proc.stdout)["data"]["b"] == 14
