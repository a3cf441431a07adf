import io
import json
import subprocess
import sys

import pytest

from ekrshift.cli import main, parse_complex
from ekrshift.complex import ComplexError

from conftest import EXAMPLE_GENERATORS


@pytest.fixture
def example_file(tmp_path):
    path = tmp_path / "example.txt"
    path.write_text("# worked example\n" + "\n".join(" ".join(map(str, f)) for f in EXAMPLE_GENERATORS) + "\n")
    return str(path)


def run_json(capsys, *argv):
    code = main([*argv, "--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_parse_complex_file(example_file):
    assert parse_complex(example_file).f_vector == (1, 6, 13, 4, 1)


def test_parse_complex_stdin(monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("1 2\n3\n"))
    assert parse_complex("-").f_vector == (1, 3, 1)


def test_fvector(capsys, example_file):
    code, rec = run_json(capsys, "fvector", example_file)
    assert code == 0 and rec["command"] == "fvector"
    assert rec["result"]["f_vector"] == [1, 6, 13, 4, 1] and rec["result"]["dim"] == 3


def test_shift(capsys, tmp_path):
    path = tmp_path / "c4.txt"
    path.write_text("1 2\n2 3\n3 4\n1 4\n")
    code, rec = run_json(capsys, "shift", str(path), "--trials", "5")
    assert rec["result"]["shifted"] == [[1, 2], [1, 3], [1, 4], [2, 3]]
    assert rec["result"]["stable"] and rec["result"]["trials_agreed"] == 5


def test_homology_depth_cm(capsys, tmp_path):
    path = tmp_path / "tri.txt"
    path.write_text("1 2\n2 3\n1 3\n")
    _, rec = run_json(capsys, "homology", str(path), "--prime", "2")
    assert rec["result"]["betti"] == {"-1": 0, "0": 0, "1": 1} and rec["result"]["prime"] == 2
    _, rec = run_json(capsys, "depth", str(path))
    assert rec["result"]["agree"] and rec["result"]["depth_links"] == 1
    _, rec = run_json(capsys, "cm", str(path))
    assert rec["result"]["cohen_macaulay"] and rec["result"]["sequentially_cm"]


def test_nearcone(capsys, example_file):
    _, rec = run_json(capsys, "nearcone", example_file, "-i", "3")
    res = rec["result"]
    assert res["apex"] == [1, 2, 3] and not res["apex_is_face"]
    assert sorted(res["chain"][2]) == [[4, 6], [5]]
    _, rec = run_json(capsys, "nearcone", example_file, "--vertex", "1")
    assert rec["result"]["near_cone"]


def test_ekr_and_borg(capsys, tmp_path):
    path = tmp_path / "tri.txt"
    path.write_text("1 2\n2 3\n1 3\n")
    _, rec = run_json(capsys, "ekr", str(path), "-t", "1", "-S", "2")
    assert rec["result"]["brute_max"] == 3 and rec["result"]["star_bound"] == 2
    _, rec = run_json(capsys, "borg", str(path), "-t", "1", "-S", "2")
    assert rec["result"]["verdict"] == "hypothesis-not-met"


def test_text_output(capsys, example_file):
    assert main(["fvector", example_file]) == 0
    assert "f_vector: [1, 6, 13, 4, 1]" in capsys.readouterr().out


def test_errors_exit_2(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("1 2\nvertices: 1 2\n")
    assert main(["fvector", str(path)]) == 2
    assert "line 2" in capsys.readouterr().err
    assert main(["fvector", str(tmp_path / "missing.txt")]) == 2
    assert main(["shift", str(path), "--prime", "10"]) == 2
    tri = tmp_path / "tri.txt"
    tri.write_text("1 2\n2 3\n1 3\n")
    assert main(["ekr", str(tri), "-t", "3", "-S", "3"]) == 2


def test_sweep_exit_code(capsys):
    code, rec = run_json(capsys, "sweep", "--kind", "exhaustive", "-n", "4", "--check", "S1..S3")
    assert code == 0 and rec["violations"] == [] and len(rec["instances"]) == 166
    assert main(["sweep", "--kind", "exhaustive", "-n", "5"]) == 2


def test_sweep_nonzero_on_violation(capsys, monkeypatch):
    import ekrshift.sweep as sweep

    def broken(cfg, index, exhaustive=None):
        return {"id": index, "input_digest": "", "results": {}, "violations": ["S1"], "inconclusive": 0,
                "unstable": 0}

    monkeypatch.setattr(sweep, "run_instance", broken)
    assert main(["sweep", "--samples", "2"]) == 1
    assert "instance 0: S1" in capsys.readouterr().out


def test_console_script(example_file):
    out = subprocess.run([sys.executable, "-m", "ekrshift.cli", "fvector", example_file, "--json"],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["result"]["f_vector"] == [1, 6, 13, 4, 1]
