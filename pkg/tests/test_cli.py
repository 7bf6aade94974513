import json
import subprocess
import sys

import numpy as np
import pytest

from xline.cli import main
from xline.seidel import SeidelMatrix
from xline.spectral import QuadVal


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_matrix(path, e):
    path.write_text(SeidelMatrix(e).to_text())
    return str(path)


def test_classify_json_stdout(capsys):
    code, out, _ = run(capsys, "classify", "--family", "sl", "--d", "2", "--q", "5", "--json", "-")
    assert code == 0
    obj = json.loads(out)
    assert obj["verdict"] == "SPLITS_REAL"
    assert obj["multiplicities"] == [3, 3]
    assert obj["schema"] == 1


def test_classify_summary(capsys):
    code, out, _ = run(capsys, "classify", "--family", "sl", "--d", "3", "--q", "3")
    assert code == 0
    assert "IRREDUCIBLE" in out and "real summands    13" in out


def test_classify_json_file_and_summary(capsys, tmp_path):
    dest = tmp_path / "r.json"
    code, out, _ = run(capsys, "classify", "--family", "gl", "--d", "2", "--q", "5", "--json", str(dest))
    assert code == 0
    assert json.loads(dest.read_text())["orbits_yxy"] == 3
    assert "verdict          IRREDUCIBLE" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "--family", "sl", "--d", "2", "--q", "4"],
        ["classify", "--family", "sl", "--d", "2", "--q", "6"],
        ["classify", "--family", "sp", "--d", "2", "--q", "5"],
        ["classify", "--family", "sl", "--d", "1", "--q", "5"],
        ["classify", "--d", "2", "--q", "5"],
        ["classify", "--family", "sl", "--d", "2", "--q", "9", "--modulus", "2,0,1"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert err


def test_argparse_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["classify", "--family", "sl", "--d", "two"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["nosuchcommand"])
    assert exc.value.code == 1


def test_classify_bound(capsys):
    code, _, err = run(capsys, "classify", "--family", "sl", "--d", "3", "--q", "17", "--max-n", "100")
    assert code == 3 and "bound" in err


def test_classify_inconsistent_gens(capsys, tmp_path):
    gens = tmp_path / "s4.txt"
    gens.write_text("4 2\n1 0 2 3\n+ + + +\n1 2 3 0\n+ + + +\n")
    code, out, _ = run(capsys, "classify", "--gens", str(gens))
    assert code == 2
    assert "INCONSISTENT" in out


def test_batch(capsys, tmp_path):
    batch = tmp_path / "cases.txt"
    batch.write_text("# family d q\nsl 2 5\ngl 2 5\nsl 2 9 2,2,1\n")
    code, out, _ = run(capsys, "classify", "--batch", str(batch), "--json", "-")
    assert code == 0
    verdicts = [r["verdict"] for r in json.loads(out)]
    assert verdicts == ["SPLITS_REAL", "IRREDUCIBLE", "SPLITS_REAL"]
    code, out2, _ = run(capsys, "classify", "--batch", str(batch), "--json", "-", "--jobs", "2")
    assert code == 0 and out2 == out


def test_seidel_roundtrip_and_negation(capsys, tmp_path):
    pos, neg = tmp_path / "s13.txt", tmp_path / "n13.txt"
    assert run(capsys, "seidel", "--family", "sl", "--d", "2", "--q", "13", "--out", str(pos))[0] == 0
    assert run(capsys, "seidel", "--family", "sl", "--d", "2", "--q", "13", "--out", str(neg), "--seed-sign", "-1")[0] == 0
    E = SeidelMatrix.from_text(pos.read_text())
    assert E.n == 14
    assert SeidelMatrix.from_text(neg.read_text()) == -E
    assert E.to_text() == pos.read_text()
    code, out, _ = run(capsys, "spectrum", str(pos))
    assert code == 0
    assert "beta, alpha      0, 13" in out
    assert "multiplicity 7" in out
    code, out, _ = run(capsys, "spectrum", str(pos), "--json", "-")
    obj = json.loads(out)
    assert obj["multiplicities"] == [7, 7] and (obj["beta"], obj["alpha"]) == (0, 13)
    assert QuadVal.from_json(obj["cosine"]) == QuadVal.sqrt(13) / 13


def test_seidel_stdout(capsys):
    code, out, _ = run(capsys, "seidel", "--family", "sl", "--d", "2", "--q", "5")
    assert code == 0
    assert SeidelMatrix.from_text(out).n == 6


def test_seidel_absent(capsys):
    code, out, err = run(capsys, "seidel", "--family", "sl", "--d", "2", "--q", "7")
    assert code == 4
    assert out == ""
    assert "certificate" in err and "forces" in err


def test_spectrum_simplex(capsys, tmp_path):
    f = write_matrix(tmp_path / "j.txt", np.ones((5, 5), dtype=int) - np.eye(5, dtype=int))
    code, out, _ = run(capsys, "spectrum", f)
    assert code == 0
    assert "lambda1          4  multiplicity 1" in out
    assert "lambda2          -1  multiplicity 4" in out


def test_spectrum_path_graph(capsys, tmp_path):
    A = np.zeros((4, 4), dtype=int)
    for i in range(3):
        A[i, i + 1] = A[i + 1, i] = 1
    f = write_matrix(tmp_path / "p4.txt", np.ones((4, 4), dtype=int) - np.eye(4, dtype=int) - 2 * A)
    code, _, err = run(capsys, "spectrum", f)
    assert code == 4 and "more than two eigenvalues" in err


def test_spectrum_parse_errors(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("3\n0+\n+0\n")
    assert run(capsys, "spectrum", str(bad))[0] == 1
    assert run(capsys, "spectrum", str(tmp_path / "missing.txt"))[0] == 1


def test_orbits(capsys, tmp_path):
    code, out, _ = run(capsys, "orbits", "--family", "sl", "--d", "2", "--q", "5", "--json", "-")
    assert code == 0
    obj = json.loads(out)
    assert obj["orbits_yxy"] == 4 and obj["orbits_nabla"] == 2
    g = tmp_path / "g.txt"
    code, out, _ = run(capsys, "orbits", "--family", "gl", "--d", "2", "--q", "5", "--write-gens", str(g))
    assert code == 0 and "orbits on YxY    3 = 1 + 1 + 1" in out
    code, out, _ = run(capsys, "oracle", "--gens", str(g))
    assert code == 0 and "AGREE" in out


@pytest.mark.parametrize("family,want", [("sl", "4 = Burnside 4"), ("gl", "3 = Burnside 3")])
def test_oracle(capsys, family, want):
    code, out, _ = run(capsys, "oracle", "--family", family, "--d", "2", "--q", "5")
    assert code == 0
    assert want in out and out.strip().endswith("AGREE")


def test_oracle_bound(capsys):
    code, _, err = run(capsys, "oracle", "--family", "sl", "--d", "2", "--q", "7", "--max-group-order", "50")
    assert code == 3 and err


@pytest.mark.slow
def test_oracle_default_bound(capsys):
    code, _, _ = run(capsys, "oracle", "--family", "sl", "--d", "3", "--q", "9")
    assert code == 3


def test_paley(capsys, tmp_path):
    c = tmp_path / "c13.txt"
    assert run(capsys, "paley", "--q", "13", "--out", str(c))[0] == 0
    C = SeidelMatrix.from_text(c.read_text()).as_int()
    assert (C @ C == 13 * np.eye(14, dtype=np.int64)).all()
    s = tmp_path / "s13.txt"
    run(capsys, "seidel", "--family", "sl", "--d", "2", "--q", "13", "--out", str(s))
    code, out, _ = run(capsys, "paley", "--q", "13", "--compare", str(s))
    assert code == 0 and out.startswith("MATCH")
    j = write_matrix(tmp_path / "j.txt", np.ones((14, 14), dtype=int) - np.eye(14, dtype=int))
    code, out, _ = run(capsys, "paley", "--q", "13", "--compare", j)
    assert code == 4 and "NO MATCH" in out
    assert run(capsys, "paley", "--q", "7")[0] == 1


def test_gram(capsys, tmp_path):
    s = tmp_path / "s5.txt"
    run(capsys, "seidel", "--family", "sl", "--d", "2", "--q", "5", "--out", str(s))
    code, out, _ = run(capsys, "gram", str(s), "--omega", "5", "--c", "2")
    assert code == 0
    assert "5 + 2*sqrt(5), 5 - 2*sqrt(5)" in out and "AGREE" in out
    code, out, _ = run(capsys, "gram", str(s), "--omega", "1/2", "--c=-3/7")
    assert code == 0 and "AGREE" in out
    assert run(capsys, "gram", str(s), "--omega", "x", "--c", "1")[0] == 1


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "xline", "classify", "--family", "sl", "--d", "2", "--q", "7"],
        capture_output=True, text=True,
    )
    assert res.returncode == 0
    assert "SPLITS_COMPLEX_ONLY" in res.stdout
