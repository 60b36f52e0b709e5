"""Command-line interface: exit codes, JSON shapes, determinism."""

import json
import os

import pytest

from steinerdh.cli import (EXIT_BUDGET, EXIT_INPUT, EXIT_NO_CERTIFICATE,
                           EXIT_OK, SCHEMA, main)
from steinerdh.trees import format_tree, path_tree, prufer_decode, star_tree


@pytest.fixture
def tree_file(tmp_path):
    def write(t, name="tree.txt"):
        p = tmp_path / name
        p.write_text(format_tree(t))
        return str(p)
    return write


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_gen_deterministic(tmp_path, capsys):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    assert main(["gen", "--n", "8", "--seed", "42", "--out", str(a)]) == EXIT_OK
    assert main(["gen", "--n", "8", "--seed", "42", "--out", str(b)]) == EXIT_OK
    assert a.read_text() == b.read_text()
    code, out = run(capsys, ["gen", "--n", "1"])
    assert code == EXIT_OK and out == "1\n"


def test_gen_rejects_bad_n(capsys):
    assert main(["gen", "--n", "0"]) == EXIT_INPUT


def test_hypermatrix_json_and_text(tree_file, tmp_path, capsys):
    path = tree_file(prufer_decode(2, []))
    code, out = run(capsys, ["hypermatrix", "--tree", path, "--k", "3"])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc == {"k": 3, "n": 2, "entries": [0, 1, 1, 1, 1, 1, 1, 0]}
    p3 = tree_file(path_tree(3), "p3.txt")
    code, out = run(capsys, ["hypermatrix", "--tree", p3, "--k", "2",
                             "--format", "text"])
    assert code == EXIT_OK
    assert out.splitlines()[0] == "2 3"


def test_hypermatrix_budget_exit(tree_file, monkeypatch):
    path = tree_file(path_tree(3))
    monkeypatch.setenv("STEINER_MEM_BUDGET", "5")
    assert main(["hypermatrix", "--tree", path, "--k", "3"]) == EXIT_BUDGET


def test_certify_odd_order(tree_file, capsys):
    path = tree_file(path_tree(3))
    code, out = run(capsys, ["certify", "--tree", path, "--k", "3"])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["schema"] == SCHEMA
    assert doc["kind"] == "nullvector_certificate"
    assert doc["verified"] is True
    assert doc["certificate"]["exact_zero"] is True


def test_certify_order2(tree_file, capsys):
    path = tree_file(path_tree(3))
    code, out = run(capsys, ["certify", "--tree", path, "--k", "2"])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["kind"] == "determinant"
    assert doc["determinant"] == "4" and doc["predicted"] == "4"


def test_certify_even_order_no_certificate(tree_file, capsys):
    path = tree_file(path_tree(3))
    code, out = run(capsys, ["certify", "--tree", path, "--k", "4"])
    assert code == EXIT_NO_CERTIFICATE
    assert json.loads(out)["kind"] == "no_certificate"


def test_certify_two_vertex(tree_file, capsys):
    path = tree_file(prufer_decode(2, []))
    code, out = run(capsys, ["certify", "--tree", path, "--k", "5"])
    assert code == EXIT_OK
    assert json.loads(out)["kind"] == "two_vertex_nonvanishing"
    # k = 7: the scan fails and the vanishing witness is certified instead
    code, out = run(capsys, ["certify", "--tree", path, "--k", "7"])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["kind"] == "two_vertex_nullvector"
    assert doc["certificate"]["exact_zero"] is True


def test_certify_single_vertex(tree_file, capsys):
    path = tree_file(prufer_decode(1, []))
    code, out = run(capsys, ["certify", "--tree", path, "--k", "3"])
    assert code == EXIT_OK
    assert json.loads(out)["kind"] == "single_vertex"
    # k = 2 on a single vertex: 1x1 zero matrix, determinant 0
    code, out = run(capsys, ["certify", "--tree", path, "--k", "2"])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["determinant"] == "0" and doc["predicted"] == "0"


def test_verbose_notes_on_stderr(tree_file, capsys):
    path = tree_file(path_tree(3))
    code = main(["identities", "--tree", path, "--verbose"])
    captured = capsys.readouterr()
    assert code == EXIT_OK
    assert "product_decomposition" in captured.err
    assert "pass" in captured.err


def test_identities_pass_and_skip(tree_file, capsys):
    path = tree_file(star_tree(5))
    code, out = run(capsys, ["identities", "--tree", path])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert all(row["status"] == "pass" for row in doc["checks"])
    single = tree_file(prufer_decode(1, []), "one.txt")
    code, out = run(capsys, ["identities", "--tree", single])
    assert code == EXIT_OK
    assert all(row["status"] == "skipped" for row in json.loads(out)["checks"])


def test_search_report(tree_file, capsys):
    path = tree_file(path_tree(3))
    code, out = run(capsys, ["search", "--tree", path, "--k", "3",
                             "--seed", "3", "--restarts", "4"])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["restarts"] == 4 and len(doc["candidates"]) == 4
    assert doc["best_residual"] <= 1e-10
    code, out = run(capsys, ["search", "--tree", path, "--k", "3",
                             "--restarts", "0"])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["candidates"] == [] and doc["best_residual"] is None


def test_campaign(tmp_path, capsys):
    out_dir = tmp_path / "camp"
    code, out = run(capsys, [
        "campaign", "--n-min", "3", "--n-max", "4", "--k", "3,2",
        "--trees-per-n", "2", "--seed", "11", "--out-dir", str(out_dir)])
    assert code == EXIT_OK
    summary = json.loads(out)
    assert summary["cases"] == 8
    assert summary["verified"] == 8 and summary["failed"] == 0
    files = sorted(os.listdir(out_dir))
    assert "summary.json" in files and len(files) == 9
    case = json.loads((out_dir / files[0]).read_text())
    assert case["report"]["schema"] == SCHEMA


def test_campaign_deterministic(tmp_path):
    args = ["campaign", "--n-min", "3", "--n-max", "3", "--k", "3",
            "--trees-per-n", "3", "--seed", "5"]
    d1, d2 = tmp_path / "c1", tmp_path / "c2"
    assert main(args + ["--out-dir", str(d1), "--out", str(tmp_path / "s1")]) == EXIT_OK
    assert main(args + ["--out-dir", str(d2), "--out", str(tmp_path / "s2")]) == EXIT_OK
    for name in os.listdir(d1):
        assert (d1 / name).read_text() == (d2 / name).read_text()


def test_campaign_usage_errors(tmp_path):
    assert main(["campaign", "--n-min", "3", "--n-max", "4", "--k", ",",
                 "--trees-per-n", "2", "--out-dir", str(tmp_path / "x")]) == EXIT_INPUT
    assert main(["campaign", "--n-min", "4", "--n-max", "3", "--k", "3",
                 "--out-dir", str(tmp_path / "y")]) == EXIT_INPUT


def test_input_errors(tmp_path, capsys):
    assert main(["certify", "--tree", str(tmp_path / "missing.txt"),
                 "--k", "3"]) == EXIT_INPUT
    bad = tmp_path / "bad.txt"
    bad.write_text("3\n1 2\n1 2\n")
    assert main(["certify", "--tree", str(bad), "--k", "3"]) == EXIT_INPUT
    garbled = tmp_path / "garbled.txt"
    garbled.write_text("not a tree at all")
    assert main(["identities", "--tree", str(garbled)]) == EXIT_INPUT
