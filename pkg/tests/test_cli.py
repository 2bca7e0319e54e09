import json
import subprocess
import sys

import pytest

from beireg.cli import ConfigError, RunConfig, main, random_pairs


def run_cli(tmp_path, *argv, name="out.jsonl"):
    out = tmp_path / name
    code = main([*argv, "--out", str(out)])
    lines = [json.loads(s) for s in out.read_text().splitlines()] if out.exists() else []
    return code, lines


def test_classify_connected_four(tmp_path):
    code, lines = run_cli(tmp_path, "classify", "--enumerate", "4", "--connected")
    assert code == 0
    assert lines[-1]["classes"] == {"AtLeastFour": 1, "Three": 4, "Two": 1}
    assert all("certificate" in doc for doc in lines[:-1])


def test_census_three_vertices(tmp_path):
    code, lines = run_cli(tmp_path, "census", "--n", "3")
    assert code == 0
    summary = lines[-1]
    assert summary["three"] == ["BW"] and summary["mismatches"] == []


def test_counterexample_command(tmp_path):
    code, lines = run_cli(tmp_path, "counterexample", "--q", "2", "--t", "3,3")
    assert code == 0
    doc = lines[0]
    assert doc["weakly_closed"] and doc["ell_plus_1"] == 3
    assert doc["structural_reg"] == doc["predicted_reg"] == 5
    assert doc["initial_reg"] == {"2": 5}
    assert doc["conjecture_violated"] and doc["consistent"]


def test_output_is_byte_identical(tmp_path):
    main(["classify", "--n", "5", "--out", str(tmp_path / "a")])
    main(["classify", "--n", "5", "--out", str(tmp_path / "b")])
    main(["classify", "--n", "5", "--jobs", "2", "--out", str(tmp_path / "c")])
    a = (tmp_path / "a").read_bytes()
    assert a == (tmp_path / "b").read_bytes() == (tmp_path / "c").read_bytes()


def test_graph6_parse_error_has_line_number(tmp_path, capsys):
    src = tmp_path / "g.g6"
    src.write_text("BW\nBW!\n")
    assert main(["classify", "--input", str(src)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_edge_list_input(tmp_path, capsys):
    src = tmp_path / "g.edges"
    src.write_text("# path and edge\n3\n1 2\n2 3\n\n2\n1 2\n")
    code, lines = run_cli(tmp_path, "reg", "--input", str(src))
    assert code == 0
    assert [doc["value"] for doc in lines[:-1]] == [3, 2]
    src.write_text("3\n1 2\n2 9\n")
    assert main(["reg", "--input", str(src)]) == 2
    assert "line 3" in capsys.readouterr().err


def test_usage_errors(tmp_path):
    assert main(["reg", "--n", "3", "--char", "4"]) == 2
    assert main(["reg", "--n", "9"]) == 2
    assert main(["counterexample", "--q", "2", "--t", "3"]) == 2
    with pytest.raises(ConfigError):
        RunConfig("reg", jobs=0).validate()


def test_conjecture_exit_status(tmp_path):
    code, lines = run_cli(tmp_path, "check-conjectures", "--n", "4")
    assert code == 0
    assert lines[-1]["failures"] == {"ehh_equality": 0, "sk_cliques": 0, "weakly_closed_ell": 0}


def test_verify_commands(tmp_path):
    code, lines = run_cli(tmp_path, "verify-join", "--n", "2", "--char", "2,32003")
    assert code == 0 and lines[-1]["pairs"] == 9
    code, lines = run_cli(tmp_path, "verify-decomposition", "--n", "4", name="d")
    assert code == 0 and lines[-1]["failed"] == []


def test_betti_and_primes(tmp_path):
    code, lines = run_cli(tmp_path, "betti", "--n", "3", "--char", "2,3")
    assert code == 0
    p3 = next(doc for doc in lines if doc.get("graph6") == "BW")
    assert [t["reg"] for t in p3["tables"]] == [3, 3]
    code, lines = run_cli(tmp_path, "primes", "--n", "3", name="p")
    p3 = next(doc for doc in lines if doc.get("graph6") == "BW")
    # "BW" is the path 1-3-2
    assert [c["T"] for c in p3["cutsets"]] == [[], [3]]


def test_random_pairs_are_seeded():
    assert random_pairs(5, 3) == random_pairs(5, 3)
    assert all(G1.n + G2.n <= 8 for G1, G2 in random_pairs(20, 1))


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "beireg", "reg", "--n", "2", "--structural-only"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout.splitlines()[-1])["graphs"] == 2
