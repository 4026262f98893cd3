import json
import subprocess
import sys

import pytest

from iwahori import oracle, preset
from iwahori.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def tsv(out):
    lines = out.splitlines()
    header = lines[0].split("\t")
    return [dict(zip(header, line.split("\t"))) for line in lines[1:]]


def jsonl(out):
    return [json.loads(line) for line in out.splitlines()]


@pytest.mark.parametrize("t,lat,omega", [("A2", "coweight", 3), ("A2", "coroot", 1), ("G2", "coweight", 1)])
def test_info(capsys, t, lat, omega):
    code, out, _ = run(capsys, "info", "--type", t, "--lattice", lat, "--format", "json")
    assert code == 0
    row = jsonl(out)[0]
    assert row["omega_order"] == omega and row["affine_simple"] == 3


def test_enumerate_counts(capsys):
    code, out, _ = run(capsys, "enumerate", "--type", "A1", "--max-len", "2")
    assert code == 0 and len(tsv(out)) == 5
    code, out, _ = run(capsys, "enumerate", "--type", "A2", "--lattice", "coweight", "--max-len", "0")
    assert len(tsv(out)) == 3
    code, out, _ = run(capsys, "enumerate", "--type", "A2", "--max-len", "3")
    assert len(tsv(out)) == len(oracle.ball_elements(preset("A2"), 3))


def test_tsv_json_agree(capsys):
    args = ["enumerate", "--type", "C2", "--lattice", "coweight", "--max-len", "3"]
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args, "--format", "json")
    rows_t, rows_j = tsv(a), jsonl(b)
    assert len(rows_t) == len(rows_j)
    for rt, rj in zip(rows_t, rows_j):
        assert int(rt["length"]) == rj["length"]
        assert rt["word"] == " ".join(map(str, rj["word"]))
        assert int(rt["omega"]) == rj["omega"]
        assert rt["translation"] == ",".join(map(str, rj["translation"]))
        assert rt["finite_image"] == ";".join(",".join(map(str, v)) for v in rj["finite_image"])
    keys = [(r["length"], r["word"], r["omega"]) for r in rows_j]
    assert keys == sorted(keys)


def test_enumerate_parallel_identical(capsys):
    args = ["enumerate", "--type", "A2", "--lattice", "coweight", "--max-len", "4"]
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args, "--parallel", "2")
    assert a == b


def test_word(capsys):
    _, out, _ = run(capsys, "word", "--type", "A1", "t=1")
    assert tsv(out)[0]["word"] == "0 1"
    _, out, _ = run(capsys, "word", "--type", "A2", "")
    assert tsv(out)[0]["word"] == ""
    _, out, _ = run(capsys, "word", "--type", "A2", "--lattice", "coweight", "t=1,0", "--format", "json")
    row = jsonl(out)[0]
    assert row["omega"] != 0 and row["length"] == len(row["word"]) == 2


@pytest.mark.parametrize("spec", ["t=1,0,0", "x=1", "w=9", "tor=1", "t=a"])
def test_word_bad_spec(capsys, spec):
    code, out, err = run(capsys, "word", "--type", "A2", spec)
    assert code == 2 and out == "" and err.startswith("error:")


def test_dcosets(capsys):
    _, out, _ = run(capsys, "dcosets", "--type", "A2", "--left", "1,2", "--right", "1,2", "--max-len", "0")
    assert len(tsv(out)) == 1
    _, out, _ = run(capsys, "dcosets", "--type", "A2", "--left", "1,2", "--right", "1,2", "--max-len", "6")
    part = oracle.double_coset_partition((1, 2), (1, 2), oracle.ball_elements(preset("A2"), 6))
    assert len(tsv(out)) == len(part.classes)
    _, a, _ = run(capsys, "dcosets", "--type", "G2", "--max-len", "3")
    _, b, _ = run(capsys, "enumerate", "--type", "G2", "--max-len", "3")
    assert len(tsv(a)) == len(tsv(b))


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "dcosets", "--type", "A1", "--left", "0,1")[0] == 4
    assert run(capsys, "enumerate", "--type", "A3", "--max-len", "8", "--cap", "100")[0] == 3
    assert run(capsys, "info", "--type", "Z3")[0] == 2
    assert run(capsys, "info")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"cartan_type": "A1", "lattice": {"basis": [["1/2"]]}}))
    code, out, err = run(capsys, "verify", "--datum", str(bad))
    assert code == 2 and "error" in err
    bad.write_text("{not json")
    assert run(capsys, "info", "--datum", str(bad))[0] == 2


def test_descent_cli(capsys, tmp_path):
    s = tmp_path / "sigma.json"
    s.write_text(json.dumps({"permutation": [0, 3, 2, 1]}))
    code, out, _ = run(capsys, "descent", "--type", "A3", "--lattice", "coweight", "--sigma", str(s),
                       "--left", "1,3", "--right", "2", "--max-len", "4", "--format", "json")
    row = jsonl(out)[0]
    assert code == 0 and row["ok"] and row["stable_cosets"] == row["fixed_minimal_reps"]
    assert run(capsys, "descent", "--type", "A3", "--sigma", str(s), "--left", "1")[0] == 2
    s.write_text(json.dumps({"permutation": [0, 3, 2, 1], "extra": 1}))
    assert run(capsys, "descent", "--type", "A3", "--sigma", str(s))[0] == 2


def test_verify_datum_deterministic(capsys):
    args = ["verify", "--type", "B2", "--lattice", "coweight", "--max-len", "4", "--seed", "3"]
    c1, a, _ = run(capsys, *args)
    c2, b, _ = run(capsys, *args)
    assert c1 == c2 == 0 and a == b and a.startswith("[PASS]")


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "iwahori", "info", "--type", "A1"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and r.stdout.startswith("cartan_type\t")


def test_weyl_order_cap(capsys):
    code, out, err = run(capsys, "enumerate", "--type", "E8", "--max-len", "1")
    assert code == 3 and "order cap" in err
