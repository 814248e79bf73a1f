import json
import subprocess
import sys

import pytest

from reidemeister.cli import main
from reidemeister.errors import InputError
from reidemeister.io import (
    automorphism_to_dict, encode_int, group_to_dict, load_automorphism, load_group, load_matrix, matrix_to_dict,
)
from reidemeister.corpus import corpus_group


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip().startswith("{") else out), err


def test_group_round_trip(tmp_path):
    G = corpus_group("D4")
    path = tmp_path / "d4.json"
    path.write_text(json.dumps(group_to_dict(G)))
    H = load_group(str(path))
    assert (H.table == G.table).all()
    P = load_group({"format": "permutations", "degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]})
    assert P.order == 6


def test_automorphism_formats(Z4):
    phi = load_automorphism(Z4, {"images": [0, 3, 2, 1]})
    assert automorphism_to_dict(phi) == {"images": [0, 3, 2, 1]}
    gens = Z4.generators
    psi = load_automorphism(Z4, {"generator_images": [Z4.inverse[g] for g in gens]})
    assert psi == phi


def test_matrix_formats():
    A = load_matrix('{"n": 2, "entries": [[2, "1"], [1, 1]]}')
    assert A.tolist() == [[2, 1], [1, 1]]
    with pytest.raises(InputError):
        load_matrix('{"n": 3, "entries": [[1]]}')
    big = 2 ** 70
    assert matrix_to_dict(load_matrix([[big]]))["entries"] == [[str(big)]]
    assert encode_int(float("inf")) == "infinity"


def test_bad_json():
    with pytest.raises(InputError):
        load_group("{not json")


def test_classes_z4_inversion(capsys):
    code, rep, _ = run(capsys, "classes", "Z4", "--aut", '{"images": [0, 3, 2, 1]}')
    assert code == 0 and rep["results"]["R"] == 2
    assert rep["results"]["classes"] == [[0, 2], [1, 3]]
    assert set(rep) == {"command", "inputs_digest", "results", "checks", "passed", "wall_time"}


def test_classes_identity(capsys):
    code, rep, _ = run(capsys, "classes", "Q8")
    assert code == 0 and rep["results"]["R"] == 5


def test_malformed_table_exit_2(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"format": "table", "table": [[0, 1, 2], [1, 1, 0], [2, 0, 1]]}))
    code, out, err = run(capsys, "classes", str(path))
    assert code == 2 and "NotLatinSquare" in err and "row" in err


def test_missing_file_exit_2(capsys):
    code, _, err = run(capsys, "classes", "/nonexistent/group.json")
    assert code == 2


def test_tbft_s3_all(capsys):
    code, rep, _ = run(capsys, "tbft", "S3", "--all-automorphisms", "--deep")
    rows = rep["results"]["rows"]
    assert code == 0 and len(rows) == 6
    assert all(r["R"] == r["fixed_characters"] == r["coinvariants_dimension"] == 3 for r in rows)


def test_tbft_z4_and_trivial(capsys):
    code, rep, _ = run(capsys, "tbft", "Z4", "--aut", '{"images": [0, 3, 2, 1]}')
    assert code == 0 and rep["results"]["rows"][0]["R"] == rep["results"]["rows"][0]["fixed_characters"] == 2
    code, rep, _ = run(capsys, "tbft", "trivial")
    assert code == 0 and rep["results"]["rows"][0]["R"] == 1


def test_spectrum_commands(capsys):
    code, rep, _ = run(capsys, "spectrum", "--family", "Z")
    assert code == 0 and [r["value"] for r in rep["results"]["realized"]] == [2]
    assert rep["results"]["includes_infinity"]
    code, rep, _ = run(capsys, "spectrum", "--family", "Zn", "--n", "2", "--value-bound", "20")
    assert [r["value"] for r in rep["results"]["realized"]] == list(range(1, 21))
    code, rep, _ = run(capsys, "spectrum", "--family", "Heisenberg", "--search-bound", "6")
    assert code == 0 and all(r["value"] % 2 == 0 for r in rep["results"]["realized"])


def test_congruence_commands(capsys):
    code, rep, _ = run(capsys, "congruence", "--matrix", "[[2,1],[1,1]]", "--max-n", "3")
    assert code == 0
    assert [(r["n"], r["sum"], r["quotient"], r["passed"]) for r in rep["results"]["rows"]] == [
        (1, 1, 1, True), (2, 4, 2, True), (3, 15, 5, True)]
    code, _, err = run(capsys, "congruence", "--matrix", "[[1,0],[0,1]]")
    assert code == 3 and "n = 1" in err
    code, rep, _ = run(capsys, "congruence", "--group", "S3", "--max-n", "6", "--periods")
    assert code == 0 and rep["passed"]
    assert [r["sum"] for r in rep["results"]["rows"]][1:] == [0] * 5


def test_isogredience_commands(capsys):
    for name, S in (("Q8", 4), ("Z6", 1), ("S3", 3)):
        code, rep, _ = run(capsys, "isogredience", name)
        assert code == 0 and rep["results"]["S"] == S == rep["results"]["R_quotient_by_center"]


def test_char_table_command(capsys):
    code, rep, _ = run(capsys, "char-table", "Q8")
    assert code == 0 and rep["results"]["degrees"] == [1, 1, 1, 1, 2]
    assert {"prime", "degrees", "classes", "rows"} <= set(rep["results"])


def test_verify_corpus_commands(capsys):
    code, rep, _ = run(capsys, "verify-corpus", "--max-order", "1")
    assert code == 0 and rep["passed"]
    code, rep, _ = run(capsys, "verify-corpus", "--max-order", "8", "--inject-faulty")
    assert code == 4 and not rep["passed"]
    assert rep["results"]["failures"] == ["S3 automorphism 6: homomorphism"]


def test_determinism(capsys):
    _, a, _ = run(capsys, "tbft", "D4", "--all-automorphisms")
    _, b, _ = run(capsys, "tbft", "D4", "--all-automorphisms")
    assert json.dumps(a["results"]) == json.dumps(b["results"])
    assert a["inputs_digest"] == b["inputs_digest"]


def test_pretty_output(capsys):
    code, out, _ = run(capsys, "classes", "S3", "--pretty")
    assert code == 0 and out.startswith("classes: PASS")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "reidemeister", "classes", "Z3"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["results"]["R"] == 3
