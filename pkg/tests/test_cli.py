import json

import pytest

from ppiprep.cli import main
from ppiprep.ppip import Ppip

from helpers import DATA

SIGMA = str(DATA / "sigma_nine.txt")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- golden lines --------------------------------------------------------

def test_recognize_golden_line(capsys):
    code, out, _ = run(capsys, "recognize", "--input", SIGMA)
    assert code == 0
    assert out == "modular semilattice: yes\n"


def test_closure_nonexistent_golden_line(capsys):
    code, out, _ = run(capsys, "closure", "--input", SIGMA, "--set", "1,8")
    assert code == 0
    assert out == "closure: nonexistent\n"


def test_validate_pentagon_witness(capsys):
    code, out, _ = run(capsys, "validate", "--input", str(DATA / "n5.json"))
    assert code == 1
    assert "modular: no" in out
    assert "modular-law" in out


# -- verdicts and reports ------------------------------------------------

def test_closure_existing(capsys):
    code, out, _ = run(capsys, "closure", "--input", SIGMA, "--set", "4")
    assert code == 0
    assert out == "closure: 1,3,4,5\n"


def test_validate_modular_fixture(tmp_path, capsys):
    m3 = {"elements": ["0", "x", "y", "z", "1"],
          "covers": [["0", "x"], ["0", "y"], ["0", "z"],
                     ["x", "1"], ["y", "1"], ["z", "1"]]}
    path = tmp_path / "m3.json"
    path.write_text(json.dumps(m3))
    code, out, _ = run(capsys, "validate", "--input", str(path))
    assert code == 0
    assert "meet semilattice: yes" in out
    assert "modular: yes" in out
    assert "median: no" in out


def test_validate_non_semilattice(tmp_path, capsys):
    bowtie = {"elements": ["a", "b", "c", "d"],
              "covers": [["a", "c"], ["a", "d"], ["b", "c"], ["b", "d"]]}
    path = tmp_path / "bowtie.json"
    path.write_text(json.dumps(bowtie))
    code, out, _ = run(capsys, "validate", "--input", str(path))
    assert code == 1
    assert "meet semilattice: no" in out and "witness" in out


def test_ppip_axiom_report(capsys):
    code, out, _ = run(capsys, "ppip", "--input", str(DATA / "m3_ppip.json"))
    assert code == 0
    assert "axioms: ok" in out and "points: 3" in out


def test_ppip_axiom_violation(tmp_path, capsys):
    bad = {"elements": ["0", "a", "b", "t"],
           "covers": [["0", "a"], ["0", "b"], ["a", "t"], ["b", "t"]],
           "inconsistent": [["a", "b"]], "collinear": []}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, out, _ = run(capsys, "ppip", "--input", str(path))
    assert code == 1
    assert "axioms: no" in out and "inconsistency-unbounded" in out


def test_birkhoff_roundtrip_report(tmp_path, capsys):
    m3 = {"elements": ["0", "x", "y", "z", "1"],
          "covers": [["0", "x"], ["0", "y"], ["0", "z"],
                     ["x", "1"], ["y", "1"], ["z", "1"]]}
    path = tmp_path / "m3.json"
    path.write_text(json.dumps(m3))
    emit = tmp_path / "induced.json"
    code, out, _ = run(capsys, "birkhoff", "--input", str(path), "--emit", str(emit))
    assert code == 0
    assert "roundtrip: ok" in out and "family size: 5" in out
    emitted = Ppip.from_json(json.loads(emit.read_text()))
    assert Ppip.from_json(emitted.to_json()) == emitted
    assert len(emitted.collinear) == 1


def test_product_ppip_with_call_count(capsys):
    code, out, _ = run(capsys, "product-ppip", "--input", str(DATA / "square_members.json"),
                       "--count-calls")
    assert code == 0
    assert "points: 2" in out
    assert "oracle calls:" in out and "bound 36" in out


def test_optimal_base_output(capsys):
    code, out, _ = run(capsys, "optimal-base", "--input", SIGMA)
    assert code == 0
    assert "size: 24" in out
    assert out.count("->") == 9


def test_optimal_base_emit(tmp_path, capsys):
    emit = tmp_path / "base.json"
    code, _, _ = run(capsys, "optimal-base", "--input", SIGMA, "--emit", str(emit))
    assert code == 0
    data = json.loads(emit.read_text())
    assert len(data["implications"]) == 9


def test_polar_report_and_emit(tmp_path, capsys):
    emit = tmp_path / "polar.json"
    dot = tmp_path / "polar.dot"
    code, out, _ = run(capsys, "polar", "--form", str(DATA / "form_3x3.json"),
                       "--emit", str(emit), "--dot", str(dot))
    assert code == 0
    assert "points: 7" in out
    emitted = Ppip.from_json(json.loads(emit.read_text()))
    assert len(emitted.poset) == 7
    assert Ppip.from_json(emitted.to_json()) == emitted
    text = dot.read_text()
    assert text.startswith("digraph") and text.count("{") == text.count("}")


def test_mvsp_report(capsys):
    code, out, _ = run(capsys, "mvsp", "--input", str(DATA / "matrix_6x6.json"))
    assert code == 0
    assert "optimum: 6" in out
    assert "minimizers: 12" in out
    assert "irreducible points: 6" in out


def test_dm_decompose_report_and_artifacts(tmp_path, capsys):
    emit = tmp_path / "transforms.json"
    dot = tmp_path / "chain.dot"
    code, out, _ = run(capsys, "dm-decompose", "--input", str(DATA / "matrix_6x6.json"),
                       "--emit-transforms", str(emit), "--emit-dot", str(dot))
    assert code == 0
    assert "optimum: 6" in out
    assert "stages: (2,2) (1,1) (1,1) (1,1) (1,1)" in out
    data = json.loads(emit.read_text())
    assert data["optimum"] == 6
    assert len(data["E_blocks"]) == 3 and len(data["F_blocks"]) == 3
    assert len(data["transformed"]) == 6
    text = dot.read_text()
    assert text.startswith("digraph") and text.count("->") == 5


# -- exit codes ----------------------------------------------------------

def test_missing_file_is_input_error(tmp_path, capsys):
    code, _, err = run(capsys, "recognize", "--input", str(tmp_path / "nope.txt"))
    assert code == 2
    assert "cannot read" in err


def test_bad_json_is_input_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "validate", "--input", str(path))
    assert code == 2
    assert "not valid JSON" in err


def test_recognize_negative_verdict(tmp_path, capsys):
    path = tmp_path / "n5sigma.txt"
    path.write_text("c -> a\na b -> c\n")
    code, out, _ = run(capsys, "recognize", "--input", str(path))
    assert code == 1
    assert "modular semilattice: no" in out and "witness" in out


def test_budget_exit_code(capsys):
    code, _, err = run(capsys, "optimal-base", "--input", SIGMA, "--budget", "4")
    assert code == 3
    assert "budget" in err.lower()


def test_recognition_unaffected_by_budget(capsys):
    # recognition never enumerates the closed family
    code, out, _ = run(capsys, "recognize", "--input", SIGMA, "--budget", "2")
    assert code == 0 and "yes" in out


def test_non_alternating_form_names_invariant(tmp_path, capsys):
    path = tmp_path / "bad_form.json"
    path.write_text(json.dumps({"p": 2, "entries": [[1, 0], [0, 1]]}))
    code, _, err = run(capsys, "polar", "--form", str(path))
    assert code == 2
    assert "alternating" in err


def test_unknown_flag_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["recognize", "--input", SIGMA, "--frobnicate"])
    assert exc.value.code == 2


def test_unknown_subcommand_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["transmogrify"])
    assert exc.value.code == 2


def test_seed_flag_accepted_everywhere(capsys):
    code, out, _ = run(capsys, "recognize", "--input", SIGMA, "--seed", "7")
    assert code == 0 and "yes" in out
