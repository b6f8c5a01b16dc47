import json
import subprocess
import sys

import jsonschema
import pytest

from cyquiver.cli import EXIT_USAGE, load_schema, main
from cyquiver.dsl import ProblemFile, emit, parse
from cyquiver.families import FamilySpec, build

SCHEMA = load_schema()
Q1_HEAD = "quiver { vertices: 2; arrows: a1: 0->1, a2: 0->1, a3: 1->0, a4: 1->0; }\n"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    return code, report


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


def family_file(write, spec, **opts):
    q, w, _ = build(spec)
    return write(f"{spec.family}.cyq", emit(ProblemFile(q, w, **opts)))


def test_schema_is_valid():
    jsonschema.Draft202012Validator.check_schema(SCHEMA)


# check ------------------------------------------------------------------------------------


def test_check_q1_all_good(capsys, write):
    path = family_file(write, FamilySpec("Q1", d=4), degree_bound=8)
    code, rep = run_json(capsys, "check", path)
    assert code == 0 and rep["outcome"] == "good" and rep["method"] == "condsup"
    assert rep["hilbert_expected"][1] == [["0", "2"], ["2", "0"]]
    code, text, _ = run(capsys, "check", path)
    assert code == 0 and "outcome: good" in text


def test_check_two_loops_cubic_bad(capsys, write):
    path = write("k2d3.cyq", "quiver { vertices: 1; arrows: x: 0->0, y: 0->0; }\npotential: x*x*y + y*y*y;")
    code, rep = run_json(capsys, "check", path)
    assert code == 1
    assert rep["witness"]["inequality"] == "I2" and rep["witness"]["degree"] == 4


def test_check_dropped_term_condsup_inconclusive(capsys, write):
    path = write("q1drop.cyq", Q1_HEAD + "potential: a1*a3*a2*a4;")
    code, rep = run_json(capsys, "check", path, "--method", "condsup")
    assert code == 2 and rep["outcome"] == "inconclusive"
    assert "clause" in rep["witness"]


def test_check_method_from_file(capsys, write):
    path = family_file(write, FamilySpec("Q2", d=4), method="structural")
    code, rep = run_json(capsys, "check", path)
    assert code == 2 and rep["method"] == "structural"


def test_check_exactness_bad(capsys, write):
    path = write("xyz.cyq", "quiver { vertices: 1; arrows: x: 0->0, y: 0->0, z: 0->0; }\npotential: x*y*z;")
    code, rep = run_json(capsys, "check", path, "--method", "exactness", "--degree-bound", "5")
    assert code == 1 and rep["witness"]["degree"] == 3 and rep["N"] == 3


def test_check_needs_potential(capsys, write):
    code, _, err = run(capsys, "check", write("bare.cyq", Q1_HEAD))
    assert code == EXIT_USAGE and "potential required" in err


def test_check_parse_error_reports_position(capsys, write):
    code, _, err = run(capsys, "check", write("bad.cyq", Q1_HEAD + "potential: a1*a1;"))
    assert code == EXIT_USAGE and "line 2, column 15" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "check", "/nonexistent/problem.cyq")
    assert code == EXIT_USAGE and "cannot read" in err


def test_bad_subcommand(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == EXIT_USAGE


def test_text_and_json_agree(capsys, write):
    path = write("xyz.cyq", "quiver { vertices: 1; arrows: x: 0->0, y: 0->0, z: 0->0; }\npotential: x*y*z;")
    code_json, rep = run_json(capsys, "check", path, "--degree-bound", "5")
    code_text, text, _ = run(capsys, "check", path, "--degree-bound", "5")
    assert code_json == code_text
    assert f"outcome: {rep['outcome']}" in text


# hilbert ----------------------------------------------------------------------------------


def test_hilbert_two_loops(capsys):
    code, rep = run_json(capsys, "hilbert", "--loops", "2", "--d", "3", "--degree-bound", "8")
    assert code == 1
    assert [m[0][0] for m in rep["series"]["I2"][:5]] == ["2", "3", "2", "0", "-1"]
    assert rep["inequalities"]["I1"] == "pass"


def test_hilbert_three_loops_pass(capsys):
    code, rep = run_json(capsys, "hilbert", "--loops", "3", "--d", "3", "--degree-bound", "20")
    assert code == 2 and all(v == "pass" for v in rep["inequalities"].values())


def test_hilbert_cyclic(capsys):
    code, rep = run_json(capsys, "hilbert", "--cyclic", "6,2,2,2", "--d", "4")
    assert code == 1 and rep["witness"]["inequality"] == "I2" and rep["witness"]["degree"] == 4
    code, _ = run_json(capsys, "hilbert", "--cyclic", "2,2,2,2", "--d", "4")
    assert code == 2


def test_hilbert_text(capsys):
    code, text, _ = run(capsys, "hilbert", "--loops", "2", "--d", "3", "--degree-bound", "4")
    assert "I2: FAIL" in text and "2, 3, 2, 0, -1" in text


def test_hilbert_source_is_required(capsys):
    code, _, err = run(capsys, "hilbert", "--d", "3")
    assert code == EXIT_USAGE
    code, _, _ = run(capsys, "hilbert", "--loops", "2")
    assert code == EXIT_USAGE


# family -----------------------------------------------------------------------------------


@pytest.mark.parametrize(
    "argv, spec",
    [
        (["one_vertex_deg3", "--k", "3"], FamilySpec("one_vertex_deg3", k=3)),
        (["Q1", "--d", "4"], FamilySpec("Q1", d=4)),
        (["cyclic", "--p", "2,2", "--ell", "2"], FamilySpec("cyclic", p=(2, 2), ell=2)),
        (["one_vertex_general", "--k", "2", "--d", "4"], FamilySpec("one_vertex_general", k=2, d=4)),
        (["Q2", "--d", "5"], FamilySpec("Q2", d=5)),
    ],
)
def test_family_emits_parseable_file(capsys, argv, spec):
    code, text, _ = run(capsys, "family", *argv)
    assert code == 0
    q, w, _ = build(spec)
    p = parse(text)
    assert p.quiver == q and p.potential == w
    assert emit(p) == text


def test_family_report(capsys):
    code, rep = run_json(capsys, "family", "one_vertex_general", "--k", "2", "--d", "4", "--emit", "report", "--degree-bound", "8")
    assert code == 0 and rep["family"] == "one_vertex_general(k=2, d=4)"
    assert rep["leading_term_discrepancies"][0]["arrow"] == "X2"


def test_family_invalid(capsys):
    code, _, err = run(capsys, "family", "Q1", "--d", "5")
    assert code == EXIT_USAGE and "even" in err


# sample ------------------------------------------------------------------------------------


def test_sample_parity(capsys, write):
    code, rep = run_json(capsys, "sample", write("q1.cyq", Q1_HEAD), "--d", "3")
    assert code == 1
    assert rep["witness"]["condition"] == "empty_superpotential_space"
    assert "every cycle has even length" in rep["witness"]["message"]


def test_sample_seeded_and_reproducible(capsys, write):
    path = write("q1.cyq", Q1_HEAD)
    argv = ("sample", path, "--d", "4", "--trials", "2", "--seed", "5", "--degree-bound", "6", "--coeff-pool=-2..2")
    code, rep = run_json(capsys, *argv)
    _, again = run_json(capsys, *argv)
    assert code == 0 and rep["good_count"] >= 1
    assert rep["runs"] == again["runs"]


def test_sample_bad_pool(capsys, write):
    code, _, err = run(capsys, "sample", write("q1.cyq", Q1_HEAD), "--d", "4", "--coeff-pool", "0,1")
    assert code == EXIT_USAGE and "exclude 0" in err


# groebner -----------------------------------------------------------------------------------


def test_groebner_anticommutator(capsys, write):
    path = family_file(write, FamilySpec("one_vertex_deg3", k=3))
    code, rep = run_json(capsys, "groebner", path)
    assert code == 0 and len(rep["relations"]) == 3 and rep["basis_size"] == 3
    assert rep["ambiguities"] == [{"ambiguity": "(X1, X2, X3)", "degree": 3, "resolvable": True, "residue": "0"}]


def test_groebner_q2(capsys, write):
    path = family_file(write, FamilySpec("Q2", d=4))
    code, rep = run_json(capsys, "groebner", path)
    assert code == 0 and rep["basis_size"] == 4
    assert len(rep["ambiguities"]) == 2 and all(a["resolvable"] for a in rep["ambiguities"])


def test_groebner_zero_potential(capsys, write):
    code, rep = run_json(capsys, "groebner", write("bare.cyq", Q1_HEAD))
    assert code == 0 and rep["basis_size"] == 0 and rep["basis"] == []


# entry point ----------------------------------------------------------------------------------


def test_module_entry_point(write):
    path = family_file(write, FamilySpec("one_vertex_deg3", k=3))
    proc = subprocess.run(
        [sys.executable, "-m", "cyquiver.cli", "check", path, "--method", "condsup", "--format", "json"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["outcome"] == "good"
