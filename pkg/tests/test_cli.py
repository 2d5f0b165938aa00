import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from instances import A2, A2_X, EXAMPLE_A, EXAMPLE_X
from maxmin import ConformismReport, RobustnessReport, SolveReport, check_conforming, solve
from maxmin.cli import run
from maxmin.errors import InstanceError
from maxmin.instance import loads, parse_instance

CORPUS = Path(__file__).parent / "corpus"
EXAMPLE = CORPUS / "worked_example.json"
COLLAPSE = CORPUS / "two_by_two_collapse.json"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_parse_example_file():
    inst = parse_instance(EXAMPLE)
    assert inst.top == 10 and inst.A == EXAMPLE_A and inst.box == EXAMPLE_X


def test_out_of_range_entry_reports_field_and_line():
    text = '{\n  "top": 10,\n  "matrix": [[1, 11], [0, 0]]\n}'
    with pytest.raises(InstanceError, match=r"<t>:3: matrix\[0\]\[1\]: tick 11 out of range"):
        loads(text, "<t>")


def test_non_square_matrix_rejected():
    text = json.dumps({"top": 10, "matrix": [[1, 2, 3, 4]] * 3})
    with pytest.raises(InstanceError, match="not square"):
        loads(text)


def test_syntax_error_has_line_and_column():
    with pytest.raises(InstanceError, match=r"<t>:2:\d+"):
        loads('{"top": 10,\n "matrix": [[1]],, }', "<t>")


def test_other_malformed_fields():
    with pytest.raises(InstanceError, match="length 1"):
        loads(json.dumps({"top": 3, "matrix": [[1, 1], [1, 1]], "lower": [0]}))
    with pytest.raises(InstanceError, match="unknown field"):
        loads(json.dumps({"top": 3, "matrix": [[1]], "colour": 1}))
    with pytest.raises(InstanceError, match="exceeds upper"):
        loads(json.dumps({"top": 3, "matrix": [[1]], "lower": [2], "upper": [1]}))
    with pytest.raises(InstanceError, match="missing field 'matrix'"):
        loads(json.dumps({"top": 3}))


def test_eigen_command():
    code, out, _ = call("eigen", "--input", str(EXAMPLE))
    assert code == 0
    assert "(5,7,7,5)" in out


def test_check_conforming_example():
    code, out, _ = call("check-conforming", "--input", str(EXAMPLE))
    assert code == 0
    assert "Simple" in out and "(4,3,3,4)" in out and "(5,6,6,5)" in out
    assert "(1,4)(2,3)" in out


def test_check_conforming_collapse_prints_witness():
    code, out, _ = call("check-conforming", "--input", str(COLLAPSE))
    assert code == 1
    assert "NotSimple" in out and "witness y2" in out and "(5,0)" in out


def test_solve_command():
    code, out, _ = call("solve", "--input", str(EXAMPLE), "--b", "5,6,6,5")
    assert code == 0
    assert "unique in X  yes" in out and "(5,6,6,5)" in out


def test_unsolvable_exit_code(tmp_path):
    p = tmp_path / "u.json"
    p.write_text(json.dumps({"top": 10, "matrix": [[5, 5], [5, 5]]}))
    code, out, _ = call("solve", "--input", str(p), "--b", "7,3")
    assert code == 2 and "solvable     no" in out


def test_inapplicable_exit_code(tmp_path):
    p = tmp_path / "i.json"
    p.write_text(json.dumps({"top": 10, "matrix": [[5, 0], [5, 0]], "lower": [5, 0], "upper": [6, 6]}))
    code, out, _ = call("check-conforming", "--input", str(p))
    assert code == 2 and "Inapplicable" in out
    code, _, _ = call("check-conforming", "--input", str(p), "--force-oracle")
    assert code in (0, 1)


def test_orbit_command():
    code, out, _ = call("orbit", "--input", str(EXAMPLE), "--x0", "7,9,6,5")
    assert code == 1 and "period     2" in out
    code, _, _ = call("orbit", "--input", str(EXAMPLE), "--x0", "5,7,8,7")
    assert code == 0


def test_robust_command():
    code, out, _ = call("robust", "--input", str(COLLAPSE))
    assert code == 1 and "weakly X-robust" in out


def test_usage_errors():
    assert call("solve", "--input", str(COLLAPSE))[0] == 3  # no b
    assert call("orbit", "--input", str(EXAMPLE))[0] == 3  # no x0
    assert call("eigen")[0] == 3
    assert call("solve", "--input", str(EXAMPLE), "--b", "1,2")[0] == 3
    with pytest.raises(SystemExit) as exc:
        call("transpose", "--input", str(EXAMPLE))
    assert exc.value.code == 3


def test_parse_error_exit_code(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"top": 10, "matrix": [[11]]}')
    code, _, err = call("eigen", "--input", str(p))
    assert code == 4 and "out of range" in err
    assert call("eigen", "--input", str(tmp_path / "missing.json"))[0] == 4


def test_json_reports_round_trip():
    _, out, _ = call("check-conforming", "--input", str(EXAMPLE), "--json")
    doc = json.loads(out)
    assert ConformismReport.from_dict(doc["report"]) == check_conforming(EXAMPLE_A, EXAMPLE_X)

    _, out, _ = call("check-conforming", "--input", str(COLLAPSE), "--json")
    doc = json.loads(out)
    assert doc["exit_code"] == 1
    assert ConformismReport.from_dict(doc["report"]) == check_conforming(A2, A2_X)

    inst = parse_instance(EXAMPLE)
    _, out, _ = call("solve", "--input", str(EXAMPLE), "--json")
    rep = SolveReport.from_dict(json.loads(out)["report"], inst.A, inst.vec("b"), inst.box)
    assert rep == solve(inst.A, inst.vec("b"), inst.box)

    _, out, _ = call("robust", "--input", str(COLLAPSE), "--json")
    data = json.loads(out)["report"]
    assert RobustnessReport.from_dict(data).to_dict() == data


def test_verify_on_corpus():
    for path in sorted(CORPUS.glob("*.json")):
        code, out, err = call("verify", "--input", str(path))
        assert code == 0, (path, out, err)
        assert "MISMATCH" not in out


def test_verify_random_batch_is_seeded():
    a = call("verify", "--seed", "4", "--trials", "30", "--json")
    b = call("verify", "--seed", "4", "--trials", "30", "--json")
    assert a == b and a[0] == 0
    assert json.loads(a[1])["report"]["disagreements"] == 0


def test_grid_refine_flag_keeps_verdict():
    assert call("check-conforming", "--input", str(COLLAPSE), "--grid-refine", "--force-oracle")[0] == 1
    assert call("verify", "--input", str(COLLAPSE), "--grid-refine")[0] == 0


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "maxmin", "eigen", "--input", str(EXAMPLE), "--json"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0
    assert json.loads(res.stdout)["report"]["greatest"] == [5, 7, 7, 5]
