import json
import shutil

import jsonschema
import pytest
from conftest import DATA

from kothe.cli import main
from kothe.report import loads, schema


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, tmp_path, *args):
    path = tmp_path / "r.json"
    code, out, err = run(capsys, *args, "--json", str(path))
    assert code == 0, err
    text = path.read_text()
    doc = json.loads(text)
    jsonschema.validate(doc, schema())
    return doc, text


def test_analyze_worked_example(capsys, tmp_path):
    doc, _ = run_json(capsys, tmp_path, "analyze", str(DATA / "d4out.quiver"), "--k", "1")
    v = doc["verdicts"][0]
    assert v["is_kothe"] is False and v["is_k_cyclic"] is False
    assert v["witnesses"][0] == {"criterion": "kothe", "indecomposable": "M12", "class": "1", "value": 2, "bound": 1}
    assert v["kothe_matrix_degree"] == {"minimal": 2, "sum_q": 5}
    assert v["morita_uniform_k"] == {"sharp_max_q": 2, "max_p_if_kothe": None}
    assert doc["seed"] == 0xC0FFEE and doc["input"]["field"] == "GF(5)"


def test_analyze_a2_is_kothe(capsys, tmp_path):
    doc, _ = run_json(capsys, tmp_path, "analyze", str(DATA / "a2.quiver"))
    assert doc["verdicts"][0]["is_kothe"] is True


def test_seed_always_printed(capsys):
    code, out, _ = run(capsys, "matrix-degree", str(DATA / "a2.quiver"), "--seed", "7")
    assert code == 0 and "seed=0x7" in out and "minimal degree 1; sum of q 2" in out


def test_indec_listing(capsys, tmp_path):
    doc, _ = run_json(capsys, tmp_path, "indec", str(DATA / "a2.quiver"))
    assert len(doc["indecomposables"]) == 3
    doc, _ = run_json(capsys, tmp_path, "indec", str(DATA / "d4out.quiver"))
    flagged = [x for x in doc["indecomposables"] if x["note"]]
    assert len(doc["indecomposables"]) == 12 and len(flagged) == 1 and flagged[0]["c_top"][0] == 2


def test_indec_kronecker_fails(capsys):
    code, _, err = run(capsys, "indec", str(DATA / "kronecker.quiver"))
    assert code == 2 and "representation-infinite" in err


def test_analyze_kronecker_partial(capsys, tmp_path):
    code, _, _ = run(capsys, "analyze", str(DATA / "kronecker.quiver"))
    assert code == 2
    doc, _ = run_json(capsys, tmp_path, "analyze", str(DATA / "kronecker.quiver"), "--allow-partial")
    assert doc["verdicts"][0]["profile"]["representation_finite"] is False


def test_malformed_file_reports_position(capsys, tmp_path):
    bad = tmp_path / "bad.quiver"
    bad.write_text("quiver Q {\n  vertices: 1 2;\n  arrows:\n    a: 1 -> 9;\n}\n")
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 2 and f"{bad}:4:13:" in err


def test_missing_file_is_input_error(capsys, tmp_path):
    code, _, _ = run(capsys, "analyze", str(tmp_path / "nope.quiver"))
    assert code == 2


def test_bad_field_is_input_error(capsys):
    code, _, err = run(capsys, "analyze", str(DATA / "a2.quiver"), "--field", "GF(4)")
    assert code == 2 and "prime" in err


def test_algebra_files(capsys, tmp_path):
    doc, _ = run_json(capsys, tmp_path, "analyze", str(DATA / "k_x3.algebra.json"))
    assert doc["verdicts"][0]["is_kothe"] is True and doc["input"]["kind"] == "algebra"
    code, _, err = run(capsys, "analyze", str(DATA / "kxk.algebra.json"))
    assert code == 2 and "--allow-partial" in err
    doc, _ = run_json(capsys, tmp_path, "analyze", str(DATA / "kxk.algebra.json"), "--allow-partial")
    assert doc["verdicts"][0]["profile"]["p"] == [1, 1] and doc["verdicts"][0]["is_kothe"] is None
    code, _, err = run(capsys, "analyze", str(DATA / "k_x3.algebra.json"), "--field", "GF(3)")
    assert code == 2 and "conflicts" in err


def test_decompose(capsys, tmp_path):
    doc, first = run_json(capsys, tmp_path, "decompose", str(DATA / "a2_p1_s1.rep"))
    assert sorted(tuple(s["dim"]) for s in doc["summands"]) == [(1, 0), (1, 1)]
    _, second = run_json(capsys, tmp_path, "decompose", str(DATA / "a2_p1_s1.rep"))
    assert first == second
    doc, _ = run_json(capsys, tmp_path, "decompose", str(DATA / "d4out.quiver"))
    assert doc["summands"] == [{"dim": [2, 1, 1, 1], "multiplicity": 1, "c_top": [2, 0, 0, 0]}]


def test_verify_example(capsys, tmp_path):
    doc, _ = run_json(capsys, tmp_path, "verify-example")
    assert doc["checks"] and all(c["passed"] for c in doc["checks"])
    assert len(doc["verdicts"]) == 4
    for f in ("GF(2)", "QQ"):
        code, out, _ = run(capsys, "verify-example", "--field", f)
        assert code == 0 and "FAIL" not in out


def test_verify_detects_corrupted_data(capsys, tmp_path):
    copy = tmp_path / "data"
    shutil.copytree(DATA, copy)
    (copy / "d4out.quiver").write_text((copy / "d4out.quiver").read_text().replace("[[1,1]]", "[[1,0]]"))
    code, _, err = run(capsys, "verify-example", "--data-dir", str(copy))
    assert code == 2 and "integrity" in err


def test_verification_failure_exit_code(capsys, tmp_path, monkeypatch):
    import kothe.cli as cli
    from kothe.report import Check

    original = cli.example_checks

    def broken(raw, field, seed):
        checks, v = original(raw, field, seed)
        return checks + [Check("forced", "test", False)], v

    monkeypatch.setattr(cli, "example_checks", broken)
    code, _, err = run(capsys, "verify-example", "--field", "GF(3)")
    assert code == 3 and "verification failed" in err


def test_json_to_stdout_keeps_stdout_clean(capsys):
    code, out, err = run(capsys, "analyze", str(DATA / "a2.quiver"), "--json", "-")
    assert code == 0 and json.loads(out)["schema"] == "report-v1" and "seed=" in err


@pytest.mark.parametrize("mode,colored", [("always", True), ("never", False), ("auto", False)])
def test_color_modes(capsys, monkeypatch, mode, colored):
    monkeypatch.setenv("KOTHE_COLOR", mode)
    _, out, _ = run(capsys, "analyze", str(DATA / "a2.quiver"))
    assert ("\033[" in out) == colored


def test_timing_is_opt_in(capsys, tmp_path):
    doc, _ = run_json(capsys, tmp_path, "analyze", str(DATA / "a2.quiver"))
    assert "timing" not in doc
    doc, text = run_json(capsys, tmp_path, "analyze", str(DATA / "a2.quiver"), "--timing")
    assert doc["timing"]["seconds"] >= 0 and loads(text).timing is not None


def test_report_roundtrip_all_commands(capsys, tmp_path):
    from kothe.report import dumps

    for args in (["analyze", str(DATA / "d4out.quiver"), "--k", "2"], ["indec", str(DATA / "d4in.quiver")],
                 ["decompose", str(DATA / "a2_p1_s1.rep")], ["verify-example", "--field", "GF(5)"]):
        _, text = run_json(capsys, tmp_path, *args)
        r = loads(text)
        assert dumps(r) == text and loads(dumps(r)) == r


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["analyze", str(DATA / "a2.quiver"), "--k", "0"])
    assert exc.value.code == 2
