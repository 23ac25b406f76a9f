import json

import pytest

from odakit.cli import main
from odakit.relations import full_algebra, one_element_algebra


def run(capsys, *argv):
    code = main(["--json", *argv])
    return code, json.loads(capsys.readouterr().out)


@pytest.fixture
def files(tmp_path):
    def write(name, data):
        p = tmp_path / name
        p.write_text(json.dumps(data))
        return str(p)

    A = full_algebra(2)
    table = [list(r) for r in A.comp_table]
    table[3][5] = 0
    return {
        "b1": write("b1.json", full_algebra(1).to_json()),
        "b2": write("b2.json", A.to_json()),
        "one": write("one.json", one_element_algebra().to_json()),
        "bad": write("bad.json", A.copy_with(comp_table=table).to_json()),
        "d2": write("d2.json", {"base": 4, "generators": ["ab cd", "ad cb"]}),
        "d6": write("d6.json", [[[0, 0]], [[0, 1]]]),
        "garbage": str(tmp_path / "g.json"),
    }


def test_check_axioms_codes(capsys, files):
    assert run(capsys, "check-axioms", "--input", files["b2"])[0] == 0
    assert run(capsys, "check-axioms", "--input", files["one"])[0] == 0
    code, rep = run(capsys, "check-axioms", "--input", files["bad"])
    assert code == 1
    assert rep["verdicts"]["isotone-comp"] == "fail" and rep["witnesses"]["isotone-comp"]


def test_input_errors(capsys, files, tmp_path):
    assert run(capsys, "check-axioms", "--input", str(tmp_path / "missing.json"))[0] == 3
    (tmp_path / "g.json").write_text("{\n  oops")
    code, rep = run(capsys, "check-axioms", "--input", files["garbage"])
    assert code == 3 and "line 2" in rep["error"]
    assert run(capsys, "complete", "--input", files["b1"], "--upset", "7")[0] == 3


def test_complete_traces(capsys, files):
    code, rep = run(capsys, "complete", "--generators", files["d2"])
    assert code == 0 and rep["details"]["iterations"] == 0 and rep["details"]["unchanged"]
    code, rep = run(capsys, "complete", "--base", "2", "--generators", files["d6"])
    assert rep["details"]["is_zero_up"] and rep["details"]["closure"] == [[]]
    assert rep["details"]["iterations"] >= 1
    code, rep = run(capsys, "complete", "--input", files["b1"], "--upset", "1")
    assert rep["details"]["unchanged"]


def test_examples_all(capsys):
    code, rep = run(capsys, "examples")
    assert code == 0 and set(rep["verdicts"]) == {"d2", "d6", "assoc", "product"}
    code, rep = run(capsys, "examples", "--which", "product")
    assert rep["details"]["product"]["sets"]["removed"] == [["q", "top"], ["top", "q"]]


def test_preserve_deterministic(capsys):
    argv = ["preserve", "--seed", "5", "--trials", "30"]
    code, first = run(capsys, *argv)
    main(["--json", *argv])
    assert capsys.readouterr().out == json.dumps(first, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    assert code == 0


def test_preserve_general_terms_fail(capsys):
    code, rep = run(capsys, "preserve", "--terms", "general", "--trials", "40")
    assert code == 1 and rep["witnesses"]["preservation"]


def test_represent(capsys, files, monkeypatch):
    code, rep = run(capsys, "represent", "--input", files["b1"], "--verify")
    assert code == 0 and rep["details"]["base_size"] == 1
    code, rep = run(capsys, "represent", "--input", files["one"], "--verify")
    assert code == 0 and rep["details"]["base"] == []
    monkeypatch.setenv("ODAKIT_GUARD", "16")
    assert run(capsys, "represent", "--input", files["b2"])[0] == 2


def test_correspondence_and_star(capsys):
    assert run(capsys, "correspondence-check", "--trials", "10")[0] == 0
    code, rep = run(capsys, "star-explore", "--base", "1")
    assert code == 0 and rep["details"]["outcome"] == "none found"


def test_text_mode(capsys):
    assert main(["examples", "--which", "d6"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "time:" in out
