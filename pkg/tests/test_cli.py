import json
from fractions import Fraction

import pytest

from elliptic_lc.cli import MAX_N, run_command


def run(capsys, *argv):
    code = run_command(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, text, name="cfg.yaml"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


RATIONAL = """genus: 0
deg_L: 1
marks:
  - {type: I0*, weight: "2/5"}
  - {type: I0*, weight: 1}
generic_marks: ["2/5"]
"""


def test_classify_examples(capsys):
    assert run(capsys, "fiber", "classify", "--type", "II", "--weight", "9/10")[1].strip() == "Intermediate; singularities: A1*, A2*"
    assert run(capsys, "fiber", "classify", "--type", "I0", "--weight", "0")[1].strip() == "Weierstrass"


def test_classify_notes_published_row(capsys):
    code, out, _ = run(capsys, "fiber", "classify", "--type", "I4", "--weight", "1/2")
    assert code == 0 and "published row reads A4" in out


def test_json_round_trip(capsys):
    code, out, _ = run(capsys, "fiber", "mmp", "--type", "III", "--weight", "9/10", "--trace", "--json")
    data = json.loads(out)
    assert code == 0 and data["form"] == "Intermediate"
    assert Fraction(data["trace"]["final_degrees"]["E"]) == Fraction(3, 20)
    assert Fraction(data["trace"]["steps"][0]["self_intersections"]["E"]) == Fraction(-1, 4)


@pytest.mark.parametrize("argv", [
    ["fiber", "classify", "--type", "II", "--weight", "0.9"],
    ["fiber", "classify", "--type", "V", "--weight", "1"],
    ["fiber", "classify", "--type", "II", "--weight", "3/2"],
    ["fiber", "mmp", "--type", f"I{MAX_N + 1}", "--weight", "1"],
    ["fiber"],
    ["nonsense"],
])
def test_invalid_input_exits_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1 and err.startswith("error:")


def test_surface_commands(capsys, tmp_path):
    cfg = write(tmp_path, RATIONAL)
    code, out, _ = run(capsys, "surface", "model", "--config", cfg)
    assert code == 0 and "model: pseudoelliptic" in out and "t = 3/5" in out
    code, out, _ = run(capsys, "surface", "canonical", "--config", cfg)
    assert out.strip() == "K = -G"
    cfg = write(tmp_path, "genus: 0\ndeg_L: 1\nmarks:\n  - {type: II, weight: 1}\n", "ii.yaml")
    code, out, _ = run(capsys, "surface", "canonical", "--config", cfg, "--json")
    assert json.loads(out) == {"canonical_class": {"G": "-1", "F0.E": "4"}}


def test_walls_command(capsys, tmp_path):
    cfg = write(tmp_path, RATIONAL)
    code, out, _ = run(capsys, "walls", "--config", cfg, "--path", "a,1,a", "--json")
    data = json.loads(out)
    assert [Fraction(w["value"]) for w in data["walls"]] == [Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(1)]
    code, out, _ = run(capsys, "walls", "--config", cfg)
    assert code == 0 and "weight cube" in out
    code, _, err = run(capsys, "walls", "--config", cfg, "--path", "a,a")
    assert code == 1 and "weights" in err


def test_path_from_config(capsys, tmp_path):
    cfg = write(tmp_path, RATIONAL + 'path: "a,1,a"\n')
    code, out, _ = run(capsys, "walls", "--config", cfg)
    assert "(1/4, 1/3]: curve" in out


@pytest.mark.parametrize("text,needle", [
    (RATIONAL.replace('"2/5"]', "0.4]"), "generic_marks[0] (line 6)"),
    (RATIONAL + "colour: red\n", "colour (line 7): unknown key"),
    ("genus: 0\nmarks: []\n", "deg_L"),
    ("genus: 0\ndeg_L: 1\nmarks:\n  - {type: II}\n", "marks[0] (line 4)"),
    ("genus: [\n", "not valid YAML"),
    ("- 1\n", "top level"),
])
def test_config_diagnostics(capsys, tmp_path, text, needle):
    code, _, err = run(capsys, "surface", "model", "--config", write(tmp_path, text))
    assert code == 1 and needle in err


def test_missing_config(capsys, tmp_path):
    code, _, err = run(capsys, "surface", "model", "--config", str(tmp_path / "none.yaml"))
    assert code == 1 and "cannot read" in err


def test_example(capsys):
    code, out, _ = run(capsys, "example", "rational-i0star")
    assert code == 0
    assert "t = 4a - 1" in out and "(3*a - 1)*(5*a - 1)/2" in out
    assert "1/4:" in out and "1/3:" in out and "1/2:" in out and "\n  1:" in out


def test_internal_errors_exit_2(capsys, monkeypatch):
    from elliptic_lc import cli
    from elliptic_lc.mmp import InternalError

    def boom(*a, **k):
        raise InternalError("invariant broken")
    monkeypatch.setattr(cli, "run_relative_mmp", boom)
    code, _, err = run(capsys, "fiber", "mmp", "--type", "II", "--weight", "1")
    assert code == 2 and "internal error" in err


def test_selftest_exit_status(capsys, monkeypatch):
    from elliptic_lc import selftest
    monkeypatch.setattr(selftest, "CRITERIA", (selftest.Criterion(1, "always fails", lambda: (False, ["x"])),))
    code, out, _ = run(capsys, "selftest")
    assert code == 2 and out.startswith("FAIL criterion 1")
    monkeypatch.setattr(selftest, "CRITERIA", (selftest.Criterion(1, "passes", lambda: (True, [])),))
    assert run(capsys, "selftest")[0] == 0
