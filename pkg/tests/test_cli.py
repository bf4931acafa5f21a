import json
import subprocess
import sys
from pathlib import Path

import pytest

from culab import EkModel, FiniteModel, NbarModel, product, sierpinski, to_table
from culab import cli
from culab.errors import ParseError, ValidationError
from culab.harness import Check, HarnessReport
from culab.search import canonical_form
from culab.serialize import dump_model, dumps, parse_model, parse_model_text

from conftest import zero_inf

MODELS = Path(__file__).resolve().parent.parent / "models"


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, doc, name="m.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return p


def test_parse_elementary_file():
    m = parse_model(MODELS / "e2.json")
    assert len(m.elements()) == 4
    t = parse_model(MODELS / "e2_table.json")
    assert t.le == to_table(EkModel(2)).le and t.table == to_table(EkModel(2)).table


def test_parse_errors_name_the_row(tmp_path):
    doc = {"kind": "finite-table", "size": 2, "leq": [[1, 1], [0, 1]], "add": [[0, 1], [1, 1, 1]]}
    with pytest.raises(ParseError, match="add row 1 has 3 entries"):
        parse_model(write(tmp_path, doc))
    with pytest.raises(ParseError, match="line 1"):
        parse_model_text("{", "x")
    with pytest.raises(ParseError, match="unknown kind"):
        parse_model_text('{"kind": "banach"}')


def test_zero_not_least(tmp_path):
    doc = {"kind": "finite-table", "size": 2, "leq": [[1, 0], [1, 1]], "add": [[0, 1], [1, 1]]}
    with pytest.raises(ValidationError) as exc:
        parse_model(write(tmp_path, doc))
    assert any("zero-least" in v for v in exc.value.violations)


def test_bad_scale(tmp_path):
    doc = dump_model(zero_inf())
    doc["scale"] = [0]
    with pytest.raises(ValidationError):
        parse_model(write(tmp_path, doc))


@pytest.mark.parametrize(
    "model", [zero_inf(), EkModel(3), NbarModel(), sierpinski(), product(NbarModel(), EkModel(1))]
)
def test_round_trip(model):
    doc = dump_model(model)
    again = parse_model_text(dumps(doc))
    assert dump_model(again) == doc
    for x in model.candidates(2):
        for y in model.candidates(2):
            assert again.leq(x, y) == model.leq(x, y)
            assert again.add(x, y) == model.add(x, y)


def test_round_trip_keeps_scale(tmp_path):
    m = FiniteModel(zero_inf().le, zero_inf().table, ["0", "inf"])
    doc = dump_model(m)
    doc["scale"] = [0, 1]
    again = parse_model(write(tmp_path, doc))
    assert dump_model(again) == doc


def test_classify_elementary(capsys):
    code, out, _ = run(capsys, "classify", MODELS / "e2.json")
    assert code == 0
    block = out.split("\n 1\n")[1].split("\n 2\n")[0]
    assert "functionally_soft: Proven" in block and "strongly_soft: Refuted" in block
    code, out, _ = run(capsys, "classify", "--json", MODELS / "e2.json")
    doc = json.loads(out)
    flags = next(e for e in doc["elements"] if e["element"] == "1")
    assert flags["functionally_soft"]["status"] == "Proven"
    assert flags["strongly_soft"]["status"] == "Refuted"


def test_output_is_byte_stable(capsys):
    for path in sorted(MODELS.glob("*.json")):
        if path.name.startswith("search"):
            continue
        first = run(capsys, "classify", "--json", path)
        second = run(capsys, "classify", "--json", path)
        assert first == second


def test_check_axioms(capsys):
    code, out, _ = run(capsys, "check-axioms", MODELS / "sierpinski.json")
    assert code == 0
    assert "O5: Refuted" in out
    code, out, _ = run(capsys, "check-axioms", "--json", MODELS / "zero_inf.json")
    assert {v["status"] for v in json.loads(out).values()} == {"Proven"}


def test_quotients(capsys):
    code, out, _ = run(capsys, "quotients", "--json", MODELS / "e2.json")
    assert code == 0
    rows = json.loads(out)["quotients"]
    assert len(rows) == 2 and rows[-1]["elements"] == ["0"]


def test_verify_exit_codes(capsys, monkeypatch):
    code, out, _ = run(capsys, "verify", MODELS / "zero_inf.json")
    assert code == 0 and out.endswith("0 violations\n")
    bad = HarnessReport("finite-table", [Check("diagram", 1, ["s => w fails at 1"])])
    monkeypatch.setattr(cli, "verify", lambda model, budget=None: bad)
    code, out, _ = run(capsys, "verify", MODELS / "zero_inf.json")
    assert code == 3 and "FAIL diagram" in out


def test_input_errors_exit_2(capsys, tmp_path):
    code, _, err = run(capsys, "classify", tmp_path / "missing.json")
    assert code == 2 and "error" in err
    doc = {"kind": "finite-table", "size": 2, "leq": [[1, 0], [1, 1]], "add": [[0, 1], [1, 1]]}
    code, _, err = run(capsys, "classify", write(tmp_path, doc))
    assert code == 2 and "error: invalid model" in err and "zero-least" in err
    code, _, err = run(capsys, "search", "--max-size", "3", "--target", "nonsense(")
    assert code == 2


def test_usage_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        cli.main(["classify", "--budget-n", "0", str(MODELS / "e2.json")])
    assert exc.value.code == 1


def test_search(capsys):
    code, out, _ = run(capsys, "search", "--max-size", "2", "--json")
    assert code == 0 and json.loads(out)["count"] == 1
    code, out, _ = run(capsys, "search", MODELS / "search_e2.json", "--json")
    doc = json.loads(out)
    le, add = ([list(r) for r in part] for part in canonical_form(to_table(EkModel(2))))
    assert [le, add] in [[r["leq"], r["add"]] for r in doc["results"]]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "culab", "check-axioms", str(MODELS / "e2.json")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines() == ["O5: Proven", "O6: Proven", "O7: Proven"]
