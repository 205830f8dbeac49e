import io
import json
from fractions import Fraction as F

import pytest

from src.core.welfare import welfare
from src.engine.nonconnected import egal_nonconnected
from src.formats.json_io import (
    assignment_from_json,
    assignment_to_json,
    cutset_from_json,
    decimal_mirror,
    division_from_json,
    division_to_json,
    dump_json,
    instance_from_json,
    instance_to_json,
    mcsp_from_json,
    mcsp_to_json,
    parse_rational,
    report_from_json,
    report_to_json,
    threedm_from_json,
    threedm_to_json,
    to_decimal,
)
from src.main import run
from src.models.errors import InvalidInstanceError
from src.models.types import ConnectedDivision, CutSet, DiscreteDivision, McspInstance, ThreeDMInstance

HALF = {
    "players": [
        {"name": "even", "segments": [{"start": 0, "end": 1, "density": 1}]},
        {"segments": [{"start": 0, "end": "1/2", "density": 2}, {"start": "1/2", "end": 1, "density": 0}]},
    ]
}
DIAGONAL = {"values": [["3", "0"], ["0", "3"]]}


def write(tmp_path, name, obj) -> str:
    path = tmp_path / name
    path.write_text(json.dumps(obj), encoding="utf-8")
    return str(path)


def lines(capsys):
    return [json.loads(line) for line in capsys.readouterr().out.splitlines()]


def test_parse_rational():
    assert parse_rational(3) == 3
    assert parse_rational("2/6") == F(1, 3)
    assert parse_rational("0.25") == F(1, 4)
    for bad in (0.5, True, "x", "1/0", None):
        with pytest.raises(InvalidInstanceError):
            parse_rational(bad)


def test_instance_json_reparses_equal():
    instance = instance_from_json(HALF)
    assert instance.names == ("even", None)
    assert instance_from_json(json.loads(json.dumps(instance_to_json(instance)))) == instance


def test_division_json():
    d = ConnectedDivision(cuts=(F(1, 3),), order=(1, 0))
    assert division_to_json(d) == {"cuts": ["1/3"], "order": [2, 1]}
    assert division_from_json(division_to_json(d)) == d
    discrete = DiscreteDivision(pieces=(None, (1, 2), None))
    assert division_from_json(division_to_json(discrete)) == discrete


def test_decimal_rounds_half_even():
    assert to_decimal(F(1, 8), 2) == "0.12"
    assert to_decimal(F(3, 8), 2) == "0.38"
    assert decimal_mirror({"a": ["2/3", 7], "name": "p1"}, 3) == {"a": ["0.667", 7], "name": "p1"}


def test_util_fpt(tmp_path, capsys):
    assert run(["util-fpt", "--eps", "1/8", write(tmp_path, "half.json", HALF)]) == 0
    (out,) = lines(capsys)
    assert F(out["report"]["utilitarian"]) >= F(6, 5)


def test_validate_unsorted_cuts(tmp_path, capsys):
    path = write(tmp_path, "d.json", {"cuts": ["3/4", "1/4"], "order": [1, 2, 3]})
    assert run(["validate", path]) == 2
    (out,) = lines(capsys)
    assert out["error"]["type"] == "InvalidDivisionError"
    assert "cuts unsorted" in out["error"]["violations"]


def test_validate_against_instance(tmp_path, capsys):
    division = write(tmp_path, "d.json", {"cuts": ["1/2"], "order": [2, 1]})
    assert run(["validate", division, "--instance", write(tmp_path, "half.json", HALF)]) == 0
    (out,) = lines(capsys)
    assert out["report"]["utilitarian"] == "3/2"


def test_validate_rejects_mismatched_division_kinds(tmp_path, capsys):
    cuts = write(tmp_path, "cuts.json", {"cuts": ["1/2"], "order": [1, 2]})
    assert run(["validate", cuts, "--instance", write(tmp_path, "diag.json", DIAGONAL)]) == 2
    assert lines(capsys)[0]["error"]["type"] == "InvalidInputError"
    items = write(tmp_path, "items.json", {"pieces": [{"player": 1, "s": 1, "t": 2}]})
    assert run(["validate", items, "--instance", write(tmp_path, "half.json", HALF)]) == 2
    assert lines(capsys)[0]["error"]["type"] == "InvalidInputError"


def test_validate_pads_empty_trailing_players(tmp_path, capsys):
    items = write(tmp_path, "items.json", {"pieces": [{"player": 1, "s": 1, "t": 2}]})
    assert run(["validate", items, "--instance", write(tmp_path, "diag.json", DIAGONAL)]) == 0
    (out,) = lines(capsys)
    assert out["report"]["utilities"] == ["3", "0"]
    extra = write(tmp_path, "extra.json", {"pieces": [{"player": 3, "s": 1, "t": 1}]})
    assert run(["validate", extra, "--instance", write(tmp_path, "diag.json", DIAGONAL)]) == 2
    assert lines(capsys)[0]["error"]["type"] == "InvalidDivisionError"


def test_gen_random_is_byte_identical(capsys):
    assert run(["gen", "random", "--seed", "7"]) == 0
    first = capsys.readouterr().out
    assert run(["gen", "random", "--seed", "7"]) == 0
    assert capsys.readouterr().out == first


def test_brute_and_egal_exact(tmp_path, capsys):
    path = write(tmp_path, "diag.json", DIAGONAL)
    assert run(["brute", "--objective", "util", path]) == 0
    assert lines(capsys)[0]["report"]["utilitarian"] == "6"
    assert run(["egal-exact", path]) == 0
    assert lines(capsys)[0]["optimum"] == "3"


def test_trace_emits_json_lines(tmp_path, capsys):
    assert run(["util-approx", "--eps", "1/4", "--trace", write(tmp_path, "half.json", HALF)]) == 0
    out = lines(capsys)
    assert all("trace" in line for line in out[:-1])
    assert "result" in out[-1]


def test_decimal_flag(tmp_path, capsys):
    assert run(["--decimal", "3", "nc-egal", write(tmp_path, "half.json", HALF)]) == 0
    (out,) = lines(capsys)
    assert out["t"] == "2/3"
    assert out["decimal"]["t"] == "0.667"


def test_stdin_input(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(HALF)))
    assert run(["nc-util", "-"]) == 0
    assert lines(capsys)[0]["report"]["utilitarian"] == "3/2"


def test_float_input_is_rejected(tmp_path, capsys):
    bad = {"players": [{"segments": [{"start": 0, "end": 1, "density": 1.0}]}]}
    assert run(["nc-util", write(tmp_path, "bad.json", bad)]) == 2
    assert lines(capsys)[0]["error"]["type"] == "InvalidInstanceError"


def test_guard_exit_code(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("FAIRSLICE_MAX_PLAYERS", "1")
    assert run(["egal-exact", write(tmp_path, "diag.json", DIAGONAL)]) == 3
    assert lines(capsys)[0]["error"]["type"] == "ResourceGuardExceeded"


def test_gen_reductions(tmp_path, capsys):
    assert run(["gen", "3dm", write(tmp_path, "3dm.json", {"q": 1, "triples": [[1, 1, 1]]})]) == 0
    out = lines(capsys)[0]
    assert out["B"] == "1"
    assert len(out["instance"]["players"]) == 4
    inst = McspInstance(m=3, families=(((1, 1), (3, 3)), ((2, 2), (3, 3))))
    assert mcsp_from_json(mcsp_to_json(inst)) == inst
    assert run(["gen", "mcsp", write(tmp_path, "mcsp.json", mcsp_to_json(inst))]) == 0
    assert lines(capsys)[0]["B"] == "10/3"


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    assert run(["--output", str(target), "discretize", "--eps", "1/2", write(tmp_path, "half.json", HALF)]) == 0
    assert capsys.readouterr().out == ""
    result = json.loads(target.read_text(encoding="utf-8"))
    assert result["cutset"]["points"] == ["0", "1/4", "1/2", "1"]
    assert cutset_from_json(result["cutset"]) == CutSet(points=(F(0), F(1, 4), F(1, 2), F(1)), epsilon=F(1, 2))


def test_results_reparse_equal(half_instance):
    report = welfare(half_instance, ConnectedDivision(cuts=(F(1, 3),), order=(1, 0)))
    assert report_from_json(json.loads(dump_json(report_to_json(report)))) == report
    t, assignment = egal_nonconnected(half_instance)
    emitted = json.loads(dump_json(assignment_to_json(assignment, t)))
    assert parse_rational(emitted["t"]) == t
    assert assignment_from_json(emitted, assignment.grid) == assignment
    triples = ThreeDMInstance(q=2, triples=((1, 1, 1), (2, 2, 2), (1, 2, 1)))
    assert threedm_from_json(threedm_to_json(triples)) == triples


def test_report_with_wrong_totals_is_rejected():
    with pytest.raises(InvalidInstanceError):
        report_from_json({"utilities": ["1", "1/2"], "utilitarian": "2", "egalitarian": "1/2"})
