"""JSON codecs. Rationals travel as exact strings ("p/q" or an integer); players are 1-based on the wire."""
import json
import re
import sys
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from typing import Any, Dict, List, Optional, Union

from ..core.valuation import make_valuation
from ..models.errors import InvalidDivisionError, InvalidInstanceError
from ..models.types import (
    CakeInstance,
    ConnectedDivision,
    CutSet,
    DiscreteDivision,
    DiscreteInstance,
    FractionalAssignment,
    McspInstance,
    PiecewiseConstantValuation,
    SegmentGrid,
    ThreeDMInstance,
    TraceStep,
    WelfareReport,
)

RATIONAL_PATTERN = re.compile(r"^-?\d+(/\d+)?$")


def parse_rational(value: Any) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise InvalidInstanceError(f"rationals must be integers or strings, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise InvalidInstanceError(f"not a rational: {value!r}")
    raise InvalidInstanceError(f"not a rational: {value!r}")


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


def _int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidInstanceError(f"{what} must be an integer, got {value!r}")
    return value


def _field(obj: Any, key: str) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise InvalidInstanceError(f"missing field {key!r}")
    return obj[key]


def _list(value: Any, what: str) -> List[Any]:
    if not isinstance(value, list):
        raise InvalidInstanceError(f"{what} must be a list")
    return value


# ---------------------------
# Files
# ---------------------------

def load_json(path: str) -> Any:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise InvalidInstanceError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})")
    except OSError as e:
        raise InvalidInstanceError(f"{path}: {e.strerror}")


def dump_json(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False)


# ---------------------------
# Instances
# ---------------------------

def valuation_from_json(obj: Any) -> PiecewiseConstantValuation:
    segments = _list(_field(obj, "segments"), "segments")
    return make_valuation(
        (parse_rational(_field(s, "start")), parse_rational(_field(s, "end")), parse_rational(_field(s, "density")))
        for s in segments
    )


def instance_from_json(obj: Any) -> CakeInstance:
    players = _list(_field(obj, "players"), "players")
    raw = obj.get("raw", False)
    if not isinstance(raw, bool):
        raise InvalidInstanceError("raw must be a boolean")
    names = tuple(p.get("name") if isinstance(p, dict) else None for p in players)
    return CakeInstance(
        players=tuple(valuation_from_json(p) for p in players),
        names=names if any(n is not None for n in names) else None,
        raw=raw,
    )


def instance_to_json(instance: CakeInstance) -> Dict[str, Any]:
    players = []
    for i, v in enumerate(instance.players):
        entry: Dict[str, Any] = {}
        if instance.names is not None and instance.names[i] is not None:
            entry["name"] = instance.names[i]
        entry["segments"] = [
            {"start": format_rational(s.start), "end": format_rational(s.end), "density": format_rational(s.density)}
            for s in v.segments
        ]
        players.append(entry)
    out: Dict[str, Any] = {"players": players}
    if instance.raw:
        out["raw"] = True
    return out


def discrete_from_json(obj: Any) -> DiscreteInstance:
    rows = _list(_field(obj, "values"), "values")
    return DiscreteInstance(
        values=tuple(tuple(parse_rational(v) for v in _list(row, "value row")) for row in rows)
    )


def discrete_to_json(D: DiscreteInstance) -> Dict[str, Any]:
    return {"values": [[format_rational(v) for v in row] for row in D.values]}


def cutset_from_json(obj: Any) -> CutSet:
    return CutSet(
        points=tuple(parse_rational(p) for p in _list(_field(obj, "points"), "points")),
        epsilon=parse_rational(_field(obj, "epsilon")),
    )


def cutset_to_json(C: CutSet) -> Dict[str, Any]:
    return {"epsilon": format_rational(C.epsilon), "points": [format_rational(p) for p in C.points]}


def threedm_from_json(obj: Any) -> ThreeDMInstance:
    q = _int(_field(obj, "q"), "q")
    triples = []
    for t in _list(_field(obj, "triples"), "triples"):
        t = _list(t, "triple")
        if len(t) != 3:
            raise InvalidInstanceError(f"triple {t} must have three entries")
        triples.append(tuple(_int(e, "triple entry") for e in t))
    return ThreeDMInstance(q=q, triples=tuple(triples))


def threedm_to_json(inst: ThreeDMInstance) -> Dict[str, Any]:
    return {"q": inst.q, "triples": [list(t) for t in inst.triples]}


def mcsp_from_json(obj: Any) -> McspInstance:
    m = _int(_field(obj, "m"), "m")
    families = []
    for family in _list(_field(obj, "families"), "families"):
        segments = []
        for seg in _list(family, "family"):
            seg = _list(seg, "segment")
            if len(seg) != 2:
                raise InvalidInstanceError(f"segment {seg} must be [begin, end]")
            segments.append((_int(seg[0], "segment begin"), _int(seg[1], "segment end")))
        families.append(tuple(segments))
    return McspInstance(m=m, families=tuple(families))


def mcsp_to_json(inst: McspInstance) -> Dict[str, Any]:
    return {"m": inst.m, "families": [[[b, e] for b, e in f] for f in inst.families]}


# ---------------------------
# Divisions and results
# ---------------------------

def division_from_json(obj: Any) -> Union[ConnectedDivision, DiscreteDivision]:
    if isinstance(obj, dict) and "pieces" in obj:
        n = _int(obj.get("n", 0), "n")
        entries = _list(obj["pieces"], "pieces")
        players = [_int(_field(p, "player"), "player") for p in entries]
        n = max([n] + players)
        pieces: List[Optional[tuple]] = [None] * n
        violations = []
        for p, player in zip(entries, players):
            if player < 1:
                violations.append(f"player {player} out of range")
                continue
            if pieces[player - 1] is not None:
                violations.append(f"player {player} listed twice")
            pieces[player - 1] = (_int(_field(p, "s"), "s"), _int(_field(p, "t"), "t"))
        if violations:
            raise InvalidDivisionError(violations)
        return DiscreteDivision(pieces=tuple(pieces))
    cuts = tuple(parse_rational(c) for c in _list(_field(obj, "cuts"), "cuts"))
    order = tuple(_int(p, "order entry") - 1 for p in _list(_field(obj, "order"), "order"))
    return ConnectedDivision(cuts=cuts, order=order)


def division_to_json(d: Union[ConnectedDivision, DiscreteDivision]) -> Dict[str, Any]:
    if isinstance(d, DiscreteDivision):
        return {
            "n": d.n,
            "pieces": [
                {"player": i + 1, "s": p[0], "t": p[1]} for i, p in enumerate(d.pieces) if p is not None
            ],
        }
    return {"cuts": [format_rational(c) for c in d.cuts], "order": [p + 1 for p in d.order]}


def report_to_json(report: WelfareReport) -> Dict[str, Any]:
    return {
        "utilities": [format_rational(u) for u in report.utilities],
        "utilitarian": format_rational(report.utilitarian),
        "egalitarian": format_rational(report.egalitarian),
    }


def report_from_json(obj: Any) -> WelfareReport:
    utilities = _list(_field(obj, "utilities"), "utilities")
    report = WelfareReport.from_utilities(parse_rational(u) for u in utilities)
    totals = (parse_rational(_field(obj, "utilitarian")), parse_rational(_field(obj, "egalitarian")))
    if totals != (report.utilitarian, report.egalitarian):
        raise InvalidInstanceError("report totals disagree with its utilities")
    return report


def assignment_to_json(assignment: FractionalAssignment, t: Optional[Fraction] = None) -> Dict[str, Any]:
    out: Dict[str, Any] = {}
    if t is not None:
        out["t"] = format_rational(t)
    out["x"] = [
        {
            "player": i + 1,
            "interval": [format_rational(a), format_rational(b)],
            "fraction": format_rational(x),
        }
        for i, row in enumerate(assignment.fractions)
        for (a, b), x in zip(assignment.grid.intervals, row)
        if x != 0
    ]
    return out


def assignment_from_json(obj: Any, grid: SegmentGrid) -> FractionalAssignment:
    """Inverse of assignment_to_json against the grid it was solved on; omitted entries are 0."""
    index = {interval: I for I, interval in enumerate(grid.intervals)}
    rows = [[Fraction(0)] * len(index) for _ in grid.densities]
    for entry in _list(_field(obj, "x"), "x"):
        player = _int(_field(entry, "player"), "player")
        interval = tuple(parse_rational(p) for p in _list(_field(entry, "interval"), "interval"))
        if not 1 <= player <= len(rows) or interval not in index:
            raise InvalidInstanceError(f"assignment entry {entry!r} does not match the grid")
        rows[player - 1][index[interval]] = parse_rational(_field(entry, "fraction"))
    return FractionalAssignment(grid=grid, fractions=tuple(tuple(r) for r in rows))


def trace_step_to_json(step: TraceStep) -> Dict[str, Any]:
    return {
        "t": step.t,
        "player": step.player + 1,
        "start": step.start,
        "own_cost": format_rational(step.own_cost),
        "others_cost": format_rational(step.others_cost),
        "owned_sum": format_rational(step.owned_sum),
        "ever_owned_sum": format_rational(step.ever_owned_sum),
    }


# ---------------------------
# Decimal display
# ---------------------------

def to_decimal(value: Fraction, places: int) -> str:
    with localcontext() as ctx:
        ctx.prec = max(28, places + 20)
        exact = Decimal(value.numerator) / Decimal(value.denominator)
        return str(exact.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN))


def decimal_mirror(obj: Any, places: int) -> Any:
    """Same shape as obj with every rational string rounded half-even to `places` digits."""
    if isinstance(obj, dict):
        return {k: decimal_mirror(v, places) for k, v in obj.items()}
    if isinstance(obj, list):
        return [decimal_mirror(v, places) for v in obj]
    if isinstance(obj, str) and RATIONAL_PATTERN.match(obj):
        return to_decimal(Fraction(obj), places)
    return obj
