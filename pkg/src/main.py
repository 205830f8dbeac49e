import argparse
import sys
from typing import Any, Dict, List, Optional

from src.config import Settings, load_settings
from src.core.valuation import normalize_instance
from src.core.welfare import validate_division, welfare, welfare_discrete
from src.engine.approx import approx_util, approx_util_discrete
from src.engine.discretize import lift_division, run_discretization, to_discrete
from src.engine.fpt import egal_exact_discrete, fpt_egal, fpt_util
from src.engine.nonconnected import egal_nonconnected, util_nonconnected
from src.engine.oracle import brute_force
from src.formats.json_io import (
    assignment_to_json,
    cutset_to_json,
    decimal_mirror,
    discrete_from_json,
    discrete_to_json,
    division_from_json,
    division_to_json,
    dump_json,
    format_rational,
    instance_from_json,
    instance_to_json,
    load_json,
    mcsp_from_json,
    parse_rational,
    report_to_json,
    threedm_from_json,
    trace_step_to_json,
)
from src.instances.random_gen import gen_random
from src.instances.reductions import from_3dm, from_mcsp
from src.models.errors import FairSliceError, InvalidDivisionError, InvalidInputError, ResourceGuardExceeded
from src.models.types import CakeInstance, ConnectedDivision, DiscreteDivision
from src.utils.logging import get_logger, setup_logging


logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVALID = 2
EXIT_GUARD = 3


def build_parser(settings: Settings) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fairslice", description="Welfare-maximizing cake division")
    parser.add_argument("--output", help="write the result here instead of standard output")
    parser.add_argument(
        "--decimal",
        type=int,
        default=settings.decimal_places,
        metavar="K",
        help="add a 'decimal' mirror rounded to K places",
    )
    parser.add_argument("--log-level", default=settings.log_level)
    sub = parser.add_subparsers(dest="verb", required=True)

    for verb, help_text in (
        ("discretize", "cut set and discrete instance for eps"),
        ("util-approx", "8-approximation of the utilitarian optimum"),
        ("util-fpt", "(1+eps)-approximation of the utilitarian optimum"),
        ("egal-fpt", "egalitarian welfare within eps/n of optimal"),
    ):
        p = sub.add_parser(verb, help=help_text)
        p.add_argument("--eps", required=True, help="rational, e.g. 1/8")
        p.add_argument("input", help="instance JSON, '-' for standard input")
        if verb == "util-approx":
            p.add_argument("--trace", action="store_true", help="emit one JSON line per grant")

    p = sub.add_parser("egal-exact", help="exact discrete egalitarian optimum")
    p.add_argument("input")
    p = sub.add_parser("nc-util", help="non-connected utilitarian optimum")
    p.add_argument("input")
    p = sub.add_parser("nc-egal", help="non-connected egalitarian optimum")
    p.add_argument("input")
    p = sub.add_parser("brute", help="brute-force optimum of a discrete instance")
    p.add_argument("--objective", choices=("util", "egal"), required=True)
    p.add_argument("input")

    gen = sub.add_parser("gen", help="generate instances")
    kinds = gen.add_subparsers(dest="kind", required=True)
    p = kinds.add_parser("random")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--segs", type=int, default=3)
    p.add_argument("--uniform", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    for kind in ("3dm", "mcsp"):
        p = kinds.add_parser(kind)
        p.add_argument("input")

    p = sub.add_parser("validate", help="check a division, optionally against an instance")
    p.add_argument("input", help="division JSON")
    p.add_argument("--instance", help="instance JSON (continuous or discrete)")
    return parser


def _load_instance(path: str) -> CakeInstance:
    return normalize_instance(instance_from_json(load_json(path)))


def _with_report(division, report) -> Dict[str, Any]:
    return {"division": division_to_json(division), "report": report_to_json(report)}


def _validate(args) -> Dict[str, Any]:
    division = division_from_json(load_json(args.input))
    if args.instance is None:
        violations = validate_division(division)
        if violations:
            raise InvalidDivisionError(violations)
        return {"valid": True}
    obj = load_json(args.instance)
    if isinstance(obj, dict) and "values" in obj:
        if not isinstance(division, DiscreteDivision):
            raise InvalidInputError("a discrete instance needs an item division")
        D = discrete_from_json(obj)
        if division.n < D.n:
            # players missing from the pieces list hold nothing
            division = DiscreteDivision(pieces=division.pieces + (None,) * (D.n - division.n))
        report = welfare_discrete(D, division)
    elif isinstance(division, ConnectedDivision):
        report = welfare(normalize_instance(instance_from_json(obj)), division)
    else:
        raise InvalidInputError("an item division needs a discrete instance")
    return {"valid": True, "report": report_to_json(report)}


def execute(args, settings: Settings) -> List[Dict[str, Any]]:
    """Run one verb; returns the JSON objects to print, one per line."""
    verb = args.verb
    if verb == "discretize":
        instance = _load_instance(args.input)
        cut_set = run_discretization(instance, parse_rational(args.eps))
        return [{"cutset": cutset_to_json(cut_set), "discrete": discrete_to_json(to_discrete(instance, cut_set))}]
    if verb == "util-approx":
        instance = _load_instance(args.input)
        eps = parse_rational(args.eps)
        if not args.trace:
            return [_with_report(*approx_util(instance, eps))]
        cut_set = run_discretization(instance, eps)
        division, _, trace = approx_util_discrete(to_discrete(instance, cut_set), trace=True)
        lifted = lift_division(division, cut_set, instance.n)
        lines = [{"trace": trace_step_to_json(step)} for step in trace.steps]
        return lines + [{"result": _with_report(lifted, welfare(instance, lifted))}]
    if verb == "util-fpt":
        instance = _load_instance(args.input)
        return [_with_report(*fpt_util(instance, parse_rational(args.eps), max_players=settings.max_players))]
    if verb == "egal-fpt":
        instance = _load_instance(args.input)
        bound, division = fpt_egal(instance, parse_rational(args.eps), max_players=settings.max_players)
        out = _with_report(division, welfare(instance, division))
        out["bound"] = format_rational(bound)
        return [out]
    if verb == "egal-exact":
        D = discrete_from_json(load_json(args.input))
        optimum, division = egal_exact_discrete(D, max_players=settings.max_players)
        out = _with_report(division, welfare_discrete(D, division))
        out["optimum"] = format_rational(optimum)
        return [out]
    if verb == "nc-util":
        assignment, report = util_nonconnected(_load_instance(args.input))
        return [{"assignment": assignment_to_json(assignment), "report": report_to_json(report)}]
    if verb == "nc-egal":
        t, assignment = egal_nonconnected(_load_instance(args.input))
        return [assignment_to_json(assignment, t)]
    if verb == "brute":
        D = discrete_from_json(load_json(args.input))
        report, division = brute_force(D, args.objective, limit=settings.enumeration_limit)
        return [_with_report(division, report)]
    if verb == "gen":
        if args.kind == "random":
            return [instance_to_json(gen_random(args.n, args.segs, args.uniform, args.seed))]
        obj = load_json(args.input)
        if args.kind == "3dm":
            instance, D, bound = from_3dm(threedm_from_json(obj))
        else:
            instance, D, bound = from_mcsp(mcsp_from_json(obj))
        return [{"instance": instance_to_json(instance), "discrete": discrete_to_json(D), "B": format_rational(bound)}]
    if verb == "validate":
        return [_validate(args)]
    raise InvalidInputError(f"unknown verb {verb}")


def _error_object(e: FairSliceError) -> Dict[str, Any]:
    body: Dict[str, Any] = {"type": type(e).__name__, "message": str(e)}
    if isinstance(e, InvalidDivisionError):
        body["violations"] = e.violations
    return {"error": body}


def _emit(lines: List[Dict[str, Any]], output: Optional[str]):
    text = "\n".join(dump_json(line) for line in lines) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv: Optional[List[str]] = None) -> int:
    settings = load_settings()
    args = build_parser(settings).parse_args(argv)
    setup_logging(args.log_level)
    try:
        lines = execute(args, settings)
    except InvalidInputError as e:
        logger.error(f"{args.verb}: {e}")
        _emit([_error_object(e)], None)
        return EXIT_INVALID
    except ResourceGuardExceeded as e:
        logger.error(f"{args.verb}: {e}")
        _emit([_error_object(e)], None)
        return EXIT_GUARD
    except FairSliceError as e:
        logger.error(f"{args.verb} failed: {e}")
        _emit([_error_object(e)], None)
        return EXIT_FAILURE
    if args.decimal > 0:
        lines = [dict(line, decimal=decimal_mirror(line, args.decimal)) for line in lines]
    _emit(lines, args.output)
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(run())
