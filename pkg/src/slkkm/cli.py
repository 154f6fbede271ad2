"""Command-line surface tying the package together.

Exit codes: 0 success, 1 expected negative result (failed validation or
violated bound in the input), 2 internal defect (an invariant that is a
theorem failed, meaning a bug), 64 usage error. Reports are JSON with a
stable field order and contain only exact numbers; timing is opt-in so
that identical inputs give byte-identical outputs.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction

from . import bounds as bounds_mod
from .coloring import (
    ColoringError,
    KKMCover,
    LebesgueCover,
    PointColoring,
    RegionColoring,
    is_proximate,
    kkm_to_coloring,
    lebesgue_to_coloring,
    validate_kkm_cover,
    validate_lebesgue_cover,
    validate_slkkm_points,
    validate_slkkm_regions,
)
from .constructions import (
    brick_coloring,
    hamming_coloring,
    orthant_coloring,
    proximate_grid,
    sperner_gamma,
)
from .geometry import GeometryError, rational
from .search import (
    SearchDefect,
    brute_force_oracle,
    empirical_K_curve,
    extremal_search,
    max_colors_ball,
    proof_pipeline_witness,
    verify_theorem,
)
from .serialization import (
    ParseError,
    parse_coloring,
    point_to_json,
    rat_to_str,
    serialize_coloring,
    to_document,
)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_DEFECT = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="slkkm", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, needs_eps=False):
        p.add_argument("--in", dest="infile", help="input coloring/cover document (JSON)")
        p.add_argument("--construct", dest="construct",
                       choices=["orthant", "hamming", "brick", "grid"],
                       help="use a built-in construction instead of --in")
        p.add_argument("--d", type=int, default=None, help="dimension for --construct")
        p.add_argument("--sigma", default="1/2", help="row shift for the brick construction")
        p.add_argument("--rho", default=None, help="grid pitch / sample spacing (rational)")
        p.add_argument("--out", default=None, help="write the report here instead of stdout")
        p.add_argument("--timing", action="store_true", help="include wall time in the report")
        if needs_eps:
            p.add_argument("--eps", required=True, help="ball radius (rational, e.g. 1/4)")
            group = p.add_mutually_exclusive_group()
            group.add_argument("--open", dest="closed", action="store_false", default=False,
                               help="open balls (default)")
            group.add_argument("--closed", dest="closed", action="store_true")

    p = sub.add_parser("validate", help="validate a coloring or cover document")
    add_common(p)

    p = sub.add_parser("construct", help="emit a built-in construction as a document")
    add_common(p)

    p = sub.add_parser("bounds", help="closed-form bound table for (d, eps)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--eps", required=True)
    p.add_argument("--rho", default=None)
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.add_argument("--out", default=None)
    p.add_argument("--timing", action="store_true")

    p = sub.add_parser("search", help="exact best ball placement for a coloring")
    add_common(p, needs_eps=True)

    p = sub.add_parser("verify", help="check the guaranteed bound on a coloring")
    add_common(p, needs_eps=True)

    p = sub.add_parser("pipeline", help="constructive witness via the extension argument")
    add_common(p, needs_eps=True)

    p = sub.add_parser("sperner", help="regionalize a point coloring and check its bound")
    add_common(p, needs_eps=True)

    p = sub.add_parser("extremal", help="annealing search for colorings with few reachable colors")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--eps", required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--open", dest="closed", action="store_false", default=False)
    group.add_argument("--closed", dest="closed", action="store_true")
    p.add_argument("--budget", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid-n", type=int, default=4)
    p.add_argument("--out", default=None)
    p.add_argument("--timing", action="store_true")

    p = sub.add_parser("curve", help="open/closed maxima over a list of radii (CSV)")
    add_common(p)
    p.add_argument("--eps", required=True, help="comma-separated radii, e.g. 1/8,1/4,1/2")

    p = sub.add_parser("oracle", help="grid-based brute-force color count")
    add_common(p, needs_eps=True)
    p.add_argument("--grid-step", default="1/16")

    return parser


# ---------------------------------------------------------------------------
# Input loading


def _load_subject(args):
    """The coloring/cover a subcommand operates on, plus a digest of its source."""
    if args.infile and args.construct:
        raise UsageError("give either --in or --construct, not both")
    if args.infile:
        with open(args.infile, "rb") as fh:
            raw = fh.read()
        obj = parse_coloring(raw.decode("utf-8"))
        digest = hashlib.sha256(raw).hexdigest()
        return obj, digest
    if args.construct:
        if args.construct == "brick":
            obj = brick_coloring(args.sigma)
        elif args.construct == "grid":
            if args.rho is None:
                raise UsageError("--construct grid needs --rho")
            if args.d is None:
                raise UsageError("--construct grid needs --d")
            pts = proximate_grid(args.d, args.rho)
            obj = PointColoring(args.d, pts, tuple(f"p{i}" for i in range(len(pts))))
        else:
            if args.d is None:
                raise UsageError(f"--construct {args.construct} needs --d")
            obj = orthant_coloring(args.d) if args.construct == "orthant" \
                else hamming_coloring(args.d)
        digest = hashlib.sha256(serialize_coloring(obj).encode()).hexdigest()
        return obj, digest
    raise UsageError("need --in or --construct")


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report(command: str, digest: str | None, results: dict, args) -> str:
    doc = {"command": command}
    if digest is not None:
        doc["inputs_digest"] = digest
    doc["results"] = results
    if getattr(args, "timing", False):
        doc["timing_seconds_float"] = round(time.monotonic() - args._t0, 6)
    return json.dumps(doc, indent=2) + "\n"


def _search_result_json(result) -> dict:
    return {
        "max_colors": result.max_colors,
        "witness_center": point_to_json(result.witness_center),
        "colors_hit": list(result.colors_hit),
        "method": result.method,
    }


def _validation_json(report) -> dict:
    return {"passed": report.passed, "violations": list(report.violations),
            "truncated": report.truncated}


# ---------------------------------------------------------------------------
# Subcommands


def _cmd_validate(args) -> int:
    obj, digest = _load_subject(args)
    if isinstance(obj, PointColoring):
        report = validate_slkkm_points(obj)
        kind = "points"
    elif isinstance(obj, RegionColoring):
        report = validate_slkkm_regions(obj)
        kind = "regions"
    elif isinstance(obj, LebesgueCover):
        report = validate_lebesgue_cover(obj)
        kind = "lebesgue_cover"
    elif isinstance(obj, KKMCover):
        report = validate_kkm_cover(obj)
        kind = "kkm_cover"
    else:  # pragma: no cover
        raise UsageError("unsupported document")
    results = {"kind": kind, **_validation_json(report)}
    if args.rho is not None and isinstance(obj, PointColoring):
        results["proximate"] = is_proximate(obj.points, args.rho, obj.dim)
    _emit(_report("validate", digest, results, args), args.out)
    return EXIT_OK if report.passed else EXIT_VALIDATION


def _cmd_construct(args) -> int:
    obj, _ = _load_subject(args)
    _emit(serialize_coloring(obj), args.out)
    return EXIT_OK


def _cmd_bounds(args) -> int:
    report = bounds_mod.table_one(args.d, args.eps, rho=args.rho)
    results = {
        "d": report.d,
        "eps": rat_to_str(report.eps),
        "lower_classic": report.lower_classic,
        "lower_main": report.lower_main,
        "lower_simple": report.lower_simple,
        "upper_trivial": report.upper_trivial,
        "upper_secluded_best": report.upper_secluded_best,
        "upper_secluded_n": report.upper_secluded_n,
        "upper_halfball": report.upper_halfball,
    }
    if report.rho is not None:
        results["rho"] = rat_to_str(report.rho)
        results["sperner_lower"] = report.sperner
    results["notes"] = list(report.notes)
    if args.format == "table":
        lines = [f"d = {report.d}, eps = {rat_to_str(report.eps)}"]
        for key in ("lower_classic", "lower_main", "lower_simple", "upper_trivial",
                    "upper_secluded_best", "upper_secluded_n", "upper_halfball"):
            lines.append(f"  {key:<22} {results[key]}")
        if report.rho is not None:
            lines.append(f"  {'sperner_lower':<22} {report.sperner}")
        for note in report.notes:
            lines.append(f"  note: {note}")
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(_report("bounds", None, results, args), args.out)
    return EXIT_OK


def _cmd_search(args) -> int:
    obj, digest = _load_subject(args)
    result = max_colors_ball(obj, args.eps, closed=args.closed)
    results = {"eps": rat_to_str(rational(args.eps)), "closed": args.closed,
               **_search_result_json(result)}
    _emit(_report("search", digest, results, args), args.out)
    return EXIT_OK


def _cmd_verify(args) -> int:
    obj, digest = _load_subject(args)
    report = verify_theorem(obj, args.eps, closed=args.closed, rho=args.rho)
    results = {
        "eps": rat_to_str(report.eps),
        "closed": report.closed,
        "bound": report.bound,
        "achieved": report.achieved,
        "witness_center": point_to_json(report.witness),
        "colors_hit": list(report.colors_hit),
        "ok": report.ok,
    }
    _emit(_report("verify", digest, results, args), args.out)
    return EXIT_OK if report.ok else EXIT_DEFECT


def _cmd_pipeline(args) -> int:
    obj, digest = _load_subject(args)
    if not isinstance(obj, RegionColoring):
        raise UsageError("pipeline needs a region coloring")
    report = proof_pipeline_witness(obj, args.eps)
    results = {
        "eps": rat_to_str(rational(args.eps)),
        "bound": report.bound,
        "depth_count": report.depth_count,
        "raw_witness": point_to_json(report.raw_witness),
        "sum_inflated_measure": rat_to_str(report.sum_inflated_measure),
        "required_sum": rat_to_str(report.required_sum),
        **_search_result_json(report.result),
    }
    _emit(_report("pipeline", digest, results, args), args.out)
    return EXIT_OK


def _cmd_sperner(args) -> int:
    obj, digest = _load_subject(args)
    if not isinstance(obj, PointColoring):
        raise UsageError("sperner needs a point coloring")
    if args.rho is None:
        raise UsageError("sperner needs --rho")
    point_report = validate_slkkm_points(obj)
    if not point_report.passed:
        results = {"validation": _validation_json(point_report)}
        _emit(_report("sperner", digest, results, args), args.out)
        return EXIT_VALIDATION
    proximate = is_proximate(obj.points, args.rho, obj.dim)
    if not proximate:
        results = {"validation": _validation_json(point_report), "proximate": False}
        _emit(_report("sperner", digest, results, args), args.out)
        return EXIT_VALIDATION
    gamma = sperner_gamma(obj, args.rho)
    gamma_report = validate_slkkm_regions(gamma)
    verify = verify_theorem(obj, args.eps, closed=args.closed, rho=args.rho)
    results = {
        "eps": rat_to_str(verify.eps),
        "rho": rat_to_str(rational(args.rho)),
        "proximate": True,
        "gamma_classes": len(gamma.classes),
        "gamma_valid": gamma_report.passed,
        "bound": verify.bound,
        "achieved": verify.achieved,
        "ok": verify.ok,
        "gamma": to_document(gamma),
    }
    _emit(_report("sperner", digest, results, args), args.out)
    if not gamma_report.passed or not verify.ok:
        return EXIT_DEFECT
    return EXIT_OK


def _cmd_extremal(args) -> int:
    result = extremal_search(args.d, args.eps, budget=args.budget, seed=args.seed,
                             grid_n=args.grid_n, closed=args.closed)
    results = {
        "eps": rat_to_str(rational(args.eps)),
        "closed": args.closed,
        "seed": args.seed,
        "budget": args.budget,
        "grid_n": args.grid_n,
        "max_colors": result.max_colors,
        "evaluations": result.evaluations,
        "note": result.note,
        "coloring": to_document(result.coloring),
    }
    _emit(_report("extremal", None, results, args), args.out)
    return EXIT_OK


def _cmd_curve(args) -> int:
    obj, _ = _load_subject(args)
    eps_list = [tok.strip() for tok in args.eps.split(",") if tok.strip()]
    rows = empirical_K_curve(obj, eps_list)
    lines = ["eps,open_max,closed_max"]
    for row in rows:
        lines.append(f"{rat_to_str(row.eps)},{row.open_max},{row.closed_max}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    obj, digest = _load_subject(args)
    count = brute_force_oracle(obj, args.eps, closed=args.closed, grid_step=args.grid_step)
    results = {"eps": rat_to_str(rational(args.eps)), "closed": args.closed,
               "grid_step": rat_to_str(rational(args.grid_step)), "max_colors": count}
    _emit(_report("oracle", digest, results, args), args.out)
    return EXIT_OK


_COMMANDS = {
    "validate": _cmd_validate,
    "construct": _cmd_construct,
    "bounds": _cmd_bounds,
    "search": _cmd_search,
    "verify": _cmd_verify,
    "pipeline": _cmd_pipeline,
    "sperner": _cmd_sperner,
    "extremal": _cmd_extremal,
    "curve": _cmd_curve,
    "oracle": _cmd_oracle,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        args._t0 = time.monotonic()
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_VALIDATION
    except (ColoringError, bounds_mod.BoundsError, GeometryError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_VALIDATION
    except (SearchDefect, bounds_mod.InconsistentBounds, AssertionError) as exc:
        sys.stderr.write(f"internal defect: {exc}\n")
        return EXIT_DEFECT


if __name__ == "__main__":
    sys.exit(main())
