"""Command-line interface.

Every subcommand prints one JSON document ``{mode, radii|weights, points,
report, meta}`` and exits with 0 (Pass / found), 2 (PassNonStrict),
3 (Fail / not found) or 1 (input error).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .errors import ConvexConfigError, RepetitionTooHigh
from .geom import ENV_TOL, Tolerance
from .planar import construct_distinct_2d, construct_repeated_2d, probe_conjecture_2d, realize_2d
from .render import render_off, render_svg
from .slvd import CellVerdict, SphericalCircleSet, check_nonemptiness, place_generators, sample_cells
from .spatial import construct_layered_3d, realize_3d, strictify_3d
from .validation import check_radii
from .verify import Verdict, verify_configuration

EXIT_OK, EXIT_INPUT, EXIT_NON_STRICT, EXIT_FAIL = 0, 1, 2, 3
_VERDICT_EXIT = {Verdict.PASS: EXIT_OK, Verdict.PASS_NON_STRICT: EXIT_NON_STRICT, Verdict.FAIL: EXIT_FAIL}


class InputError(Exception):
    """Malformed command-line input; the message names the offending field."""


# ------------------------------------------------------------- serialization


def _float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    s = format(x, ".17g")
    return s if any(c in s for c in ".e") else s + ".0"


def _encode(obj: Any, indent: int = 0) -> str:
    pad, inner = "  " * indent, "  " * (indent + 1)
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {_encode(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in obj):
            return "[" + ", ".join(_encode(v) for v in obj) + "]"
        return "[\n" + ",\n".join(inner + _encode(v, indent + 1) for v in obj) + "\n" + pad + "]"
    if hasattr(obj, "value"):
        return _encode(obj.value, indent)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(doc: dict[str, Any]) -> str:
    """Deterministic JSON with 17 significant digits for every float."""
    return _encode(doc) + "\n"


# ------------------------------------------------------------------- parsing


def _numbers(text: str, field: str) -> list[float]:
    parts = [p for p in text.replace(";", ",").replace("\n", ",").replace(" ", ",").split(",") if p.strip()]
    if not parts:
        raise InputError(f"--{field}: no values given")
    try:
        return [float(p) for p in parts]
    except ValueError:
        raise InputError(f"--{field}: cannot parse {text!r} as a list of numbers") from None


def _read(path: str, field: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"--{field}-file: {exc.strerror or exc}") from None


def _list_arg(args, field: str) -> list[float] | None:
    inline = getattr(args, field, None)
    path = getattr(args, f"{field}_file", None)
    if inline is not None and path is not None:
        raise InputError(f"--{field}: give either --{field} or --{field}-file, not both")
    if path is not None:
        return _numbers(_read(path, field), field)
    if inline is not None:
        return _numbers(inline, field)
    return None


def _points_arg(args) -> np.ndarray:
    text = _read(args.points_file, "points") if args.points_file else args.points
    if text is None:
        raise InputError("--points: required (or --points-file / --input)")
    rows = [r for r in text.replace("\n", ";").split(";") if r.strip()]
    try:
        pts = [[float(x) for x in r.replace(" ", ",").split(",") if x.strip()] for r in rows]
    except ValueError:
        raise InputError(f"--points: cannot parse {text!r}; use 'x,y;x,y;...'") from None
    if not pts or len({len(p) for p in pts}) != 1 or len(pts[0]) not in (2, 3):
        raise InputError("--points: every point needs the same dimension, 2 or 3")
    return np.array(pts)


def _tolerance(args) -> Tolerance:
    if args.tol is not None:
        if not (args.tol > 0 and math.isfinite(args.tol)):
            raise InputError(f"--tol: must be positive, got {args.tol!r}")
        return Tolerance(args.tol)
    try:
        return Tolerance.from_env()
    except ConvexConfigError as exc:
        raise InputError(str(exc)) from None


def _check_render(args, ext: str) -> None:
    if args.render and not args.render.lower().endswith(ext):
        raise InputError(f"--render: this mode writes {ext.upper()[1:]}, so the path must end in {ext}")


def _write_render(args, text: str) -> None:
    if args.render:
        Path(args.render).write_text(text)


# ------------------------------------------------------------------- modes


def _config_doc(mode: str, config, tol: Tolerance, **extra) -> tuple[dict, int]:
    report = verify_configuration(config, config.radii, tol)
    doc = {
        "mode": mode,
        "radii": list(config.radii.values),
        "points": config.vertices,
        "report": report.to_dict(),
        "meta": {
            **config.meta,
            "radius_assignment": list(config.radius_assignment),
            "rel_eps": tol.rel_eps,
            **extra,
        },
    }
    return doc, _VERDICT_EXIT[report.verdict]


def _run_construct2d(args, tol: Tolerance):
    _check_render(args, ".svg")
    radii = _list_arg(args, "radii")
    if radii is None:
        raise InputError("--radii: required (or --radii-file)")
    rs = check_radii(radii)
    try:
        if args.strict:
            config = realize_2d(rs, strict=True, tol=tol)
        else:
            config = construct_distinct_2d(rs) if rs.is_distinct else construct_repeated_2d(rs)
    except RepetitionTooHigh as exc:
        raise InputError(
            f"--radii: {str(exc).split(';')[0]}; the constructions cover multiplicities up to 4, "
            "try the 'probe' subcommand to search for a configuration"
        ) from None
    doc, code = _config_doc("construct2d", config, tol, strict=args.strict)
    _write_render(args, render_svg(config))
    return doc, code


def _run_construct3d(args, tol: Tolerance):
    _check_render(args, ".off")
    radii = _list_arg(args, "radii")
    if radii is None:
        raise InputError("--radii: required (or --radii-file)")
    rs = check_radii(radii)
    if args.paper_faithful:
        config = construct_layered_3d(rs, "PaperFaithful", tol)
        if args.strict:
            config = strictify_3d(config, tol)
    else:
        config = realize_3d(rs, "Robust", tol)
    doc, code = _config_doc("construct3d", config, tol, strict=args.strict, paper_faithful=args.paper_faithful)
    _write_render(args, render_off(config))
    return doc, code


def _run_verify(args, tol: Tolerance):
    assignment = None
    if args.input:
        try:
            src = json.loads(_read(args.input, "input"))
            pts = np.array(src["points"], dtype=float)
            radii = [float(r) for r in src["radii"]]
            assignment = (src.get("meta") or {}).get("radius_assignment")
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"--input: not a configuration document ({exc})") from None
    else:
        pts = _points_arg(args)
        radii = _list_arg(args, "radii")
        if radii is None:
            raise InputError("--radii: required (or --radii-file / --input)")
    _check_render(args, ".svg" if pts.shape[1] == 2 else ".off")
    rs = check_radii(radii)
    report = verify_configuration(pts, rs, tol, assignment=assignment)
    doc = {
        "mode": "verify",
        "radii": list(rs.values),
        "points": pts,
        "report": report.to_dict(),
        "meta": {"rel_eps": tol.rel_eps, "radius_assignment": assignment},
    }
    if args.render:
        from .configuration import Configuration2D, Configuration3D

        kind = Configuration2D if pts.shape[1] == 2 else Configuration3D
        config = kind(pts, tuple(assignment) if assignment else tuple(range(rs.n)), rs)
        _write_render(args, render_svg(config) if pts.shape[1] == 2 else render_off(config))
    return doc, _VERDICT_EXIT[report.verdict]


def _run_slvd(args, tol: Tolerance):
    _check_render(args, ".off")
    weights = _list_arg(args, "weights")
    if weights is None:
        raise InputError("--weights: required (or --weights-file)")
    if args.centers or args.centers_file:
        args.points, args.points_file = args.centers, args.centers_file
        centers = _points_arg(args)
        circles = SphericalCircleSet(centers, weights)
    else:
        circles, _ = place_generators(weights, "Robust", tol)
    duals = circles.duals().duals
    report = check_nonemptiness(circles, tol)
    rep = report.to_dict()
    if args.grid:
        rep["sampling"] = sample_cells(circles, args.grid).to_dict()
    verdicts = set(report.verdicts) | set(report.cross_check.verdicts)
    if CellVerdict.EMPTY in verdicts:
        code = EXIT_FAIL
    elif CellVerdict.BORDERLINE in verdicts:
        code = EXIT_NON_STRICT
    else:
        code = EXIT_OK
    doc = {
        "mode": "slvd",
        "weights": list(circles.weights),
        "points": duals,
        "report": rep,
        "meta": {"centers": circles.centers, "rel_eps": tol.rel_eps, "grid": args.grid},
    }
    if args.render:
        from .configuration import Configuration3D

        radii = check_radii(np.linalg.norm(duals, axis=1))
        _write_render(args, render_off(Configuration3D(duals, tuple(range(circles.n)), radii)))
    return doc, code


def _run_probe(args, tol: Tolerance):
    _check_render(args, ".svg")
    radii = _list_arg(args, "radii")
    if radii is None:
        raise InputError("--radii: required (or --radii-file)")
    if args.budget < 1:
        raise InputError(f"--budget: must be at least 1, got {args.budget}")
    rs = check_radii(radii)
    out = probe_conjecture_2d(rs, budget=args.budget, seed=args.seed, tol=tol)
    probe = {
        "found": out.found,
        "iterations": out.iterations,
        "budget": args.budget,
        "budget_exhausted": out.budget_exhausted,
        "best_score": out.best_score,
        "seed": args.seed,
    }
    if out.found:
        doc, _ = _config_doc("probe", out.configuration, tol, probe=probe)
        _write_render(args, render_svg(out.configuration))
        return doc, EXIT_OK
    doc = {
        "mode": "probe",
        "radii": list(rs.values),
        "points": None,
        "report": None,
        "meta": {"rel_eps": tol.rel_eps, "probe": probe},
    }
    return doc, EXIT_FAIL


_RUNNERS = {
    "construct2d": _run_construct2d,
    "construct3d": _run_construct3d,
    "verify": _run_verify,
    "slvd": _run_slvd,
    "probe": _run_probe,
}


# ------------------------------------------------------------------ parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="radial-convex", description="Convex configurations with prescribed radii.")
    sub = parser.add_subparsers(dest="mode", required=True, parser_class=_Parser)

    def common(p, radii=True):
        if radii:
            p.add_argument("--radii", help="comma-separated radii")
            p.add_argument("--radii-file", help="file with radii separated by commas or whitespace")
        p.add_argument("--tol", type=float, help=f"relative tolerance (default: ${ENV_TOL} or 1e-9)")
        p.add_argument("--output", help="write the document here instead of stdout")
        p.add_argument("--render", help="also write a rendering (.svg for 2D, .off for 3D)")
        p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")

    p = sub.add_parser("construct2d", help="planar configuration")
    common(p)
    p.add_argument("--strict", action=argparse.BooleanOptionalAction, default=True, help="strictify (default on)")

    p = sub.add_parser("construct3d", help="spatial configuration")
    common(p)
    p.add_argument("--paper-faithful", action="store_true", help="shared-longitude cone grid")
    p.add_argument("--strict", action=argparse.BooleanOptionalAction, default=True,
                   help="strictify the paper-faithful grid (default on)")

    p = sub.add_parser("verify", help="verify given points against radii")
    common(p)
    p.add_argument("--points", help="points as 'x,y;x,y;...' or 'x,y,z;...'")
    p.add_argument("--points-file", help="file with one point per line")
    p.add_argument("--input", help="a document written by another subcommand")

    p = sub.add_parser("slvd", help="spherical Laguerre cells from weights")
    common(p, radii=False)
    p.add_argument("--weights", help="comma-separated weights in radians")
    p.add_argument("--weights-file", help="file with weights")
    p.add_argument("--centers", help="unit centers 'x,y,z;...' to check instead of placing generators")
    p.add_argument("--centers-file", help="file with one center per line")
    p.add_argument("--grid", type=int, default=0, help="also sample the sphere with this many points")

    p = sub.add_parser("probe", help="randomized search for a planar configuration")
    common(p)
    p.add_argument("--budget", type=int, default=10_000, help="iteration budget (default 10000)")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        tol = _tolerance(args)
        doc, code = _RUNNERS[args.mode](args, tol)
    except InputError as exc:
        print(f"radial-convex: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConvexConfigError as exc:
        print(f"radial-convex: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = dumps(doc)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
