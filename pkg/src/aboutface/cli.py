"""Command-line surface: monotones, convert, region, closure, oracle, verify.

Scalar reports are emitted as JSON, grids and samples as CSV, both on
stdout; diagnostics go to stderr.  Numeric payloads use lossless decimal
formatting (up to 17 significant digits) so emitted values reparse
bit-identically.  Exit codes: 0 success, 1 verification-suite failure,
2 usage or validation error.
"""

from __future__ import annotations

import argparse
import dataclasses
import io
import json
import sys

import numpy as np

from . import __version__
from .bloch import SamplerConfig, axis_from_name, make_state
from .errors import AboutFaceError, OutsideBall
from .monotones import monotone_profile
from .oracle import OracleConfig, search_channel
from .ordering import can_convert, downward_closure_section
from .relations import (
    MONOTONE_NAMES,
    CrossSectionSpec,
    constraint_report,
    cross_section,
    sample_joint_region,
)
from .verify import SUITES

SCHEMA_VERSION = "1"


def _fmt(x) -> str:
    return f"{float(x):.17g}"


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if dataclasses.is_dataclass(obj):
        return _jsonable(dataclasses.asdict(obj))
    return obj


def _emit_json(command: str, payload) -> None:
    record = {"schema_version": SCHEMA_VERSION, "command": command, "payload": _jsonable(payload)}
    print(json.dumps(record))


def _emit_csv(command: str, header: list[str], rows) -> None:
    out = io.StringIO()
    out.write(f"# aboutface schema_version={SCHEMA_VERSION} command={command}\n")
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(_fmt(c) if isinstance(c, (int, float, np.floating)) else str(c) for c in row))
        out.write("\n")
    sys.stdout.write(out.getvalue())


def _fail(command: str, message: str) -> int:
    sys.stderr.write(json.dumps({"command": command, "error": message}) + "\n")
    return 2


def _parse_state(values) -> tuple:
    return make_state(values[0], values[1], values[2])


def _cmd_monotones(args) -> int:
    try:
        state = _parse_state(args.components)
    except OutsideBall as exc:
        return _fail("monotones", str(exc))
    profile = monotone_profile(state)
    report = constraint_report(profile)
    payload = {
        "state": list(state.as_tuple()),
        "profile": dict(zip(MONOTONE_NAMES, profile.as_array())),
        "constraints": {
            "equality_residuals": report.equality_residuals,
            "a_margins": report.a_margins,
            "b_margins": report.b_margins,
            "axbxay_margins": report.axbxay_margins,
            "ok": report.ok(),
        },
    }
    _emit_json("monotones", payload)
    return 0


def _oracle_config(args) -> OracleConfig:
    return OracleConfig(
        theta_grid_n=args.grid or 64,
        uv_grid_n=args.grid or 64,
        refine_steps=args.refine,
        hit_tol=args.hit_tol,
        seed=args.seed,
    )


def _cmd_convert(args) -> int:
    try:
        axis = axis_from_name(args.axis)
        source = _parse_state(args.components[:3])
        target = _parse_state(args.components[3:])
    except (OutsideBall, ValueError) as exc:
        return _fail("convert", str(exc))
    verdict = can_convert(source, target, axis)
    payload = {
        "source": list(source.as_tuple()),
        "target": list(target.as_tuple()),
        "axis": args.axis,
        "decision": verdict.decision,
        "reason": verdict.reason,
        "delta_a": verdict.delta_a,
        "delta_b": verdict.delta_b,
    }
    if args.oracle:
        result = search_channel(source, target, axis, _oracle_config(args))
        payload["oracle"] = {
            "best_distance": result.best_distance,
            "feasible": result.feasible,
            "channel": {
                "theta1": result.best_channel.theta1,
                "theta2": result.best_channel.theta2,
                "mixture": [list(m) for m in result.best_channel.mixture],
            },
        }
    _emit_json("convert", payload)
    return 0


def _cmd_oracle(args) -> int:
    try:
        axis = axis_from_name(args.axis)
        source = _parse_state(args.components[:3])
        target = _parse_state(args.components[3:])
    except (OutsideBall, ValueError) as exc:
        return _fail("oracle", str(exc))
    result = search_channel(source, target, axis, _oracle_config(args))
    payload = {
        "source": list(source.as_tuple()),
        "target": list(target.as_tuple()),
        "axis": args.axis,
        "best_distance": result.best_distance,
        "feasible": result.feasible,
        "channel": {
            "theta1": result.best_channel.theta1,
            "theta2": result.best_channel.theta2,
            "mixture": [list(m) for m in result.best_channel.mixture],
        },
    }
    _emit_json("oracle", payload)
    return 0


def _section_rows(section):
    rows = []
    for i, c1 in enumerate(section.grid1):
        for j, c2 in enumerate(section.grid2):
            rows.append((c1, c2, int(section.member[i, j]), "region"))
    for label, curve in section.boundaries.items():
        for point in curve:
            rows.append((point[0], point[1], 1, label))
    return rows


def _emit_section(command: str, section, fmt: str) -> None:
    header = [section.coord_names[0], section.coord_names[1], "member", "boundary"]
    rows = _section_rows(section)
    if fmt == "json":
        _emit_json(command, {"header": header, "rows": [list(r) for r in rows], "extras": section.extras})
    else:
        _emit_csv(command, header, rows)


def _cmd_region(args) -> int:
    chosen = [bool(args.subset), bool(args.cross_section), bool(args.closure)]
    if sum(chosen) != 1:
        return _fail("region", "choose exactly one of --subset, --cross-section, --closure")
    if args.cross_section:
        try:
            name, _, value = args.cross_section.partition("=")
            spec = CrossSectionSpec(name, float(value), args.grid)
            section = cross_section(spec)
        except (ValueError, AboutFaceError) as exc:
            return _fail("region", str(exc))
        _emit_section("region", section, args.format)
        return 0
    if args.closure:
        try:
            comps = [float(p) for p in args.closure.split(",")]
            state = _parse_state(comps)
            section = downward_closure_section(state, axis_from_name(args.axis), args.grid)
        except (ValueError, AboutFaceError) as exc:
            return _fail("region", str(exc))
        _emit_section("region", section, args.format)
        return 0
    try:
        names = [s for s in args.subset.split(",") if s]
        sample = sample_joint_region(names, args.samples, SamplerConfig("uniform-ball", seed=args.seed))
    except (ValueError, AboutFaceError) as exc:
        return _fail("region", str(exc))
    header = list(sample.names) + ["ok"]
    rows = [tuple(row) + (int(ok),) for row, ok in zip(sample.values, sample.ok)]
    if args.format == "json":
        _emit_json(
            "region",
            {"header": header, "rows": [list(r) for r in rows], "worst": sample.worst},
        )
    else:
        _emit_csv("region", header, rows)
    return 0


def _cmd_closure(args) -> int:
    try:
        state = _parse_state(args.components)
        section = downward_closure_section(state, axis_from_name(args.axis), args.grid)
    except (OutsideBall, ValueError, AboutFaceError) as exc:
        return _fail("closure", str(exc))
    _emit_section("closure", section, args.format)
    return 0


def _suite_kwargs(name: str, args) -> dict:
    kwargs = {}
    if name in ("equalities", "inequalities"):
        if args.n:
            kwargs["n_ball"] = args.n
        kwargs["seed"] = args.seed
    elif name == "realizability":
        if args.n:
            kwargs["n_triples"] = args.n
        kwargs["seed"] = args.seed
    elif name == "pure-tags":
        if args.n:
            kwargs["n"] = args.n
        kwargs["seed"] = args.seed
    elif name in ("fixed-purity",):
        if args.n:
            kwargs["n_per_radius"] = args.n
        kwargs["seed"] = args.seed
    elif name == "operational":
        if args.n:
            kwargs["n_trace"] = args.n
        kwargs["seed"] = args.seed
    elif name == "sections":
        if args.grid:
            kwargs["grid_n"] = args.grid
        if args.samples:
            kwargs["n_samples"] = args.samples
        kwargs["seed"] = args.seed
    elif name == "channels":
        if args.samples:
            kwargs["n_maps"] = args.samples
        kwargs["seed"] = args.seed
    elif name == "oracle":
        kwargs["n_pairs"] = args.pairs
        kwargs["margin"] = args.margin
        kwargs["config"] = OracleConfig(seed=args.seed, hit_tol=args.hit_tol, refine_steps=args.refine)
    elif name == "order":
        if args.n:
            kwargs["n_pairs"] = args.n
        kwargs["seed"] = args.seed
    return kwargs


def _cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        return _fail("verify", f"unknown suite {unknown[0]!r}; choose from {sorted(SUITES)} or 'all'")
    reports = []
    for name in names:
        report = SUITES[name](**_suite_kwargs(name, args))
        reports.append(report)
        for line in report.lines():
            sys.stderr.write(line + "\n")
    payload = {
        "suites": [
            {
                "suite": r.suite,
                "passed": r.passed,
                "checks": [
                    {"name": c.name, "passed": c.passed, "worst": c.worst, "detail": c.detail}
                    for c in r.checks
                ],
            }
            for r in reports
        ],
        "passed": all(r.passed for r in reports),
    }
    _emit_json("verify", payload)
    return 0 if payload["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aboutface",
        description="Qubit about-face asymmetry toolkit: monotones, conversion, regions, oracle checks.",
    )
    parser.add_argument("--version", action="version", version=f"aboutface {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("monotones", help="six-monotone profile and constraint report of one state")
    p.add_argument("components", type=float, nargs=3, metavar=("RX", "RY", "RZ"))
    p.add_argument("--format", choices=("json",), default="json")
    p.set_defaults(func=_cmd_monotones)

    for name, helptext in (
        ("convert", "decide convertibility source -> target (optionally cross-check with the oracle)"),
        ("oracle", "brute-force channel search source -> target"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument(
            "components",
            type=float,
            nargs=6,
            metavar=("SRC_RX", "SRC_RY", "SRC_RZ", "TGT_RX", "TGT_RY", "TGT_RZ"),
        )
        p.add_argument("--axis", default="x")
        p.add_argument("--oracle", action="store_true", help="also run the channel search (convert only)")
        p.add_argument("--grid", type=int, default=64)
        p.add_argument("--refine", type=int, default=3)
        p.add_argument("--hit-tol", type=float, default=1e-3, dest="hit_tol")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("json",), default="json")
        p.set_defaults(func=_cmd_convert if name == "convert" else _cmd_oracle)

    p = sub.add_parser("region", help="joint-realizability samples, cross-sections, closures (CSV)")
    p.add_argument("--subset", help=f"comma-separated monotone names from {','.join(MONOTONE_NAMES)}")
    p.add_argument("--cross-section", dest="cross_section", help="e.g. Ax=0.5 or Bx=0.3")
    p.add_argument("--closure", help="source state rx,ry,rz for a downward-closure section")
    p.add_argument("--axis", default="x")
    p.add_argument("--grid", type=int, default=100)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_region)

    p = sub.add_parser("closure", help="downward-closure plane section of a source state (CSV)")
    p.add_argument("components", type=float, nargs=3, metavar=("RX", "RY", "RZ"))
    p.add_argument("--axis", default="x")
    p.add_argument("--grid", type=int, default=100)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_closure)

    p = sub.add_parser("verify", help="run a named verification suite (exit 1 on failure)")
    p.add_argument("--suite", required=True, help=f"one of {sorted(SUITES)} or 'all'")
    p.add_argument("--n", type=int, default=0, help="suite size override")
    p.add_argument("--pairs", type=int, default=1000)
    p.add_argument("--margin", type=float, default=0.02)
    p.add_argument("--grid", type=int, default=0)
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--refine", type=int, default=3)
    p.add_argument("--hit-tol", type=float, default=1e-3, dest="hit_tol")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    # A bare "--" may separate source from target in convert/oracle calls;
    # it is cosmetic, so drop it to keep flags after it working.
    argv = [a for a in argv if a != "--"]
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AboutFaceError as exc:
        return _fail(args.command, str(exc))


if __name__ == "__main__":
    sys.exit(main())
