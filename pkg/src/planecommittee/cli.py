"""Command-line surface.

Subcommands: ``solve``, ``mcs marked|all|extend``, ``committee
build|three|polygon|verify``, ``oracle cells|mcs|min-committee``, ``gen
qgon|example2|random``, ``plot``.

Exit codes: 0 success; 1 declarative negative result (no committee of the
requested size, inconsistent where consistency is required, and the like);
2 input error; 3 internal invariant violation, with a traceback dump.

The only environment variable honored is ``NO_COLOR`` (suppresses the
colored error prefix on terminals).
"""

from __future__ import annotations

import argparse
import json
import os
import sys as _sys
import time
import traceback
from itertools import combinations
from typing import Optional, Sequence

from .committee import GeneralPositionSystem, build_committee, three_committee
from .errors import (
    InputError,
    InternalError,
    NegativeResult,
    NoCommitteeDetectedError,
    ParseError,
)
from .generators import PROFILES, gen_example2, gen_random, gen_regular_qgon
from .geometry import Point, is_consistent, materialize
from .io import (
    RunReport,
    instance_to_dict,
    marked_mcs_to_dict,
    parse_committee_document,
    parse_instance,
    parse_origin_flag,
    point_to_json,
    render_instance,
)
from .mcs import all_marked_mcs, canonical_rays, extend_to_mcs, find_marked_mcs, solve_consistent
from .oracle import arrangement_cells, brute_mcs, brute_min_committee, verify_committee
from .polar import Committee, System
from .polygon import polygon_minimal_committee
from .svg import PlotOverlays, plot_svg


# --- small plumbing -----------------------------------------------------------

def _use_color() -> bool:
    return _sys.stderr.isatty() and not os.environ.get("NO_COLOR")


def _error(message: str) -> None:
    prefix = "\x1b[31merror:\x1b[0m" if _use_color() else "error:"
    print(f"{prefix} {message}", file=_sys.stderr)


def _read_input(path: str) -> str:
    if path == "-":
        return _sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}")


def _write_output(text: str, path: Optional[str]) -> None:
    if path is None or path == "-":
        _sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as e:
        raise InputError(f"cannot write {path}: {e.strerror}")


def _default_origin(sys_: System) -> Point:
    """Deterministic reference point off every border: probe points of the
    parabola (t, t^2), which any line meets at most twice, so at most 2m
    probes are excluded."""
    from fractions import Fraction

    for k in range(2 * sys_.m + 1):
        t = Fraction(k, 101)
        z = Point(t, t * t)
        if all(sys_.ineq(j).value_at(z) != 0 for j in sys_.indices()):
            return z
    raise InternalError("no parabola probe cleared the borders")


class _Task:
    """Parsed instance plus report plumbing shared by the subcommands."""

    def __init__(self, ns: argparse.Namespace, command: str):
        self.ns = ns
        self.command = command
        self.t0 = time.perf_counter()
        text = _read_input(ns.input)
        self.instance = parse_instance(text)
        self.sys = self.instance.system
        self.timings = {"parse": time.perf_counter() - self.t0}

    def origin(self) -> Point:
        flag = getattr(self.ns, "origin", None)
        if flag is not None:
            return parse_origin_flag(flag)
        if self.instance.origin is not None:
            return self.instance.origin
        return _default_origin(self.sys)

    def report(self, algorithm: str, **kw) -> RunReport:
        self.timings["total"] = time.perf_counter() - self.t0
        return RunReport(
            command=self.command,
            algorithm=algorithm,
            instance=instance_to_dict(
                self.sys, self.instance.origin, self.instance.metadata
            ),
            timings=self.timings,
            **kw,
        )

    def emit(self, report: RunReport) -> int:
        include_timings = bool(getattr(self.ns, "timings", False))
        if self.ns.format == "json":
            text = report.to_json(include_timings)
        else:
            text = report.to_text(include_timings)
        _write_output(text, self.ns.out)
        return 0


def _odd_q_max(ns: argparse.Namespace) -> int:
    q_max = getattr(ns, "q_max", 9)
    if q_max < 1 or q_max % 2 == 0:
        raise InputError(f"--q-max must be a positive odd integer, got {q_max}")
    return q_max


def _oracle_comparison(sys_: System, q_max: int, size: int) -> dict:
    report = brute_min_committee(sys_, q_max=q_max)
    return {
        "min_committee_size": report.min_committee_size,
        "q_max": q_max,
        "matches": report.min_committee_size == size,
    }


# --- subcommand handlers --------------------------------------------------------

def _cmd_solve(ns: argparse.Namespace) -> int:
    task = _Task(ns, "solve")
    x = solve_consistent(task.sys)  # raises the negative on inconsistency
    report = task.report(
        "border walk over the half-plane traces",
        extra={"solution": point_to_json(x)},
    )
    return task.emit(report)


def _cmd_mcs_marked(ns: argparse.Namespace) -> int:
    task = _Task(ns, "mcs marked")
    start = ns.start
    if not 1 <= start <= task.sys.m:
        raise InputError(f"--start must be in 1..{task.sys.m}, got {start}")
    ray = canonical_rays(task.sys, start)[0]
    mm, trace = find_marked_mcs(task.sys, start, ray.dir)
    solution = materialize(
        mm.witness, [task.sys.halfplane(j) for j in mm.members]
    )
    report = task.report(
        "marked-subsystem walk",
        marked_mcs=[marked_mcs_to_dict(mm.members, mm.determining_pair,
                                       solution)],
        extra={"start": start, "walk_length": trace.k0},
    )
    return task.emit(report)


def _cmd_mcs_all(ns: argparse.Namespace) -> int:
    task = _Task(ns, "mcs all")
    found = all_marked_mcs(task.sys)
    entries = []
    for mm in found:
        solution = materialize(
            mm.witness, [task.sys.halfplane(j) for j in mm.members]
        )
        entries.append(
            marked_mcs_to_dict(mm.members, mm.determining_pair, solution)
        )
    report = task.report(
        "marked-subsystem walk from every border",
        marked_mcs=entries,
        extra={"count": len(entries)},
    )
    return task.emit(report)


def _cmd_mcs_extend(ns: argparse.Namespace) -> int:
    task = _Task(ns, "mcs extend")
    try:
        seed = sorted({int(tok) for tok in ns.subsystem.split(",")})
    except ValueError:
        raise InputError(f"--subsystem wants \"i,j,...\", got {ns.subsystem!r}")
    for i in seed:
        if not 1 <= i <= task.sys.m:
            raise InputError(f"--subsystem index {i} out of range "
                             f"1..{task.sys.m}")
    if not seed:
        raise InputError("--subsystem must name at least one inequality")
    h0 = solve_consistent(task.sys.subsystem(seed))
    mcs = extend_to_mcs(task.sys, seed, h0)
    witness = mcs.witness
    if not isinstance(witness, Point):
        witness = materialize(
            witness, [task.sys.halfplane(j) for j in mcs.members]
        )
    report = task.report(
        "greedy maximal extension by walk feasibility",
        extra={
            "subsystem": seed,
            "mcs": list(mcs.members),
            "solution": point_to_json(witness),
        },
    )
    return task.emit(report)


def _cmd_committee_build(ns: argparse.Namespace) -> int:
    task = _Task(ns, "committee build")
    z = task.origin()
    gps = GeneralPositionSystem(task.sys)
    K, state = build_committee(gps, z)
    ok, votes = verify_committee(task.sys, K)
    if not ok:
        raise InternalError("constructed committee failed verification")
    extra = {"origin": point_to_json(z), "rounds": len(state.rounds)}
    oracle = None
    if ns.oracle_check:
        oracle = _oracle_comparison(task.sys, _odd_q_max(ns), K.size)
    report = task.report(
        "general committee construction (marked subsystems + angular splits)",
        committee=K,
        votes=votes,
        oracle=oracle,
        extra=extra,
    )
    return task.emit(report)


def _criterion_witness(sys_: System) -> Optional[tuple[int, ...]]:
    """A five-inequality subsystem with no consistent four-element part, if
    one exists (then no three-member committee can exist)."""
    for five in combinations(sys_.indices(), 5):
        if not any(
            is_consistent([sys_.halfplane(k) for k in four])
            for four in combinations(five, 4)
        ):
            return five
    return None


def _cmd_committee_three(ns: argparse.Namespace) -> int:
    task = _Task(ns, "committee three")
    K = three_committee(task.sys)
    if K is None:
        witness = _criterion_witness(task.sys)
        if witness is None:
            raise InternalError(
                "every five inequalities contain a consistent four, yet the "
                "three-member construction failed"
            )
        raise NoCommitteeDetectedError(
            f"no three-member committee exists: inequalities "
            f"{{{', '.join(str(k) for k in witness)}}} contain no "
            f"consistent four-inequality subsystem",
            witness=list(witness),
        )
    ok, votes = verify_committee(task.sys, K)
    if not ok:
        raise InternalError("constructed committee failed verification")
    oracle = None
    if ns.oracle_check:
        oracle = _oracle_comparison(task.sys, _odd_q_max(ns), K.size)
    report = task.report(
        "three-member construction from one marked subsystem",
        committee=K,
        votes=votes,
        oracle=oracle,
    )
    return task.emit(report)


def _cmd_committee_polygon(ns: argparse.Namespace) -> int:
    task = _Task(ns, "committee polygon")
    K, plan = polygon_minimal_committee(task.sys)
    ok, votes = verify_committee(task.sys, K)
    if not ok:
        raise InternalError("constructed committee failed verification")
    extra = {
        "interior_point": point_to_json(plan.z),
        "avoiding_count": plan.k1,
        "qualified_pairs": plan.p,
        "direction_subsystems": plan.q0,
        "polygon_vertices": [point_to_json(v) for v in plan.vertices],
        "augmented": instance_to_dict(plan.augmented),
    }
    oracle = None
    if ns.oracle_check:
        oracle = _oracle_comparison(task.sys, _odd_q_max(ns), K.size)
    report = task.report(
        "polygon vertex-cutting construction",
        committee=K,
        votes=votes,
        oracle=oracle,
        extra=extra,
    )
    return task.emit(report)


def _cmd_committee_verify(ns: argparse.Namespace) -> int:
    task = _Task(ns, "committee verify")
    K = parse_committee_document(_read_input(ns.committee))
    ok, votes = verify_committee(task.sys, K)
    report = task.report(
        "per-inequality vote count",
        committee=K,
        votes=votes,
        extra={"verified": ok},
    )
    task.emit(report)
    if not ok:
        raise NoCommitteeDetectedError(
            "the committee does not verify: some inequality lacks a majority"
        )
    return 0


def _cmd_oracle_cells(ns: argparse.Namespace) -> int:
    task = _Task(ns, "oracle cells")
    cells = arrangement_cells(task.sys)
    entries = sorted(
        (
            "".join("+" if s.name == "INSIDE" else "-" for s in c.signs),
            point_to_json(c.witness),
        )
        for c in cells
    )
    report = task.report(
        "exhaustive arrangement cell enumeration",
        extra={
            "count": len(entries),
            "cells": [{"signs": s, "witness": w} for s, w in entries],
        },
    )
    return task.emit(report)


def _cmd_oracle_mcs(ns: argparse.Namespace) -> int:
    task = _Task(ns, "oracle mcs")
    sets = brute_mcs(task.sys)
    report = task.report(
        "maximal consistent subsystems from the cell arrangement",
        extra={"count": len(sets), "mcs": [list(s) for s in sets]},
    )
    return task.emit(report)


def _cmd_oracle_min_committee(ns: argparse.Namespace) -> int:
    task = _Task(ns, "oracle min-committee")
    q_max = _odd_q_max(ns)
    result = brute_min_committee(task.sys, q_max=q_max)
    if result.min_committee_size is None:
        detail = (
            "no committee exists at any size (two inequalities are "
            "directly opposed)"
            if result.committee_impossible
            else f"no committee of size <= {q_max} found; retry with a "
            f"larger --q-max"
        )
        raise NoCommitteeDetectedError(detail, q_max=q_max)
    report = task.report(
        "exhaustive search over arrangement cells",
        committee=result.witness_committee,
        votes=result.votes,
        extra={"min_committee_size": result.min_committee_size,
               "q_max": q_max},
    )
    return task.emit(report)


def _cmd_gen(ns: argparse.Namespace) -> int:
    if ns.generator == "qgon":
        system = gen_regular_qgon(ns.q, seed=ns.seed)
        metadata = {
            "name": f"regular-{ns.q}-gon",
            "generator": "qgon",
            "q": ns.q,
            "seed": ns.seed,
            "notes": "rational unit normals; the regular pattern is "
                     "certified combinatorially, not metrically",
        }
    elif ns.generator == "example2":
        system = gen_example2(ns.q, seed=ns.seed)
        metadata = {
            "name": f"three-arc-{ns.q}",
            "generator": "example2",
            "q": ns.q,
            "seed": ns.seed,
            "notes": "separator points are rational circle points strictly "
                     "between their neighbors, standing in for exact arc "
                     "midpoints",
        }
    else:
        system = gen_random(ns.m, ns.profile, seed=ns.seed,
                            q_max=_odd_q_max(ns))
        metadata = {
            "name": f"random-{ns.profile}-{ns.m}-{ns.seed}",
            "generator": "random",
            "m": ns.m,
            "profile": ns.profile,
            "seed": ns.seed,
        }
    text = render_instance(system, metadata=metadata, fmt=ns.format)
    _write_output(text, ns.out)
    return 0


def _cmd_plot(ns: argparse.Namespace) -> int:
    task = _Task(ns, "plot")
    overlays_kw: dict = {}
    if ns.report is not None:
        doc = json.loads(_read_input(ns.report))
        if not isinstance(doc, dict):
            raise ParseError("--report: expected a report object")
        if doc.get("committee"):
            overlays_kw["committee"] = parse_committee_document(
                json.dumps({"committee": doc["committee"]})
            )
        verts = (doc.get("extra") or {}).get("polygon_vertices")
        if verts:
            from .io import parse_point

            overlays_kw["polygon"] = tuple(
                parse_point(v, f"polygon_vertices[{i}]")
                for i, v in enumerate(verts, start=1)
            )
    origin_flag = getattr(ns, "origin", None)
    if origin_flag is not None or task.instance.origin is not None:
        from .polar import point_system_of

        overlays_kw["points"] = point_system_of(task.sys, task.origin())
    svg = plot_svg(task.sys, PlotOverlays(**overlays_kw))
    _write_output(svg, ns.out)
    return 0


# --- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="planecommittee",
        description="Committees of infeasible systems of strict linear "
                    "inequalities in the plane, in exact rational "
                    "arithmetic.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    io_flags = argparse.ArgumentParser(add_help=False)
    io_flags.add_argument("--input", required=True,
                          help="instance file (JSON or text; \"-\" = stdin)")
    io_flags.add_argument("--format", choices=("json", "text"),
                          default="json", help="report format")
    io_flags.add_argument("--out", default=None,
                          help="output file (default: stdout)")
    io_flags.add_argument("--timings", action="store_true",
                          help="include wall-clock timings in the report")

    oracle_flags = argparse.ArgumentParser(add_help=False)
    oracle_flags.add_argument("--oracle-check", action="store_true",
                              help="compare against the exhaustive oracle")
    oracle_flags.add_argument("--q-max", type=int, default=9,
                              help="largest committee size the oracle tries")

    p = sub.add_parser("solve", parents=[io_flags],
                       help="solve a consistent system exactly")
    p.set_defaults(func=_cmd_solve)

    mcs = sub.add_parser("mcs", help="maximal consistent subsystems")
    mcs_sub = mcs.add_subparsers(dest="subcmd", required=True)
    p = mcs_sub.add_parser("marked", parents=[io_flags],
                           help="one marked subsystem via the walk")
    p.add_argument("--start", type=int, default=1,
                   help="1-based index of the starting inequality")
    p.set_defaults(func=_cmd_mcs_marked)
    p = mcs_sub.add_parser("all", parents=[io_flags],
                           help="all marked subsystems")
    p.set_defaults(func=_cmd_mcs_all)
    p = mcs_sub.add_parser("extend", parents=[io_flags],
                           help="extend a consistent seed to a maximal one")
    p.add_argument("--subsystem", required=True,
                   help="comma-separated 1-based indices of the seed")
    p.set_defaults(func=_cmd_mcs_extend)

    com = sub.add_parser("committee", help="committee constructions")
    com_sub = com.add_subparsers(dest="subcmd", required=True)
    p = com_sub.add_parser("build", parents=[io_flags, oracle_flags],
                           help="general construction (general position)")
    p.add_argument("--origin", default=None,
                   help="reference point \"x,y\" (exact rationals)")
    p.set_defaults(func=_cmd_committee_build)
    p = com_sub.add_parser("three", parents=[io_flags, oracle_flags],
                           help="three-member committee, or why none exists")
    p.set_defaults(func=_cmd_committee_three)
    p = com_sub.add_parser("polygon", parents=[io_flags, oracle_flags],
                           help="minimal committee for polygon-bounding "
                                "systems")
    p.set_defaults(func=_cmd_committee_polygon)
    p = com_sub.add_parser("verify", parents=[io_flags],
                           help="verify a committee document")
    p.add_argument("--committee", required=True,
                   help="committee or report file (JSON)")
    p.set_defaults(func=_cmd_committee_verify)

    orc = sub.add_parser("oracle", help="exhaustive cross-checks")
    orc_sub = orc.add_subparsers(dest="subcmd", required=True)
    p = orc_sub.add_parser("cells", parents=[io_flags],
                           help="open cells of the border arrangement")
    p.set_defaults(func=_cmd_oracle_cells)
    p = orc_sub.add_parser("mcs", parents=[io_flags],
                           help="all maximal consistent subsystems")
    p.set_defaults(func=_cmd_oracle_mcs)
    p = orc_sub.add_parser("min-committee", parents=[io_flags],
                           help="exhaustive minimal committee search")
    p.add_argument("--q-max", type=int, default=9,
                   help="largest committee size to try")
    p.set_defaults(func=_cmd_oracle_min_committee)

    gen = sub.add_parser("gen", help="instance generators")
    gen_sub = gen.add_subparsers(dest="generator", required=True)
    gen_flags = argparse.ArgumentParser(add_help=False)
    gen_flags.add_argument("--seed", type=int, default=0)
    gen_flags.add_argument("--format", choices=("json", "text"),
                           default="json")
    gen_flags.add_argument("--out", default=None)
    p = gen_sub.add_parser("qgon", parents=[gen_flags],
                           help="rationalized regular odd q-gon pattern")
    p.add_argument("--q", type=int, required=True, help="odd q >= 3")
    p.set_defaults(func=_cmd_gen)
    p = gen_sub.add_parser("example2", parents=[gen_flags],
                           help="three-arc pattern with three marked "
                                "subsystems")
    p.add_argument("--q", type=int, required=True, help="odd q >= 5")
    p.set_defaults(func=_cmd_gen)
    p = gen_sub.add_parser("random", parents=[gen_flags],
                           help="seeded random instance")
    p.add_argument("--m", type=int, required=True,
                   help="number of inequalities, m >= 3")
    p.add_argument("--profile", choices=PROFILES, default="generic")
    p.add_argument("--q-max", type=int, default=9,
                   help="committee bound for the with-committee profile")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("plot", parents=[io_flags],
                       help="deterministic SVG picture of an instance")
    p.add_argument("--origin", default=None,
                   help="draw the colored point system relative to \"x,y\"")
    p.add_argument("--report", default=None,
                   help="overlay the committee/polygon of a report file")
    p.set_defaults(func=_cmd_plot)

    return parser


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    try:
        return ns.func(ns)
    except InputError as e:
        _error(str(e))
        return 2
    except NegativeResult as e:
        _error(str(e))
        return 1
    except BrokenPipeError:
        return 0
    except BaseException as e:
        if isinstance(e, KeyboardInterrupt):
            raise
        _error(f"internal invariant violation: {e}")
        traceback.print_exc(file=_sys.stderr)
        return 3


def main() -> None:
    _sys.exit(cli_main())


if __name__ == "__main__":
    main()
