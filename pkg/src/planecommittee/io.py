"""Instance and report serialization.

The canonical instance format is JSON with exact rationals written as
strings ("p/q" or "p"; plain JSON integers are accepted too).  A plain-text
format with one inequality per line ("cx cy > b") is accepted for
convenience.  Floating-point numbers are rejected everywhere so that
``parse_instance(render_instance(sys)) == sys`` holds exactly.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Sequence

from .errors import InputError, ParseError, ZeroNormalError
from .geometry import Point
from .polar import Committee, Inequality, System

Rat = Fraction

FORMAT_VERSION = 1

_RAT_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


# --- rationals ---------------------------------------------------------------

def format_rational(r: Rat) -> str:
    """Canonical exact text form: "p/q" or "p"."""
    return str(Fraction(r))


def parse_rational(value: Any, where: str = "value") -> Rat:
    """Exact rational from a JSON scalar: int, or string "p/q" / "p".

    Floats are rejected: decimal notation cannot promise exactness.
    """
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected a rational, got a boolean",
                         field=where)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ParseError(
            f"{where}: floating point is not accepted; write the exact "
            f"rational as a string like \"3/4\"",
            field=where,
        )
    if isinstance(value, str):
        text = value.strip()
        if not _RAT_RE.match(text):
            raise ParseError(
                f"{where}: malformed rational {value!r} (want \"p/q\" or an "
                f"integer)",
                field=where,
            )
        num, slash, den = text.partition("/")
        if slash and int(den) == 0:
            raise ParseError(f"{where}: zero denominator in {value!r}",
                             field=where)
        return Fraction(int(num), int(den)) if slash else Fraction(int(num))
    raise ParseError(f"{where}: expected a rational, got {type(value).__name__}",
                     field=where)


def parse_point(value: Any, where: str = "point") -> Point:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ParseError(f"{where}: expected a pair [x, y]", field=where)
    return Point(parse_rational(value[0], f"{where}[0]"),
                 parse_rational(value[1], f"{where}[1]"))


def point_to_json(p: Point) -> list[str]:
    return [format_rational(p.x), format_rational(p.y)]


# --- instances ---------------------------------------------------------------

@dataclass(frozen=True)
class ParsedInstance:
    system: System
    origin: Optional[Point] = None
    metadata: dict = field(default_factory=dict)

    @property
    def name(self) -> Optional[str]:
        name = self.metadata.get("name")
        return name if isinstance(name, str) else None


def _parse_inequality(entry: Any, where: str) -> Inequality:
    if not isinstance(entry, dict):
        raise ParseError(f"{where}: expected an object", field=where)
    unknown = set(entry) - {"c", "b", "strict"}
    if unknown:
        raise ParseError(f"{where}: unknown keys {sorted(unknown)}",
                         field=where)
    if "c" not in entry or "b" not in entry:
        raise ParseError(f"{where}: needs \"c\" and \"b\"", field=where)
    c = entry["c"]
    if not isinstance(c, (list, tuple)) or len(c) != 2:
        raise ParseError(f"{where}.c: expected a pair [cx, cy]",
                         field=f"{where}.c")
    cx = parse_rational(c[0], f"{where}.c[0]")
    cy = parse_rational(c[1], f"{where}.c[1]")
    b = parse_rational(entry["b"], f"{where}.b")
    strict = entry.get("strict", True)
    if not isinstance(strict, bool):
        raise ParseError(f"{where}.strict: expected a boolean",
                         field=f"{where}.strict")
    return Inequality(cx, cy, b, strict)


def _parse_json_instance(doc: Any) -> ParsedInstance:
    if not isinstance(doc, dict):
        raise ParseError("top level: expected an object", field="")
    version = doc.get("version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported format version {version!r}",
                         field="version")
    entries = doc.get("inequalities")
    if not isinstance(entries, list) or not entries:
        raise ParseError("\"inequalities\" must be a non-empty list",
                         field="inequalities")
    ineqs = []
    for i, entry in enumerate(entries, start=1):
        where = f"inequalities[{i}]"
        try:
            ineqs.append(_parse_inequality(entry, where))
        except ZeroNormalError:
            raise ZeroNormalError(f"{where}: zero normal vector", j=i)
    system = System(tuple(ineqs))
    origin = None
    if doc.get("origin") is not None:
        origin = parse_point(doc["origin"], "origin")
    metadata = doc.get("metadata", {})
    if not isinstance(metadata, dict):
        raise ParseError("\"metadata\" must be an object", field="metadata")
    return ParsedInstance(system, origin, metadata)


_TEXT_RE = re.compile(
    r"^\s*(?P<cx>\S+)\s+(?P<cy>\S+)\s*(?P<op>>=|>)\s*(?P<b>\S+)\s*$"
)


def _parse_text_instance(text: str) -> ParsedInstance:
    ineqs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _TEXT_RE.match(line)
        if m is None:
            raise ParseError(
                f"line {lineno}: expected \"cx cy > b\", got {raw.strip()!r}",
                line=lineno,
            )
        where = f"line {lineno}"
        cx = parse_rational(m.group("cx"), where)
        cy = parse_rational(m.group("cy"), where)
        b = parse_rational(m.group("b"), where)
        if cx == 0 and cy == 0:
            raise ZeroNormalError(f"{where}: zero normal vector", j=lineno)
        ineqs.append(Inequality(cx, cy, b, m.group("op") == ">"))
    if not ineqs:
        raise ParseError("no inequalities found", line=0)
    return ParsedInstance(System(tuple(ineqs)))


def parse_instance(text: str) -> ParsedInstance:
    """Parse a JSON or plain-text instance document.

    The document is JSON when its first non-blank character is "{";
    otherwise it is read one inequality per line ("cx cy > b", rationals as
    "p/q", "#" starts a comment).
    """
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e.msg} (line {e.lineno})",
                             line=e.lineno)
        return _parse_json_instance(doc)
    return _parse_text_instance(text)


def instance_to_dict(
    system: System,
    origin: Optional[Point] = None,
    metadata: Optional[dict] = None,
) -> dict:
    doc: dict = {
        "version": FORMAT_VERSION,
        "inequalities": [
            {
                "c": [format_rational(q.cx), format_rational(q.cy)],
                "b": format_rational(q.b),
                "strict": q.strict,
            }
            for q in system.inequalities
        ],
    }
    if origin is not None:
        doc["origin"] = point_to_json(origin)
    if metadata:
        doc["metadata"] = metadata
    return doc


def render_instance(
    system: System,
    origin: Optional[Point] = None,
    metadata: Optional[dict] = None,
    fmt: str = "json",
) -> str:
    """Serialize an instance; ``parse_instance`` inverts it exactly."""
    if fmt == "json":
        doc = instance_to_dict(system, origin, metadata)
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "text":
        if origin is not None:
            raise InputError("the text format cannot carry an origin; "
                             "use the JSON format")
        lines = []
        for key in sorted(metadata or {}):
            lines.append(f"# {key}: {(metadata or {})[key]}")
        for q in system.inequalities:
            op = ">" if q.strict else ">="
            lines.append(
                f"{format_rational(q.cx)} {format_rational(q.cy)} {op} "
                f"{format_rational(q.b)}"
            )
        return "\n".join(lines) + "\n"
    raise InputError(f"unknown format {fmt!r}")


# --- committees --------------------------------------------------------------

def committee_to_json(K: Committee) -> list[list[str]]:
    return [point_to_json(p) for p in K.members]


def parse_committee_document(text: str) -> Committee:
    """Committee from a JSON document: either a bare list of points, an
    object with a "committee" key, or a full run report."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg} (line {e.lineno})",
                         line=e.lineno)
    if isinstance(doc, dict):
        doc = doc.get("committee")
    if not isinstance(doc, list) or not doc:
        raise ParseError("no committee found in document", field="committee")
    members = tuple(
        parse_point(entry, f"committee[{i}]")
        for i, entry in enumerate(doc, start=1)
    )
    return Committee(members)


# --- run reports ---------------------------------------------------------------

@dataclass
class RunReport:
    """Result document of one CLI run: echo of the input, what was computed,
    and the exact values.  A committee in a report always re-verifies when
    loaded back against the echoed instance."""

    command: str
    algorithm: str
    instance: dict
    committee: Optional[Committee] = None
    votes: Optional[list[int]] = None
    marked_mcs: Optional[list[dict]] = None
    oracle: Optional[dict] = None
    extra: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    def to_dict(self, include_timings: bool = False) -> dict:
        doc: dict = {
            "version": FORMAT_VERSION,
            "command": self.command,
            "algorithm": self.algorithm,
            "instance": self.instance,
        }
        if self.committee is not None:
            doc["committee"] = committee_to_json(self.committee)
        if self.votes is not None:
            doc["votes"] = list(self.votes)
        if self.marked_mcs is not None:
            doc["marked_mcs"] = self.marked_mcs
        if self.oracle is not None:
            doc["oracle"] = self.oracle
        if self.extra:
            doc["extra"] = self.extra
        if include_timings:
            doc["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return doc

    def to_json(self, include_timings: bool = False) -> str:
        return json.dumps(self.to_dict(include_timings), indent=2) + "\n"

    def to_text(self, include_timings: bool = False) -> str:
        lines = [f"command: {self.command}", f"algorithm: {self.algorithm}"]
        n = len(self.instance.get("inequalities", []))
        lines.append(f"instance: {n} inequalities")
        if self.committee is not None:
            lines.append(f"committee ({self.committee.size} members):")
            for p, mult in self.committee.with_multiplicity():
                suffix = f"  (x{mult})" if mult > 1 else ""
                lines.append(
                    f"  ({format_rational(p.x)}, {format_rational(p.y)})"
                    f"{suffix}"
                )
        if self.votes is not None:
            total = self.committee.size if self.committee is not None else 0
            lines.append("votes:")
            for j, v in enumerate(self.votes, start=1):
                lines.append(f"  inequality {j}: {v}/{total}")
        if self.marked_mcs is not None:
            lines.append(f"marked maximal consistent subsystems "
                         f"({len(self.marked_mcs)}):")
            for entry in self.marked_mcs:
                members = ", ".join(str(i) for i in entry["members"])
                pair = entry["determining_pair"]
                lines.append(f"  {{{members}}}  determining pair "
                             f"({pair[0]}, {pair[1]})")
                if "solution" in entry:
                    x, y = entry["solution"]
                    lines.append(f"    solution ({x}, {y})")
        if self.oracle is not None:
            lines.append("oracle:")
            for key in sorted(self.oracle):
                lines.append(f"  {key}: {self.oracle[key]}")
        for key in sorted(self.extra):
            value = self.extra[key]
            if isinstance(value, (dict, list)):
                value = json.dumps(value)
            lines.append(f"{key}: {value}")
        if include_timings:
            for key in sorted(self.timings):
                lines.append(f"time[{key}]: {self.timings[key]:.6f}s")
        return "\n".join(lines) + "\n"


def marked_mcs_to_dict(members: Sequence[int],
                       determining_pair: Sequence[int],
                       solution: Optional[Point] = None) -> dict:
    entry: dict = {
        "members": list(members),
        "determining_pair": list(determining_pair),
    }
    if solution is not None:
        entry["solution"] = point_to_json(solution)
    return entry


def parse_origin_flag(text: str, where: str = "--origin") -> Point:
    """Parse an "x,y" pair of rationals from a command-line flag."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise ParseError(f"{where}: expected \"x,y\"", field=where)
    return Point(parse_rational(parts[0], f"{where} x"),
                 parse_rational(parts[1], f"{where} y"))
