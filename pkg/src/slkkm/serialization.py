"""JSON documents for colorings and covers, with exact rational round-trips.

Every number is an integer or a rational string like "2/3"; binary
floats never appear, so parse-then-serialize is the identity on
canonical documents. Interval endpoints carry their open/closed flags as
the strings "lo_closed"/"lo_open" and "hi_closed"/"hi_open".
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .coloring import (
    ColoringError,
    KKMCover,
    LebesgueCover,
    PartitionError,
    PointColoring,
    RegionColoring,
    region_coloring,
)
from .geometry import Box, BoxUnion, GeometryError, Interval, Point, box_union, rational

FORMAT_VERSION = 1

# Error codes, one per failure mode.
MALFORMED_JSON = "MALFORMED_JSON"
BAD_DOCUMENT = "BAD_DOCUMENT"
BAD_RATIONAL = "BAD_RATIONAL"
BAD_INTERVAL = "BAD_INTERVAL"
BAD_FLAVOR = "BAD_FLAVOR"
DIMENSION_MISMATCH = "DIMENSION_MISMATCH"
PARTITION_VIOLATION = "PARTITION_VIOLATION"
BAD_COLORING = "BAD_COLORING"


class ParseError(ValueError):
    def __init__(self, code: str, message: str, location: str = "$"):
        super().__init__(f"{code} at {location}: {message}")
        self.code = code
        self.location = location
        self.reason = message


def rat_to_str(x: Fraction) -> str | int:
    if x.denominator == 1:
        return int(x)
    return f"{x.numerator}/{x.denominator}"


def str_to_rat(raw: Any, location: str) -> Fraction:
    if isinstance(raw, bool) or isinstance(raw, float):
        raise ParseError(BAD_RATIONAL, f"expected exact rational, got {raw!r}", location)
    try:
        return rational(raw)
    except GeometryError as exc:
        raise ParseError(BAD_RATIONAL, str(exc), location) from exc


def point_to_json(p: Point) -> list:
    return [rat_to_str(x) for x in p]


def point_from_json(raw: Any, location: str) -> Point:
    if not isinstance(raw, list) or not raw:
        raise ParseError(BAD_DOCUMENT, "point must be a non-empty array", location)
    return tuple(str_to_rat(x, f"{location}[{i}]") for i, x in enumerate(raw))


def interval_to_json(iv: Interval) -> list:
    return [rat_to_str(iv.lo), rat_to_str(iv.hi),
            "lo_closed" if iv.lo_closed else "lo_open",
            "hi_closed" if iv.hi_closed else "hi_open"]


def interval_from_json(raw: Any, location: str) -> Interval:
    if not isinstance(raw, list) or len(raw) != 4:
        raise ParseError(BAD_INTERVAL, "interval must be [lo, hi, lo_flag, hi_flag]", location)
    lo = str_to_rat(raw[0], f"{location}[0]")
    hi = str_to_rat(raw[1], f"{location}[1]")
    flags = {"lo_closed": True, "lo_open": False}
    if raw[2] not in flags:
        raise ParseError(BAD_INTERVAL, f"bad lo flag {raw[2]!r}", f"{location}[2]")
    hi_flags = {"hi_closed": True, "hi_open": False}
    if raw[3] not in hi_flags:
        raise ParseError(BAD_INTERVAL, f"bad hi flag {raw[3]!r}", f"{location}[3]")
    try:
        return Interval(lo, hi, flags[raw[2]], hi_flags[raw[3]])
    except GeometryError as exc:
        raise ParseError(BAD_INTERVAL, str(exc), location) from exc


def box_to_json(b: Box) -> list:
    return [interval_to_json(iv) for iv in b.intervals]


def box_from_json(raw: Any, dim: int, location: str) -> Box:
    if not isinstance(raw, list) or not raw:
        raise ParseError(BAD_DOCUMENT, "box must be a non-empty array of intervals", location)
    ivs = tuple(interval_from_json(item, f"{location}[{i}]") for i, item in enumerate(raw))
    if len(ivs) != dim:
        raise ParseError(DIMENSION_MISMATCH,
                         f"box has {len(ivs)} intervals, document dimension is {dim}", location)
    return Box(ivs)


def boxes_to_json(u: BoxUnion) -> list:
    return [box_to_json(b) for b in u.boxes]


def boxes_from_json(raw: Any, dim: int, location: str) -> BoxUnion:
    if not isinstance(raw, list):
        raise ParseError(BAD_DOCUMENT, "box union must be an array of boxes", location)
    boxes = [box_from_json(item, dim, f"{location}[{i}]") for i, item in enumerate(raw)]
    return box_union(boxes, dim=dim)


# ---------------------------------------------------------------------------
# Documents


def to_document(obj: PointColoring | RegionColoring | LebesgueCover | KKMCover) -> dict:
    if isinstance(obj, PointColoring):
        payload = {
            "points": [point_to_json(p) for p in obj.points],
            "colors": list(obj.colors),
        }
        flavor = "points"
    elif isinstance(obj, RegionColoring):
        payload = {"classes": {label: boxes_to_json(u) for label, u in obj.classes.items()}}
        flavor = "regions"
    elif isinstance(obj, LebesgueCover):
        payload = {"members": [boxes_to_json(m) for m in obj.members]}
        flavor = "lebesgue_cover"
    elif isinstance(obj, KKMCover):
        payload = {"members": {
            "".join(str(b) for b in v): boxes_to_json(m)
            for v, m in sorted(obj.members.items())}}
        flavor = "kkm_cover"
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return {"format_version": FORMAT_VERSION, "dimension": obj.dim,
            "flavor": flavor, "payload": payload}


def serialize_coloring(obj) -> str:
    return json.dumps(to_document(obj), indent=2) + "\n"


def from_document(doc: Any):
    if not isinstance(doc, dict):
        raise ParseError(BAD_DOCUMENT, "document must be a JSON object")
    for key in ("format_version", "dimension", "flavor", "payload"):
        if key not in doc:
            raise ParseError(BAD_DOCUMENT, f"missing field {key!r}")
    if doc["format_version"] != FORMAT_VERSION:
        raise ParseError(BAD_DOCUMENT, f"unsupported format_version {doc['format_version']!r}",
                         "$.format_version")
    dim = doc["dimension"]
    if not isinstance(dim, int) or dim < 1:
        raise ParseError(BAD_DOCUMENT, "dimension must be a positive integer", "$.dimension")
    flavor = doc["flavor"]
    payload = doc["payload"]
    loc = "$.payload"

    if flavor == "points":
        points_raw = _require(payload, "points", loc)
        colors_raw = _require(payload, "colors", loc)
        if not isinstance(colors_raw, list) or not all(isinstance(c, str) for c in colors_raw):
            raise ParseError(BAD_DOCUMENT, "colors must be an array of strings", f"{loc}.colors")
        points = [point_from_json(p, f"{loc}.points[{i}]") for i, p in enumerate(points_raw)]
        for i, p in enumerate(points):
            if len(p) != dim:
                raise ParseError(DIMENSION_MISMATCH,
                                 f"point has {len(p)} coordinates, document dimension is {dim}",
                                 f"{loc}.points[{i}]")
        try:
            return PointColoring(dim, tuple(points), tuple(colors_raw))
        except (ColoringError, GeometryError) as exc:
            raise ParseError(BAD_COLORING, str(exc), loc) from exc

    if flavor == "regions":
        classes_raw = _require(payload, "classes", loc)
        if not isinstance(classes_raw, dict) or not classes_raw:
            raise ParseError(BAD_DOCUMENT, "classes must be a non-empty object", f"{loc}.classes")
        classes = {}
        for label, raw in classes_raw.items():
            classes[label] = boxes_from_json(raw, dim, f"{loc}.classes[{label!r}]")
        try:
            return region_coloring(dim, classes)
        except PartitionError as exc:
            raise ParseError(PARTITION_VIOLATION, str(exc), f"{loc}.classes") from exc
        except (ColoringError, GeometryError) as exc:
            raise ParseError(BAD_COLORING, str(exc), f"{loc}.classes") from exc

    if flavor == "lebesgue_cover":
        members_raw = _require(payload, "members", loc)
        if not isinstance(members_raw, list) or not members_raw:
            raise ParseError(BAD_DOCUMENT, "members must be a non-empty array", f"{loc}.members")
        members = tuple(boxes_from_json(raw, dim, f"{loc}.members[{i}]")
                        for i, raw in enumerate(members_raw))
        try:
            return LebesgueCover(dim, members)
        except (ColoringError, GeometryError) as exc:
            raise ParseError(BAD_COLORING, str(exc), loc) from exc

    if flavor == "kkm_cover":
        members_raw = _require(payload, "members", loc)
        if not isinstance(members_raw, dict):
            raise ParseError(BAD_DOCUMENT, "members must be an object keyed by vertex bits",
                             f"{loc}.members")
        members = {}
        for key, raw in members_raw.items():
            if len(key) != dim or any(ch not in "01" for ch in key):
                raise ParseError(BAD_DOCUMENT, f"bad vertex key {key!r}", f"{loc}.members")
            v = tuple(int(ch) for ch in key)
            members[v] = boxes_from_json(raw, dim, f"{loc}.members[{key!r}]")
        try:
            return KKMCover(dim, members)
        except (ColoringError, GeometryError) as exc:
            raise ParseError(BAD_COLORING, str(exc), loc) from exc

    raise ParseError(BAD_FLAVOR, f"unknown flavor {flavor!r}", "$.flavor")


def parse_coloring(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(MALFORMED_JSON, str(exc)) from exc
    return from_document(doc)


def _require(payload: Any, key: str, location: str):
    if not isinstance(payload, dict) or key not in payload:
        raise ParseError(BAD_DOCUMENT, f"missing field {key!r}", location)
    return payload[key]
