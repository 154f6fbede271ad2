"""Coloring and cover models on the unit cube, with exact validation.

Two flavors of coloring are supported: assignments of color labels to a
finite point set, and partitions of the cube into box-union color
classes. Covers (indexed either by integers or by cube vertices) may
overlap; colorings must partition. The boundary condition checked
throughout is that no color/member touches a pair of opposite faces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .geometry import (
    Box,
    BoxUnion,
    DimensionMismatch,
    Face,
    GeometryError,
    Point,
    ZERO,
    ONE,
    all_faces,
    arrangement_stats,
    ball_box,
    box_union,
    boxunion_difference,
    empty_union,
    in_unit_cube,
    on_opposite_faces,
    rational,
    union_of,
    unit_cube,
)

MAX_REPORTED_VIOLATIONS = 100


class ColoringError(ValueError):
    """Structurally invalid coloring or cover."""


class PartitionError(ColoringError):
    """Region classes fail to partition the cube exactly."""


class CoverError(ColoringError):
    """A cover violates its defining coverage property."""


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a validation check; violations capped at a desk-friendly limit."""

    passed: bool
    violations: tuple[str, ...] = ()
    truncated: bool = False

    @staticmethod
    def from_violations(violations: Sequence[str]) -> "ValidationReport":
        truncated = len(violations) > MAX_REPORTED_VIOLATIONS
        return ValidationReport(
            passed=not violations,
            violations=tuple(violations[:MAX_REPORTED_VIOLATIONS]),
            truncated=truncated,
        )


# ---------------------------------------------------------------------------
# Point colorings


@dataclass(frozen=True)
class PointColoring:
    """Colors assigned to a finite set of points inside the cube."""

    dim: int
    points: tuple[Point, ...]
    colors: tuple[str, ...]

    def __post_init__(self):
        if self.dim < 1:
            raise ColoringError("dimension must be >= 1")
        if len(self.points) != len(self.colors):
            raise ColoringError("every point needs exactly one color")
        if not self.points:
            raise ColoringError("point coloring needs at least one point")
        seen = set()
        for p in self.points:
            if len(p) != self.dim:
                raise DimensionMismatch(f"point {p} has wrong dimension")
            if not in_unit_cube(p):
                raise ColoringError(f"point {p} lies outside the unit cube")
            if p in seen:
                raise ColoringError(f"duplicate point {p}")
            seen.add(p)

    def color_labels(self) -> list[str]:
        """Distinct labels in first-seen order."""
        out: list[str] = []
        for c in self.colors:
            if c not in out:
                out.append(c)
        return out

    def classes(self) -> dict[str, tuple[Point, ...]]:
        out: dict[str, list[Point]] = {}
        for p, c in zip(self.points, self.colors):
            out.setdefault(c, []).append(p)
        return {c: tuple(ps) for c, ps in out.items()}


def validate_slkkm_points(pc: PointColoring) -> ValidationReport:
    """Check that no two same-colored points lie on opposite faces."""
    violations = []
    n = len(pc.points)
    for i in range(n):
        for j in range(i + 1, n):
            if pc.colors[i] == pc.colors[j] and on_opposite_faces(pc.points[i], pc.points[j]):
                violations.append(
                    f"color {pc.colors[i]!r} used on opposite faces: {_fmt_point(pc.points[i])} and {_fmt_point(pc.points[j])}")
    return ValidationReport.from_violations(violations)


# ---------------------------------------------------------------------------
# Region colorings


@dataclass(frozen=True)
class RegionColoring:
    """Partition of the cube into box-union color classes."""

    dim: int
    classes: dict[str, BoxUnion]

    def __post_init__(self):
        if self.dim < 1:
            raise ColoringError("dimension must be >= 1")
        if not self.classes:
            raise ColoringError("region coloring needs at least one class")
        for label, region in self.classes.items():
            if region.dim != self.dim:
                raise DimensionMismatch(f"class {label!r} has wrong dimension")
            if region.is_empty:
                raise ColoringError(f"class {label!r} is empty")

    def labels(self) -> list[str]:
        return list(self.classes)


def region_coloring(dim: int, classes: Mapping[str, BoxUnion], check: bool = True) -> RegionColoring:
    """Build a region coloring; by default verify the partition invariant exactly."""
    rc = RegionColoring(dim, dict(classes))
    if check:
        verify_partition(rc)
    return rc


def verify_partition(rc: RegionColoring) -> None:
    """Exact check that the classes tile [0,1]^d with no overlap and no gap."""
    cube = unit_cube(rc.dim)
    for label, region in rc.classes.items():
        for b in region.boxes:
            if not b.subset_of(cube):
                raise PartitionError(f"class {label!r} has a box escaping the cube")
    stats = arrangement_stats(list(rc.classes.values()), cube)
    if stats.min_count < 1:
        raise PartitionError(f"classes leave the cube uncovered near {_fmt_point(stats.min_witness)}")
    if stats.max_count > 1:
        raise PartitionError(f"classes overlap near {_fmt_point(stats.max_witness)}")


def validate_slkkm_regions(rc: RegionColoring) -> ValidationReport:
    """Check that no class projects onto both endpoints of any axis."""
    violations = []
    for label, region in rc.classes.items():
        for axis in range(rc.dim):
            if region.projection_contains(axis, ZERO) and region.projection_contains(axis, ONE):
                violations.append(
                    f"class {label!r} touches both faces of axis {axis}")
    return ValidationReport.from_violations(violations)


# ---------------------------------------------------------------------------
# Proximate point sets


def is_proximate(points: Sequence[Point], rho, d: int) -> bool:
    """True iff every face is covered by closed rho-balls at its own sample points.

    For each face F the union of (closed ball at y, intersected with F)
    over y in F is compared against F by exact set difference.
    """
    rho = rational(rho)
    if rho < 0:
        raise ColoringError("rho must be >= 0")
    for p in points:
        if len(p) != d:
            raise DimensionMismatch(f"point {p} has wrong dimension")
        if not in_unit_cube(p):
            raise ColoringError(f"point {p} lies outside the unit cube")
    for face in all_faces(d):
        face_box = face.as_box()
        face_points = [p for p in points if face.contains_point(p)]
        if rho == 0:
            covered = box_union([_point_as_box(p) for p in face_points], dim=d)
        else:
            covered = box_union(
                [c for p in face_points
                 if (c := _clip_ball(p, rho, face_box)) is not None], dim=d)
        gap = boxunion_difference(box_union([face_box]), covered)
        if not gap.is_empty:
            return False
    return True


def _point_as_box(p: Point) -> Box:
    from .geometry import point_box
    return point_box(p)


def _clip_ball(center: Point, rho: Fraction, region: Box) -> Box | None:
    from .geometry import intersect_boxes
    return intersect_boxes(ball_box(center, rho, closed=True), region)


# ---------------------------------------------------------------------------
# Covers


@dataclass(frozen=True)
class LebesgueCover:
    """Indexed family of box-union members covering the cube, none spanning opposite faces."""

    dim: int
    members: tuple[BoxUnion, ...]

    def __post_init__(self):
        if self.dim < 1:
            raise ColoringError("dimension must be >= 1")
        if not self.members:
            raise ColoringError("cover needs at least one member")
        if any(m.dim != self.dim for m in self.members):
            raise DimensionMismatch("member dimension differs from cover dimension")


@dataclass(frozen=True)
class KKMCover:
    """Cover indexed by cube vertices; every face is covered by its own vertices' members."""

    dim: int
    members: dict[tuple[int, ...], BoxUnion]

    def __post_init__(self):
        if self.dim < 1:
            raise ColoringError("dimension must be >= 1")
        expected = 2 ** self.dim
        if len(self.members) != expected:
            raise ColoringError(f"need one member per vertex ({expected}), got {len(self.members)}")
        for v, m in self.members.items():
            if len(v) != self.dim or any(b not in (0, 1) for b in v):
                raise ColoringError(f"bad vertex key {v!r}")
            if m.dim != self.dim:
                raise DimensionMismatch(f"member {v} has wrong dimension")


def validate_lebesgue_cover(cov: LebesgueCover) -> ValidationReport:
    violations = []
    cube = unit_cube(cov.dim)
    clipped = [m.clip(cube) for m in cov.members]
    stats = arrangement_stats(clipped, cube)
    if stats.min_count < 1:
        violations.append(f"cube not covered near {_fmt_point(stats.min_witness)}")
    for n, m in enumerate(clipped, start=1):
        for axis in range(cov.dim):
            if m.projection_contains(axis, ZERO) and m.projection_contains(axis, ONE):
                violations.append(f"member {n} touches both faces of axis {axis}")
    return ValidationReport.from_violations(violations)


def validate_kkm_cover(cov: KKMCover) -> ValidationReport:
    violations = []
    for face in all_faces(cov.dim):
        face_box = face.as_box()
        allowed = [cov.members[v].clip(face_box) for v in face.vertices()]
        stats = arrangement_stats(allowed, face_box)
        if stats.min_count < 1:
            violations.append(
                f"face {_fmt_face(face)} not covered by its vertices near {_fmt_point(stats.min_witness)}")
    return ValidationReport.from_violations(violations)


# ---------------------------------------------------------------------------
# Cover-to-coloring conversions


def lebesgue_to_coloring(cov: LebesgueCover) -> RegionColoring:
    """Color every point by the least member index containing it.

    Class n is member n (clipped to the cube) minus all earlier members,
    so class n is contained in member n and the result partitions the cube.
    Colors whose class comes out empty are dropped.
    """
    cube = unit_cube(cov.dim)
    clipped = [m.clip(cube) for m in cov.members]
    stats = arrangement_stats(clipped, cube)
    if stats.min_count < 1:
        raise CoverError(f"not a cover: cube uncovered near {_fmt_point(stats.min_witness)}")
    classes: dict[str, BoxUnion] = {}
    taken = empty_union(cov.dim)
    for n, member in enumerate(clipped, start=1):
        cls = boxunion_difference(member, taken)
        if not cls.is_empty:
            classes[str(n)] = cls
            taken = union_of(taken, cls)
    return region_coloring(cov.dim, classes)


def kkm_to_coloring(cov: KKMCover) -> RegionColoring:
    """Color every point by the lex-least vertex of its smallest face whose member holds it.

    Work face by relatively-open face: within a face, the candidate
    vertices are the face's own vertices in lexicographic order, and each
    vertex's class piece is its member minus everything already claimed.
    """
    d = cov.dim
    classes: dict[str, list[Box]] = {}
    for face in all_faces(d):
        cell = face.interior_box()
        cell_union = box_union([cell])
        taken = empty_union(d)
        for v in face.vertices():
            avail = cov.members[v].clip(cell)
            piece = boxunion_difference(avail, taken)
            if piece.is_empty:
                continue
            classes.setdefault(_vertex_label(v), []).extend(piece.boxes)
            taken = union_of(taken, piece)
        gap = boxunion_difference(cell_union, taken)
        if not gap.is_empty:
            witness = gap.boxes[0].representative()
            raise CoverError(
                f"face {_fmt_face(face)} not covered by its vertices near {_fmt_point(witness)}")
    ordered = {label: box_union(boxes, dim=d) for label, boxes in sorted(classes.items())}
    return region_coloring(d, ordered)


def _vertex_label(v: tuple[int, ...]) -> str:
    return "".join(str(b) for b in v)


def _fmt_point(p: Point) -> str:
    return "(" + ", ".join(str(x) for x in p) + ")"


def _fmt_face(face: Face) -> str:
    return "(" + ", ".join("*" if t is None else str(t) for t in face.tags) + ")"
