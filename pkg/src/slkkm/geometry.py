"""Exact rational geometry on the unit cube.

Intervals, boxes, and finite box unions with per-endpoint open/closed
flags are the universal region representation in this package: color
classes, covers, l-infinity balls, and Minkowski sums all reduce to
finite unions of axis-aligned boxes with rational endpoints, so every
predicate (membership, emptiness, coverage, depth) is decided exactly.

The arrangement engine compresses a family of box unions onto the grid
of its endpoint coordinates and evaluates one representative per atomic
cell.  Atomic cells are products of degenerate (single point) pieces and
open pieces between consecutive endpoints, so open/closed distinctions
are honored exactly; membership of a representative decides membership
of its whole cell because cell boundaries are arrangement endpoints.
"""

from __future__ import annotations

import itertools
import math
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

Rational = Fraction
Point = tuple[Fraction, ...]
Orientation = tuple[int, ...]

ZERO = Fraction(0)
ONE = Fraction(1)

# Hard cap on compressed-grid size; inputs are expected at desk scale.
MAX_GRID_CELLS = 50_000_000


class GeometryError(ValueError):
    """Invalid geometric construction or argument."""


class DimensionMismatch(GeometryError):
    """Operands live in different ambient dimensions."""


def rational(value: int | str | Fraction) -> Fraction:
    """Coerce to an exact Fraction.

    Floats are rejected: a binary float that looks like 0.1 is not 1/10,
    and exactness is the whole point of this package.
    """
    if isinstance(value, float):
        raise GeometryError(f"refusing to coerce inexact float {value!r}; pass a string like '1/10'")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise GeometryError(f"not a rational value: {value!r}") from exc


def as_point(coords: Iterable, dim: int | None = None) -> Point:
    pt = tuple(rational(c) for c in coords)
    if len(pt) < 1:
        raise GeometryError("points must have dimension >= 1")
    if dim is not None and len(pt) != dim:
        raise DimensionMismatch(f"expected dimension {dim}, got {len(pt)}")
    return pt


def in_unit_cube(p: Point) -> bool:
    return all(ZERO <= x <= ONE for x in p)


def linf_distance(a: Point, b: Point) -> Fraction:
    """Exact l-infinity distance between two points of equal dimension."""
    if len(a) != len(b):
        raise DimensionMismatch(f"dimensions {len(a)} and {len(b)} differ")
    return max(abs(x - y) for x, y in zip(a, b))


def on_opposite_faces(a: Point, b: Point) -> bool:
    """True iff some coordinate separates the points onto the 0-face and 1-face."""
    if len(a) != len(b):
        raise DimensionMismatch(f"dimensions {len(a)} and {len(b)} differ")
    for p in (a, b):
        if not in_unit_cube(p):
            raise GeometryError(f"point {p} lies outside the unit cube")
    return any((x == ZERO and y == ONE) or (x == ONE and y == ZERO) for x, y in zip(a, b))


def clamp_map(p: Point, eps) -> Point:
    """Coordinate-wise truncation of the eps-extended cube back onto [0,1]^d.

    Values at or below 0 map to 0, values at or above 1 map to 1, and the
    open interior is fixed. 1-Lipschitz in l-infinity.
    """
    eps = rational(eps)
    out = []
    for x in p:
        if x < -eps or x > ONE + eps:
            raise GeometryError(f"coordinate {x} outside extended cube [-{eps}, 1+{eps}]")
        out.append(ZERO if x <= ZERO else ONE if x >= ONE else x)
    return tuple(out)


# ---------------------------------------------------------------------------
# Faces of the cube


@dataclass(frozen=True)
class Face:
    """A face of [0,1]^d given by per-coordinate tags: 0, 1, or None (free)."""

    tags: tuple[int | None, ...]

    def __post_init__(self):
        if len(self.tags) < 1:
            raise GeometryError("faces must have dimension >= 1")
        if any(t not in (0, 1, None) for t in self.tags):
            raise GeometryError(f"bad face tags {self.tags}")

    @property
    def dim(self) -> int:
        return len(self.tags)

    @property
    def free_count(self) -> int:
        return sum(1 for t in self.tags if t is None)

    def as_box(self) -> "Box":
        """The face as a closed box (free coordinates span [0,1])."""
        return Box(tuple(
            closed_interval(ZERO, ONE) if t is None else point_interval(Fraction(t))
            for t in self.tags))

    def interior_box(self) -> "Box":
        """The relatively open face: free coordinates span (0,1)."""
        return Box(tuple(
            open_interval(ZERO, ONE) if t is None else point_interval(Fraction(t))
            for t in self.tags))

    def vertices(self) -> Iterator[tuple[int, ...]]:
        """Vertices of the cube lying on this face, in lexicographic order."""
        choices = [(0, 1) if t is None else (t,) for t in self.tags]
        return itertools.product(*choices)

    def contains_point(self, p: Point) -> bool:
        if len(p) != self.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {len(p)} differ")
        return all(t is None or Fraction(t) == x for t, x in zip(self.tags, p))


def all_faces(d: int) -> Iterator[Face]:
    """All 3^d faces of [0,1]^d, deterministic order."""
    if d < 1:
        raise GeometryError("dimension must be >= 1")
    for tags in itertools.product((0, 1, None), repeat=d):
        yield Face(tags)


def smallest_face(p: Point) -> Face:
    """The intersection of all faces containing p (itself a face)."""
    if not in_unit_cube(p):
        raise GeometryError(f"point {p} lies outside the unit cube")
    return Face(tuple(0 if x == ZERO else 1 if x == ONE else None for x in p))


# ---------------------------------------------------------------------------
# Intervals


@dataclass(frozen=True)
class Interval:
    """Rational interval with independent open/closed endpoint flags.

    Valid iff lo < hi, or lo == hi with both endpoints closed (a point).
    """

    lo: Fraction
    hi: Fraction
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        if not (isinstance(self.lo, Fraction) and isinstance(self.hi, Fraction)):
            raise GeometryError("interval endpoints must be Fractions; use the interval() factory")
        if self.lo > self.hi:
            raise GeometryError(f"empty interval: lo {self.lo} > hi {self.hi}")
        if self.lo == self.hi and not (self.lo_closed and self.hi_closed):
            raise GeometryError(f"degenerate interval at {self.lo} must be closed on both ends")

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    def contains(self, x: Fraction) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and not self.lo_closed:
            return False
        if x == self.hi and not self.hi_closed:
            return False
        return True

    def subset_of(self, other: "Interval") -> bool:
        lo_ok = other.lo < self.lo or (other.lo == self.lo and (other.lo_closed or not self.lo_closed))
        hi_ok = other.hi > self.hi or (other.hi == self.hi and (other.hi_closed or not self.hi_closed))
        return lo_ok and hi_ok

    def representative(self) -> Fraction:
        return self.lo if self.is_degenerate else (self.lo + self.hi) / 2

    def minkowski_add(self, other: "Interval") -> "Interval":
        # An endpoint of the sum is attained iff both summand endpoints are.
        return Interval(self.lo + other.lo, self.hi + other.hi,
                        self.lo_closed and other.lo_closed,
                        self.hi_closed and other.hi_closed)

    def translate(self, offset: Fraction) -> "Interval":
        return Interval(self.lo + offset, self.hi + offset, self.lo_closed, self.hi_closed)


def interval(lo, hi, lo_closed: bool = True, hi_closed: bool = True) -> Interval:
    return Interval(rational(lo), rational(hi), bool(lo_closed), bool(hi_closed))


def closed_interval(lo, hi) -> Interval:
    return interval(lo, hi, True, True)


def open_interval(lo, hi) -> Interval:
    return interval(lo, hi, False, False)


def point_interval(v) -> Interval:
    v = rational(v)
    return Interval(v, v, True, True)


def _try_interval(lo: Fraction, hi: Fraction, lo_closed: bool, hi_closed: bool) -> Interval | None:
    """Build an interval, or None if the description is empty."""
    if lo > hi:
        return None
    if lo == hi and not (lo_closed and hi_closed):
        return None
    return Interval(lo, hi, lo_closed, hi_closed)


def intersect_intervals(a: Interval, b: Interval) -> Interval | None:
    if a.lo > b.lo:
        lo, lo_closed = a.lo, a.lo_closed
    elif b.lo > a.lo:
        lo, lo_closed = b.lo, b.lo_closed
    else:
        lo, lo_closed = a.lo, a.lo_closed and b.lo_closed
    if a.hi < b.hi:
        hi, hi_closed = a.hi, a.hi_closed
    elif b.hi < a.hi:
        hi, hi_closed = b.hi, b.hi_closed
    else:
        hi, hi_closed = a.hi, a.hi_closed and b.hi_closed
    return _try_interval(lo, hi, lo_closed, hi_closed)


def _interval_minus_parts(a: Interval, c: Interval) -> list[Interval]:
    """The (up to two) pieces of a strictly below/above c. c must be a ∩ something."""
    parts = []
    below = _try_interval(a.lo, c.lo, a.lo_closed, not c.lo_closed)
    if below is not None:
        parts.append(below)
    above = _try_interval(c.hi, a.hi, not c.hi_closed, a.hi_closed)
    if above is not None:
        parts.append(above)
    return parts


# ---------------------------------------------------------------------------
# Boxes


@dataclass(frozen=True)
class Box:
    """Product of intervals; never empty (every factor is a valid interval)."""

    intervals: tuple[Interval, ...]

    def __post_init__(self):
        if len(self.intervals) < 1:
            raise GeometryError("boxes must have dimension >= 1")

    @property
    def dim(self) -> int:
        return len(self.intervals)

    @property
    def measure(self) -> Fraction:
        m = ONE
        for iv in self.intervals:
            m *= iv.length
        return m

    def contains(self, p: Point) -> bool:
        if len(p) != self.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {len(p)} differ")
        return all(iv.contains(x) for iv, x in zip(self.intervals, p))

    def subset_of(self, other: "Box") -> bool:
        if other.dim != self.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim} differ")
        return all(a.subset_of(b) for a, b in zip(self.intervals, other.intervals))

    def representative(self) -> Point:
        return tuple(iv.representative() for iv in self.intervals)

    def minkowski_add(self, other: "Box") -> "Box":
        if other.dim != self.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim} differ")
        return Box(tuple(a.minkowski_add(b) for a, b in zip(self.intervals, other.intervals)))

    def translate(self, offset: Point) -> "Box":
        return Box(tuple(iv.translate(o) for iv, o in zip(self.intervals, offset)))


def box(*ivs: Interval) -> Box:
    return Box(tuple(ivs))


def unit_cube(d: int) -> Box:
    if d < 1:
        raise GeometryError("dimension must be >= 1")
    return Box(tuple(closed_interval(0, 1) for _ in range(d)))


def extended_cube(d: int, eps) -> Box:
    eps = rational(eps)
    if eps <= 0:
        raise GeometryError("extension radius must be positive")
    return Box(tuple(closed_interval(-eps, ONE + eps) for _ in range(d)))


def ball_box(center: Point, radius, closed: bool = False) -> Box:
    """The l-infinity ball of the given radius as a box."""
    radius = rational(radius)
    if radius <= 0:
        raise GeometryError("ball radius must be positive")
    return Box(tuple(Interval(c - radius, c + radius, closed, closed) for c in center))


def point_box(p: Point) -> Box:
    return Box(tuple(point_interval(x) for x in p))


@dataclass(frozen=True)
class BallSpec:
    """Center, radius and openness of an l-infinity ball."""

    center: Point
    radius: Fraction
    closed: bool = False

    def __post_init__(self):
        if self.radius <= 0:
            raise GeometryError("ball radius must be positive")

    def as_box(self) -> Box:
        return ball_box(self.center, self.radius, self.closed)


def intersect_boxes(a: Box, b: Box) -> Box | None:
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions {a.dim} and {b.dim} differ")
    ivs = []
    for x, y in zip(a.intervals, b.intervals):
        iv = intersect_intervals(x, y)
        if iv is None:
            return None
        ivs.append(iv)
    return Box(tuple(ivs))


def box_subtract(a: Box, b: Box) -> list[Box]:
    """a minus b as pairwise disjoint boxes (axis-by-axis splitting)."""
    core = intersect_boxes(a, b)
    if core is None:
        return [a]
    pieces = []
    for i in range(a.dim):
        for part in _interval_minus_parts(a.intervals[i], core.intervals[i]):
            pieces.append(Box(core.intervals[:i] + (part,) + a.intervals[i + 1:]))
    return pieces


def oriented_quadrant(v: Orientation, eps) -> Box:
    """The open orthant of the eps-ball at the origin on the side opposite v.

    Coordinate i is (-eps, 0) for v_i = +1 and (0, eps) for v_i = -1, so
    adding the quadrant to a region pushes it away from the side the
    orientation says the region avoids.
    """
    eps = rational(eps)
    if eps <= 0:
        raise GeometryError("quadrant radius must be positive")
    if len(v) < 1 or any(s not in (-1, 1) for s in v):
        raise GeometryError(f"bad orientation {v!r}")
    return Box(tuple(
        open_interval(-eps, 0) if s == 1 else open_interval(0, eps)
        for s in v))


# ---------------------------------------------------------------------------
# Box unions


@dataclass(frozen=True)
class BoxUnion:
    """Finite union of boxes; input boxes need not be disjoint."""

    dim: int
    boxes: tuple[Box, ...]

    def __post_init__(self):
        if self.dim < 1:
            raise GeometryError("dimension must be >= 1")
        if any(b.dim != self.dim for b in self.boxes):
            raise DimensionMismatch("all boxes in a union must share one dimension")

    @property
    def is_empty(self) -> bool:
        # Boxes are never empty, so the union is empty iff there are none.
        return not self.boxes

    def contains(self, p: Point) -> bool:
        return any(b.contains(p) for b in self.boxes)

    def intersects_box(self, other: Box) -> bool:
        return any(intersect_boxes(b, other) is not None for b in self.boxes)

    def intersects(self, other: "BoxUnion") -> bool:
        return any(self.intersects_box(b) for b in other.boxes)

    def clip(self, region: Box) -> "BoxUnion":
        kept = []
        for b in self.boxes:
            c = intersect_boxes(b, region)
            if c is not None:
                kept.append(c)
        return BoxUnion(self.dim, tuple(kept))

    def translate(self, offset: Point) -> "BoxUnion":
        return BoxUnion(self.dim, tuple(b.translate(offset) for b in self.boxes))

    def minkowski_box(self, b: Box) -> "BoxUnion":
        """Minkowski sum with a single box (sum distributes over the union)."""
        if b.dim != self.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {b.dim} differ")
        return BoxUnion(self.dim, tuple(x.minkowski_add(b) for x in self.boxes))

    def canonical(self) -> "BoxUnion":
        """Equivalent union of pairwise disjoint boxes."""
        result: list[Box] = []
        for b in self.boxes:
            pieces = [b]
            for r in result:
                pieces = [q for p in pieces for q in box_subtract(p, r)]
                if not pieces:
                    break
            result.extend(pieces)
        return BoxUnion(self.dim, tuple(result))

    def projection_contains(self, axis: int, value) -> bool:
        """Exact membership of value in the projection onto the given axis."""
        value = rational(value)
        return any(b.intervals[axis].contains(value) for b in self.boxes)

    def hull_box(self) -> Box | None:
        if not self.boxes:
            return None
        ivs = []
        for i in range(self.dim):
            lo = min(b.intervals[i].lo for b in self.boxes)
            hi = max(b.intervals[i].hi for b in self.boxes)
            ivs.append(closed_interval(lo, hi))
        return Box(tuple(ivs))

    def measure(self) -> Fraction:
        """Exact Lebesgue measure (openness flags are measure-irrelevant)."""
        if not self.boxes:
            return ZERO
        grid = _Grid([self.boxes], self.hull_box())
        return grid.covered_measure()


def box_union(boxes: Iterable[Box], dim: int | None = None) -> BoxUnion:
    boxes = tuple(boxes)
    if dim is None:
        if not boxes:
            raise GeometryError("an empty union needs an explicit dimension")
        dim = boxes[0].dim
    return BoxUnion(dim, boxes)


def empty_union(dim: int) -> BoxUnion:
    return BoxUnion(dim, ())


def union_of(a: BoxUnion, b: BoxUnion) -> BoxUnion:
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions {a.dim} and {b.dim} differ")
    return BoxUnion(a.dim, a.boxes + b.boxes)


def boxunion_difference(a: BoxUnion, b: BoxUnion) -> BoxUnion:
    """Exact set difference a minus b, returned in canonical (disjoint) form."""
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions {a.dim} and {b.dim} differ")
    pieces = list(a.canonical().boxes)
    for bb in b.boxes:
        pieces = [q for p in pieces for q in box_subtract(p, bb)]
        if not pieces:
            break
    return BoxUnion(a.dim, tuple(pieces))


def boxunion_subset(a: BoxUnion, b: BoxUnion) -> bool:
    return boxunion_difference(a, b).is_empty


def boxunion_equal(a: BoxUnion, b: BoxUnion) -> bool:
    return boxunion_subset(a, b) and boxunion_subset(b, a)


def boxunion_measure(u: BoxUnion) -> Fraction:
    return u.measure()


def minkowski_sum_open_box(u: BoxUnion, b: Box) -> BoxUnion:
    """Minkowski sum of a union with an all-open box; the result is open."""
    if b.dim != u.dim:
        raise DimensionMismatch(f"dimensions {u.dim} and {b.dim} differ")
    for iv in b.intervals:
        if iv.lo_closed or iv.hi_closed or iv.length <= 0:
            raise GeometryError("summand box must be open with positive side lengths")
    return u.minkowski_box(b)


# ---------------------------------------------------------------------------
# Compressed-grid arrangement engine


class _Axis:
    """Atomic pieces of one axis: alternating points and open gaps.

    Piece 2j is the point values[j]; piece 2j+1 is the open interval
    (values[j], values[j+1]). Any interval whose endpoints are grid
    values covers a contiguous range of pieces.
    """

    def __init__(self, values: list[Fraction], region_iv: Interval):
        self.values = values
        self.n_pieces = 2 * len(values) - 1
        valid = np.ones(self.n_pieces, dtype=bool)
        # Boundary point pieces exist only if the region includes them.
        if not region_iv.lo_closed:
            valid[0] = False
        if not region_iv.hi_closed:
            valid[-1] = False
        self.valid = valid

    def locate(self, v: Fraction) -> int:
        i = bisect_left(self.values, v)
        assert i < len(self.values) and self.values[i] == v
        return i

    def piece_range(self, iv: Interval) -> tuple[int, int]:
        p = self.locate(iv.lo)
        q = self.locate(iv.hi)
        start = 2 * p if iv.lo_closed else 2 * p + 1
        end = 2 * q if iv.hi_closed else 2 * q - 1
        return start, end

    def piece_interval(self, j: int) -> Interval:
        if j % 2 == 0:
            return point_interval(self.values[j // 2])
        return open_interval(self.values[(j - 1) // 2], self.values[(j + 1) // 2])

    def piece_rep(self, j: int) -> Fraction:
        if j % 2 == 0:
            return self.values[j // 2]
        lo = self.values[(j - 1) // 2]
        hi = self.values[(j + 1) // 2]
        return (lo + hi) / 2

    def gap_lengths(self) -> list[Fraction]:
        return [b - a for a, b in zip(self.values, self.values[1:])]

    def tie_order(self) -> list[int]:
        """Piece indices sorted by (lo, open piece before its lo point).

        Witness selection scans cells in this order, so ties at equal lo
        resolve to the open piece; this keeps witnesses off incidental
        grid points when a whole open cell attains the extremum.
        """
        m = len(self.values)
        order = []
        for j in range(m - 1):
            order.extend((2 * j + 1, 2 * j))
        order.append(2 * m - 2)
        return order


class _Grid:
    """Membership counts of a family of box lists over the atomic cells of a region."""

    def __init__(self, members: Sequence[Sequence[Box]], region: Box):
        self.region = region
        d = region.dim
        clipped: list[list[Box]] = []
        for member in members:
            kept = []
            for b in member:
                if b.dim != d:
                    raise DimensionMismatch("family member dimension differs from region")
                c = intersect_boxes(b, region)
                if c is not None:
                    kept.append(c)
            clipped.append(kept)

        axes = []
        for i in range(d):
            vals = {region.intervals[i].lo, region.intervals[i].hi}
            for member in clipped:
                for b in member:
                    vals.add(b.intervals[i].lo)
                    vals.add(b.intervals[i].hi)
            axes.append(_Axis(sorted(vals), region.intervals[i]))
        self.axes = axes

        shape = tuple(ax.n_pieces for ax in axes)
        if math.prod(shape) > MAX_GRID_CELLS:
            raise GeometryError(f"arrangement too large: {math.prod(shape)} atomic cells")
        counts = np.zeros(shape, dtype=np.int32)
        mask = np.empty(shape, dtype=bool)
        for member in clipped:
            if not member:
                continue
            mask[...] = False
            for b in member:
                sl = tuple(slice(*_inclusive(ax.piece_range(iv)))
                           for ax, iv in zip(axes, b.intervals))
                mask[sl] = True
            counts += mask
        self.counts = counts

        valid = np.ones(shape, dtype=bool)
        for axis_i, ax in enumerate(axes):
            vec_shape = [1] * d
            vec_shape[axis_i] = ax.n_pieces
            valid &= ax.valid.reshape(vec_shape)
        self.valid = valid

    def cell_at(self, idx: tuple[int, ...]) -> Box:
        return Box(tuple(ax.piece_interval(j) for ax, j in zip(self.axes, idx)))

    def rep_at(self, idx: tuple[int, ...]) -> Point:
        return tuple(ax.piece_rep(j) for ax, j in zip(self.axes, idx))

    def _select(self, masked: np.ndarray, pick) -> tuple[int, tuple[int, ...]]:
        orders = [ax.tie_order() for ax in self.axes]
        view = masked[np.ix_(*orders)]
        flat = int(pick(view))
        idx = np.unravel_index(flat, view.shape)
        true_idx = tuple(order[int(j)] for order, j in zip(orders, idx))
        return int(masked[true_idx]), true_idx

    def max_cell(self) -> tuple[int, tuple[int, ...]]:
        masked = np.where(self.valid, self.counts, -1)
        return self._select(masked, np.argmax)

    def min_cell(self) -> tuple[int, tuple[int, ...]]:
        sentinel = int(self.counts.max(initial=0)) + 1
        masked = np.where(self.valid, self.counts, sentinel)
        return self._select(masked, np.argmin)

    def covered_measure(self) -> Fraction:
        """Total volume of cells with count >= 1 (only full-dimensional cells count)."""
        d = self.region.dim
        sub = self.counts[(slice(1, None, 2),) * d]
        lengths = [ax.gap_lengths() for ax in self.axes]
        total = ZERO
        for idx in zip(*np.nonzero(sub)):
            vol = ONE
            for axis, j in enumerate(idx):
                vol *= lengths[axis][int(j)]
            total += vol
        return total


def _inclusive(rng: tuple[int, int]) -> tuple[int, int]:
    start, end = rng
    return start, end + 1


@dataclass(frozen=True)
class DepthResult:
    """Maximum multiplicity of a box-union family over a region."""

    max_multiplicity: int
    witness: Point
    witness_cell: Box


@dataclass(frozen=True)
class ArrangementStats:
    """Extremes of the membership count over the atomic cells of a region."""

    min_count: int
    min_witness: Point
    min_cell: Box
    max_count: int
    max_witness: Point
    max_cell: Box


def arrangement_stats(members: Sequence[BoxUnion], region: Box) -> ArrangementStats:
    """Exact min/max membership counts; the region may be degenerate (a face)."""
    grid = _Grid([m.boxes for m in members], region)
    lo, lo_idx = grid.min_cell()
    hi, hi_idx = grid.max_cell()
    return ArrangementStats(lo, grid.rep_at(lo_idx), grid.cell_at(lo_idx),
                            hi, grid.rep_at(hi_idx), grid.cell_at(hi_idx))


def depth_arrangement(family: Sequence[BoxUnion], region: Box) -> DepthResult:
    """Exact maximum over the region of the number of family members containing a point.

    Ties between cells break to the lexicographically least atomic cell.
    Guaranteed at least ceil(sum of member measures inside the region over
    the region measure) by the continuous pigeonhole principle.
    """
    if region.measure == 0:
        raise GeometryError("depth region must have positive measure")
    if not family:
        return DepthResult(0, region.representative(), region)
    if any(u.dim != region.dim for u in family):
        raise DimensionMismatch("family member dimension differs from region")
    grid = _Grid([u.boxes for u in family], region)
    count, idx = grid.max_cell()
    return DepthResult(count, grid.rep_at(idx), grid.cell_at(idx))
