"""Built-in colorings and coloring transformers.

Provides the stock partitions used throughout (orthants, the vertex
parity coloring, a shifted-brick partition for d=2, proximate grids)
plus the two structural transformers: extension of a region coloring to
the eps-enlarged cube via the clamp map, and regionalization of a point
coloring over a proximate set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .coloring import (
    ColoringError,
    PointColoring,
    RegionColoring,
    is_proximate,
    region_coloring,
    validate_slkkm_regions,
)
from .geometry import (
    Box,
    BoxUnion,
    GeometryError,
    Interval,
    ONE,
    Orientation,
    Point,
    ZERO,
    all_faces,
    ball_box,
    box_union,
    boxunion_difference,
    closed_interval,
    empty_union,
    intersect_boxes,
    interval,
    open_interval,
    point_interval,
    rational,
    union_of,
)


def orthant_coloring(d: int) -> RegionColoring:
    """One color per orthant: low half [0,1/2) and high half [1/2,1] per axis."""
    if not 1 <= d <= 10:
        raise GeometryError("orthant coloring supports 1 <= d <= 10")
    half = Fraction(1, 2)
    low = interval(0, half, True, False)
    high = closed_interval(half, 1)
    classes = {}
    for signs in itertools.product((0, 1), repeat=d):
        label = "o" + "".join(str(s) for s in signs)
        classes[label] = box_union([Box(tuple(high if s else low for s in signs))])
    return region_coloring(d, classes)


def hamming_coloring(d: int) -> RegionColoring:
    """Vertex-parity coloring with 2^d colors named by cube vertices.

    The cube splits into its 3^d relatively open faces. Each even-parity
    vertex keeps a color used nowhere else; every other open face takes
    the lex-least odd-parity vertex of its closure. Even-parity classes
    are therefore singletons, which is what makes the open half-ball
    unable to reach more than one of them.
    """
    if not 1 <= d <= 6:
        raise GeometryError("hamming coloring supports 1 <= d <= 6")
    pieces: dict[tuple[int, ...], list[Box]] = {
        v: [] for v in itertools.product((0, 1), repeat=d)}
    for face in all_faces(d):
        cell = face.interior_box()
        if face.free_count == 0:
            # Vertex faces keep their own vertex's color; for odd vertices this
            # coincides with the lex-least odd vertex of the closure.
            pieces[tuple(face.tags)].append(cell)
            continue
        odd = [v for v in face.vertices() if sum(v) % 2 == 1]
        pieces[min(odd)].append(cell)
    classes = {
        "v" + "".join(str(b) for b in v): box_union(boxes, dim=d)
        for v, boxes in pieces.items()}
    return region_coloring(d, classes)


def brick_coloring(sigma) -> RegionColoring:
    """Restriction to [0,1]^2 of the plane tiling by half-open unit squares
    with row k shifted horizontally by (k * sigma) mod 1.
    """
    sigma = rational(sigma)
    if not ZERO < sigma < ONE:
        raise GeometryError("shift must lie strictly between 0 and 1")
    classes: dict[str, BoxUnion] = {}
    cube_iv = closed_interval(0, 1)
    for k in (0, 1):
        row = intersect_intervals_or_none(interval(k, k + 1, True, False), cube_iv)
        if row is None:
            continue
        shift = (k * sigma) % 1
        for j in range(-1, 2):
            col = intersect_intervals_or_none(
                interval(shift + j, shift + j + 1, True, False), cube_iv)
            if col is None:
                continue
            label = f"b{k}{'p' if j >= 0 else 'm'}{abs(j)}"
            classes[label] = box_union([Box((col, row))])
    return region_coloring(2, classes)


def intersect_intervals_or_none(a: Interval, b: Interval) -> Interval | None:
    from .geometry import intersect_intervals
    return intersect_intervals(a, b)


def proximate_grid(d: int, rho) -> tuple[Point, ...]:
    """The product grid {0, rho, 2*rho, ..., n*rho, 1}^d with n = floor(1/rho)."""
    rho = rational(rho)
    if not ZERO < rho <= ONE:
        raise GeometryError("rho must lie in (0, 1]")
    if d < 1:
        raise GeometryError("dimension must be >= 1")
    n = floor(1 / rho)
    values = [k * rho for k in range(n + 1)]
    if values[-1] != ONE:
        values.append(ONE)
    return tuple(itertools.product(values, repeat=d))


# ---------------------------------------------------------------------------
# Extension to the enlarged cube


@dataclass(frozen=True)
class ExtendedColoring:
    """A region coloring pulled back to [-eps, 1+eps]^d through the clamp map.

    Each extended class carries an orientation recording, per axis, which
    side of the enlarged cube the class stays away from; adding the open
    quadrant opposite the orientation keeps the class inside the enlarged
    cube while inflating its measure.
    """

    base: RegionColoring
    eps: Fraction
    classes_ext: dict[str, BoxUnion]
    orientations: dict[str, Orientation]

    @property
    def dim(self) -> int:
        return self.base.dim


def extend_coloring(base: RegionColoring, eps) -> ExtendedColoring:
    """Extend a valid region coloring to the eps-enlarged cube via clamp preimages.

    The preimage of an interval under per-axis clamping stretches an
    endpoint touching 0 down to -eps and an endpoint touching 1 up to
    1+eps. Orientation per axis: -1 when the base class avoids value 1
    (extended class stays inside [-eps, 1)), else +1 when it avoids 0
    (stays inside (0, 1+eps]); a class touching both would contradict the
    boundary condition, so validation failure is a hard error here.
    """
    eps = rational(eps)
    if eps <= 0:
        raise GeometryError("eps must be positive")
    report = validate_slkkm_regions(base)
    if not report.passed:
        raise ColoringError(
            "cannot extend: coloring violates the boundary condition: "
            + "; ".join(report.violations))

    classes_ext: dict[str, BoxUnion] = {}
    orientations: dict[str, Orientation] = {}
    for label, region in base.classes.items():
        ext_boxes = []
        for b in region.boxes:
            ivs = []
            for iv in b.intervals:
                lo, lo_closed = iv.lo, iv.lo_closed
                hi, hi_closed = iv.hi, iv.hi_closed
                if iv.contains(ZERO):
                    lo, lo_closed = -eps, True
                if iv.contains(ONE):
                    hi, hi_closed = ONE + eps, True
                ivs.append(Interval(lo, hi, lo_closed, hi_closed))
            ext_boxes.append(Box(tuple(ivs)))
        classes_ext[label] = box_union(ext_boxes, dim=base.dim)

        signs = []
        for axis in range(base.dim):
            if not region.projection_contains(axis, ONE):
                signs.append(-1)
            else:
                signs.append(1)
        orientations[label] = tuple(signs)
    return ExtendedColoring(base, eps, classes_ext, orientations)


def oriented_halfspan(v: Orientation, eps: Fraction) -> Box:
    """The product of half-open spans an oriented extended class must live in.

    Axis i is (0, 1+eps] for v_i = +1 and [-eps, 1) for v_i = -1.
    """
    ivs = []
    for s in v:
        if s == 1:
            ivs.append(Interval(ZERO, ONE + eps, False, True))
        else:
            ivs.append(Interval(-eps, ONE, True, False))
    return Box(tuple(ivs))


# ---------------------------------------------------------------------------
# Regionalization of a point coloring over a proximate set


def sperner_gamma(pc: PointColoring, rho) -> RegionColoring:
    """Spread a point coloring over the whole cube, face by face.

    With rho' = min(rho, 1/2), a point x in a relatively open face may
    take any color present within closed l-infinity distance rho' among
    sample points of the same (smallest) face; this artifact always takes
    the lexicographically least such color label. Requires the sample set
    to be rho-proximate so that every point has a candidate.
    """
    rho = rational(rho)
    if rho < 0:
        raise ColoringError("rho must be >= 0")
    from .coloring import validate_slkkm_points
    report = validate_slkkm_points(pc)
    if not report.passed:
        raise ColoringError(
            "point coloring violates the boundary condition: " + "; ".join(report.violations))
    if not is_proximate(pc.points, rho, pc.dim):
        raise ColoringError(f"point set is not {rho}-proximate")
    rho_eff = min(rho, Fraction(1, 2))

    d = pc.dim
    pieces: dict[str, list[Box]] = {}
    for face in all_faces(d):
        cell = face.interior_box()
        face_samples = [(p, c) for p, c in zip(pc.points, pc.colors) if face.contains_point(p)]
        taken = empty_union(d)
        for label in sorted({c for _, c in face_samples}):
            avail_boxes = []
            for p, c in face_samples:
                if c != label:
                    continue
                clipped = intersect_boxes(ball_box(p, rho_eff, closed=True), cell) \
                    if rho_eff > 0 else intersect_boxes(_pt_box(p), cell)
                if clipped is not None:
                    avail_boxes.append(clipped)
            piece = boxunion_difference(box_union(avail_boxes, dim=d), taken)
            if piece.is_empty:
                continue
            pieces.setdefault(label, []).extend(piece.boxes)
            taken = union_of(taken, piece)
        gap = boxunion_difference(box_union([cell]), taken)
        assert gap.is_empty, "proximate set failed to cover a face it was checked against"
    classes = {label: box_union(bs, dim=d) for label, bs in sorted(pieces.items())}
    return region_coloring(d, classes)


def _pt_box(p: Point) -> Box:
    from .geometry import point_box
    return point_box(p)
