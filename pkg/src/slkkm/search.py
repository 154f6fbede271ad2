"""Exact witness search: how many colors can one l-infinity ball touch.

A ball at center p intersects a region X exactly when p lies in the
Minkowski sum of X with the ball at the origin, so the best center is a
maximum-depth point of the inflated color classes. The depth engine
makes that an exact computation; a grid oracle, a full proof pipeline
that reproduces the measure-theoretic argument step by step, and a
simulated-annealing extremal search ride on top.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .bounds import lower_bound_main, sperner_lower
from .coloring import (
    ColoringError,
    PointColoring,
    RegionColoring,
    region_coloring,
    validate_slkkm_points,
    validate_slkkm_regions,
)
from .constructions import ExtendedColoring, extend_coloring, oriented_halfspan
from .geometry import (
    Box,
    BoxUnion,
    GeometryError,
    ONE,
    Point,
    ZERO,
    ball_box,
    box_union,
    boxunion_difference,
    clamp_map,
    depth_arrangement,
    extended_cube,
    interval,
    oriented_quadrant,
    point_box,
    rational,
    unit_cube,
)


class SearchDefect(RuntimeError):
    """An internal invariant of the search machinery failed; this is a bug."""


@dataclass(frozen=True)
class SearchResult:
    max_colors: int
    witness_center: Point
    colors_hit: tuple[str, ...]
    method: str  # "exact", "brute_grid", or "pipeline"


def _class_regions(coloring: RegionColoring | PointColoring) -> dict[str, BoxUnion]:
    if isinstance(coloring, RegionColoring):
        return coloring.classes
    return {
        label: box_union([point_box(p) for p in pts], dim=coloring.dim)
        for label, pts in coloring.classes().items()}


def _validate(coloring: RegionColoring | PointColoring) -> None:
    if isinstance(coloring, RegionColoring):
        report = validate_slkkm_regions(coloring)
    else:
        report = validate_slkkm_points(coloring)
    if not report.passed:
        raise ColoringError(
            "coloring violates the boundary condition: " + "; ".join(report.violations))


def colors_hit_by_ball(classes: dict[str, BoxUnion], center: Point, eps: Fraction,
                       closed: bool) -> tuple[str, ...]:
    """Labels whose class meets the ball at the center, by direct intersection tests."""
    ball = ball_box(center, eps, closed)
    return tuple(label for label, region in classes.items() if region.intersects_box(ball))


def max_colors_ball(coloring: RegionColoring | PointColoring, eps,
                    closed: bool = False) -> SearchResult:
    """Exact maximum, over centers in the cube, of the number of classes the ball meets.

    Each class is inflated by the origin-centered ball (open or closed to
    match the query); the depth of the inflated family over the cube is
    the answer, and the winning cell's representative is the center.
    """
    eps = rational(eps)
    if eps <= 0:
        raise GeometryError("eps must be positive")
    _validate(coloring)
    classes = _class_regions(coloring)
    origin_ball = ball_box(tuple(ZERO for _ in range(coloring.dim)), eps, closed)
    inflated = [region.minkowski_box(origin_ball) for region in classes.values()]
    depth = depth_arrangement(inflated, unit_cube(coloring.dim))
    hit = colors_hit_by_ball(classes, depth.witness, eps, closed)
    if len(hit) != depth.max_multiplicity:
        raise SearchDefect(
            f"inflation depth {depth.max_multiplicity} disagrees with direct "
            f"intersection count {len(hit)} at {depth.witness}")
    return SearchResult(depth.max_multiplicity, depth.witness, hit, "exact")


def brute_force_oracle(coloring: RegionColoring | PointColoring, eps,
                       closed: bool = False, grid_step="1/16") -> int:
    """Independent lower estimate: best center over a finite candidate set.

    Candidates are the regular grid of the given step plus all arrangement
    event coordinates (endpoints of the inflated classes, clipped to the
    cube). Always at most the exact maximum; equal when the candidate set
    meets every maximizing arrangement cell.
    """
    eps = rational(eps)
    step = rational(grid_step)
    if step <= 0:
        raise GeometryError("grid step must be positive")
    classes = _class_regions(coloring)
    d = coloring.dim

    events: list[set[Fraction]] = [set() for _ in range(d)]
    for region in classes.values():
        for b in region.boxes:
            for axis, iv in enumerate(b.intervals):
                for value in (iv.lo - eps, iv.lo + eps, iv.hi - eps, iv.hi + eps):
                    if ZERO <= value <= ONE:
                        events[axis].add(value)
    axes = []
    for axis in range(d):
        vals = set(events[axis])
        k = 0
        while k * step <= ONE:
            vals.add(k * step)
            k += 1
        vals.add(ONE)
        axes.append(sorted(vals))

    best = 0
    for center in _product_points(axes):
        ball = ball_box(center, eps, closed)
        count = sum(1 for region in classes.values() if region.intersects_box(ball))
        if count > best:
            best = count
    return best


def _product_points(axes: list[list[Fraction]]):
    import itertools
    return itertools.product(*axes)


@dataclass(frozen=True)
class VerificationReport:
    d: int
    eps: Fraction
    closed: bool
    bound: int
    achieved: int
    witness: Point
    colors_hit: tuple[str, ...]
    ok: bool


def verify_theorem(coloring: RegionColoring | PointColoring, eps,
                   closed: bool = False, rho=None) -> VerificationReport:
    """Check the guaranteed-color-count bound against the exact search result.

    Region colorings are held to the main bound; point colorings to the
    discrete-variant bound, which needs the sample spacing rho.
    """
    eps = rational(eps)
    if isinstance(coloring, PointColoring):
        if rho is None:
            raise ColoringError("point colorings need rho for the discrete bound")
        bound = sperner_lower(coloring.dim, eps, rho)
    else:
        bound = lower_bound_main(coloring.dim, eps)
    result = max_colors_ball(coloring, eps, closed)
    return VerificationReport(
        d=coloring.dim, eps=eps, closed=closed, bound=bound,
        achieved=result.max_colors, witness=result.witness_center,
        colors_hit=result.colors_hit, ok=result.max_colors >= bound)


# ---------------------------------------------------------------------------
# The constructive pipeline


@dataclass(frozen=True)
class PipelineReport:
    """Constructive witness with the intermediate quantities that certify it."""

    result: SearchResult
    depth_count: int
    bound: int
    raw_witness: Point
    sum_inflated_measure: Fraction
    required_sum: Fraction
    class_measures: dict[str, tuple[Fraction, Fraction]]  # label -> (extended, inflated)


def proof_pipeline_witness(coloring: RegionColoring, eps) -> PipelineReport:
    """Produce a witness center constructively and certify every step.

    Extends the coloring to the enlarged cube, adds to each extended
    class the open quadrant opposite its orientation, checks the
    containment and measure-growth facts exactly, takes a maximum-depth
    point of the inflated family, and clamps it back to the cube. Any
    failed check raises SearchDefect: the underlying facts are theorems,
    so a failure is an implementation bug.
    """
    eps = rational(eps)
    if not isinstance(coloring, RegionColoring):
        raise ColoringError("the pipeline consumes region colorings")
    ext = extend_coloring(coloring, eps)
    d = coloring.dim
    big_cube = extended_cube(d, eps)
    growth = ((1 + 2 * eps) / (1 + eps)) ** d

    inflated: dict[str, BoxUnion] = {}
    class_measures: dict[str, tuple[Fraction, Fraction]] = {}
    total = ZERO
    for label, region in ext.classes_ext.items():
        v = ext.orientations[label]
        span = oriented_halfspan(v, eps)
        for b in region.boxes:
            if not b.subset_of(span):
                raise SearchDefect(f"extended class {label!r} escapes its oriented span")
        summed = region.minkowski_box(oriented_quadrant(v, eps))
        for b in summed.boxes:
            if not b.subset_of(big_cube):
                raise SearchDefect(f"inflated class {label!r} escapes the extended cube")
        m_ext = region.measure()
        m_sum = summed.measure()
        if m_sum < m_ext * growth:
            raise SearchDefect(f"inflated class {label!r} grew less than the guaranteed factor")
        inflated[label] = summed
        class_measures[label] = (m_ext, m_sum)
        total += m_sum

    required = growth * (1 + 2 * eps) ** d
    if total < required:
        raise SearchDefect("total inflated measure fell below the guaranteed sum")

    depth = depth_arrangement(list(inflated.values()), big_cube)
    bound = lower_bound_main(d, eps)
    pigeonhole = math.ceil(total / (1 + 2 * eps) ** d)
    if depth.max_multiplicity < pigeonhole or pigeonhole < bound:
        raise SearchDefect("depth fell below the pigeonhole guarantee")

    p_raw = depth.witness
    p = clamp_map(p_raw, eps)
    labels = list(inflated)
    deep_labels = [label for label in labels if inflated[label].contains(p_raw)]
    if len(deep_labels) != depth.max_multiplicity:
        raise SearchDefect("witness membership count disagrees with reported depth")

    open_ball_raw = ball_box(p_raw, eps, closed=False)
    open_ball = ball_box(p, eps, closed=False)
    hit = []
    for label, region in coloring.classes.items():
        if region.intersects_box(open_ball):
            hit.append(label)
    # Pull-back: every color whose extended class meets the raw ball must
    # have its base class meet the clamped ball.
    for label in deep_labels:
        if not ext.classes_ext[label].intersects_box(open_ball_raw):
            raise SearchDefect(f"deep color {label!r} misses the raw ball")
        if label not in hit:
            raise SearchDefect(f"clamp pull-back lost color {label!r}")
    if len(hit) < bound:
        raise SearchDefect("pipeline witness hits fewer colors than the guaranteed bound")

    result = SearchResult(len(hit), p, tuple(hit), "pipeline")
    return PipelineReport(
        result=result, depth_count=depth.max_multiplicity, bound=bound,
        raw_witness=p_raw, sum_inflated_measure=total, required_sum=required,
        class_measures=class_measures)


# ---------------------------------------------------------------------------
# Empirical curve over eps


@dataclass(frozen=True)
class CurveRow:
    eps: Fraction
    open_max: int
    closed_max: int


def empirical_K_curve(coloring: RegionColoring | PointColoring, eps_list) -> list[CurveRow]:
    """Open and closed exact maxima per radius; rows must be monotone in eps."""
    eps_values = [rational(e) for e in eps_list]
    if eps_values != sorted(eps_values):
        raise GeometryError("eps values must be sorted ascending")
    rows = []
    prev: CurveRow | None = None
    for eps in eps_values:
        open_max = max_colors_ball(coloring, eps, closed=False).max_colors
        closed_max = max_colors_ball(coloring, eps, closed=True).max_colors
        if open_max > closed_max:
            raise SearchDefect("open count exceeded closed count")
        if prev is not None and (open_max < prev.open_max or closed_max < prev.closed_max):
            raise SearchDefect("color counts decreased as the ball grew")
        row = CurveRow(eps, open_max, closed_max)
        rows.append(row)
        prev = row
    return rows


# ---------------------------------------------------------------------------
# Extremal local search


@dataclass(frozen=True)
class ExtremalResult:
    coloring: RegionColoring
    max_colors: int
    evaluations: int
    note: str = "box-union upper evidence"


def _grid_cells(d: int, n: int) -> list[Box]:
    cuts = [Fraction(k, n) for k in range(n + 1)]
    axis_ivs = []
    for j in range(n):
        hi_closed = j == n - 1
        axis_ivs.append(interval(cuts[j], cuts[j + 1], True, hi_closed))
    import itertools
    return [Box(tuple(ivs)) for ivs in itertools.product(axis_ivs, repeat=d)]


def _touch_signature(cell: Box) -> tuple[tuple[bool, bool], ...]:
    sig = []
    for iv in cell.intervals:
        sig.append((iv.contains(ZERO), iv.contains(ONE)))
    return tuple(sig)


def _labels_valid(cells: list[Box], assignment: list[int], d: int) -> bool:
    touch: dict[int, list[list[bool]]] = {}
    for cell, lab in zip(cells, assignment):
        t = touch.setdefault(lab, [[False, False] for _ in range(d)])
        for axis, (t0, t1) in enumerate(_touch_signature(cell)):
            t[axis][0] |= t0
            t[axis][1] |= t1
    return all(not (t0 and t1) for t in touch.values() for t0, t1 in t)


def _assignment_coloring(cells: list[Box], assignment: list[int], d: int) -> RegionColoring:
    groups: dict[int, list[Box]] = {}
    for cell, lab in zip(cells, assignment):
        groups.setdefault(lab, []).append(cell)
    classes = {f"c{lab}": box_union(boxes, dim=d) for lab, boxes in sorted(groups.items())}
    return region_coloring(d, classes, check=False)


def extremal_search(d: int, eps, budget: int = 200, seed: int = 0,
                    grid_n: int = 4, closed: bool = False) -> ExtremalResult:
    """Simulated annealing over grid-cell colorings, minimizing the ball maximum.

    Moves recolor one grid cell (to an existing or fresh label) or merge
    two labels; moves that would put a label on opposite faces are
    rejected. Deterministic for a fixed seed. The score can never drop
    below the guaranteed lower bound, which is asserted.
    """
    eps = rational(eps)
    if d < 1 or d > 3:
        raise GeometryError("extremal search supports 1 <= d <= 3")
    if eps <= 0 or budget < 1 or grid_n < 2:
        raise GeometryError("need eps > 0, budget >= 1, grid_n >= 2")
    rng = random.Random(seed)
    cells = _grid_cells(d, grid_n)

    # Start from the orthant-style labeling: the side-touching pattern.
    def orthant_label(cell: Box) -> int:
        bits = 0
        for axis, (_, t1) in enumerate(_touch_signature(cell)):
            hi_half = cell.intervals[axis].lo >= Fraction(1, 2)
            bits = bits * 2 + (1 if (t1 or hi_half) else 0)
        return bits

    assignment = [orthant_label(c) for c in cells]
    floor_bound = lower_bound_main(d, eps)

    def score(asg: list[int]) -> int:
        rc = _assignment_coloring(cells, asg, d)
        return max_colors_ball(rc, eps, closed).max_colors

    current = list(assignment)
    current_score = score(current)
    best, best_score = list(current), current_score
    temp = 2.0
    cooling = 0.97
    evaluations = 1

    for _ in range(budget):
        proposal = list(current)
        if rng.random() < 0.8:
            # single-cell recolor
            idx = rng.randrange(len(cells))
            labels = sorted(set(proposal))
            fresh = max(labels) + 1
            proposal[idx] = rng.choice(labels + [fresh])
        else:
            # merge two labels
            labels = sorted(set(proposal))
            if len(labels) < 2:
                continue
            a, b = rng.sample(labels, 2)
            proposal = [a if lab == b else lab for lab in proposal]
        if not _labels_valid(cells, proposal, d):
            continue
        new_score = score(proposal)
        evaluations += 1
        delta = new_score - current_score
        if delta <= 0 or rng.random() < math.exp(-delta / max(temp, 1e-9)):
            current, current_score = proposal, new_score
            if new_score < best_score:
                best, best_score = list(proposal), new_score
        temp *= cooling

    if best_score < floor_bound:
        raise SearchDefect("extremal search reported a score below the guaranteed bound")
    return ExtremalResult(_assignment_coloring(cells, best, d), best_score, evaluations)
