"""Shared random-instance generators and independent oracles for the tests.

Oracles here deliberately avoid the package's compressed-grid machinery:
the depth oracle walks every atomic cell with plain nested loops and
direct membership tests, and the measure oracle is inclusion-exclusion
over subsets. Generators produce endpoints on coarse rational grids so
oracle runs stay fast.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from slkkm.coloring import KKMCover, LebesgueCover, PointColoring, RegionColoring, region_coloring
from slkkm.geometry import (
    Box,
    BoxUnion,
    Interval,
    box_union,
    closed_interval,
    intersect_boxes,
    interval,
    unit_cube,
)


def grid_fraction(rng: random.Random, den: int, lo=0, hi=1) -> Fraction:
    lo_n = int(Fraction(lo) * den)
    hi_n = int(Fraction(hi) * den)
    return Fraction(rng.randint(lo_n, hi_n), den)


def random_interval(rng: random.Random, den: int = 10, allow_degenerate: bool = False) -> Interval:
    a = grid_fraction(rng, den)
    b = grid_fraction(rng, den)
    if a > b:
        a, b = b, a
    if a == b:
        if allow_degenerate and rng.random() < 0.5:
            return Interval(a, a, True, True)
        b = a + Fraction(1, den) if a < 1 else a
        a = b - Fraction(1, den)
    return Interval(a, b, rng.random() < 0.5, rng.random() < 0.5)


def random_box(rng: random.Random, d: int, den: int = 10,
               allow_degenerate: bool = False) -> Box:
    return Box(tuple(random_interval(rng, den, allow_degenerate) for _ in range(d)))


def random_box_union(rng: random.Random, d: int, n_boxes: int, den: int = 10,
                     allow_degenerate: bool = False) -> BoxUnion:
    return box_union([random_box(rng, d, den, allow_degenerate) for _ in range(n_boxes)], dim=d)


def random_family(rng: random.Random, d: int, total_boxes: int, den: int = 10) -> list[BoxUnion]:
    """A family of box unions with the given total box count."""
    members: list[BoxUnion] = []
    remaining = total_boxes
    while remaining > 0:
        take = min(remaining, rng.randint(1, 3))
        members.append(random_box_union(rng, d, take, den))
        remaining -= take
    return members


# ---------------------------------------------------------------------------
# Independent oracles


def _axis_pieces(values: list[Fraction]) -> list[Interval]:
    pieces: list[Interval] = []
    for i, v in enumerate(values):
        pieces.append(Interval(v, v, True, True))
        if i + 1 < len(values):
            pieces.append(Interval(v, values[i + 1], False, False))
    return pieces


def brute_depth(family: list[BoxUnion], region: Box) -> int:
    """Depth by direct enumeration: every atomic cell, every member, raw membership."""
    d = region.dim
    clipped: list[list[Box]] = []
    for member in family:
        kept = []
        for b in member.boxes:
            c = intersect_boxes(b, region)
            if c is not None:
                kept.append(c)
        clipped.append(kept)
    axis_values = []
    for axis in range(d):
        vals = {region.intervals[axis].lo, region.intervals[axis].hi}
        for member in clipped:
            for b in member:
                vals.add(b.intervals[axis].lo)
                vals.add(b.intervals[axis].hi)
        axis_values.append(sorted(vals))
    best = 0
    for pieces in itertools.product(*(_axis_pieces(vals) for vals in axis_values)):
        rep = tuple(p.representative() for p in pieces)
        if not region.contains(rep):
            continue
        count = sum(1 for member in clipped
                    if any(b.contains(rep) for b in member))
        if count > best:
            best = count
    return best


def ie_measure(boxes: list[Box]) -> Fraction:
    """Union measure by inclusion-exclusion; exponential, keep the box count small."""
    total = Fraction(0)
    n = len(boxes)
    for r in range(1, n + 1):
        sign = 1 if r % 2 == 1 else -1
        for combo in itertools.combinations(range(n), r):
            inter = boxes[combo[0]]
            for i in combo[1:]:
                inter = intersect_boxes(inter, boxes[i])
                if inter is None:
                    break
            if inter is not None:
                total += sign * inter.measure
    return total


# ---------------------------------------------------------------------------
# Random colorings and covers


def random_region_coloring(rng: random.Random, d: int = 2, max_colors: int = 8,
                           max_cuts: int = 5, den: int = 20) -> RegionColoring:
    """Random valid boundary-respecting partition built on a random grid.

    Grid cells get random groups; groups spanning both faces of an axis
    are split, then groups are merged down to the color budget (groups
    with equal face-touching signatures can always merge safely).
    """
    cells = _random_grid_cells(rng, d, max_cuts, den)
    assignment = [rng.randrange(max_colors) for _ in cells]

    def signature(group: list[int]) -> list[tuple[bool, bool]]:
        sig = [(False, False)] * d
        for idx in group:
            for axis in range(d):
                iv = cells[idx].intervals[axis]
                t0 = iv.contains(Fraction(0))
                t1 = iv.contains(Fraction(1))
                sig[axis] = (sig[axis][0] or t0, sig[axis][1] or t1)
        return sig

    def groups() -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for idx, g in enumerate(assignment):
            out.setdefault(g, []).append(idx)
        return out

    # Split any group that touches both faces of some axis.
    changed = True
    next_label = max_colors
    while changed:
        changed = False
        for g, members in groups().items():
            sig = signature(members)
            for axis in range(d):
                if sig[axis][0] and sig[axis][1]:
                    for idx in members:
                        if cells[idx].intervals[axis].contains(Fraction(1)):
                            assignment[idx] = next_label
                    next_label += 1
                    changed = True
                    break
            if changed:
                break

    # Merge down to the color budget; same orthant-pattern groups always merge.
    while len(groups()) > max_colors:
        labels = sorted(groups())
        merged = False
        for a, b in itertools.combinations(labels, 2):
            sig_a = signature(groups()[a])
            sig_b = signature(groups()[b])
            ok = all(not ((sa0 or sb0) and (sa1 or sb1))
                     for (sa0, sa1), (sb0, sb1) in zip(sig_a, sig_b))
            if ok:
                for idx in groups()[b]:
                    assignment[idx] = a
                merged = True
                break
        assert merged, "merge phase stuck; should be impossible"

    classes: dict[str, list[Box]] = {}
    for idx, g in enumerate(assignment):
        classes.setdefault(f"c{g}", []).append(cells[idx])
    ordered = {label: box_union(boxes, dim=d) for label, boxes in sorted(classes.items())}
    return region_coloring(d, ordered)


def _random_grid_cells(rng: random.Random, d: int, max_cuts: int, den: int) -> list[Box]:
    axis_ivs = []
    for _ in range(d):
        n_cuts = rng.randint(1, max_cuts)
        cuts = sorted(rng.sample(range(1, den), min(n_cuts, den - 1)))
        values = [Fraction(0)] + [Fraction(c, den) for c in cuts] + [Fraction(1)]
        ivs = []
        for j in range(len(values) - 1):
            ivs.append(interval(values[j], values[j + 1], True, j == len(values) - 2))
        axis_ivs.append(ivs)
    return [Box(tuple(combo)) for combo in itertools.product(*axis_ivs)]


def random_point_coloring(rng: random.Random, points, n_colors: int = 5) -> PointColoring:
    """Random boundary-respecting coloring of the given points (repair loop)."""
    points = tuple(points)
    d = len(points[0])
    colors = [f"c{rng.randrange(n_colors)}" for _ in points]
    fresh = 0
    while True:
        violation = None
        for i in range(len(points)):
            for j in range(i + 1, len(points)):
                if colors[i] == colors[j] and _opposite(points[i], points[j]):
                    violation = j
                    break
            if violation is not None:
                break
        if violation is None:
            break
        colors[violation] = f"x{fresh}"
        fresh += 1
    return PointColoring(d, points, tuple(colors))


def _opposite(a, b) -> bool:
    return any((x == 0 and y == 1) or (x == 1 and y == 0) for x, y in zip(a, b))


def random_lebesgue_cover(rng: random.Random, d: int = 2) -> LebesgueCover:
    """Valid cover: a random partition, members optionally enlarged by safe boxes."""
    base = random_region_coloring(rng, d=d, max_colors=rng.randint(4, 8))
    members = []
    for label, region in base.classes.items():
        boxes = list(region.boxes)
        for _ in range(rng.randint(0, 2)):
            extra = random_box(rng, d, den=20)
            trial = box_union(boxes + [extra], dim=d)
            ok = all(not (trial.projection_contains(axis, Fraction(0))
                          and trial.projection_contains(axis, Fraction(1)))
                     for axis in range(d))
            if ok:
                boxes.append(extra)
        members.append(box_union(boxes, dim=d))
    rng.shuffle(members)
    return LebesgueCover(d, tuple(members))


def random_kkm_cover(rng: random.Random, d: int = 2) -> KKMCover:
    """Valid cover: split-point orthants per vertex plus arbitrary extra boxes."""
    sigma = [grid_fraction(rng, 10, Fraction(1, 10), Fraction(9, 10)) for _ in range(d)]
    members = {}
    for v in itertools.product((0, 1), repeat=d):
        ivs = tuple(
            closed_interval(0, sigma[i]) if v[i] == 0 else closed_interval(sigma[i], 1)
            for i in range(d))
        boxes = [Box(ivs)]
        for _ in range(rng.randint(0, 2)):
            boxes.append(random_box(rng, d, den=10))
        members[v] = box_union(boxes, dim=d)
    return KKMCover(d, members)
