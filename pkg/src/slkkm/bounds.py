"""Closed-form bounds on guaranteed color counts, plus inequality checkers.

Ceilings of rational powers are computed exactly (integer powers of the
numerator and denominator); the only floating point here is in d-th
roots, which are checked to a relative tolerance of 1e-9.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .geometry import GeometryError, rational

REL_TOL = 1e-9


class BoundsError(ValueError):
    """Bound query outside its validity regime."""


class InconsistentBounds(RuntimeError):
    """A reported lower bound exceeded an applicable upper bound (a defect)."""


def _ceil_power(base: Fraction, d: int) -> int:
    return math.ceil(base ** d)


def lower_bound_main(d: int, eps) -> int:
    """ceil(((1+2*eps)/(1+eps))^d), the guaranteed open-ball color count."""
    eps = rational(eps)
    if d < 1 or eps <= 0:
        raise BoundsError("need d >= 1 and eps > 0")
    return _ceil_power((1 + 2 * eps) / (1 + eps), d)


def lower_bound_simple(d: int, eps) -> int:
    """ceil((1+2*eps/3)^d); valid only for eps in (0, 1/2]."""
    eps = rational(eps)
    if d < 1 or eps <= 0:
        raise BoundsError("need d >= 1 and eps > 0")
    if eps > Fraction(1, 2):
        raise BoundsError("the simplified bound applies only for eps <= 1/2")
    return _ceil_power(1 + Fraction(2, 3) * eps, d)


def sperner_lower(d: int, eps, rho) -> int:
    """Discrete-variant bound: the main bound at effective radius eps - min(rho, 1/2).

    Collapses to 1 when the effective radius is nonpositive.
    """
    eps = rational(eps)
    rho = rational(rho)
    if d < 1 or eps <= 0 or rho < 0:
        raise BoundsError("need d >= 1, eps > 0, rho >= 0")
    rho_eff = min(rho, Fraction(1, 2))
    if eps <= rho_eff:
        return 1
    return lower_bound_main(d, eps - rho_eff)


def upper_bound_secluded(d: int, n: int) -> int:
    """(n+1)^ceil(d/n), valid as an upper bound for eps <= 1/(2n)."""
    if d < 1 or n < 1:
        raise BoundsError("need d >= 1 and n >= 1")
    return (n + 1) ** math.ceil(d / n)


def best_upper(d: int, eps) -> tuple[int, int]:
    """Minimum secluded upper bound over admissible n, with the chosen n.

    Only n <= d matters (larger n is dominated by the n = d bound), and n
    must satisfy eps <= 1/(2n). For eps > 1/2 no n is admissible and the
    trivial bound 2^d is returned with n = 1 marked degenerate by callers.
    """
    eps = rational(eps)
    if d < 1 or eps <= 0:
        raise BoundsError("need d >= 1 and eps > 0")
    if eps > Fraction(1, 2):
        return 2 ** d, 1
    n_max = min(d, math.floor(Fraction(1, 2) / eps))
    best_val, best_n = None, None
    for n in range(1, n_max + 1):
        val = upper_bound_secluded(d, n)
        if best_val is None or val < best_val:
            best_val, best_n = val, n
    return best_val, best_n


def halfball_upper(d: int) -> int:
    """2^(d-1) + 1: open half-ball ceiling from the vertex-parity coloring."""
    if d < 1:
        raise BoundsError("need d >= 1")
    return 2 ** (d - 1) + 1


def max_constant_c(d_max: int) -> tuple[float, int]:
    """Best constant c admissible in a (1+c*eps)^d-style bound, with its argmin d.

    Minimizes 2*((2^(d-1)+1)^(1/d) - 1) over d in [1, d_max].
    """
    if d_max < 3:
        raise BoundsError("need d_max >= 3")
    best_val, best_d = None, None
    for d in range(1, d_max + 1):
        val = 2 * ((2 ** (d - 1) + 1) ** (1 / d) - 1)
        if best_val is None or val < best_val:
            best_val, best_d = val, d
    return best_val, best_d


def check_bm_lemma(x: float, alpha: float, d: float) -> bool:
    """Check (x^(1/d) + alpha)^d >= x*(1+alpha)^d at 1e-9 relative tolerance."""
    if not (0 <= x <= 1) or alpha < 0 or d < 1:
        raise BoundsError("need x in [0,1], alpha >= 0, d >= 1")
    lhs = (x ** (1 / d) + alpha) ** d
    rhs = x * (1 + alpha) ** d
    return lhs >= rhs - REL_TOL * max(1.0, rhs)


def smaller_ceiling(alpha) -> Fraction:
    """A rational strictly below alpha with the same ceiling."""
    alpha = rational(alpha)
    n = math.ceil(alpha)
    return Fraction(n - 1 + alpha, 2)


@dataclass(frozen=True)
class BoundReport:
    """All applicable closed-form rows for one (d, eps) query."""

    d: int
    eps: Fraction
    lower_classic: int
    lower_main: int
    lower_simple: int | None
    upper_trivial: int
    upper_secluded_best: int
    upper_secluded_n: int
    upper_halfball: int
    rho: Fraction | None = None
    sperner: int | None = None
    notes: tuple[str, ...] = ()


def table_one(d: int, eps, rho=None) -> BoundReport:
    """Assemble every applicable bound with validity notes.

    Raises InconsistentBounds if any reported lower exceeds an applicable
    upper, which would indicate an implementation bug rather than a
    property of the inputs.
    """
    eps = rational(eps)
    if d < 1 or eps <= 0:
        raise BoundsError("need d >= 1 and eps > 0")
    half = Fraction(1, 2)
    notes = []
    lower_classic = d + 1
    lower_main_v = lower_bound_main(d, eps)
    lower_simple_v = lower_bound_simple(d, eps) if eps <= half else None
    if lower_simple_v is None:
        notes.append("simple lower bound omitted: eps > 1/2")
    upper_trivial = 2 ** d
    secluded_val, secluded_n = best_upper(d, eps)
    if eps > half:
        notes.append("secluded upper degenerate: eps > 1/2, trivial bound with n=1")
    if eps <= Fraction(1, 2 * d):
        notes.append("tight regime eps <= 1/(2d): classic lower meets secluded upper")
    halfball = halfball_upper(d)
    if eps < half:
        notes.append("halfball upper applies to closed balls at this eps")
    elif eps == half:
        notes.append("halfball upper applies to open balls at eps = 1/2")
    else:
        notes.append("halfball upper inapplicable: eps > 1/2")

    sperner_v = None
    if rho is not None:
        rho = rational(rho)
        sperner_v = sperner_lower(d, eps, rho)
        notes.append(f"discrete variant at rho = {rho}")

    lowers = [lower_classic, lower_main_v]
    if lower_simple_v is not None:
        lowers.append(lower_simple_v)
    uppers = [upper_trivial]
    if eps <= half:
        uppers.extend([secluded_val, halfball])
    for lo in lowers:
        for up in uppers:
            if lo > up:
                raise InconsistentBounds(
                    f"lower bound {lo} exceeds upper bound {up} at d={d}, eps={eps}")

    return BoundReport(
        d=d, eps=eps,
        lower_classic=lower_classic,
        lower_main=lower_main_v,
        lower_simple=lower_simple_v,
        upper_trivial=upper_trivial,
        upper_secluded_best=secluded_val,
        upper_secluded_n=secluded_n,
        upper_halfball=halfball,
        rho=rho,
        sperner=sperner_v,
        notes=tuple(notes),
    )
