r"""Implement an exact algebra over finite unions of closed real
intervals, and a solver for scalar quadratic inequalities.

All the regions of the line parameter ``z`` manipulated by ``ransacsi``
are ``IntervalSet`` objects. Boundaries are always closed: the
p-values integrate a continuous density so the inclusion of a boundary
point never changes a result.
"""

from __future__ import annotations

__all__ = [
    "MERGE_TOL",
    "QUAD_TOL",
    "Interval",
    "IntervalSet",
    "QuadCoeffs",
    "complement",
    "contains",
    "intersect",
    "intersect_all",
    "solve_quadratic_leq",
    "subtract",
    "union",
    "union_all",
]

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, NamedTuple

from ransacsi.exceptions import InvalidInputError

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator

MERGE_TOL = 1e-10
QUAD_TOL = 1e-12

INF = math.inf


class Interval(NamedTuple):
    r"""Define a closed interval ``[lo, hi]``.

    ``lo`` may be ``-inf`` and ``hi`` may be ``+inf``.
    """

    lo: float
    hi: float


def _scale(*values: float) -> float:
    return max([1.0] + [abs(v) for v in values if math.isfinite(v)])


def _canonicalize(intervals: Iterable[tuple[float, float]]) -> tuple[Interval, ...]:
    items = []
    for lo, hi in intervals:
        lo, hi = float(lo), float(hi)
        if math.isnan(lo) or math.isnan(hi):
            msg = f"interval endpoints cannot be NaN (received: [{lo}, {hi}])"
            raise InvalidInputError(msg)
        if lo > hi:
            msg = f"interval lower bound is greater than its upper bound (received: [{lo}, {hi}])"
            raise InvalidInputError(msg)
        if lo == hi and math.isinf(lo):
            continue
        items.append((lo, hi))
    items.sort()

    merged: list[list[float]] = []
    for lo, hi in items:
        if merged and lo - merged[-1][1] <= MERGE_TOL * _scale(lo, merged[-1][1]):
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    # Zero-width pieces carry no probability mass.
    return tuple(
        Interval(lo, hi) for lo, hi in merged if hi - lo > MERGE_TOL * _scale(lo, hi)
    )


class IntervalSet:
    r"""Implement a finite union of disjoint closed intervals.

    The representation is canonical: the intervals are sorted, pairwise
    separated by gaps strictly larger than the merge tolerance, and
    intervals of (numerically) zero width are dropped. Two equal sets
    therefore have identical representations. Instances are immutable.

    Args:
        intervals: The intervals, as ``(lo, hi)`` pairs. They do not
            need to be sorted or disjoint.

    Raises:
        InvalidInputError: if an interval has ``lo > hi`` or a NaN
            endpoint.

    Example usage:

    ```pycon

    >>> from ransacsi.intervals import IntervalSet
    >>> IntervalSet([(2, 3), (0, 1), (0.5, 1.5)])
    IntervalSet([0.0, 1.5], [2.0, 3.0])
    >>> IntervalSet.real_line()
    IntervalSet([-inf, inf])
    >>> IntervalSet.empty()
    IntervalSet()

    ```
    """

    __slots__ = ("_intervals",)

    def __init__(self, intervals: Iterable[tuple[float, float]] = ()) -> None:
        self._intervals = _canonicalize(intervals)

    @classmethod
    def _from_canonical(cls, intervals: tuple[Interval, ...]) -> IntervalSet:
        obj = cls.__new__(cls)
        obj._intervals = intervals
        return obj

    @classmethod
    def empty(cls) -> IntervalSet:
        r"""Return the empty set."""
        return cls._from_canonical(())

    @classmethod
    def real_line(cls) -> IntervalSet:
        r"""Return the whole real line ``(-inf, inf)``."""
        return cls._from_canonical((Interval(-INF, INF),))

    @property
    def intervals(self) -> tuple[Interval, ...]:
        r"""The sorted disjoint intervals."""
        return self._intervals

    def is_empty(self) -> bool:
        return not self._intervals

    def is_real_line(self) -> bool:
        return self._intervals == (Interval(-INF, INF),)

    def measure(self) -> float:
        r"""Return the total length of the set (possibly infinite)."""
        return math.fsum(hi - lo for lo, hi in self._intervals)

    def endpoints(self) -> list[list[float]]:
        r"""Return the intervals as a list of ``[lo, hi]`` lists."""
        return [[lo, hi] for lo, hi in self._intervals]

    def component_containing(self, z: float, tol: float = 0.0) -> Interval | None:
        r"""Return the interval that contains ``z``, if any.

        Args:
            z: The value to look for.
            tol: An absolute tolerance on the endpoints.

        Returns:
            The interval containing ``z`` or ``None``.
        """
        for interval in self._intervals:
            if interval.lo - tol <= z <= interval.hi + tol:
                return interval
        return None

    def clip(self, lo: float, hi: float) -> IntervalSet:
        r"""Return the intersection with ``[lo, hi]``."""
        return intersect(self, IntervalSet([(lo, hi)]))

    def __iter__(self) -> Iterator[Interval]:
        return iter(self._intervals)

    def __len__(self) -> int:
        return len(self._intervals)

    def __bool__(self) -> bool:
        return bool(self._intervals)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self._intervals == other._intervals

    def __hash__(self) -> int:
        return hash(self._intervals)

    def __repr__(self) -> str:
        body = ", ".join(f"[{lo!r}, {hi!r}]" for lo, hi in self._intervals)
        return f"{self.__class__.__qualname__}({body})"

    def __contains__(self, z: float) -> bool:
        return contains(self, z)

    def __or__(self, other: IntervalSet) -> IntervalSet:
        return union(self, other)

    def __and__(self, other: IntervalSet) -> IntervalSet:
        return intersect(self, other)

    def __sub__(self, other: IntervalSet) -> IntervalSet:
        return subtract(self, other)

    def __invert__(self) -> IntervalSet:
        return complement(self)


@dataclass(frozen=True)
class QuadCoeffs:
    r"""Define the quadratic inequality ``w + r * z + o * z**2 <= 0``.

    Args:
        w: The constant term.
        r: The linear coefficient.
        o: The quadratic coefficient.

    Raises:
        InvalidInputError: if a coefficient is not finite.
    """

    w: float
    r: float
    o: float

    def __post_init__(self) -> None:
        for name in ("w", "r", "o"):
            value = getattr(self, name)
            if not math.isfinite(value):
                msg = f"quadratic coefficient {name} must be finite (received: {value})"
                raise InvalidInputError(msg)

    def evaluate(self, z: float) -> float:
        return self.w + self.r * z + self.o * z * z


def solve_quadratic_leq(q: QuadCoeffs, tol: float = QUAD_TOL) -> IntervalSet:
    r"""Solve the inequality ``w + r * z + o * z**2 <= 0`` in ``z``.

    The coefficients are first divided by ``max(|w|, |r|, |o|)``, which
    leaves the solution set unchanged. The inequality is treated as
    linear when ``|o| <= tol * |r|`` and ``|o * w| <= tol * r**2``: the
    root dropped with the quadratic term is then ``1 / tol`` times
    farther than the linear root ``-w / r``. A small ``o`` next to a
    large ``w`` is solved as a quadratic, and the inequality is
    constant only when ``o = r = 0``. The roots are computed with the
    cancellation-free form ``q = -(r + sign(r) * sqrt(disc)) / 2``,
    ``z1 = q / o``, ``z2 = w / q``. A root that overflows is an
    infinite endpoint.

    Args:
        q: The coefficients of the inequality.
        tol: The relative degeneracy threshold.

    Returns:
        The solution set.

    Raises:
        InvalidInputError: if ``tol`` is not positive.

    Example usage:

    ```pycon

    >>> from ransacsi.intervals import QuadCoeffs, solve_quadratic_leq
    >>> solve_quadratic_leq(QuadCoeffs(w=-1.0, r=0.0, o=1.0))
    IntervalSet([-1.0, 1.0])
    >>> solve_quadratic_leq(QuadCoeffs(w=0.0, r=1.0, o=0.0))
    IntervalSet([-inf, 0.0])
    >>> solve_quadratic_leq(QuadCoeffs(w=1.0, r=0.0, o=1.0))
    IntervalSet()
    >>> region = solve_quadratic_leq(QuadCoeffs(w=-2e10, r=0.0, o=0.01))
    >>> [round(v) for v in region.endpoints()[0]]
    [-1414214, 1414214]

    ```
    """
    if not tol > 0:
        msg = f"tol must be positive (received: {tol})"
        raise InvalidInputError(msg)
    scale = max(abs(q.w), abs(q.r), abs(q.o))
    if scale == 0.0:
        return IntervalSet.real_line()
    w, r, o = q.w / scale, q.r / scale, q.o / scale
    if o == 0.0 and r == 0.0:
        return IntervalSet.real_line() if w <= 0 else IntervalSet.empty()
    if abs(o) <= tol * abs(r) and abs(o * w) <= tol * r * r:
        root = -w / r + 0.0
        return IntervalSet([(-INF, root)]) if r > 0 else IntervalSet([(root, INF)])

    disc = r * r - 4.0 * o * w
    if disc < 0:
        return IntervalSet.empty() if o > 0 else IntervalSet.real_line()
    half = -0.5 * (r + math.copysign(math.sqrt(disc), r))
    if half == 0.0:
        # r == 0 and w == 0: double root at zero
        z1 = z2 = 0.0
    else:
        z1, z2 = half / o, w / half
    lo, hi = min(z1, z2), max(z1, z2)
    if o > 0:
        return IntervalSet([(lo, hi)])
    return IntervalSet([(-INF, lo), (hi, INF)])


def union(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    r"""Return the union of two interval sets.

    Args:
        a: The first set.
        b: The second set.

    Returns:
        The union.

    Example usage:

    ```pycon

    >>> from ransacsi.intervals import IntervalSet, union
    >>> union(IntervalSet([(0, 1)]), IntervalSet([(2, 3)]))
    IntervalSet([0.0, 1.0], [2.0, 3.0])

    ```
    """
    if not a:
        return b
    if not b:
        return a
    return IntervalSet(a.intervals + b.intervals)


def union_all(sets: Iterable[IntervalSet]) -> IntervalSet:
    r"""Return the union of several interval sets.

    Args:
        sets: The sets.

    Returns:
        The union. It is empty if no set is given.
    """
    items = [interval for s in sets for interval in s]
    return IntervalSet(items)


def intersect(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    r"""Return the intersection of two interval sets.

    Args:
        a: The first set.
        b: The second set.

    Returns:
        The intersection.

    Example usage:

    ```pycon

    >>> from ransacsi.intervals import IntervalSet, intersect
    >>> intersect(IntervalSet([(0, 2)]), IntervalSet([(1, 3)]))
    IntervalSet([1.0, 2.0])

    ```
    """
    if not a or not b:
        return IntervalSet.empty()
    if a.is_real_line():
        return b
    if b.is_real_line():
        return a
    xs, ys = a.intervals, b.intervals
    i = j = 0
    out = []
    while i < len(xs) and j < len(ys):
        lo = max(xs[i].lo, ys[j].lo)
        hi = min(xs[i].hi, ys[j].hi)
        if lo <= hi:
            out.append((lo, hi))
        if xs[i].hi < ys[j].hi:
            i += 1
        else:
            j += 1
    return IntervalSet(out)


def intersect_all(sets: Iterable[IntervalSet]) -> IntervalSet:
    r"""Return the intersection of several interval sets.

    Args:
        sets: The sets.

    Returns:
        The intersection. It is the real line if no set is given.
    """
    out = IntervalSet.real_line()
    for s in sets:
        out = intersect(out, s)
        if not out:
            break
    return out


def complement(a: IntervalSet) -> IntervalSet:
    r"""Return the closure of the complement of an interval set.

    Args:
        a: The set.

    Returns:
        The complement.

    Example usage:

    ```pycon

    >>> from ransacsi.intervals import IntervalSet, complement
    >>> complement(IntervalSet([(-1, 1)]))
    IntervalSet([-inf, -1.0], [1.0, inf])

    ```
    """
    out = []
    start = -INF
    for lo, hi in a:
        if lo > start:
            out.append((start, lo))
        start = hi
    if start < INF:
        out.append((start, INF))
    return IntervalSet(out)


def subtract(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    r"""Return ``a`` minus ``b``, i.e. ``intersect(a, complement(b))``.

    Args:
        a: The set to subtract from.
        b: The set to remove.

    Returns:
        The difference.

    Example usage:

    ```pycon

    >>> from ransacsi.intervals import IntervalSet, subtract
    >>> subtract(IntervalSet.real_line(), IntervalSet([(0, 1)]))
    IntervalSet([-inf, 0.0], [1.0, inf])

    ```
    """
    return intersect(a, complement(b))


def contains(a: IntervalSet, z: float, tol: float = 0.0) -> bool:
    r"""Indicate if a value lies in an interval set.

    Args:
        a: The set.
        z: The value.
        tol: An absolute tolerance on the endpoints.

    Returns:
        ``True`` if ``z`` lies in an interval of ``a``.

    Example usage:

    ```pycon

    >>> from ransacsi.intervals import IntervalSet, contains
    >>> contains(IntervalSet([(0, 1)]), 0.5)
    True
    >>> contains(IntervalSet.empty(), 0.0)
    False

    ```
    """
    return a.component_containing(z, tol=tol) is not None
