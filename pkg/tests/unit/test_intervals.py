from __future__ import annotations

import math

import numpy as np
import pytest

from ransacsi.exceptions import InvalidInputError
from ransacsi.intervals import (
    Interval,
    IntervalSet,
    QuadCoeffs,
    complement,
    contains,
    intersect,
    intersect_all,
    solve_quadratic_leq,
    subtract,
    union,
    union_all,
)

INF = math.inf

#################################
#     Tests for IntervalSet     #
#################################


def test_interval_set_canonical() -> None:
    assert IntervalSet([(2, 3), (0, 1), (0.5, 1.5)]).intervals == (
        Interval(0.0, 1.5),
        Interval(2.0, 3.0),
    )


def test_interval_set_merge_touching() -> None:
    assert IntervalSet([(0, 1), (1, 2)]) == IntervalSet([(0, 2)])


def test_interval_set_merge_within_tolerance() -> None:
    assert IntervalSet([(0, 1), (1 + 1e-12, 2)]) == IntervalSet([(0, 2)])


def test_interval_set_drop_zero_width() -> None:
    assert IntervalSet([(1, 1), (3, 4)]) == IntervalSet([(3, 4)])


def test_interval_set_drop_infinite_point() -> None:
    assert IntervalSet([(INF, INF)]).is_empty()


def test_interval_set_empty() -> None:
    s = IntervalSet.empty()
    assert s.is_empty()
    assert not s
    assert len(s) == 0


def test_interval_set_real_line() -> None:
    s = IntervalSet.real_line()
    assert s.is_real_line()
    assert s == IntervalSet([(-INF, INF)])


def test_interval_set_incorrect_bounds() -> None:
    with pytest.raises(InvalidInputError, match="lower bound is greater"):
        IntervalSet([(2, 1)])


def test_interval_set_nan() -> None:
    with pytest.raises(InvalidInputError, match="cannot be NaN"):
        IntervalSet([(math.nan, 1)])


def test_interval_set_repr() -> None:
    assert repr(IntervalSet([(0, 1), (2, 3)])) == "IntervalSet([0.0, 1.0], [2.0, 3.0])"


def test_interval_set_repr_empty() -> None:
    assert repr(IntervalSet()) == "IntervalSet()"


def test_interval_set_measure() -> None:
    assert IntervalSet([(0, 1), (2, 4.5)]).measure() == 3.5


def test_interval_set_measure_infinite() -> None:
    assert IntervalSet([(-INF, 0)]).measure() == INF


def test_interval_set_endpoints() -> None:
    assert IntervalSet([(0, 1), (2, INF)]).endpoints() == [[0.0, 1.0], [2.0, INF]]


def test_interval_set_component_containing() -> None:
    assert IntervalSet([(0, 1), (2, 3)]).component_containing(2.5) == Interval(2.0, 3.0)


def test_interval_set_component_containing_none() -> None:
    assert IntervalSet([(0, 1), (2, 3)]).component_containing(1.5) is None


def test_interval_set_component_containing_tol() -> None:
    assert IntervalSet([(0, 1)]).component_containing(1.001, tol=0.01) == Interval(0.0, 1.0)


def test_interval_set_clip() -> None:
    assert IntervalSet([(-INF, -1), (1, INF)]).clip(-5, 5) == IntervalSet([(-5, -1), (1, 5)])


def test_interval_set_operators() -> None:
    a = IntervalSet([(0, 2)])
    b = IntervalSet([(1, 3)])
    assert a | b == IntervalSet([(0, 3)])
    assert a & b == IntervalSet([(1, 2)])
    assert a - b == IntervalSet([(0, 1)])
    assert ~a == IntervalSet([(-INF, 0), (2, INF)])


def test_interval_set_contains_operator() -> None:
    s = IntervalSet([(0, 1)])
    assert 0.0 in s
    assert 1.0 in s
    assert 1.5 not in s


def test_interval_set_hash() -> None:
    assert hash(IntervalSet([(0, 1)])) == hash(IntervalSet([(0.0, 1.0)]))


def test_interval_set_eq_other_type() -> None:
    assert IntervalSet([(0, 1)]) != [(0, 1)]


def test_interval_set_iter() -> None:
    assert list(IntervalSet([(0, 1), (2, 3)])) == [Interval(0.0, 1.0), Interval(2.0, 3.0)]


################################
#     Tests for QuadCoeffs     #
################################


def test_quad_coeffs_evaluate() -> None:
    assert QuadCoeffs(w=1.0, r=2.0, o=3.0).evaluate(2.0) == 17.0


def test_quad_coeffs_not_finite() -> None:
    with pytest.raises(InvalidInputError, match="must be finite"):
        QuadCoeffs(w=INF, r=0.0, o=1.0)


#########################################
#     Tests for solve_quadratic_leq     #
#########################################


def test_solve_quadratic_leq_convex() -> None:
    assert solve_quadratic_leq(QuadCoeffs(w=-1.0, r=0.0, o=1.0)) == IntervalSet([(-1, 1)])


def test_solve_quadratic_leq_convex_shifted() -> None:
    # (z - 2)^2 - 1 <= 0
    assert solve_quadratic_leq(QuadCoeffs(w=3.0, r=-4.0, o=1.0)) == IntervalSet([(1, 3)])


def test_solve_quadratic_leq_concave() -> None:
    assert solve_quadratic_leq(QuadCoeffs(w=1.0, r=0.0, o=-1.0)) == IntervalSet(
        [(-INF, -1), (1, INF)]
    )


def test_solve_quadratic_leq_no_real_root_convex() -> None:
    assert solve_quadratic_leq(QuadCoeffs(w=1.0, r=0.0, o=1.0)).is_empty()


def test_solve_quadratic_leq_no_real_root_concave() -> None:
    assert solve_quadratic_leq(QuadCoeffs(w=-1.0, r=0.0, o=-1.0)).is_real_line()


def test_solve_quadratic_leq_linear_increasing() -> None:
    assert solve_quadratic_leq(QuadCoeffs(w=-2.0, r=1.0, o=0.0)) == IntervalSet([(-INF, 2)])


def test_solve_quadratic_leq_linear_decreasing() -> None:
    assert solve_quadratic_leq(QuadCoeffs(w=-2.0, r=-1.0, o=0.0)) == IntervalSet([(-2, INF)])


def test_solve_quadratic_leq_constant_true() -> None:
    assert solve_quadratic_leq(QuadCoeffs(w=-1.0, r=0.0, o=0.0)).is_real_line()


def test_solve_quadratic_leq_constant_false() -> None:
    assert solve_quadratic_leq(QuadCoeffs(w=1.0, r=0.0, o=0.0)).is_empty()


def test_solve_quadratic_leq_double_root() -> None:
    # z^2 <= 0 only holds at 0, which carries no mass
    assert solve_quadratic_leq(QuadCoeffs(w=0.0, r=0.0, o=1.0)).is_empty()


def test_solve_quadratic_leq_tiny_quadratic_term_next_to_linear_term() -> None:
    # the dropped root is at -1e15, 5e14 times farther than the linear root
    assert solve_quadratic_leq(QuadCoeffs(w=-2.0, r=1.0, o=1e-15)) == IntervalSet([(-INF, 2)])


def test_solve_quadratic_leq_small_quadratic_term_next_to_constant_term() -> None:
    lo, hi = solve_quadratic_leq(QuadCoeffs(w=-2e10, r=0.0, o=0.01)).intervals[0]
    assert lo == pytest.approx(-math.sqrt(2e12), rel=1e-12)
    assert hi == pytest.approx(math.sqrt(2e12), rel=1e-12)


def test_solve_quadratic_leq_tiny_linear_term() -> None:
    # roots near 2.70e13 and -3.70e13, far from the linear root 1e14
    region = solve_quadratic_leq(QuadCoeffs(w=-1.0, r=1e-14, o=1e-27))
    assert contains(region, 2.6e13)
    assert not contains(region, 2.8e13)
    assert contains(region, -3.6e13)
    assert not contains(region, -3.8e13)


@pytest.mark.parametrize("scale", [1e-8, 1e-3, 1e5, 1e10])
def test_solve_quadratic_leq_scale_invariant(scale: float) -> None:
    reference = solve_quadratic_leq(QuadCoeffs(w=-2.0, r=0.5, o=1.0))
    expected = [e for interval in reference for e in interval]
    region = solve_quadratic_leq(QuadCoeffs(w=-2.0 * scale, r=0.5 * scale, o=scale))
    assert [e for interval in region for e in interval] == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("seed", range(50))
def test_solve_quadratic_leq_random_coefficients(seed: int) -> None:
    rng = np.random.default_rng(seed)
    signs = rng.choice([-1.0, 1.0], size=3)
    w = signs[0] * 10 ** rng.uniform(-2, 12)
    r = signs[1] * 10 ** rng.uniform(-2, 4) if rng.random() < 0.8 else 0.0
    o = signs[2] * 10 ** rng.uniform(-4, 2) if rng.random() < 0.9 else 0.0
    q = QuadCoeffs(w=w, r=r, o=o)
    region = solve_quadratic_leq(q)
    ends = [e for interval in region for e in interval if math.isfinite(e)]
    points = rng.choice([-1.0, 1.0], size=1000) * 10 ** rng.uniform(-3, 8, size=1000)
    for z in points.tolist():
        if any(abs(z - e) <= 1e-7 * max(1.0, abs(e)) for e in ends):
            continue
        assert contains(region, z) == (q.evaluate(z) <= 0)


def test_solve_quadratic_leq_no_cancellation() -> None:
    # roots 1e-8 and 1e8
    out = solve_quadratic_leq(QuadCoeffs(w=1.0, r=-(1e8 + 1e-8), o=1.0))
    lo, hi = out.intervals[0]
    assert lo == pytest.approx(1e-8, rel=1e-12)
    assert hi == pytest.approx(1e8, rel=1e-12)


def test_solve_quadratic_leq_incorrect_tol() -> None:
    with pytest.raises(InvalidInputError, match="tol must be positive"):
        solve_quadratic_leq(QuadCoeffs(w=-1.0, r=0.0, o=1.0), tol=0.0)


@pytest.mark.parametrize("z", [-3.0, -1.5, -0.25, 0.0, 0.4, 2.0, 7.5])
def test_solve_quadratic_leq_matches_sign(z: float) -> None:
    q = QuadCoeffs(w=-2.0, r=0.5, o=1.0)
    region = solve_quadratic_leq(q)
    assert contains(region, z) == (q.evaluate(z) <= 0)


###########################
#     Tests for union     #
###########################


def test_union() -> None:
    assert union(IntervalSet([(0, 1)]), IntervalSet([(2, 3)])) == IntervalSet([(0, 1), (2, 3)])


def test_union_overlap() -> None:
    assert union(IntervalSet([(0, 2)]), IntervalSet([(1, 3)])) == IntervalSet([(0, 3)])


def test_union_empty() -> None:
    s = IntervalSet([(0, 1)])
    assert union(s, IntervalSet.empty()) == s
    assert union(IntervalSet.empty(), s) == s


def test_union_all() -> None:
    assert union_all(
        [IntervalSet([(0, 1)]), IntervalSet([(5, 6)]), IntervalSet([(0.5, 2)])]
    ) == IntervalSet([(0, 2), (5, 6)])


def test_union_all_no_set() -> None:
    assert union_all([]).is_empty()


###############################
#     Tests for intersect     #
###############################


def test_intersect() -> None:
    assert intersect(IntervalSet([(0, 2)]), IntervalSet([(1, 3)])) == IntervalSet([(1, 2)])


def test_intersect_multiple() -> None:
    a = IntervalSet([(0, 2), (4, 6), (8, 10)])
    b = IntervalSet([(1, 5), (9, INF)])
    assert intersect(a, b) == IntervalSet([(1, 2), (4, 5), (9, 10)])


def test_intersect_disjoint() -> None:
    assert intersect(IntervalSet([(0, 1)]), IntervalSet([(2, 3)])).is_empty()


def test_intersect_touching() -> None:
    assert intersect(IntervalSet([(0, 1)]), IntervalSet([(1, 2)])).is_empty()


def test_intersect_real_line() -> None:
    s = IntervalSet([(0, 1)])
    assert intersect(IntervalSet.real_line(), s) == s
    assert intersect(s, IntervalSet.real_line()) == s


def test_intersect_all() -> None:
    assert intersect_all(
        [IntervalSet([(0, 5)]), IntervalSet([(1, 6)]), IntervalSet([(-1, 3)])]
    ) == IntervalSet([(1, 3)])


def test_intersect_all_no_set() -> None:
    assert intersect_all([]).is_real_line()


################################
#     Tests for complement     #
################################


def test_complement() -> None:
    assert complement(IntervalSet([(-1, 1)])) == IntervalSet([(-INF, -1), (1, INF)])


def test_complement_empty() -> None:
    assert complement(IntervalSet.empty()).is_real_line()


def test_complement_real_line() -> None:
    assert complement(IntervalSet.real_line()).is_empty()


def test_complement_half_line() -> None:
    assert complement(IntervalSet([(-INF, 0), (1, 2)])) == IntervalSet([(0, 1), (2, INF)])


def test_complement_involution() -> None:
    s = IntervalSet([(-3, -1), (0.5, 2), (4, INF)])
    assert complement(complement(s)) == s


##############################
#     Tests for subtract     #
##############################


def test_subtract() -> None:
    assert subtract(IntervalSet.real_line(), IntervalSet([(0, 1)])) == IntervalSet(
        [(-INF, 0), (1, INF)]
    )


def test_subtract_itself() -> None:
    s = IntervalSet([(0, 1), (3, 4)])
    assert subtract(s, s).is_empty()


##############################
#     Tests for contains     #
##############################


def test_contains() -> None:
    assert contains(IntervalSet([(0, 1)]), 0.5)


def test_contains_boundary() -> None:
    assert contains(IntervalSet([(0, 1)]), 1.0)


def test_contains_false() -> None:
    assert not contains(IntervalSet([(0, 1)]), 1.5)


def test_contains_tol() -> None:
    assert contains(IntervalSet([(0, 1)]), 1.5, tol=0.5)


def test_contains_empty() -> None:
    assert not contains(IntervalSet.empty(), 0.0)


###########################################
#     Tests for the interval set laws     #
###########################################


def create_random_set(rng: np.random.Generator) -> IntervalSet:
    ends = np.sort(rng.uniform(-10.0, 10.0, size=2 * int(rng.integers(0, 5))))
    pairs = ends.reshape(-1, 2).tolist()
    if pairs and rng.random() < 0.3:
        pairs[0][0] = -INF
    if pairs and rng.random() < 0.3:
        pairs[-1][1] = INF
    return IntervalSet(pairs)


@pytest.mark.parametrize("seed", range(30))
def test_union_commutative(seed: int) -> None:
    rng = np.random.default_rng(seed)
    a, b = create_random_set(rng), create_random_set(rng)
    assert union(a, b) == union(b, a)


@pytest.mark.parametrize("seed", range(30))
def test_intersect_complement_empty(seed: int) -> None:
    a = create_random_set(np.random.default_rng(seed))
    assert intersect(a, complement(a)).is_empty()


@pytest.mark.parametrize("seed", range(30))
def test_union_complement_real_line(seed: int) -> None:
    a = create_random_set(np.random.default_rng(seed))
    assert union(a, complement(a)).is_real_line()


@pytest.mark.parametrize("seed", range(30))
def test_de_morgan(seed: int) -> None:
    rng = np.random.default_rng(seed)
    a, b = create_random_set(rng), create_random_set(rng)
    assert complement(union(a, b)) == intersect(complement(a), complement(b))
    assert complement(intersect(a, b)) == union(complement(a), complement(b))


@pytest.mark.parametrize("seed", range(30))
def test_subtract_matches_intersect_complement(seed: int) -> None:
    rng = np.random.default_rng(seed)
    a, b = create_random_set(rng), create_random_set(rng)
    assert subtract(a, b) == intersect(a, complement(b))
