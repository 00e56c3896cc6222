from math import isqrt, log, sqrt

import pytest
from hypothesis import given, settings, strategies as st

from oracles import min_unit
from pellinv.errors import NotPrime, SquareInput, WrongResidue
from pellinv.pell import aac_check, fundamental_unit, log_unit_exact, pell4_solutions, unit_size_stats


@pytest.mark.parametrize("d, ring, a, b, norm", [
    (2, 0, 1, 1, -1),
    (5, 1, 0, 1, -1),
    (6, 0, 5, 2, 1),
    (13, 1, 1, 1, -1),
])
def test_unit_examples(d, ring, a, b, norm):
    fu = fundamental_unit(d, ring)
    assert (fu.unit.a, fu.unit.b, fu.norm) == (a, b, norm)


@given(st.integers(2, 300).filter(lambda d: isqrt(d) ** 2 != d), st.booleans())
@settings(max_examples=60, deadline=None)
def test_unit_matches_oracle(d, try_ring1):
    ring = 1 if try_ring1 and d % 4 == 1 else 0
    fu = fundamental_unit(d, ring)
    assert fu.unit.half_coordinates() + (fu.norm,) == min_unit(d, ring)


def test_square_rejected():
    with pytest.raises(SquareInput):
        fundamental_unit(49)


@pytest.mark.parametrize("d, ring, count, expected", [
    (6, 0, 2, [(10, 2), (98, 20)]),
    (2, 0, 1, [(6, 2)]),
    (5, 1, 1, [(3, 1)]),
])
def test_pell_examples(d, ring, count, expected):
    assert [(s.X, s.Y) for s in pell4_solutions(d, ring, count)] == expected


@given(st.integers(2, 2000).filter(lambda d: isqrt(d) ** 2 != d), st.integers(1, 4))
@settings(deadline=None)
def test_pell_solutions_increase(d, count):
    sols = pell4_solutions(d, 0, count)
    assert all(s.X ** 2 - s.D * s.Y ** 2 == 4 for s in sols)
    assert all(a.Y < b.Y for a, b in zip(sols, sols[1:]))


def test_pell_count_validation():
    with pytest.raises(ValueError):
        pell4_solutions(6, 0, 0)


@pytest.mark.parametrize("p", [5, 13, 29, 37, 41, 53, 61, 73, 89, 97, 101, 109, 113])
def test_aac_small_primes(p):
    res = aac_check(p)
    assert res.holds
    assert res.t ** 2 - p * res.u ** 2 in (4, -4)


def test_aac_values():
    assert aac_check(5)[:2] == (1, True)
    assert aac_check(13)[:2] == (1, True)
    assert aac_check(29)[:2] == (1, True)


def test_aac_errors():
    with pytest.raises(WrongResidue):
        aac_check(7)
    with pytest.raises(NotPrime):
        aac_check(21)


@pytest.mark.parametrize("d, ring, value, length", [
    (2, 0, log(1 + sqrt(2)), 1),
    (6, 0, log(5 + 2 * sqrt(6)), 2),
    (5, 1, log((1 + sqrt(5)) / 2), 1),
])
def test_unit_size(d, ring, value, length):
    st_ = unit_size_stats(d, ring)
    assert st_.period == length
    assert abs(st_.log_unit - value) < 1e-12


def test_log_unit_large():
    import mpmath

    t, u, _ = min_unit(421, 0)
    with mpmath.workdps(40):
        expected = mpmath.log((t + u * mpmath.sqrt(421)) / 2)
        assert abs(mpmath.mpf(str(log_unit_exact(421, 0, digits=30))) - expected) < mpmath.mpf(10) ** -25
