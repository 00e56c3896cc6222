from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from oracles import integers_in_open_interval, norm_p_minus_q_omega
from pellinv.cf_engine import expand_omega
from pellinv.errors import BelowThreshold, NotCoprime, NotRepresentable
from pellinv.inverse import (
    InverseKey,
    attached_intervals,
    cross_check_parameterizations,
    d_closed_form,
    halter_koch_progression,
    integer_in_interval,
    least_a0,
    make_progression,
    progression_elements,
    progressions_for_key,
)
from pellinv.least_type import reduced_family
from pellinv.symmetry import symmetric_form_for_sign


def test_interval_example_9_2():
    minus, plus = attached_intervals(9, 2, 0)
    assert (minus.lo, minus.hi) == (Fraction(81225, 4096), Fraction(81, 4))
    assert (plus.lo, plus.hi) == (Fraction(81, 4), Fraction(84681, 4096))
    assert 20 in minus and 20 not in plus


def test_interval_example_5_1():
    minus, plus = attached_intervals(5, 1, 0)
    assert 24 in minus and 26 in plus


def test_interval_errors():
    with pytest.raises(BelowThreshold):
        attached_intervals(3, 2, 0)
    with pytest.raises(NotCoprime):
        attached_intervals(10, 2, 0)


@pytest.mark.parametrize("p, q, ring, side, expected", [
    (9, 2, 0, "-", (20, 1, 2)),
    (13, 3, 0, "-", None),
    (5, 1, 0, "+", (26, -1, 1)),
    (9, 2, 1, "+", (65, -1, 3)),
])
def test_integer_in_interval_examples(p, q, ring, side, expected):
    hit = integer_in_interval(p, q, ring, side)
    assert (None if hit is None else tuple(hit)) == expected


@given(st.integers(1, 25).flatmap(lambda q: st.tuples(st.integers(5 * q, 200), st.just(q))),
       st.sampled_from([0, 1]))
@settings(max_examples=300)
def test_interval_congruence_matches_scan(pq, ring):
    p, q = pq
    if gcd(p, q) != 1:
        return
    for iv in attached_intervals(p, q, ring):
        hit = integer_in_interval(p, q, ring, iv.side)
        scan = integers_in_open_interval(iv.lo, iv.hi, ring)
        assert scan == ([] if hit is None else [hit.d])
        if hit is not None:
            assert norm_p_minus_q_omega(p, q, hit.d, ring) == hit.norm == (-1 if iv.side == "+" else 1)


def test_interval_band_below_five():
    # for 4 <= p/q < 5 the congruence answer is always in the interval, but the
    # plus interval of 4/1 also holds 18 (the only extra integer for q <= 40)
    extra = []
    for q in range(1, 41):
        for p in range(4 * q, 5 * q):
            if gcd(p, q) != 1:
                continue
            for ring in (0, 1):
                for iv in attached_intervals(p, q, ring):
                    hit = integer_in_interval(p, q, ring, iv.side)
                    scan = integers_in_open_interval(iv.lo, iv.hi, ring)
                    if hit is not None:
                        assert hit.d in scan
                    if scan != ([] if hit is None else [hit.d]):
                        extra.append((p, q, ring, iv.side, scan))
    assert extra == [(4, 1, 0, "+", [17, 18])]


def test_progressions_for_key_1_0():
    progs = {(p.key.sign, p.key.ring): p for p in progressions_for_key(1, 0)}
    assert len(progs) == 4
    assert [d for _, d in progression_elements(progs[(-1, 0)], 4)] == [2, 5, 10, 17]


def test_progressions_for_key_2_1():
    progs = {(p.key.sign, p.key.ring): p for p in progressions_for_key(2, 1)}
    assert set(progs) == {(1, 0), (-1, 1)}
    p0 = progs[(1, 0)]
    assert (p0.frak_a, p0.y_tilde) == (1, 1)
    assert [d for _, d in progression_elements(p0, 4)] == [2, 6, 12, 20]
    assert [d for _, d in progression_elements(progs[(-1, 1)], 3)] == [5, 17, 37]


def test_progressions_for_key_5_2():
    progs = {(p.key.sign, p.key.ring): p for p in progressions_for_key(5, 2)}
    p0 = progs[(-1, 0)]
    assert (p0.frak_a, p0.y_tilde) == (1, 5)
    assert progression_elements(p0, 3) == [(1, 2), (6, 41), (11, 130)]


def test_progression_element_examples():
    assert progression_elements(make_progression(InverseKey(1, 0, 1, 0)), 3) == [(2, 3), (3, 8), (4, 15)]
    assert progression_elements(make_progression(InverseKey(2, 1, -1, 1)), 2) == [(1, 5), (2, 17)]


def test_progressions_not_representable():
    with pytest.raises(NotRepresentable):
        progressions_for_key(7, 2)


@given(st.integers(1, 60).flatmap(lambda y: st.tuples(st.just(y), st.integers(0, max(0, y - 1)))))
@settings(max_examples=200, deadline=None)
def test_progression_elements_have_the_key_palindrome(yx):
    y, x = yx
    if gcd(x, y) != 1:
        return
    for sign in (-1, 1):
        if (x * x - sign) % y:
            continue
        for ring in (0, 1):
            prog = make_progression(InverseKey(y, x, sign, ring))
            if prog is None:
                continue
            fam = reduced_family(y, x, ring, sign)
            pal = symmetric_form_for_sign(x, y, sign).terms
            # y = 1 with sign +1 reads x as 1, so the parameter sits one above floor(omega)
            shift = 1 if (y, sign) == (1, 1) else 0
            for a0, d in progression_elements(prog, 4):
                exp = expand_omega(d, ring)
                assert exp.a0 == a0 - shift
                if d == fam.discarded_least:
                    assert exp.length < len(pal) + 1
                else:
                    assert exp.palindrome == pal
                    assert d_closed_form(y, x, sign, ring, a0) == d


def test_least_a0_even_y_parity():
    # even y: solvable for exactly one ring per sign
    for x, y in [(1, 2), (3, 10), (7, 10), (5, 26)]:
        for sign in (-1, 1):
            if (x * x - sign) % y:
                continue
            found = [r for r in (0, 1) if least_a0(InverseKey(y, x, sign, r)) is not None]
            assert len(found) == 1


def test_halter_koch_examples():
    hk = halter_koch_progression([2, 2])
    assert [hk.f(T) for T in (0, 1)] == [8, 25 + 28 + 8]
    assert hk.elements_upto(0, 200) == [2, 41, 130]
    assert halter_koch_progression([2]).elements_upto(0, 12) == [2, 6, 12]
    empty = halter_koch_progression([])
    assert [empty.f(T) for T in range(4)] == [4, 5, 8, 13]
    assert empty.elements_upto(0, 17) == [2, 5, 10, 17]
    assert empty.elements_upto(1, 29) == [5, 13, 29]


@pytest.mark.parametrize("y, x, bound", [(5, 2, 200), (2, 1, 100), (3, 1, 100), (1, 0, 500), (13, 5, 10**5)])
def test_cross_check_examples(y, x, bound):
    rep = cross_check_parameterizations(y, x, bound)
    assert rep.ok, rep.mismatches()


def test_cross_check_sets():
    rep = cross_check_parameterizations(2, 1, 100)
    by = {(e.sign, e.ring): e.progression for e in rep.entries}
    assert by[(1, 0)] == [2, 6, 12, 20, 30, 42, 56, 72, 90]
    assert by[(-1, 1)] == [5, 17, 37, 65]
