from math import gcd

import pytest
from hypothesis import given, strategies as st

from pellinv.cf_engine import cf_to_rational
from pellinv.errors import NonpositiveTerm, NotCoprime, NotInteger, NotPalindrome, NotRepresentable
from pellinv.symmetry import (
    SymmetricSeq,
    continuant,
    parity_of_t,
    rational_from_symmetric,
    symmetric_form,
    symmetric_form_for_sign,
)

palindromes = st.lists(st.integers(1, 9), max_size=6).flatmap(
    lambda half: st.sampled_from([half + half[::-1], half + [1] + half[::-1], half + [3] + half[::-1]]))


@pytest.mark.parametrize("seq, q_n, q_prev, r_n, r_prev", [
    ([2], 2, 1, 1, 0),
    ([2, 2], 5, 2, 2, 1),
    ([], 1, 0, 0, 1),
])
def test_continuant_examples(seq, q_n, q_prev, r_n, r_prev):
    m = continuant(seq)
    assert (m.q_n, m.q_prev, m.r_n, m.r_prev) == (q_n, q_prev, r_n, r_prev)


@given(st.lists(st.integers(1, 50), max_size=12))
def test_continuant_determinant(seq):
    m = continuant(seq)
    assert m.det == (-1) ** len(seq)
    if seq:
        assert (m.r_n, m.q_n) == cf_to_rational([0] + seq)


@given(palindromes)
def test_palindrome_continuant_symmetric(seq):
    # transpose invariance: q_{n-1} = r_n for palindromes
    m = continuant(seq)
    assert m.q_prev == m.r_n


def test_symmetric_seq_validation():
    with pytest.raises(NotPalindrome):
        SymmetricSeq((1, 2))
    with pytest.raises(NonpositiveTerm):
        SymmetricSeq((0,))
    assert SymmetricSeq((1, 2, 1)).parity == "odd"


@pytest.mark.parametrize("x, y, forms", [
    (2, 5, [((2, 2), "even", -1)]),
    (2, 3, [((1, 1, 1), "odd", 1)]),
    (1, 2, [((1, 1), "even", -1), ((2,), "odd", 1)]),
])
def test_symmetric_form_examples(x, y, forms):
    got = [(f.seq.terms, f.parity, f.sign) for f in symmetric_form(x, y)]
    assert sorted(got) == sorted(forms)


def test_symmetric_form_errors():
    with pytest.raises(NotRepresentable):
        symmetric_form(2, 7)
    with pytest.raises(NotCoprime):
        symmetric_form(2, 4)
    with pytest.raises(NotRepresentable):
        symmetric_form_for_sign(2, 5, 1)


def test_symmetric_form_y1():
    got = {f.sign: f.seq.terms for f in symmetric_form(0, 1)}
    assert got == {-1: (), 1: (1,)}


@pytest.mark.parametrize("seq, xy", [([2, 2], (2, 5)), ([1, 1], (1, 2)), ([], (0, 1))])
def test_rational_from_symmetric(seq, xy):
    assert rational_from_symmetric(seq) == xy


@given(palindromes)
def test_palindrome_round_trip(seq):
    x, y = rational_from_symmetric(seq)
    sign = -1 if len(seq) % 2 == 0 else 1
    assert (x * x - sign) % y == 0
    if y > 2 or seq in ([], [1], [2], [1, 1]):
        assert symmetric_form_for_sign(x % y if y > 1 else x, y, sign).terms == tuple(seq)


@given(st.integers(3, 400).flatmap(lambda y: st.tuples(st.integers(1, y - 1), st.just(y))))
def test_symmetric_correspondence(xy):
    x, y = xy
    if gcd(x, y) != 1:
        return
    reps = {s for s in (-1, 1) if (x * x - s) % y == 0}
    if not reps:
        with pytest.raises(NotRepresentable):
            symmetric_form(x, y)
        return
    for f in symmetric_form(x, y):
        assert f.sign in reps
        assert (len(f.seq) % 2 == 0) == (f.sign == -1)
        assert rational_from_symmetric(f.seq) == (x, y)


@pytest.mark.parametrize("x, y, sign, t, parity", [
    (1, 2, 1, 0, "even"),
    (1, 2, -1, 1, "odd"),
    (5, 12, 1, 2, "even"),
])
def test_parity_examples(x, y, sign, t, parity):
    assert tuple(parity_of_t(x, y, sign)) == (t, parity)


def test_parity_errors():
    with pytest.raises(NotInteger):
        parity_of_t(2, 7, 1)
    with pytest.raises(ValueError):
        parity_of_t(1, 2, 0)
