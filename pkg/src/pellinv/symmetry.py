"""Palindromic sequences, continuant matrices and the x/y <-> palindrome map."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import NamedTuple, Sequence

from .cf_engine import rational_two_expansions
from .errors import NonpositiveTerm, NotCoprime, NotInteger, NotPalindrome, NotRepresentable


@dataclass(frozen=True)
class SymmetricSeq:
    terms: tuple[int, ...] = ()

    def __post_init__(self):
        terms = tuple(self.terms)
        object.__setattr__(self, "terms", terms)
        if any(a <= 0 for a in terms):
            raise NonpositiveTerm(f"non-positive term in {list(terms)}")
        if terms != terms[::-1]:
            raise NotPalindrome(f"{list(terms)} is not a palindrome")

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    @property
    def parity(self) -> str:
        return "even" if len(self.terms) % 2 == 0 else "odd"


@dataclass(frozen=True)
class ContinuantMatrix:
    """``[[q_n, q_{n-1}], [r_n, r_{n-1}]]`` = product of ``[[a_i, 1], [1, 0]]``."""

    q_n: int
    q_prev: int
    r_n: int
    r_prev: int
    n: int = 0

    @property
    def det(self) -> int:
        return self.q_n * self.r_prev - self.q_prev * self.r_n

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.q_n, self.q_prev), (self.r_n, self.r_prev)


def continuant(seq: Sequence[int]) -> ContinuantMatrix:
    seq = list(seq)
    if any(a <= 0 for a in seq):
        raise NonpositiveTerm(f"non-positive term in {seq}")
    a11, a12, a21, a22 = 1, 0, 0, 1
    for a in seq:
        # right-multiply by [[a, 1], [1, 0]]
        a11, a12 = a11 * a + a12, a11
        a21, a22 = a21 * a + a22, a21
    return ContinuantMatrix(a11, a12, a21, a22, len(seq))


class SymmetricForm(NamedTuple):
    seq: SymmetricSeq
    parity: str
    sign: int


def _palindromes_of(x: int, y: int) -> list[tuple[int, ...]]:
    """Distinct expansions ``x/y = [0; a_1..a_n]`` (``x <= y``) as candidate blocks."""
    if x == 0:
        return [()]
    if x == y:
        # 1 = [1] = [0, 1]
        return [(), (1,)]
    exps = rational_two_expansions(x, y)
    return [tuple(exps.long[1:]), tuple(exps.short[1:])]


def symmetric_form(x: int, y: int) -> list[SymmetricForm]:
    """Palindromes ``a_1..a_n`` with ``x/y = [0; a_1..a_n]``.

    ``x^2 = -1 (mod y)`` gives an even-length palindrome (sign -1),
    ``x^2 = +1 (mod y)`` an odd-length one (sign +1).  Both congruences hold
    only for ``y <= 2``, and then both forms are returned.  For ``y = 1`` the
    pair ``x = 0`` is read as ``x = 1`` for the odd form (``1 = [0, 1]``).
    """
    if y <= 0 or not 0 <= x <= y:
        raise ValueError("need y > 0 and 0 <= x <= y")
    if gcd(x, y) != 1:
        raise NotCoprime(f"gcd({x}, {y}) != 1")
    out = []
    x_for = {1: x, -1: x}
    if y == 1:
        x_for = {-1: 0, 1: 1}
    for sign in (-1, 1):
        if (x * x - sign) % y:
            continue
        want = 0 if sign == -1 else 1
        for block in _palindromes_of(x_for[sign], y):
            if block == block[::-1] and len(block) % 2 == want:
                seq = SymmetricSeq(block)
                out.append(SymmetricForm(seq, seq.parity, sign))
                break
        else:
            raise ArithmeticError(f"no palindrome of parity {want} for {x}/{y}")
    if not out:
        raise NotRepresentable(f"{x}^2 is not +-1 mod {y}")
    return out


def symmetric_form_for_sign(x: int, y: int, sign: int) -> SymmetricSeq:
    for form in symmetric_form(x, y):
        if form.sign == sign:
            return form.seq
    raise NotRepresentable(f"{x}^2 != {sign} (mod {y})")


def rational_from_symmetric(seq) -> tuple[int, int]:
    """``(x, y) = (r_n, q_n)``, i.e. ``x/y = [0; seq]``."""
    if not isinstance(seq, SymmetricSeq):
        seq = SymmetricSeq(tuple(seq))
    m = continuant(seq.terms)
    return m.r_n, m.q_n


class TParity(NamedTuple):
    t: int
    parity: str


def parity_of_t(x: int, y: int, sign: int) -> TParity:
    """Parity of ``t = (x^2 - sign)/y``; sign -1 gives ``t = (x^2 + 1)/y``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    num = x * x - sign
    if num % y:
        raise NotInteger(f"{y} does not divide {num}")
    t = num // y
    return TParity(t, "even" if t % 2 == 0 else "odd")
