"""The inverse Pell problem: which d make ``a0*y + x + y*omega_d`` a unit.

Two independent descriptions of the same quadratic progressions live here.

* The interval route: each rational ``p/q >= 4`` gets narrow intervals
  around ``(p/q)^2`` (ring 0) and ``(2p/q - 1)^2`` (ring 1).  Whether such an
  interval holds an admissible integer is a pair of congruences on
  ``k = p mod q`` and ``a0 = p // q``; the integer, when present, is
  ``(p^2 -+ 1)/q^2`` or ``((2p - q)^2 -+ 4)/q^2``.
* The Halter-Koch route: a palindrome ``a_1..a_n`` gives a quadratic
  ``f(T) = q_n^2 T^2 + A T + B`` whose values (divided by 4 for ring 0)
  are exactly the d whose period starts with that palindrome.

:func:`cross_check_parameterizations` compares the two.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterator, NamedTuple, Optional

from .cf_engine import is_square, rational_two_expansions
from .errors import BelowThreshold, NotCoprime, NotRepresentable
from .symmetry import SymmetricSeq, continuant, symmetric_form_for_sign

CASE_IDS = {(-1, 0): 1, (1, 0): 2, (-1, 1): 3, (1, 1): 4}
THRESHOLD = 4


def _norm(x: int, y: int) -> int:
    if y <= 0:
        raise ValueError("y must be positive")
    if not 0 <= x <= y:
        raise ValueError("need 0 <= x <= y")
    if gcd(x, y) != 1:
        raise NotCoprime(f"gcd({x}, {y}) != 1")
    return x % y


@dataclass(frozen=True)
class InverseKey:
    """Family identifier: ``x^2 = sign (mod y)``, ring 0 or 1."""

    y: int
    x: int
    sign: int
    ring: int

    def __post_init__(self):
        object.__setattr__(self, "x", _norm(self.x, self.y))
        if self.sign not in (1, -1) or self.ring not in (0, 1):
            raise ValueError("sign must be +-1 and ring 0 or 1")
        if (self.x * self.x - self.sign) % self.y:
            raise NotRepresentable(f"{self.x}^2 != {self.sign} (mod {self.y})")

    @property
    def y_tilde(self) -> int:
        return self.y // 2 if self.y % 2 == 0 else self.y

    @property
    def case_id(self) -> int:
        return CASE_IDS[(self.sign, self.ring)]

    @property
    def residue(self) -> int:
        """Right-hand side ``c`` of the a0 congruence ``2*a0 = c (mod y)``."""
        x, y = self.x, self.y
        return self.ring + x * ((1 - self.sign * x * x) // y)

    @property
    def pair_class(self) -> str:
        return ("e" if self.y % 2 == 0 else "o") + ("+" if self.sign == 1 else "-")


def least_a0(key: InverseKey) -> Optional[int]:
    """Least ``a0 >= 1`` with ``2*a0 = c (mod y)``, or None if unsolvable."""
    y, c = key.y, key.residue
    if y % 2:
        r = (c * pow(2, -1, y)) % y if y > 1 else 0
        return r or y
    if c % 2:
        return None
    yt = y // 2
    r = (c // 2) % yt
    return r or yt


def d_closed_form(y: int, x: int, sign: int, ring: int, a0: int) -> Fraction:
    p = a0 * y + x
    if ring == 0:
        return Fraction(p * p - sign, y * y)
    return Fraction((2 * p - y) ** 2 - 4 * sign, y * y)


def unit_norm(p: int, q: int, d: int, ring: int) -> int:
    """``N(p - q*omega_d)``."""
    if ring == 0:
        return p * p - q * q * d
    num = (2 * p - q) ** 2 - q * q * d
    assert num % 4 == 0
    return num // 4


@dataclass(frozen=True)
class Progression:
    key: InverseKey
    frak_a: int
    y_tilde: int
    case_id: int

    def a0(self, k: int) -> int:
        return self.frak_a + self.y_tilde * k

    def d_at(self, a0: int) -> int:
        key = self.key
        val = d_closed_form(key.y, key.x, key.sign, key.ring, a0)
        if val.denominator != 1:
            raise ArithmeticError(f"non-integral d at a0={a0} for {key}")
        return int(val)

    def iter_terms(self) -> Iterator[tuple[int, int]]:
        """All ``(a0, d)`` including degenerate ones (d <= 0 or square)."""
        k = 0
        while True:
            a0 = self.a0(k)
            yield a0, self.d_at(a0)
            k += 1

    def iter_elements(self) -> Iterator[tuple[int, int]]:
        key = self.key
        for a0, d in self.iter_terms():
            if d <= 0 or is_square(d):
                continue
            n = unit_norm(a0 * key.y + key.x, key.y, d, key.ring)
            if n != key.sign:
                raise ArithmeticError(f"N = {n} != {key.sign} at d={d} for {key}")
            yield a0, d

    def skipped(self) -> list[tuple[int, int]]:
        """Degenerate leading terms; d grows with a0 so they only occur first."""
        out = []
        for a0, d in self.iter_terms():
            if d > 0 and not is_square(d):
                return out
            out.append((a0, d))

    def elements_upto(self, bound: int) -> list[int]:
        out = []
        for _, d in self.iter_elements():
            if d > bound:
                break
            out.append(d)
        return out


def make_progression(key: InverseKey) -> Optional[Progression]:
    fa = least_a0(key)
    if fa is None:
        return None
    return Progression(key, fa, key.y_tilde, key.case_id)


def progressions_for_key(y: int, x: int) -> list[Progression]:
    x = _norm(x, y)
    out = []
    for sign in (-1, 1):
        if (x * x - sign) % y:
            continue
        for ring in (0, 1):
            prog = make_progression(InverseKey(y, x, sign, ring))
            if prog is not None:
                out.append(prog)
    if not out:
        raise NotRepresentable(f"{x}^2 is not +-1 mod {y}")
    return out


def progression_elements(prog: Progression, count: int) -> list[tuple[int, int]]:
    """First ``count`` valid ``(a0, d)`` pairs; see :meth:`Progression.skipped`."""
    if count < 1:
        raise ValueError("count must be >= 1")
    out = []
    for pair in prog.iter_elements():
        out.append(pair)
        if len(out) == count:
            return out
    return out


# -- attached intervals ---------------------------------------------------


@dataclass(frozen=True)
class AttachedInterval:
    ring: int
    side: str
    lo: Fraction
    hi: Fraction

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, value) -> bool:
        return self.lo < value < self.hi


@dataclass(frozen=True)
class _Endpoints:
    a0: int
    m: int
    A: Fraction
    B: Fraction


def _endpoints(p: int, q: int) -> _Endpoints:
    if q <= 0 or gcd(p, q) != 1:
        raise NotCoprime(f"need coprime p, q > 0, got {p}/{q}")
    if Fraction(p, q) < THRESHOLD:
        raise BelowThreshold(f"{p}/{q} < {THRESHOLD}")
    long = rational_two_expansions(p, q).long  # [a0, .., a_m, 1]
    head = long[:-1]
    m = len(head) - 1
    a0 = head[0]
    # p_j/q_j for j = m-1, m (j = -1 is the 1/0 seed)
    pp, qq = [1, head[0]], [0, 1]
    for a in head[1:]:
        pp.append(a * pp[-1] + pp[-2])
        qq.append(a * qq[-1] + qq[-2])
    p_prev, q_prev, p_m, q_m = pp[-2], qq[-2], pp[-1], qq[-1]
    assert p_m + p_prev == p and q_m + q_prev == q
    lam_a = Fraction(4 * a0, 3) - Fraction(q_prev, q)
    lam_b = Fraction(4 * a0, 3) - Fraction(q_m, q)
    A = (lam_a * p + p_prev) / (lam_a * q + q_prev)
    B = (lam_b * p + p_m) / (lam_b * q + q_m)
    return _Endpoints(a0, m, A, B)


def attached_intervals(p: int, q: int, ring: int) -> tuple[AttachedInterval, AttachedInterval]:
    """``(I^{ring,-}, I^{ring,+})`` for ``p/q``, with exact rational endpoints."""
    if ring not in (0, 1):
        raise ValueError("ring must be 0 or 1")
    e = _endpoints(p, q)
    first, second = (e.A, e.B) if e.m % 2 else (e.B, e.A)
    if ring == 0:
        lo, hi, center = first ** 2, second ** 2, Fraction(p, q) ** 2
    else:
        lo, hi, center = (2 * first - 1) ** 2, (2 * second - 1) ** 2, (2 * Fraction(p, q) - 1) ** 2
    if not lo < center < hi:
        raise ArithmeticError(f"misoriented interval for {p}/{q}")
    return AttachedInterval(ring, "-", lo, center), AttachedInterval(ring, "+", center, hi)


class IntervalHit(NamedTuple):
    d: int
    norm: int
    case_id: int


SIDE_SIGN = {"+": -1, "-": 1}


def integer_in_interval(p: int, q: int, ring: int, side: str) -> Optional[IntervalHit]:
    """The admissible integer in ``I^{ring,side}_{p/q}``, decided by congruences.

    Ring 0 admits any integer, ring 1 only integers = 1 (mod 4).
    """
    if side not in SIDE_SIGN:
        raise ValueError("side must be '+' or '-'")
    _endpoints(p, q)  # validates coprimality and threshold
    sign = SIDE_SIGN[side]
    a0, k = divmod(p, q)
    if (k * k - sign) % q:
        return None
    c = ring + k * ((1 - sign * k * k) // q)
    if (2 * a0 - c) % q:
        return None
    if ring == 0:
        val = a0 * a0 + Fraction(2 * k, q) * a0 + Fraction(k * k - sign, q * q)
    else:
        b = 2 * a0 - 1
        val = b * b + Fraction(4 * k, q) * b + Fraction(4 * k * k - 4 * sign, q * q)
    if val.denominator != 1:
        raise ArithmeticError(f"non-integral d for {p}/{q}")
    d = int(val)
    return IntervalHit(d, unit_norm(p, q, d, ring), CASE_IDS[(sign, ring)])


# -- Halter-Koch parameterization -----------------------------------------


@dataclass(frozen=True)
class HalterKoch:
    seq: SymmetricSeq
    n: int
    q_n: int
    q_prev: int
    r_prev: int
    A: int
    B: int
    ring0_feasible: bool
    ring1_feasible: bool

    def f(self, T: int) -> int:
        return self.q_n ** 2 * T * T + self.A * T + self.B

    def feasible(self, ring: int) -> bool:
        return self.ring1_feasible if ring == 1 else self.ring0_feasible

    def _t_min(self, ring: int) -> int:
        c = (-1) ** self.n * self.q_prev * self.r_prev + ring
        # q_n*T + c > 0
        return -c // self.q_n + 1

    def iter_elements(self, ring: int) -> Iterator[tuple[int, int]]:
        """``(T, d)`` in increasing T; d may not be monotone before the vertex."""
        if not self.feasible(ring):
            return
        T = self._t_min(ring)
        while True:
            v = self.f(T)
            if ring == 0 and v % 4 == 0:
                yield T, v // 4
            elif ring == 1 and v % 4 == 1:
                yield T, v
            T += 1

    def elements_upto(self, ring: int, bound: int) -> list[int]:
        if not self.feasible(ring):
            return []
        vertex = Fraction(-self.A, 2 * self.q_n ** 2)
        out = set()
        T = self._t_min(ring)
        while True:
            v = self.f(T)
            d = v // 4 if ring == 0 else v
            if T > vertex and d > bound:
                break
            if (v % 4 == (0 if ring == 0 else 1)) and 0 < d <= bound and not is_square(d):
                out.add(d)
            T += 1
        return sorted(out)


def halter_koch_progression(seq) -> HalterKoch:
    if not isinstance(seq, SymmetricSeq):
        seq = SymmetricSeq(tuple(seq))
    m = continuant(seq.terms)
    n = len(seq)
    s = (-1) ** n
    qn, qp, rp = m.q_n, m.q_prev, m.r_prev
    A = 4 * qp + 2 * s * qn * qp * rp
    B = qp * qp * rp * rp + 4 * s * rp * rp
    qr = qp * rp
    ring0 = qn % 2 == 1 or qr % 2 == 0
    ring1 = qn % 2 == 1 or qr % 2 == 1
    return HalterKoch(seq, n, qn, qp, rp, A, B, ring0, ring1)


# -- cross check ---------------------------------------------------------


@dataclass
class CrossCheckEntry:
    sign: int
    ring: int
    palindrome: tuple[int, ...]
    progression: list[int]
    halter_koch: list[int]
    progression_exists: bool
    hk_feasible: bool

    @property
    def match(self) -> bool:
        return (self.progression_exists == self.hk_feasible
                and self.progression == self.halter_koch)


@dataclass
class CrossCheckReport:
    y: int
    x: int
    bound: int
    entries: list[CrossCheckEntry] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e.match for e in self.entries)

    def mismatches(self) -> list[CrossCheckEntry]:
        return [e for e in self.entries if not e.match]


def cross_check_parameterizations(y: int, x: int, bound: int) -> CrossCheckReport:
    x = _norm(x, y)
    report = CrossCheckReport(y, x, bound)
    for sign in (-1, 1):
        if (x * x - sign) % y:
            continue
        pal = symmetric_form_for_sign(x, y, sign)
        hk = halter_koch_progression(pal)
        for ring in (0, 1):
            prog = make_progression(InverseKey(y, x, sign, ring))
            report.entries.append(CrossCheckEntry(
                sign=sign,
                ring=ring,
                palindrome=pal.terms,
                progression=prog.elements_upto(bound) if prog else [],
                halter_koch=hk.elements_upto(ring, bound),
                progression_exists=prog is not None,
                hk_feasible=hk.feasible(ring),
            ))
    if not report.entries:
        raise NotRepresentable(f"{x}^2 is not +-1 mod {y}")
    return report

