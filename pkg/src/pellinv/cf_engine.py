"""Exact continued fractions of omega_d, convergents and norms.

``omega_d`` is ``sqrt(d)`` for ring 0 and ``(1 + sqrt(d))/2`` for ring 1.
Nothing in here touches floating point: every comparison against an
irrational ``sqrt(d)`` is settled by squaring integers or rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterator, NamedTuple, Sequence

from .errors import (
    EmptySequence,
    NotCoprime,
    RingMismatch,
    SmallDiscriminant,
    SquareInput,
)


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def check_ring(d: int, ring: int) -> None:
    """Raise unless ``omega_d`` for this ``(d, ring)`` is a quadratic irrational."""
    if ring not in (0, 1):
        raise ValueError(f"ring must be 0 or 1, got {ring!r}")
    if d < 2:
        raise ValueError(f"d must be > 1, got {d}")
    if is_square(d):
        raise SquareInput(f"{d} is a perfect square")
    if ring == 1 and d % 4 != 1:
        raise RingMismatch(f"ring 1 needs d = 1 (mod 4), got d = {d}")


def discriminant(d: int, ring: int) -> int:
    return d if ring == 1 else 4 * d


def surd_sign(a, b, d: int) -> int:
    """Sign of ``a + b*sqrt(d)`` for rational ``a, b`` and non-square ``d > 0``."""
    a = Fraction(a)
    b = Fraction(b)
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: the term with the larger square wins
    lhs = a * a
    rhs = b * b * d
    return sa if lhs > rhs else sb


@dataclass(frozen=True)
class QuadraticSurd:
    """The real number ``(P + sqrt(d)) / Q``."""

    P: int
    Q: int
    d: int

    def __post_init__(self):
        if self.Q == 0:
            raise ValueError("Q must be nonzero")
        if (self.d - self.P * self.P) % self.Q:
            raise ValueError("Q must divide d - P^2")

    def floor(self) -> int:
        s = isqrt(self.d)
        if self.Q > 0:
            return (self.P + s) // self.Q
        return -((self.P + s) // -self.Q) - 1

    def step(self) -> tuple[int, "QuadraticSurd"]:
        """Split off the partial quotient: return ``(a, 1/(self - a))``."""
        a = self.floor()
        P = a * self.Q - self.P
        Q = (self.d - P * P) // self.Q
        return a, QuadraticSurd(P, Q, self.d)

    def as_pair(self) -> tuple[Fraction, Fraction]:
        """``(r, s)`` with ``self == r + s*sqrt(d)``."""
        return Fraction(self.P, self.Q), Fraction(1, self.Q)


def omega_surd(d: int, ring: int) -> QuadraticSurd:
    return QuadraticSurd(0, 1, d) if ring == 0 else QuadraticSurd(1, 2, d)


@dataclass(frozen=True)
class Expansion:
    ring: int
    d: int
    a0: int
    period: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.period)

    @property
    def palindrome(self) -> tuple[int, ...]:
        return self.period[:-1]

    @property
    def D(self) -> int:
        return discriminant(self.d, self.ring)

    def partial_quotient(self, n: int) -> int:
        if n == 0:
            return self.a0
        return self.period[(n - 1) % len(self.period)]

    def terms(self, count: int) -> list[int]:
        return [self.partial_quotient(i) for i in range(count)]

    def __str__(self) -> str:
        name = f"sqrt({self.d})" if self.ring == 0 else f"omega({self.d})"
        return f"{name} = [{self.a0}; ({','.join(map(str, self.period))})]"


@lru_cache(maxsize=4096)
def _expand(d: int, ring: int) -> tuple[int, tuple[int, ...], tuple[QuadraticSurd, ...]]:
    a0, state = omega_surd(d, ring).step()
    seen: dict[tuple[int, int], int] = {}
    period: list[int] = []
    states: list[QuadraticSurd] = []
    while (state.P, state.Q) not in seen:
        seen[(state.P, state.Q)] = len(states)
        states.append(state)
        a, state = state.step()
        period.append(a)
    # alpha_1 is reduced, so the expansion is purely periodic from there on
    assert seen[(state.P, state.Q)] == 0
    return a0, tuple(period), tuple(states)


def expand_omega(d: int, ring: int = 0) -> Expansion:
    check_ring(d, ring)
    a0, period, _ = _expand(d, ring)
    return Expansion(ring, d, a0, period)


def period_length(d: int, ring: int = 0) -> int:
    check_ring(d, ring)
    return len(_expand(d, ring)[1])


def period_at_most(d: int, ring: int, limit: int) -> int | None:
    """Period of ``omega_d`` if it is ``<= limit``, else None.

    Runs at most ``limit`` steps, so it is cheap for large d with short limits.
    """
    check_ring(d, ring)
    _, start = omega_surd(d, ring).step()
    state = start
    for k in range(1, limit + 1):
        _, state = state.step()
        if state == start:
            return k
    return None


def total_quotient(d: int, ring: int, n: int) -> QuadraticSurd:
    """The n-th total quotient ``alpha_n`` of ``omega_d`` as an exact surd."""
    check_ring(d, ring)
    if n == 0:
        return omega_surd(d, ring)
    states = _expand(d, ring)[2]
    return states[(n - 1) % len(states)]


class Convergent(NamedTuple):
    n: int
    p: int
    q: int


SEEDS = (Convergent(-2, 0, 1), Convergent(-1, 1, 0))


def convergents(exp: Expansion, count: int, with_seeds: bool = False) -> list[Convergent]:
    """First ``count`` convergents ``p_n/q_n`` of ``omega_d`` (n = 0 .. count-1).

    With ``with_seeds`` the list is prefixed by the n = -2, -1 seed values.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    out = list(SEEDS)
    for n in range(count):
        a = exp.partial_quotient(n)
        p = a * out[-1].p + out[-2].p
        q = a * out[-1].q + out[-2].q
        out.append(Convergent(n, p, q))
    return out if with_seeds else out[2:]


def convergent(exp: Expansion, n: int) -> Convergent:
    if n < 0:
        return SEEDS[n + 2]
    return convergents(exp, n + 1)[-1]


@dataclass(frozen=True)
class QuadraticInteger:
    """``a + b*omega_d`` in ``Z[omega_d]``."""

    a: int
    b: int
    d: int
    ring: int

    def norm(self) -> int:
        a, b, d = self.a, self.b, self.d
        if self.ring == 0:
            return a * a - b * b * d
        return a * a + a * b + b * b * (1 - d) // 4

    def conjugate(self) -> "QuadraticInteger":
        # conj(omega) = -omega (ring 0) or 1 - omega (ring 1)
        if self.ring == 0:
            return QuadraticInteger(self.a, -self.b, self.d, 0)
        return QuadraticInteger(self.a + self.b, -self.b, self.d, 1)

    def as_pair(self) -> tuple[Fraction, Fraction]:
        """``(r, s)`` with value ``r + s*sqrt(d)``."""
        if self.ring == 0:
            return Fraction(self.a), Fraction(self.b)
        return Fraction(2 * self.a + self.b, 2), Fraction(self.b, 2)

    def half_coordinates(self) -> tuple[int, int]:
        """``(t, u)`` with value ``(t + u*sqrt(d))/2``."""
        if self.ring == 0:
            return 2 * self.a, 2 * self.b
        return 2 * self.a + self.b, self.b

    def compare(self, other) -> int:
        """Sign of ``self - other`` as real numbers."""
        r, s = self.as_pair()
        if isinstance(other, QuadraticInteger):
            r2, s2 = other.as_pair()
        else:
            r2, s2 = Fraction(other), Fraction(0)
        return surd_sign(r - r2, s - s2, self.d)

    def __mul__(self, other: "QuadraticInteger") -> "QuadraticInteger":
        if (self.d, self.ring) != (other.d, other.ring):
            raise ValueError("operands live in different rings")
        a, b, c, e, d = self.a, self.b, other.a, other.b, self.d
        if self.ring == 0:
            return QuadraticInteger(a * c + b * e * d, a * e + b * c, d, 0)
        # omega^2 = omega + (d - 1)/4
        return QuadraticInteger(a * c + b * e * (d - 1) // 4, a * e + b * c + b * e, d, 1)

    def __pow__(self, k: int) -> "QuadraticInteger":
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = QuadraticInteger(1, 0, self.d, self.ring)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def log(self, digits: int = 40) -> Decimal:
        """Natural log of a positive value, to ``digits`` significant digits."""
        t, u = self.half_coordinates()
        with localcontext() as ctx:
            # huge coefficients cancel against each other only for values
            # near 0, which never happens for units > 1
            ctx.prec = digits + 10
            value = (Decimal(t) + Decimal(u) * Decimal(self.d).sqrt()) / 2
            if value <= 0:
                raise ValueError("log of a non-positive value")
            result = value.ln()
        with localcontext() as ctx:
            ctx.prec = digits
            return +result

    def __str__(self) -> str:
        w = f"sqrt({self.d})" if self.ring == 0 else f"omega({self.d})"
        sign = "-" if self.b < 0 else "+"
        return f"{self.a} {sign} {abs(self.b)}*{w}"


def xi(d: int, ring: int, p: int, q: int) -> QuadraticInteger:
    """Conjugate of ``p - q*omega_d``."""
    if ring == 0:
        return QuadraticInteger(p, q, d, 0)
    return QuadraticInteger(p - q, q, d, 1)


def xi_nu(d: int, ring: int, n: int) -> tuple[QuadraticInteger, int]:
    if n < 0:
        raise ValueError("n must be >= 0")
    exp = expand_omega(d, ring)
    c = convergent(exp, n)
    x = xi(d, ring, c.p, c.q)
    nu = (-1) ** (n + 1) * x.norm()
    if nu < 1:
        raise ArithmeticError(f"nu_{n} = {nu} for d={d}, ring={ring}")
    return x, nu


class QuotientBound(NamedTuple):
    delta: tuple[Fraction, Fraction]  # delta_n = r + s*sqrt(d)
    nu: int
    q: int
    within_delta_bound: bool
    below_sqrt_D_over_nu: bool

    @property
    def passed(self) -> bool:
        return self.within_delta_bound and self.below_sqrt_D_over_nu


# The four discriminants below 16 are settled by their expansions instead.
SMALL_DISCRIMINANT_TABLE = {
    (2, 0): (1, (2,)),
    (3, 0): (1, (1, 2)),
    (5, 1): (1, (1,)),
    (13, 1): (2, (3,)),
}


def verify_quotient_bound(d: int, ring: int, n: int) -> QuotientBound:
    """Decide ``|delta_n| < 4/(q_n^2 sqrt(D))`` and ``alpha_{n+1} < sqrt(D)/nu_n``.

    ``delta_n = alpha_{n+1} - sqrt(D)/nu_n + q_{n-1}/q_n``.
    """
    check_ring(d, ring)
    D = discriminant(d, ring)
    if D <= 16:
        raise SmallDiscriminant(f"D = {D} <= 16")
    if n < 0:
        raise ValueError("n must be >= 0")
    _, nu = xi_nu(d, ring, n)
    exp = expand_omega(d, ring)
    prev, cur = convergents(exp, n + 1, with_seeds=True)[-2:]
    r_alpha, s_alpha = total_quotient(d, ring, n + 1).as_pair()
    c = 2 if ring == 0 else 1  # sqrt(D) = c*sqrt(d)
    r = r_alpha + Fraction(prev.q, cur.q)
    s = s_alpha - Fraction(c, nu)
    # |delta| * sqrt(D) = |u + v*sqrt(d)|
    u, v = c * s * d, c * r
    bound = Fraction(4, cur.q * cur.q)
    within = surd_sign(u - bound, v, d) < 0 and surd_sign(u + bound, v, d) > 0
    below = surd_sign(r_alpha, s_alpha - Fraction(c, nu), d) < 0
    return QuotientBound((r, s), nu, cur.q, within, below)


def small_discriminant_table_holds() -> bool:
    """``alpha_{n+1} < sqrt(D)/nu_n`` for the tabulated D < 16 cases, n < 2*period."""
    for (d, ring), (a0, period) in SMALL_DISCRIMINANT_TABLE.items():
        exp = expand_omega(d, ring)
        if (exp.a0, exp.period) != (a0, period):
            return False
        c = 2 if ring == 0 else 1
        for n in range(2 * len(period)):
            _, nu = xi_nu(d, ring, n)
            r, s = total_quotient(d, ring, n + 1).as_pair()
            if surd_sign(r, s - Fraction(c, nu), d) >= 0:
                return False
    return True


class TwoExpansions(NamedTuple):
    long: list[int]
    short: list[int]
    unit: bool = False


def _euclid(p: int, q: int) -> list[int]:
    terms = []
    while q:
        a, r = divmod(p, q)
        terms.append(a)
        p, q = q, r
    return terms


def rational_two_expansions(p: int, q: int) -> TwoExpansions:
    """Both finite continued fractions of ``p/q``: one ends in 1, the other does not.

    ``p/q == 1`` has no expansion with a last term > 1; it comes back as
    ``long=[0, 1], short=[1]`` with ``unit=True``.
    """
    if q <= 0 or p <= 0:
        raise ValueError("need p/q > 0 with q > 0")
    if gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p}, {q}) != 1")
    if p == q:
        return TwoExpansions([0, 1], [1], unit=True)
    short = _euclid(p, q)
    long = short[:-1] + [short[-1] - 1, 1]
    return TwoExpansions(long, short)


def cf_to_rational(seq: Sequence[int]) -> tuple[int, int]:
    if not seq:
        raise EmptySequence("empty continued fraction")
    if any(a <= 0 for a in seq[1:]):
        raise ValueError("terms after the first must be positive")
    p, q = 1, 0
    for a in reversed(seq):
        p, q = a * p + q, p
    return p, q


def iter_partial_quotients(d: int, ring: int) -> Iterator[int]:
    exp = expand_omega(d, ring)
    yield exp.a0
    while True:
        yield from exp.period
