"""Reduced families and the least-type classification.

Every non-square d (every non-square d = 1 mod 4 for ring 1) sits in exactly
one reduced family: the progression attached to the palindrome of omega_d,
minus its first element when that element's period is too short.  A field is
of the least type when d is the minimum of its reduced family.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Iterator, NamedTuple, Optional

from .cf_engine import check_ring, expand_omega, period_at_most
from .errors import IsLeast, NotRepresentable, NotSquareFree, RingInfeasible
from .inverse import InverseKey, Progression, make_progression
from .symmetry import SymmetricSeq, continuant, symmetric_form_for_sign


@dataclass(frozen=True)
class FamilyRecord:
    key: InverseKey
    palindrome: SymmetricSeq
    progression: Progression
    first: int  # least element of the unreduced family
    first_a0: int
    first_period: Optional[int]  # None means > n+1, which theory rules out
    discarded_least: Optional[int]

    @property
    def n(self) -> int:
        return len(self.palindrome)

    @property
    def anomalous(self) -> bool:
        return self.first_period is None

    @property
    def minimum(self) -> int:
        return next(self.iter_elements())[1]

    def iter_elements(self) -> Iterator[tuple[int, int]]:
        """Retained ``(a0, d)`` pairs in increasing order."""
        for a0, d in self.progression.iter_elements():
            if d == self.discarded_least:
                continue
            yield a0, d

    def elements(self, count: int) -> list[int]:
        out = []
        for _, d in self.iter_elements():
            if len(out) == count:
                break
            out.append(d)
        return out

    def elements_upto(self, bound: int) -> list[int]:
        out = []
        for _, d in self.iter_elements():
            if d > bound:
                break
            out.append(d)
        return out

    def locate(self, d: int) -> Optional[int]:
        """The progression parameter a0 producing d, if d is a retained element."""
        key = self.key
        if d == self.discarded_least or d < self.first:
            return None
        # invert d = (p^2 - sign)/y^2 or ((2p - y)^2 - 4 sign)/y^2
        shift = key.sign if key.ring == 0 else 4 * key.sign
        sq = key.y * key.y * d + shift
        root = isqrt(sq)
        if root * root != sq:
            return None
        if key.ring == 0:
            p = root
        elif (root + key.y) % 2:
            return None
        else:
            p = (root + key.y) // 2
        a0, rem = divmod(p - key.x, key.y)
        if rem or a0 < self.progression.frak_a:
            return None
        if (a0 - self.progression.frak_a) % self.progression.y_tilde:
            return None
        if self.progression.d_at(a0) != d:
            return None
        return a0


def _resolve_sign(y: int, x: int, ring: int) -> int:
    signs = [s for s in (-1, 1)
             if (x * x - s) % y == 0 and make_progression(InverseKey(y, x, s, ring))]
    if not signs:
        raise RingInfeasible(f"no ring-{ring} family for (y, x) = ({y}, {x})")
    if len(signs) > 1:
        raise ValueError(f"(y, x) = ({y}, {x}) has families for both signs; pass sign")
    return signs[0]


def reduced_family(y: int, x: int, ring: int, sign: Optional[int] = None) -> FamilyRecord:
    if sign is None:
        if all((x * x - s) % y for s in (-1, 1)):
            raise NotRepresentable(f"{x}^2 is not +-1 mod {y}")
        sign = _resolve_sign(y, x, ring)
    key = InverseKey(y, x, sign, ring)
    prog = make_progression(key)
    if prog is None:
        raise RingInfeasible(f"no ring-{ring} family for {key}")
    pal = symmetric_form_for_sign(key.x, y, sign)
    n = len(pal)
    first_a0, first = next(prog.iter_elements())
    period = period_at_most(first, ring, n + 1)
    discarded = first if period is not None and period < n + 1 else None
    return FamilyRecord(key, pal, prog, first, first_a0, period, discarded)


@dataclass(frozen=True)
class Classification:
    d: int
    ring: int
    key: InverseKey
    palindrome: SymmetricSeq
    is_least: bool
    a0: int  # progression parameter of d
    family: FamilyRecord


def key_of(d: int, ring: int) -> tuple[InverseKey, SymmetricSeq]:
    """``(q_{l-1}, r_{l-1})`` with sign ``(-1)^l`` read off the expansion of omega_d."""
    exp = expand_omega(d, ring)
    pal = SymmetricSeq(exp.palindrome)
    m = continuant(pal.terms)
    sign = -1 if exp.length % 2 else 1
    return InverseKey(m.q_n, m.r_n % m.q_n, sign, ring), pal


def classify(d: int, ring: int) -> Classification:
    check_ring(d, ring)
    key, pal = key_of(d, ring)
    fam = reduced_family(key.y, key.x, ring, key.sign)
    a0 = fam.locate(d)
    if a0 is None:
        raise ArithmeticError(f"d = {d} is not in its own family {key}")
    return Classification(d, ring, key, pal, d == fam.minimum, a0, fam)


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    if n % 4 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        f += 2
    return True


def field_ring(d: int) -> int:
    return 1 if d % 4 == 1 else 0


def is_least_type_field(d: int) -> bool:
    if d <= 1 or not is_squarefree(d):
        raise NotSquareFree(f"{d} is not a square-free integer > 1")
    return classify(d, field_ring(d)).is_least


class NonLeastBound(NamedTuple):
    a0: int
    y_tilde: int
    unit_over_d: float
    passed: bool


def non_least_unit_bound(d: int, ring: int) -> NonLeastBound:
    """For non-least d: ``a0 > y_tilde`` and hence ``d > y_tilde^2``."""
    from .pell import fundamental_unit

    c = classify(d, ring)
    if c.is_least:
        raise IsLeast(f"{d} is the least element of its family")
    yt = c.key.y_tilde
    log_eps = fundamental_unit(d, ring).unit.log(digits=20)
    ratio = float((log_eps - type(log_eps)(d).ln()).exp())
    return NonLeastBound(c.a0, yt, ratio, c.a0 > yt and d > yt * yt)
