"""Sieves and density experiments.

Counting is exact throughout; only the zeta partial sums are floating point.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .errors import NotCoprimeClass
from .inverse import InverseKey, make_progression
from .least_type import classify, reduced_family
from .symmetry import continuant

DECIMAL_FORMAT = ".12g"


def render(x) -> str:
    return format(float(x), DECIMAL_FORMAT)


@dataclass(frozen=True)
class SieveTable:
    limit: int
    flags: np.ndarray = field(repr=False)  # flags[n] for 0 <= n <= limit; flags[0] is False

    @property
    def count(self) -> int:
        return int(self.flags.sum())

    def __getitem__(self, n: int) -> bool:
        return bool(self.flags[n])


def squarefree_sieve(N: int) -> SieveTable:
    if N < 1:
        raise ValueError("N must be >= 1")
    flags = np.ones(N + 1, dtype=bool)
    flags[0] = False
    for p in range(2, isqrt(N) + 1):
        if flags[p]:  # p square-free is enough: every prime square gets struck
            flags[p * p::p * p] = False
    return SieveTable(N, flags)


def squarefree_in_class(N: int, c: int, k: int, table: SieveTable | None = None) -> int:
    if k < 1:
        raise ValueError("k must be >= 1")
    if gcd(c, k) != 1:
        raise NotCoprimeClass(f"gcd({c}, {k}) != 1")
    table = table if table is not None and table.limit >= N else squarefree_sieve(N)
    start = c % k or k
    return int(table.flags[start:N + 1:k].sum())


# -- family enumeration ----------------------------------------------------


def iter_keys(y_max: int) -> Iterator[tuple[int, int, int]]:
    """All ``(y, x, sign)`` with ``1 <= y <= y_max``, ``0 <= x < y``, ``x^2 = sign (mod y)``."""
    for y in range(1, y_max + 1):
        xs = np.arange(y, dtype=np.int64)
        sq = xs * xs % y
        for sign in (-1, 1):
            for x in xs[sq == sign % y]:
                yield y, int(x), sign


def non_least_elements(N: int, ring: int) -> np.ndarray:
    """Sorted array of non-square d <= N that are not least in their reduced family.

    Non-least elements have ``a0 > y_tilde``, so only keys with
    ``y_tilde < sqrt(N)`` can contribute.
    """
    out = []
    for y, x, sign in iter_keys(2 * isqrt(N) + 2):
        if make_progression(InverseKey(y, x, sign, ring)) is None:
            continue
        fam = reduced_family(y, x, ring, sign)
        it = fam.iter_elements()
        next(it)  # the minimum
        for _, d in it:
            if d > N:
                break
            out.append(d)
    arr = np.array(sorted(out), dtype=np.int64)
    if len(arr) and np.any(arr[1:] == arr[:-1]):
        raise ArithmeticError("a d value was produced by two families")
    return arr


@dataclass
class DensityReport:
    N: int
    method: str
    counts: dict[str, int]
    ratios: dict[str, tuple[int, int]]

    def ratio(self, name: str) -> Fraction:
        num, den = self.ratios[name]
        return Fraction(num, den)

    def rows(self) -> list[dict[str, str]]:
        rows = []
        for name, value in self.counts.items():
            rows.append({"category": name, "count": str(value), "total": "", "ratio": "", "decimal": ""})
        for name, (num, den) in self.ratios.items():
            fr = Fraction(num, den)
            rows.append({"category": name, "count": str(num), "total": str(den),
                         "ratio": f"{fr.numerator}/{fr.denominator}", "decimal": render(fr)})
        return rows

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "method": self.method,
            "counts": dict(self.counts),
            "ratios": {k: {"num": n, "den": d, "decimal": render(Fraction(n, d))}
                       for k, (n, d) in self.ratios.items()},
        }


def _flags_from(values: np.ndarray, N: int) -> np.ndarray:
    flags = np.zeros(N + 1, dtype=bool)
    flags[values] = True
    return flags


def _oracle_chunk(args: tuple[int, int]) -> tuple[list[int], list[int]]:
    lo, hi = args
    non0, non1 = [], []
    for d in range(max(lo, 2), hi):
        if isqrt(d) ** 2 == d:
            continue
        if not classify(d, 0).is_least:
            non0.append(d)
        if d % 4 == 1 and not classify(d, 1).is_least:
            non1.append(d)
    return non0, non1


def _oracle_non_least(N: int, jobs: int = 1) -> tuple[np.ndarray, np.ndarray]:
    step = max(1, (N + jobs) // jobs)
    chunks = [(lo, min(lo + step, N + 1)) for lo in range(0, N + 1, step)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            parts = list(ex.map(_oracle_chunk, chunks))
    else:
        parts = [_oracle_chunk(c) for c in chunks]
    non0 = sorted(d for p in parts for d in p[0])
    non1 = sorted(d for p in parts for d in p[1])
    return np.array(non0, dtype=np.int64), np.array(non1, dtype=np.int64)


def least_type_density(N: int, method: str = "families", jobs: int = 1) -> DensityReport:
    """Least-type counts over square-free ``1 < d <= N``.

    ``method="families"`` walks the progressions; ``"oracle"`` classifies
    each d separately (optionally split over ``jobs`` processes).
    """
    if N < 10:
        raise ValueError("N must be >= 10")
    if method == "families":
        non0, non1 = non_least_elements(N, 0), non_least_elements(N, 1)
    elif method == "oracle":
        non0, non1 = _oracle_non_least(N, jobs)
    else:
        raise ValueError(f"unknown method {method!r}")
    sf = squarefree_sieve(N).flags.copy()
    sf[1] = False  # fields need d > 1
    n0 = _flags_from(non0, N)
    n1 = _flags_from(non1, N)
    idx = np.arange(N + 1)
    is1 = idx % 4 == 1
    S = int(sf.sum()) + 1  # |S(N)| counts 1 as square-free
    S14 = int((sf & is1).sum()) + 1
    least0 = int((sf & ~n0).sum())
    least1 = int((sf & is1 & ~n1).sum())
    nonleast_type = int((sf & is1 & n1).sum() + (sf & ~is1 & n0).sum())
    fields = int(sf.sum())
    nonsquare = N - isqrt(N)
    counts = {
        "nonsquare": nonsquare,
        "non_least_to_0": int(len(non0)),
        "non_least_to_1": int(len(non1)),
        "squarefree": S,
        "squarefree_1_mod_4": S14,
        "squarefree_2_mod_4": int((sf & (idx % 4 == 2)).sum()),
        "squarefree_3_mod_4": int((sf & (idx % 4 == 3)).sum()),
        "squarefree_least_to_0": least0,
        "squarefree_least_to_1": least1,
        "fields": fields,
        "least_type_fields": fields - nonleast_type,
        "non_least_type_fields": nonleast_type,
    }
    ratios = {
        "least_to_0_over_squarefree": (least0, S),
        "least_to_1_over_squarefree_1_mod_4": (least1, S14),
        "least_type_fields_over_fields": (fields - nonleast_type, fields),
        "non_least_type_fields_over_N": (nonleast_type, N),
    }
    return DensityReport(N, method, counts, ratios)


# -- predecessor density ---------------------------------------------------


class PredecessorResult(NamedTuple):
    prefix: tuple[int, ...]
    N: int
    ring: int
    count: int
    expected: Fraction

    @property
    def ratio(self) -> Fraction:
        scale = 4 if self.ring == 1 else 1
        return Fraction(scale * self.count, self.N)

    @property
    def relative_error(self) -> float:
        return abs(float(self.ratio / self.expected) - 1)


def predecessor_limit(prefix: Sequence[int]) -> Fraction:
    m = continuant(prefix)
    return Fraction(1, m.q_n * (m.q_n + m.q_prev))


def _isqrt_array(d: np.ndarray) -> np.ndarray:
    s = np.floor(np.sqrt(d.astype(np.float64))).astype(np.int64)
    s[s * s > d] -= 1
    s[(s + 1) * (s + 1) <= d] += 1
    return s


def predecessor_count(prefix: Sequence[int], N: int, ring: int = 0) -> int:
    """Non-square d <= N (d = 1 mod 4 for ring 1) with omega_d = [a0, *prefix, ...]."""
    prefix = list(prefix)
    if not prefix or any(a <= 0 for a in prefix):
        raise ValueError("prefix must be a nonempty list of positive integers")
    if N > 2 ** 40:
        raise ValueError("N too large for the int64 vector path")
    d = np.arange(1, N + 1, dtype=np.int64)
    if ring == 1:
        d = d[d % 4 == 1]
    s = _isqrt_array(d)
    keep = s * s != d
    d, s = d[keep], s[keep]
    P = np.zeros_like(d) if ring == 0 else np.ones_like(d)
    Q = np.ones_like(d) if ring == 0 else np.full_like(d, 2)
    a = (P + s) // Q
    match = np.ones(len(d), dtype=bool)
    for want in prefix:
        P = a * Q - P
        Q = (d - P * P) // Q
        a = (P + s) // Q
        match &= a == want
    return int(match.sum())


def predecessor_density(prefix: Sequence[int], N: int, ring: int = 0) -> PredecessorResult:
    return PredecessorResult(tuple(prefix), N, ring, predecessor_count(prefix, N, ring),
                             predecessor_limit(prefix))


# -- zeta diagnostic -------------------------------------------------------


class ZetaDiagnostic(NamedTuple):
    s: float
    N: int
    sum_least: float
    sum_all_nonsquare: float
    difference: float
    complete_nonsquare: float  # zeta(s) - zeta(2s): all non-square d, no cutoff
    residual: float  # complete_nonsquare - sum_least


def zeta_partial_diagnostic(s, N: int, non_least: np.ndarray | None = None) -> ZetaDiagnostic:
    """Partial sums of ``d^-s`` over least-to-0 d and over all non-square d, ``d <= N``."""
    from mpmath import zeta

    s = float(Fraction(s)) if not isinstance(s, float) else s
    if s <= 1:
        raise ValueError("s must be > 1")
    if N < 100:
        raise ValueError("N must be >= 100")
    if non_least is None:
        non_least = non_least_elements(N, 0)
    d = np.arange(2, N + 1, dtype=np.float64)
    nonsq = np.ones(N + 1, dtype=bool)
    nonsq[np.arange(0, isqrt(N) + 1) ** 2] = False
    all_terms = d[nonsq[2:]] ** -s
    nl = _flags_from(non_least, N)
    least_terms = d[(nonsq & ~nl)[2:]] ** -s
    total = math.fsum(all_terms.tolist())
    least = math.fsum(least_terms.tolist())
    complete = float(zeta(s) - zeta(2 * s))
    return ZetaDiagnostic(s, N, least, total, total - least, complete, complete - least)


def zeta_grid(N: int, s_values: Iterable) -> list[ZetaDiagnostic]:
    nl = non_least_elements(N, 0)
    return [zeta_partial_diagnostic(s, N, nl) for s in s_values]


def default_jobs() -> int:
    import os

    try:
        return max(1, int(os.environ.get("PELLINV_JOBS", "1")))
    except ValueError:
        return 1

