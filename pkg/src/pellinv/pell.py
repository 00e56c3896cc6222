"""Fundamental units of Z[omega_d] and solutions of X^2 - D*Y^2 = 4."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from typing import NamedTuple

from sympy import isprime

from .cf_engine import (
    QuadraticInteger,
    convergent,
    discriminant,
    expand_omega,
    xi,
)
from .errors import NotPrime, WrongResidue


@dataclass(frozen=True)
class FundamentalUnit:
    unit: QuadraticInteger
    norm: int
    period: int

    @property
    def X(self) -> int:
        """Numerator of the (l-1)-th convergent."""
        return self.unit.a + (self.unit.b if self.unit.ring == 1 else 0)

    @property
    def Y(self) -> int:
        return self.unit.b


class PellSolution(NamedTuple):
    X: int
    Y: int
    D: int


def fundamental_unit(d: int, ring: int = 0) -> FundamentalUnit:
    """The unit coming from the (l-1)-th convergent of omega_d."""
    exp = expand_omega(d, ring)
    c = convergent(exp, exp.length - 1)
    eps = xi(d, ring, c.p, c.q)
    n = eps.norm()
    if abs(n) != 1:
        raise ArithmeticError(f"N(xi_(l-1)) = {n} for d={d}, ring={ring}")
    return FundamentalUnit(eps, n, exp.length)


def _pell4(u: QuadraticInteger) -> PellSolution:
    t, w = u.half_coordinates()
    D = discriminant(u.d, u.ring)
    # ring 0 writes a + b*sqrt(d) as (2a + b*sqrt(4d))/2
    Y = w if u.ring == 1 else w // 2
    return PellSolution(t, Y, D)


def pell4_solutions(d: int, ring: int = 0, count: int = 1) -> list[PellSolution]:
    """First ``count`` positive solutions of ``X^2 - D Y^2 = 4``."""
    if count < 1:
        raise ValueError("count must be >= 1")
    fu = fundamental_unit(d, ring)
    base = fu.unit if fu.norm == 1 else fu.unit * fu.unit
    out = []
    power = base
    for _ in range(count):
        sol = _pell4(power)
        if sol.X * sol.X - sol.D * sol.Y * sol.Y != 4:
            raise ArithmeticError(f"bad Pell solution {sol}")
        out.append(sol)
        power = power * base
    return out


class AACResult(NamedTuple):
    u_mod_p: int
    holds: bool
    t: int
    u: int


def aac_check(p: int) -> AACResult:
    """Write eps_p = (t + u sqrt(p))/2 and test u != 0 (mod p)."""
    if p % 4 != 1:
        raise WrongResidue(f"{p} is not 1 mod 4")
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    t, u = fundamental_unit(p, 1).unit.half_coordinates()
    return AACResult(u % p, u % p != 0, t, u)


class UnitSize(NamedTuple):
    log_unit: float
    period: int


def unit_size_stats(d: int, ring: int = 0) -> UnitSize:
    fu = fundamental_unit(d, ring)
    return UnitSize(float(fu.unit.log(digits=30)), fu.period)


def log_unit_exact(d: int, ring: int = 0, digits: int = 40) -> Decimal:
    return fundamental_unit(d, ring).unit.log(digits=digits)
