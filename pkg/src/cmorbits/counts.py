"""Orbit counts on the projective line.

``count_cm_pair`` is the number of orbits of P^1(K) under Aut(E x E') for two
elliptic curves with CM by the same field K and conductors c, c' (the index
of End(E) in the maximal order, so End(E) is Z + c*O_K).  It is also the cusp
count of the matching congruence subgroup of the Bianchi group.  The count
only depends on the field through its class number and splitting symbols.

Every count comes back as a ``CountReport`` that keeps each summand, zero or
not, so intermediate values can be audited and pinned in tests.

Pairs of curves that are not isogenous always give 2 orbits and are not
modelled here; both curves must have CM by the same field.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import List

from .arith import (
    ImaginaryQuadraticField,
    class_number,
    divisors,
    h_order,
    omega,
    phi_u,
)
from .volcano import rk


class UnsupportedFieldError(ValueError):
    """Raised for Q(sqrt(-1)) and Q(sqrt(-3)), whose unit groups exceed {+1, -1}."""

    code = "UNSUPPORTED_FIELD"

    def __init__(self, D: int):
        super().__init__(
            f"UNSUPPORTED_FIELD: discriminant {D} has roots of unity other than +1, -1; "
            "the orbit formula only covers fields whose units are +1, -1"
        )
        self.discriminant = D


TERM_KEYS = ("l", "g", "h_l", "phi_u", "two_power", "r_k", "contribution")


@dataclass(frozen=True)
class ConductorPair:
    c: int
    c_prime: int
    f: int
    f_prime: int


@dataclass(frozen=True)
class Term:
    l: int
    g: int
    h_l: int
    phi_u_factor: int
    two_power: int
    rk_value: int
    contribution: int

    def as_row(self) -> tuple:
        return (self.l, self.g, self.h_l, self.phi_u_factor, self.two_power, self.rk_value, self.contribution)


@dataclass
class CountReport:
    total: int
    terms: List[Term] = field(default_factory=list)

    def check(self) -> None:
        for t in self.terms:
            if t.contribution != t.h_l * t.phi_u_factor * t.two_power * t.rk_value:
                raise AssertionError(f"bad contribution in term {t}")
        if self.total != sum(t.contribution for t in self.terms):
            raise AssertionError("total does not match the sum of contributions")

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "terms": [dict(zip(TERM_KEYS, t.as_row())) for t in self.terms],
        }

    def to_json(self, indent=None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(TERM_KEYS)
        for t in self.terms:
            w.writerow(t.as_row())
        return buf.getvalue()


def _report(terms: List[Term]) -> CountReport:
    rep = CountReport(sum(t.contribution for t in terms), terms)
    rep.check()
    return rep


def _positive(**kw) -> None:
    for name, v in kw.items():
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise ValueError(f"{name} must be a positive integer, got {v!r}")


def _require_unit_group(field: ImaginaryQuadraticField) -> None:
    if field.has_extra_units:
        raise UnsupportedFieldError(field.discriminant)


def normalize_pair(c: int, c_prime: int) -> ConductorPair:
    _positive(c=c, c_prime=c_prime)
    return ConductorPair(c, c_prime, math.lcm(c, c_prime), math.gcd(c, c_prime))


def count_cm_pair(field: ImaginaryQuadraticField, c: int, c_prime: int) -> CountReport:
    """N(E, E') for conductors c, c' over ``field``.

    The sum runs over l | f and g | l with f = lcm(c, c'), f' = gcd(c, c'):

        h_l * phi_u(f/l) * 2^omega(l/g) * r_K(f', g, f/l)

    >>> count_cm_pair(ImaginaryQuadraticField(-7), 1, 2).total
    4
    """
    _require_unit_group(field)
    pair = normalize_pair(c, c_prime)
    f, fp = pair.f, pair.f_prime
    terms = []
    for l in divisors(f):
        hl = h_order(field, l)
        pu = phi_u(f // l)
        for g in divisors(l):
            tp = 2 ** omega(l // g)
            r = rk(field, fp, g, f // l)
            terms.append(Term(l, g, hl, pu, tp, r, hl * pu * tp * r))
    return _report(terms)


def count_gl2_order(field: ImaginaryQuadraticField, f: int) -> CountReport:
    """Orbits of P^1(K) under GL_2 of the order of conductor f: sum over l | f of h_l * phi_u(f/l)."""
    _require_unit_group(field)
    _positive(f=f)
    terms = []
    for l in divisors(f):
        hl = h_order(field, l)
        pu = phi_u(f // l)
        terms.append(Term(l, l, hl, pu, 1, 1, hl * pu))
    return _report(terms)


def count_gamma0_cusps(N: int) -> CountReport:
    """Orbits of P^1(Q) under Gamma_0(N) with determinant +1 or -1.

    One term per d | N, recorded with l = d, g = gcd(d, N/d) and
    phi_u = phi_u(g); the remaining factors are 1.

    >>> count_gamma0_cusps(9).total
    3
    """
    _positive(N=N)
    terms = []
    for d in divisors(N):
        g = math.gcd(d, N // d)
        pu = phi_u(g)
        terms.append(Term(d, g, 1, pu, 1, 1, pu))
    return _report(terms)


def bianchi_count(field: ImaginaryQuadraticField) -> int:
    """Orbits of P^1(K) under GL_2(O_K), which is the class number."""
    return class_number(field.discriminant)


def conductor_table(field: ImaginaryQuadraticField, max_conductor: int) -> List[tuple]:
    """Rows (c, c', N(E, E')) for 1 <= c, c' <= max_conductor, row-major."""
    _require_unit_group(field)
    _positive(max_conductor=max_conductor)
    rows = []
    for c in range(1, max_conductor + 1):
        for cp in range(1, max_conductor + 1):
            rows.append((c, cp, count_cm_pair(field, c, cp).total))
    return rows
