"""Exact integer number theory used by the orbit counts.

Everything here works on Python ints, so there is no overflow anywhere on
the formula path.  Inputs are desk scale (up to ~10**12), which is why
factorization is plain deterministic trial division.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List


def _require_positive(n: int, name: str = "n") -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"{name} must be an int, got {type(n).__name__}")
    if n < 1:
        raise ValueError(f"{name} must be a positive integer, got {n}")


@dataclass(frozen=True)
class Factorization:
    """A positive integer together with its prime factorization."""

    value: int
    factors: Dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        prod = 1
        for p, e in self.factors.items():
            prod *= p**e
        if prod != self.value:
            raise ValueError(f"factors {self.factors} do not multiply to {self.value}")
        keys = list(self.factors)
        if keys != sorted(set(keys)):
            raise ValueError("prime keys must be strictly increasing")

    def primes(self) -> List[int]:
        return list(self.factors)

    def exponent(self, p: int) -> int:
        return self.factors.get(p, 0)

    def __iter__(self):
        return iter(self.factors.items())


@lru_cache(maxsize=4096)
def _factor_items(n: int) -> tuple:
    out = []
    for p in (2, 3, 5):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    # 2,3,5 wheel: candidates are 7, 11, 13, 17, 19, 23, 29, 31 mod 30
    steps = (4, 2, 4, 2, 4, 6, 2, 6)
    d, i = 7, 0
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += steps[i]
        i = (i + 1) % 8
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def factorize(n: int) -> Factorization:
    """Return the canonical factorization of ``n >= 1``.

    >>> factorize(12).factors
    {2: 2, 3: 1}
    >>> factorize(1).factors
    {}
    """
    _require_positive(n)
    return Factorization(n, dict(_factor_items(n)))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    items = _factor_items(n)
    return len(items) == 1 and items[0] == (n, 1)


def divisors(n: int) -> List[int]:
    """All positive divisors of ``n`` in ascending order."""
    _require_positive(n)
    divs = [1]
    for p, e in _factor_items(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def euler_phi(n: int) -> int:
    _require_positive(n)
    result = n
    for p, _ in _factor_items(n):
        result = result // p * (p - 1)
    return result


def phi_u(n: int) -> int:
    """Reduced totient: the number of units mod n up to sign.

    phi(n)/2 for n >= 3, and 1 for n in {1, 2}.
    """
    _require_positive(n)
    if n <= 2:
        return 1
    return euler_phi(n) // 2


def omega(n: int) -> int:
    """Number of distinct prime factors of n."""
    _require_positive(n)
    return len(_factor_items(n))


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a | n) for arbitrary integers, via binary Jacobi reduction."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    acc = 1
    if n < 0:
        n = -n
        if a < 0:
            acc = -acc
    # factor out powers of two from n using (a|2)
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            acc = -acc
    # n is now odd and positive: ordinary Jacobi symbol
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                acc = -acc
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            acc = -acc
        a %= n
    return acc if n == 1 else 0


def is_fundamental_discriminant(D: int) -> bool:
    """True iff D < 0 is the discriminant of an imaginary quadratic field."""
    if not isinstance(D, int) or D >= 0:
        return False
    if D % 4 == 1:
        return _squarefree(-D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and _squarefree(-m)
    return False


def _squarefree(n: int) -> bool:
    return all(e == 1 for _, e in _factor_items(n))


def reduced_forms(D: int) -> List[tuple]:
    """Reduced primitive positive definite forms (a, b, c) of discriminant D.

    Reduced means |b| <= a <= c, with b >= 0 whenever |b| == a or a == c.
    """
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"{D} is not a negative discriminant")
    forms = []
    amax = math.isqrt(-D // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if b < 0 and a == c:
                continue
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            forms.append((a, b, c))
    return forms


@lru_cache(maxsize=None)
def class_number(D: int) -> int:
    """Class number h(D) by exhaustive enumeration of reduced forms.

    >>> class_number(-23)
    3
    """
    if not is_fundamental_discriminant(D):
        raise ValueError(f"{D} is not a negative fundamental discriminant")
    return len(reduced_forms(D))


@dataclass(frozen=True)
class ImaginaryQuadraticField:
    """Q(sqrt(D)) for a negative fundamental discriminant D."""

    discriminant: int
    class_number: int = 0

    def __post_init__(self):
        if not is_fundamental_discriminant(self.discriminant):
            raise ValueError(f"{self.discriminant} is not a negative fundamental discriminant")
        h = class_number(self.discriminant)
        if self.class_number == 0:
            object.__setattr__(self, "class_number", h)
        elif self.class_number != h:
            raise ValueError(f"class number of {self.discriminant} is {h}, not {self.class_number}")

    @property
    def has_extra_units(self) -> bool:
        return self.discriminant in (-3, -4)


def chi(field: ImaginaryQuadraticField, p: int) -> int:
    """Splitting symbol of the prime p in the field: +1 split, 0 ramified, -1 inert."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    D = field.discriminant
    if D % p == 0:
        return 0
    if p == 2:
        return 1 if D % 8 == 1 else -1
    return 1 if pow(D, (p - 1) // 2, p) == 1 else -1


def h_order(field: ImaginaryQuadraticField, l: int) -> int:
    """Class number of the order of conductor l, h * prod p^(e-1) * (p - chi(p))."""
    _require_positive(l, "l")
    h = field.class_number
    for p, e in _factor_items(l):
        h *= p ** (e - 1) * (p - chi(field, p))
    return h
