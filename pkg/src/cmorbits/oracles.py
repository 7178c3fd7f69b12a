"""Brute-force ground truth for the closed formulas.

Two independent checks live here:

* ``enumerate_walks`` counts non-backtracking walks on an explicit truncated
  volcano by depth-first search over edge identities.
* ``gamma0_orbit_oracle`` counts cusps of Gamma_0(N) (determinant +-1) as
  orbits on the finite coset space P^1(Z/N), closed under the translation
  (c : d) -> (c : c + d) and the reflection (c : d) -> (c : -d).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Tuple

from scipy.cluster.hierarchy import DisjointSet

from .volcano import TruncatedVolcano


class InsufficientDepthError(ValueError):
    code = "INSUFFICIENT_DEPTH"


def enumerate_walks(g: TruncatedVolcano, start_level: int, end_level: int, length: int) -> int:
    """Count non-backtracking walks of ``length`` steps from the first vertex
    of ``start_level`` to any vertex of ``end_level``."""
    need = max(start_level, end_level) + length
    if g.depth < need:
        raise InsufficientDepthError(
            f"INSUFFICIENT_DEPTH: need depth >= {need}, volcano has depth {g.depth}"
        )
    return sum(1 for walk in iter_walks(g, start_level, length) if g.vertices[walk[-1]][0] == end_level)


def iter_walks(g: TruncatedVolcano, start_level: int, length: int) -> Iterator[Tuple[int, ...]]:
    """Yield every non-backtracking walk of ``length`` steps from the first
    vertex of ``start_level``, as a tuple of vertex ids."""
    adj = g.adjacency()
    start = g.vertex_id(start_level, 0)
    # stack of (walk so far, edge used to arrive)
    stack = [((start,), -1)]
    while stack:
        walk, last_edge = stack.pop()
        if len(walk) == length + 1:
            yield walk
            continue
        for eid, w in adj[walk[-1]]:
            if eid != last_edge:
                stack.append((walk + (w,), eid))


@dataclass(frozen=True)
class ProjectiveLinePoint:
    c: int
    d: int
    N: int

    @property
    def canonical(self) -> bool:
        return (self.c, self.d) == p1_normalize(self.c, self.d, self.N)


def _unit_lift(v: int, m: int, N: int) -> int:
    # a unit mod N congruent to v mod m (m | N, v a unit mod m)
    while math.gcd(v, N) != 1:
        v += m
    return v % N


@lru_cache(maxsize=None)
def _stabiliser(N: int, g: int) -> Tuple[int, ...]:
    # units mod N congruent to 1 mod N/g; these fix the first coordinate g
    m = N // g
    return tuple(s for s in range(1, N + 1, m) if math.gcd(s, N) == 1)


def p1_normalize(c: int, d: int, N: int) -> Tuple[int, int]:
    """Canonical representative of (c : d) in P^1(Z/N).

    Scale so the first coordinate becomes g = gcd(c, N), then take the
    smallest second coordinate reachable by the units that fix g.
    """
    c %= N
    d %= N
    if N == 1:
        return (0, 0)
    if math.gcd(math.gcd(c, d), N) != 1:
        raise ValueError(f"({c} : {d}) is not a point of P^1(Z/{N})")
    g = math.gcd(c, N)
    m = N // g
    u = _unit_lift(pow(c // g, -1, m) if m > 1 else 1, m, N)
    d = d * u % N
    best = min(d * s % N for s in _stabiliser(N, g))
    return (g % N, best)


def p1_points(N: int) -> List[ProjectiveLinePoint]:
    """One canonical point per element of P^1(Z/N), sorted."""
    if N < 1:
        raise ValueError(f"N must be a positive integer, got {N}")
    if N == 1:
        return [ProjectiveLinePoint(0, 0, 1)]
    points = []
    for g in range(1, N + 1):
        if N % g:
            continue
        stab = _stabiliser(N, g)
        covered = set()
        for d in range(N):
            if d in covered or math.gcd(math.gcd(g, d), N) != 1:
                continue
            orbit = {d * s % N for s in stab}
            covered |= orbit
            points.append((g % N, min(orbit)))
    return [ProjectiveLinePoint(c, d, N) for c, d in sorted(points)]


def p1_size(N: int) -> int:
    """N * prod_{p | N} (1 + 1/p), the expected size of P^1(Z/N)."""
    size = N
    n, p = N, 2
    while p * p <= n:
        if n % p == 0:
            size = size // p * (p + 1)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        size = size // n * (n + 1)
    return size


def gamma0_orbit_oracle(N: int) -> int:
    """Number of orbits of Gamma_0(N) (determinant +-1) on P^1(Q)."""
    if N < 1:
        raise ValueError(f"N must be a positive integer, got {N}")
    pts = [(pt.c, pt.d) for pt in p1_points(N)]
    ds = DisjointSet(pts)
    for c, d in pts:
        ds.merge((c, d), p1_normalize(c, c + d, N))
        ds.merge((c, d), p1_normalize(c, -d, N))
    return ds.n_subsets
