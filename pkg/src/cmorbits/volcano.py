"""p-isogeny volcanoes and non-backtracking walk counts on them.

The volcano for a prime p and splitting symbol chi is the levelled graph in
which the rim (level 0) is a complete graph on 2 + chi vertices, every
vertex has degree p + 1, and every vertex at level k >= 1 has a unique
neighbour one level up.  Because the graph looks the same from every vertex
of a given level, walk counts only depend on levels, and ``count_walks_dp``
works on (level, last step) states instead of an explicit graph.

``count_walks_dp`` is the authoritative value of r_K(p^a, p^b, p^c).  The
piecewise closed form in ``rk_prime_closed`` is a fast path checked against
it; it declines to answer (returns ``NOT_COVERED``) when the end level is the
rim, where its p^(b-1) factors stop being integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

from .arith import ImaginaryQuadraticField, chi as chi_symbol, factorize, is_prime

MAX_VERTICES = 10**6

# last-step kinds for the walk DP
START, UP, DOWN, RIM = range(4)


class _NotCovered:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NOT_COVERED"

    def __bool__(self):
        return False


NOT_COVERED = _NotCovered()


def _check_symbol(chi: int) -> int:
    if chi not in (-1, 0, 1):
        raise ValueError(f"splitting symbol must be -1, 0 or 1, got {chi}")
    return chi


@dataclass(frozen=True)
class WalkQuery:
    """One prime-local request: walks of length c from level a to level b."""

    p: int
    chi: int
    a: int
    b: int
    c: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        _check_symbol(self.chi)
        for name in ("a", "b", "c"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"{name} must be a nonnegative integer, got {v}")


@dataclass(frozen=True)
class TruncatedVolcano:
    """Explicit volcano down to ``depth``.

    Vertices are ``(level, index)`` pairs; vertex ids are positions in
    ``vertices``.  ``edges[i]`` is the unordered pair of vertex ids of edge
    ``i``, so the edge identity is its position.  Vertices at level ``depth``
    are the boundary: their children are not materialised.
    """

    p: int
    chi: int
    depth: int
    vertices: Tuple[Tuple[int, int], ...]
    edges: Tuple[Tuple[int, int], ...]

    def level_sizes(self) -> List[int]:
        sizes = [0] * (self.depth + 1)
        for level, _ in self.vertices:
            sizes[level] += 1
        return sizes

    def adjacency(self) -> List[List[Tuple[int, int]]]:
        """For each vertex, the list of (edge id, neighbour id)."""
        adj: List[List[Tuple[int, int]]] = [[] for _ in self.vertices]
        for eid, (u, v) in enumerate(self.edges):
            adj[u].append((eid, v))
            adj[v].append((eid, u))
        return adj

    def vertex_id(self, level: int, index: int) -> int:
        return self.vertices.index((level, index))

    def boundary(self) -> List[int]:
        return [i for i, (lv, _) in enumerate(self.vertices) if lv == self.depth]


def level_size(p: int, chi: int, k: int) -> int:
    if k == 0:
        return 2 + chi
    return (2 + chi) * (p - chi) * p ** (k - 1)


def build_truncated_volcano(p: int, chi: int, depth: int, max_vertices: int = MAX_VERTICES) -> TruncatedVolcano:
    """Materialise the volcano for (p, chi) down to level ``depth``.

    Indices within a level are assigned parent-major: the children of the
    parent with index i come before those of index i + 1.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    _check_symbol(chi)
    if depth < 0:
        raise ValueError(f"depth must be nonnegative, got {depth}")
    total = sum(level_size(p, chi, k) for k in range(depth + 1))
    if total > max_vertices:
        raise ValueError(f"volcano of depth {depth} has {total} vertices, over the cap of {max_vertices}")

    vertices: List[Tuple[int, int]] = []
    edges: List[Tuple[int, int]] = []
    rim = 2 + chi
    vertices.extend((0, i) for i in range(rim))
    for i in range(rim):
        for j in range(i + 1, rim):
            edges.append((i, j))

    prev_ids = list(range(rim))
    for k in range(1, depth + 1):
        nchildren = p - chi if k == 1 else p
        cur_ids = []
        for parent in prev_ids:
            for _ in range(nchildren):
                vid = len(vertices)
                vertices.append((k, len(cur_ids)))
                edges.append((parent, vid))
                cur_ids.append(vid)
        prev_ids = cur_ids
    return TruncatedVolcano(p, chi, depth, tuple(vertices), tuple(edges))


@lru_cache(maxsize=65536)
def _walks(p: int, chi: int, a: int, b: int, c: int) -> int:
    # state: {(level, last step kind): number of walks}
    states = {(a, START): 1}
    for _ in range(c):
        nxt: dict = {}

        def add(key, n):
            nxt[key] = nxt.get(key, 0) + n

        for (level, last), n in states.items():
            if level == 0:
                rim_moves = 1 + chi
                children = p - chi
                if last == RIM:
                    rim_moves -= 1
                elif last == UP:
                    children -= 1
                if rim_moves:
                    add((0, RIM), n * rim_moves)
                if children:
                    add((1, DOWN), n * children)
            else:
                children = p - 1 if last == UP else p
                add((level + 1, DOWN), n * children)
                if last != DOWN:
                    add((level - 1, UP), n)
        states = nxt
    return sum(n for (level, _), n in states.items() if level == b)


def count_walks_dp(q: WalkQuery) -> int:
    """Number of non-backtracking walks of length q.c from a fixed level-q.a
    vertex to any vertex at level q.b.

    >>> count_walks_dp(WalkQuery(3, -1, 0, 1, 1))
    4
    """
    return _walks(q.p, q.chi, q.a, q.b, q.c)


def _ppow(p: int, s) -> int:
    # p**s with the convention that non-integral exponents give 0
    if isinstance(s, Fraction) and s.denominator != 1:
        return 0
    s = int(s)
    if s < 0:
        raise _NegativeExponent
    return p**s


class _NegativeExponent(Exception):
    pass


def rk_prime_closed(q: WalkQuery):
    """Piecewise closed form for r_K(p^a, p^b, p^c).

    Returns an int, or ``NOT_COVERED`` when the selected branch needs a
    negative integral power of p (end level 0 after the a > b reduction).
    Branches are tried in order and the first matching one wins; this
    matters for a = 0 < b, c = b, where two conditions overlap.
    """
    p, x, a, b, c = q.p, q.chi, q.a, q.b, q.c
    if a > b:
        c = c - a + b
        a = b
        if c < 0:
            return 0
    try:
        if a < b and c < b - a:
            return 0
        if 0 < a <= b and c == b - a:
            return p**c
        if 0 == a < b and c == b:
            return (p - x) * _ppow(p, c - 1)
        if b - a < c < b + a:
            return (p - 1) * _ppow(p, Fraction(b - a + c, 2) - 1)
        if c == b + a:
            return (p - x - 1) * _ppow(p, b - 1)
        if c == b + a + 1:
            return (1 + x) * (p - x) * _ppow(p, b - 1)
        return (x + abs(x)) * (p - 1) * _ppow(p, b - 1)
    except _NegativeExponent:
        return NOT_COVERED


def local_queries(field: ImaginaryQuadraticField, a: int, b: int, N: int) -> List[WalkQuery]:
    """The per-prime queries whose product is r_K(a, b, N), in increasing p."""
    for name, v in (("a", a), ("b", b), ("N", N)):
        if not isinstance(v, int) or v < 1:
            raise ValueError(f"{name} must be a positive integer, got {v}")
    fa, fb, fn = factorize(a), factorize(b), factorize(N)
    primes = sorted(set(fa.primes()) | set(fb.primes()) | set(fn.primes()))
    return [
        WalkQuery(p, chi_symbol(field, p), fa.exponent(p), fb.exponent(p), fn.exponent(p))
        for p in primes
    ]


def rk(field: ImaginaryQuadraticField, a: int, b: int, N: int) -> int:
    """Number of cyclic order-N subgroups of a conductor-a curve with
    conductor-b quotient, assembled prime by prime from the walk DP."""
    result = 1
    for q in local_queries(field, a, b, N):
        result *= count_walks_dp(q)
        if result == 0:
            break
    return result


def to_dot(g: TruncatedVolcano) -> str:
    """Graphviz DOT text for a truncated volcano, byte-reproducible."""
    names = [f"L{lv}_{ix}" for lv, ix in g.vertices]
    lines = [f'graph "G_{g.p}_chi{g.chi:+d}" {{', "  node [shape=circle];"]
    for level in range(g.depth + 1):
        members = sorted(
            (ix, names[i]) for i, (lv, ix) in enumerate(g.vertices) if lv == level
        )
        lines.append(f"  {{ rank=same; {' '.join(n for _, n in members)} }}")
    pairs = sorted(
        tuple(sorted((g.vertices[u], g.vertices[v]))) for u, v in g.edges
    )
    for (l1, i1), (l2, i2) in pairs:
        lines.append(f"  L{l1}_{i1} -- L{l2}_{i2};")
    lines.append("}")
    return "\n".join(lines) + "\n"
