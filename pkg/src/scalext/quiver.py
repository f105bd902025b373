"""Quivers and the integer invariants of their dimension vectors."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd

from .errors import DivisibleVector, NotInFundamentalRegion, ShapeMismatch, ZeroVector


@dataclass(frozen=True)
class Arrow:
    id: str
    tail: object
    head: object


class Quiver:
    """A finite quiver with ordered vertices and named arrows."""

    def __init__(self, vertices, arrows):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        self.index = {v: i for i, v in enumerate(self.vertices)}
        arr = []
        for a in arrows:
            if not isinstance(a, Arrow):
                a = Arrow(*a)
            if a.tail not in self.index or a.head not in self.index:
                raise ValueError(f"arrow {a.id!r} uses an undeclared vertex")
            arr.append(a)
        self.arrows = tuple(arr)
        if len({a.id for a in self.arrows}) != len(self.arrows):
            raise ValueError("duplicate arrow ids")

    @property
    def n(self):
        return len(self.vertices)

    def t(self, a: Arrow) -> int:
        return self.index[a.tail]

    def h(self, a: Arrow) -> int:
        return self.index[a.head]

    def arrow(self, aid) -> Arrow:
        for a in self.arrows:
            if a.id == aid:
                return a
        raise KeyError(aid)

    def is_acyclic(self) -> bool:
        indeg = [0] * self.n
        for a in self.arrows:
            indeg[self.h(a)] += 1
        ready = [i for i in range(self.n) if indeg[i] == 0]
        seen = 0
        while ready:
            i = ready.pop()
            seen += 1
            for a in self.arrows:
                if self.t(a) == i:
                    indeg[self.h(a)] -= 1
                    if indeg[self.h(a)] == 0:
                        ready.append(self.h(a))
        return seen == self.n

    def unit(self, i: int):
        return tuple(1 if k == i else 0 for k in range(self.n))

    def __eq__(self, other):
        return isinstance(other, Quiver) and (self.vertices, self.arrows) == (other.vertices, other.arrows)

    def __hash__(self):
        return hash((self.vertices, self.arrows))

    def __repr__(self):
        arrows = ", ".join(f"{a.id}:{a.tail}->{a.head}" for a in self.arrows)
        return f"Quiver({list(self.vertices)}, [{arrows}])"

    def to_json(self):
        return {"vertices": list(self.vertices),
                "arrows": [{"id": a.id, "from": a.tail, "to": a.head} for a in self.arrows]}


def loop_quiver(loops: int) -> Quiver:
    """One vertex with the given number of loops."""
    return Quiver([1], [(f"a{i + 1}", 1, 1) for i in range(loops)])


def kronecker_quiver(arrows: int) -> Quiver:
    return Quiver([1, 2], [(f"a{i + 1}", 1, 2) for i in range(arrows)])


def linear_quiver(n: int) -> Quiver:
    """Type A_n with arrows i -> i+1."""
    return Quiver(list(range(1, n + 1)), [(f"a{i}", i, i + 1) for i in range(1, n)])


BUILTIN = {
    "threeloop": lambda: loop_quiver(3),
    "jordan": lambda: loop_quiver(1),
    "kronecker4": lambda: kronecker_quiver(4),
    "kronecker": lambda: kronecker_quiver(2),
    "a2": lambda: linear_quiver(2),
    "a3": lambda: linear_quiver(3),
}


def _check(Q: Quiver, *vecs):
    for v in vecs:
        if len(v) != Q.n:
            raise ShapeMismatch(f"vector {tuple(v)} has length {len(v)}, quiver has {Q.n} vertices")


def euler_form(Q: Quiver, a, b) -> int:
    _check(Q, a, b)
    return sum(x * y for x, y in zip(a, b)) - sum(a[Q.t(e)] * b[Q.h(e)] for e in Q.arrows)


def symmetric_form(Q: Quiver, a, b) -> int:
    return euler_form(Q, a, b) + euler_form(Q, b, a)


def support(a):
    return [i for i, x in enumerate(a) if x]


def _connected(Q: Quiver, verts) -> bool:
    verts = set(verts)
    if not verts:
        return False
    adj = {i: set() for i in verts}
    for e in Q.arrows:
        t, h = Q.t(e), Q.h(e)
        if t in verts and h in verts:
            adj[t].add(h)
            adj[h].add(t)
    start = next(iter(verts))
    seen = {start}
    stack = [start]
    while stack:
        for j in adj[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return seen == verts


def in_fundamental_region(Q: Quiver, a) -> bool:
    _check(Q, a)
    if not any(a):
        raise ZeroVector("the zero vector has empty support")
    if any(x < 0 for x in a):
        return False
    if any(symmetric_form(Q, Q.unit(i), a) > 0 for i in range(Q.n)):
        return False
    return _connected(Q, support(a))


def is_indivisible(a) -> bool:
    g = 0
    for x in a:
        g = gcd(g, x)
    return g == 1


def find_indivisible_negative(Q: Quiver, N: int, bound: int):
    """Smallest indivisible vector in the fundamental region with (a,a) <= -N.

    Candidates are scanned by increasing entry sum, then lexicographically,
    with entries in ``0..bound``.
    """
    if N < 1:
        raise ValueError("N must be positive")
    for total in range(1, Q.n * bound + 1):
        for a in _compositions(total, Q.n, bound):
            if is_indivisible(a) and symmetric_form(Q, a, a) <= -N and in_fundamental_region(Q, a):
                return a
    return None


def _compositions(total, parts, bound):
    # all tuples in [0, bound]^parts summing to total, lexicographic order
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(max(0, total - bound * (parts - 1)), min(bound, total) + 1):
        for rest in _compositions(total - first, parts - 1, bound):
            yield (first,) + rest


def codim_vector(Q: Quiver, a):
    """The dual dimension vector: a_i minus the sum of a_tail over arrows into i."""
    _check(Q, a)
    out = list(a)
    for e in Q.arrows:
        out[Q.h(e)] -= a[Q.t(e)]
    return tuple(out)


def moduli_dimension(Q: Quiver, a) -> int:
    if not any(a):
        raise ZeroVector("zero dimension vector")
    if not in_fundamental_region(Q, a):
        raise NotInFundamentalRegion(f"{tuple(a)} is not in the fundamental region")
    if not is_indivisible(a):
        raise DivisibleVector(f"{tuple(a)} is divisible")
    return -symmetric_form(Q, a, a) // 2 + 1


def dim_vectors(Q: Quiver, bound: int):
    """All dimension vectors with entries in 0..bound."""
    return product(range(bound + 1), repeat=Q.n)


def random_quiver(rng, max_vertices=5, max_arrows=8) -> Quiver:
    """Random quiver on 1..max_vertices vertices; loops and multiple arrows allowed."""
    n = rng.randint(1, max_vertices)
    arrows = []
    for k in range(rng.randint(0, max_arrows)):
        arrows.append((f"a{k + 1}", rng.randint(1, n), rng.randint(1, n)))
    return Quiver(list(range(1, n + 1)), arrows)
