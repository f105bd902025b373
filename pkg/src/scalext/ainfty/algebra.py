"""A-infinity algebras through the Taylor coefficients of their bar coderivation."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from ..config import max_arity
from ..errors import ArityBudgetExceeded, DegreeMismatch
from ..hochschild import GradedAlgebra
from ..linalg import Echelon, Matrix, kernel_rows, solve
from .core import GradedSpace, _add, clean, evaluate, insert, is_zero


@dataclass
class TaylorMap:
    """Components by arity; ``picture`` is "b" (suspended) or "m" (unsuspended)."""
    source: object
    target: object
    components: dict
    degree: int
    picture: str = "b"
    max_arity: int | None = None

    def __getitem__(self, n):
        return self.components.get(n, {})

    def arities(self):
        return sorted(n for n, c in self.components.items() if c)

    def to_json(self):
        from .core import to_strings
        return {"picture": self.picture, "degree": self.degree,
                "verified_to_arity": self.max_arity,
                "components": {str(n): to_strings(c) for n, c in sorted(self.components.items()) if c}}


def _shift_sign(key, sdeg):
    # sign of s o m_n o (s^-1)^n on a basis tuple, including the overall -1
    n = len(key)
    e = 1
    for i, x in enumerate(key):
        e += (n - 1 - i) * sdeg[x]
    return -1 if e % 2 else 1


def shift_signs(m: TaylorMap) -> TaylorMap:
    """m_n of degree 2 - n  ->  b_n = s m_n (s^-1)^n of degree 1.

    b_1(sa) = -s m_1(a) and b_2(sa, sb) = (-1)^|a| s m_2(a, b).
    """
    if m.picture != "m":
        raise ValueError("expected an m-picture map")
    src, tgt = m.source, m.target
    comps = {}
    for n, comp in m.components.items():
        out = {}
        for key, row in comp.items():
            for o, c in row.items():
                if c and tgt.degrees[o] - sum(src.degrees[x] for x in key) != 2 - n:
                    raise DegreeMismatch(f"m_{n} entry {key}->{o} does not have degree {2 - n}")
            s = _shift_sign(key, src.shifted)
            out[key] = {o: s * c for o, c in row.items() if c}
        comps[n] = clean(out)
    return TaylorMap(src, tgt, comps, 1, "b", m.max_arity)


def unshift_signs(b: TaylorMap) -> TaylorMap:
    if b.picture != "b":
        raise ValueError("expected a b-picture map")
    src, tgt = b.source, b.target
    comps = {}
    for n, comp in b.components.items():
        out = {}
        for key, row in comp.items():
            for o, c in row.items():
                if c and tgt.shifted[o] - sum(src.shifted[x] for x in key) != 1:
                    raise DegreeMismatch(f"b_{n} entry {key}->{o} does not have degree 1")
            s = _shift_sign(key, src.shifted)
            out[key] = {o: s * c for o, c in row.items() if c}
        comps[n] = clean(out)
    return TaylorMap(src, tgt, comps, None, "m", b.max_arity)


class AInftyAlgebra:
    """A graded space with bar coderivation components b_n."""

    def __init__(self, space: GradedSpace, b: dict, unit=None):
        self.space = space
        self.field = space.field
        self.b = {n: clean(c) for n, c in b.items() if c}
        self.unit = unit
        self.unit_vector = None if unit is None else {unit: self.field.one()}

    @property
    def sdeg(self):
        return self.space.shifted

    def component(self, n):
        return self.b.get(n, {})

    @property
    def top_arity(self):
        return max(self.b, default=0)

    @classmethod
    def from_m(cls, space: GradedSpace, m: dict, unit=None):
        bm = shift_signs(TaylorMap(space, space, m, None, "m"))
        return cls(space, bm.components, unit)

    def m_components(self):
        return unshift_signs(TaylorMap(self.space, self.space, self.b, 1, "b")).components

    @classmethod
    def from_dg(cls, G: GradedAlgebra):
        """A DG algebra from the hochschild module's structure-constant form."""
        space = GradedSpace(G.names, G.degrees, G.field)
        m1 = {(i,): dict(out) for i, out in (G.differential or {}).items()}
        m2 = {(i, j): dict(out) for (i, j), out in G.mult.items()}
        return cls.from_m(space, {1: m1, 2: m2}, G.unit_index)

    def to_json(self):
        from .core import to_strings
        return {"space": self.space.to_json(),
                "b": {str(n): to_strings(c) for n, c in sorted(self.b.items())}}


def bar_square(b: dict, sdeg, n):
    """Arity-n component of b o b for a coderivation with components b."""
    acc = {}
    for q in range(1, n + 1):
        inner = b.get(q)
        outer = b.get(n - q + 1)
        if not inner or not outer:
            continue
        for p in range(n - q + 1):
            insert(outer, inner, p, sdeg, 1, acc)
    return acc


@dataclass(frozen=True)
class Violation:
    arity: int
    residual: dict = dc_field(compare=False)

    @property
    def size(self):
        return sum(len(r) for r in self.residual.values())


def coderivation_square(A: AInftyAlgebra, N: int, budget=None):
    """Arities n <= N where (b o b)_n fails to vanish."""
    limit = max_arity() if budget is None else budget
    if N > limit:
        raise ArityBudgetExceeded(f"arity {N} exceeds budget {limit}")
    out = []
    for n in range(1, N + 1):
        r = bar_square(A.b, A.sdeg, n)
        if not is_zero(r):
            out.append(Violation(n, r))
    return out


# -- cohomology --------------------------------------------------------------------

class Cohomology:
    """Homogeneous cocycle representatives of H(V, d) and the projection onto them."""

    def __init__(self, space: GradedSpace, d: dict):
        # d: {i: {j: c}}, a degree-one square-zero map
        F = space.field
        self.space = space
        self.field = F
        bydeg = space.by_degree()
        self.reps = []
        self.degrees = []
        self._proj = {}
        for deg in sorted(bydeg):
            cols = bydeg[deg]
            nxt = bydeg.get(deg + 1, [])
            prev = bydeg.get(deg - 1, [])
            pos = {j: r for r, j in enumerate(nxt)}
            # kernel of d restricted to this degree, expressed on `cols`
            rows = [dict() for _ in nxt]
            for c, i in enumerate(cols):
                for j, x in d.get(i, {}).items():
                    rows[pos[j]][c] = x
            ker = kernel_rows(F, rows, len(cols))
            cycles = [{cols[c]: x for c, x in v.items()} for v in ker]
            bounds = [dict(d[i]) for i in prev if d.get(i)]
            ech = Echelon(F, space.dim)
            for v in bounds:
                ech.add(v)
            chosen = []
            for z in cycles:
                if ech.add(z) is not None:
                    chosen.append(z)
            start = len(self.reps)
            self.reps.extend(chosen)
            self.degrees.extend([deg] * len(chosen))
            if chosen:
                span = chosen + [b for b in bounds]
                M = Matrix(F, [[v.get(i, F.zero()) for v in span] for i in cols], len(span))
                self._proj[deg] = (cols, M, start, len(chosen))

    @property
    def dim(self):
        return len(self.reps)

    def graded_space(self, prefix="h"):
        return GradedSpace([f"{prefix}{i}" for i in range(self.dim)], self.degrees, self.field)

    def project(self, v: dict) -> dict:
        """Coordinates of the class of a cocycle v (need not be homogeneous)."""
        F = self.field
        out = {}
        parts = {}
        for i, x in v.items():
            parts.setdefault(self.space.degrees[i], {})[i] = x
        for deg, part in parts.items():
            if deg not in self._proj:
                continue
            cols, M, start, k = self._proj[deg]
            sol = solve(M, [part.get(i, F.zero()) for i in cols])
            if sol is None:
                raise ValueError("projection of a non-cocycle")
            for t in range(k):
                if sol[t]:
                    out[start + t] = sol[t]
        return out

    def is_boundary_class_zero(self, v: dict) -> bool:
        return not self.project(v)


def cohomology_algebra(A: AInftyAlgebra, H: Cohomology | None = None):
    """H(A) with the product induced by m_2, as a GradedAlgebra."""
    m = A.m_components()
    if H is None:
        H = Cohomology(A.space, {k[0]: row for k, row in m.get(1, {}).items()})
    mult = {}
    m2 = m.get(2, {})
    for i, u in enumerate(H.reps):
        for j, v in enumerate(H.reps):
            prod = evaluate(m2, [u, v])
            c = H.project(prod)
            if c:
                mult[(i, j)] = c
    unit = {}
    if A.unit is not None:
        unit = H.project({A.unit: A.field.one()})
    names = [f"h{i}" for i in range(H.dim)]
    return GradedAlgebra(names, H.degrees, mult, unit, A.field), H


def dg_square_check(A: AInftyAlgebra):
    """True iff b_1^2 = 0, the Leibniz rule and associativity hold (arities 1..3)."""
    return all(is_zero(bar_square(A.b, A.sdeg, n)) for n in (1, 2, 3))


def differential_of(A: AInftyAlgebra) -> dict:
    """m_1 as {i: {j: c}}."""
    m1 = A.m_components().get(1, {})
    return {k[0]: dict(row) for k, row in m1.items()}


def add_b3_repair(space: GradedSpace, b: dict):
    """Solve the arity-3 equation of b o b = 0 for a b_3, given b_1 and b_2.

    Returns the repaired component dict or None when no b_3 exists.
    """
    from .solve import LinearSystem
    from .core import degree_keys
    sdeg = space.shifted
    sys_ = LinearSystem(space.field)
    unknown = {}
    for key, o in degree_keys(sdeg, sdeg, 3, 1):
        _add(unknown, key, o, sys_.new_var(("b3", key, o)))
    trial = dict(b)
    trial[3] = unknown
    sys_.require_zero(bar_square(trial, sdeg, 3))
    sol = sys_.solve()
    if sol is None:
        return None
    out = dict(b)
    out[3] = sys_.substitute(unknown, sol)
    return out

