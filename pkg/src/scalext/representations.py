"""Quiver representations over exact fields: Hom, Ext^1, Schur and stability.

Hom(V, W) and Ext^1(V, W) are the kernel and cokernel of the map

    (f_i)_i  ->  (f_h(a) V_a - W_a f_t(a))_a

from vertex-wise linear maps V_i -> W_i to arrow-wise maps V_t(a) -> W_h(a).
With this orientation dim Hom(V, W) - dim Ext^1(V, W) = <dim V, dim W>.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .config import enumeration_budget
from .errors import (
    BudgetExceeded,
    DescriptorMismatch,
    NotFiniteField,
    QuiverMismatch,
    ShapeMismatch,
    WeightNotOrthogonal,
)
from .fields import Field, evaluate
from .linalg import Echelon, Matrix, Quotient, kernel_rows, rank_rows
from .quiver import Quiver, codim_vector, euler_form


class QuiverRep:
    """One matrix per arrow, of shape dims[head] x dims[tail]."""

    def __init__(self, quiver: Quiver, field: Field, dims, mats):
        self.quiver = quiver
        self.field = field
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != quiver.n:
            raise ShapeMismatch("dimension vector does not match the quiver")
        self.mats = {}
        for a in quiver.arrows:
            m = mats[a.id]
            if not isinstance(m, Matrix):
                m = Matrix(field, m, self.dims[quiver.t(a)])
            if m.field != field:
                raise DescriptorMismatch(f"arrow {a.id} is over {m.field!r}, expected {field!r}")
            if m.shape != (self.dims[quiver.h(a)], self.dims[quiver.t(a)]):
                raise ShapeMismatch(f"arrow {a.id}: matrix {m.shape}, expected "
                                    f"{(self.dims[quiver.h(a)], self.dims[quiver.t(a)])}")
            self.mats[a.id] = m

    def __getitem__(self, aid):
        return self.mats[aid]

    def __repr__(self):
        return f"QuiverRep(dims={self.dims}, field={self.field!r})"

    def __eq__(self, other):
        return (isinstance(other, QuiverRep) and self.quiver == other.quiver
                and self.field == other.field and self.dims == other.dims and self.mats == other.mats)

    def total_dim(self):
        return sum(self.dims)

    def to_json(self):
        return {"field": repr(self.field), "dims": list(self.dims),
                "arrows": {aid: m.to_strings() for aid, m in self.mats.items()}}


def _same_setting(V: QuiverRep, W: QuiverRep):
    if V.quiver != W.quiver:
        raise QuiverMismatch("representations of different quivers")
    if V.field != W.field:
        raise DescriptorMismatch(f"{V.field!r} vs {W.field!r}")


# -- constructors ------------------------------------------------------------

def zero_rep(Q: Quiver, field: Field) -> QuiverRep:
    return QuiverRep(Q, field, [0] * Q.n, {a.id: Matrix(field, [], 0) for a in Q.arrows})


def simple_rep(Q: Quiver, field: Field, vertex) -> QuiverRep:
    """The simple at a vertex; loops there act by zero."""
    i = Q.index[vertex]
    dims = Q.unit(i)
    mats = {a.id: Matrix.zeros(field, dims[Q.h(a)], dims[Q.t(a)]) for a in Q.arrows}
    return QuiverRep(Q, field, dims, mats)


def scalar_rep(Q: Quiver, field: Field, values) -> QuiverRep:
    """Dimension vector of ones, arrow ``a`` acting by the scalar ``values[a]``."""
    mats = {a.id: Matrix(field, [[values[a.id]]]) for a in Q.arrows}
    return QuiverRep(Q, field, [1] * Q.n, mats)


def random_rep(Q: Quiver, field: Field, dims, rng, **kw) -> QuiverRep:
    mats = {}
    for a in Q.arrows:
        r, c = dims[Q.h(a)], dims[Q.t(a)]
        mats[a.id] = Matrix(field, [[field.random_element(rng, **kw) for _ in range(c)] for _ in range(r)], c)
    return QuiverRep(Q, field, dims, mats)


def direct_sum(V: QuiverRep, W: QuiverRep) -> QuiverRep:
    _same_setting(V, W)
    Q = V.quiver
    F = V.field
    mats = {}
    for a in Q.arrows:
        A, B = V[a.id], W[a.id]
        z = F.zero()
        rows = [list(r) + [z] * B.ncols for r in A.rows]
        rows += [[z] * A.ncols + list(r) for r in B.rows]
        mats[a.id] = Matrix(F, rows, A.ncols + B.ncols)
    return QuiverRep(Q, F, [x + y for x, y in zip(V.dims, W.dims)], mats)


def paths_from(Q: Quiver, start):
    """Paths (tuples of arrow ids) starting at a vertex, grouped by end vertex."""
    if not Q.is_acyclic():
        raise ValueError("projectives are only materialized for acyclic quivers")
    out = {v: [] for v in Q.vertices}
    frontier = [((), start)]
    while frontier:
        nxt = []
        for path, v in frontier:
            out[v].append(path)
            for a in Q.arrows:
                if a.tail == v:
                    nxt.append((path + (a.id,), a.head))
        frontier = nxt
    for v in out:
        out[v].sort(key=lambda p: (len(p), p))
    return out


def projective_rep(Q: Quiver, field: Field, vertex) -> QuiverRep:
    """P_vertex: basis of paths starting at the vertex, arrows append."""
    paths = paths_from(Q, vertex)
    dims = [len(paths[v]) for v in Q.vertices]
    mats = {}
    one = field.one()
    for a in Q.arrows:
        src, dst = paths[a.tail], paths[a.head]
        M = Matrix.zeros(field, len(dst), len(src))
        for c, p in enumerate(src):
            M.rows[dst.index(p + (a.id,))][c] = one
        mats[a.id] = M
    return QuiverRep(Q, field, dims, mats)


def projective_map(Q: Quiver, field: Field, source, target, element):
    """Morphism P_source -> P_target sending the trivial path at ``source``
    to ``element`` (a dict path -> coefficient of paths target -> source)."""
    ps, pt = paths_from(Q, source), paths_from(Q, target)
    maps = []
    for v in Q.vertices:
        M = Matrix.zeros(field, len(pt[v]), len(ps[v]))
        for c, q in enumerate(ps[v]):
            for p, coeff in element.items():
                M.rows[pt[v].index(tuple(p) + q)][c] += field(coeff)
        maps.append(M)
    return tuple(maps)


def cokernel_rep(f, target: QuiverRep) -> QuiverRep:
    """Cokernel of a morphism (vertex-wise matrices) into ``target``."""
    Q, F = target.quiver, target.field
    quots = [Quotient(m) for m in f]
    dims = [q.dim for q in quots]
    mats = {}
    for a in Q.arrows:
        qt, qh = quots[Q.t(a)], quots[Q.h(a)]
        cols = [qh.coords(target[a.id].apply(qt.lift([F.one() if k == j else F.zero() for k in range(qt.dim)])))
                for j in range(qt.dim)]
        mats[a.id] = Matrix(F, [list(r) for r in zip(*cols)] if cols else [[] for _ in range(qh.dim)], qt.dim)
    return QuiverRep(Q, F, dims, mats)


def specialize(V: QuiverRep, point) -> QuiverRep:
    """Evaluate every arrow matrix of a representation over k(x_1..x_d)."""
    if not V.field.is_function_field:
        raise TypeError("specialize needs a representation over a function field")
    base = V.field.base
    mats = {aid: m.map_entries(lambda x: evaluate(x, point), base) for aid, m in V.mats.items()}
    return QuiverRep(V.quiver, base, V.dims, mats)


# -- Hom and Ext ---------------------------------------------------------------

class _Layout:
    # index bookkeeping for the intertwiner-defect map
    def __init__(self, V: QuiverRep, W: QuiverRep):
        Q = V.quiver
        self.V, self.W = V, W
        self.src_off = []
        o = 0
        for i in range(Q.n):
            self.src_off.append(o)
            o += W.dims[i] * V.dims[i]
        self.nsrc = o
        self.tgt_off = {}
        o = 0
        for a in Q.arrows:
            self.tgt_off[a.id] = o
            o += W.dims[Q.h(a)] * V.dims[Q.t(a)]
        self.ntgt = o

    def var(self, i, r, c):
        return self.src_off[i] + r * self.V.dims[i] + c


def defect_rows(V: QuiverRep, W: QuiverRep):
    """Sparse rows of the map whose kernel is Hom(V, W), plus its layout."""
    Q = V.quiver
    lay = _Layout(V, W)
    rows = []
    for a in Q.arrows:
        t, h = Q.t(a), Q.h(a)
        Va, Wa = V[a.id], W[a.id]
        for r in range(W.dims[h]):
            for c in range(V.dims[t]):
                row = {}
                for k in range(V.dims[h]):
                    x = Va.rows[k][c]
                    if x:
                        j = lay.var(h, r, k)
                        row[j] = row.get(j, 0) + x
                for k in range(W.dims[t]):
                    x = Wa.rows[r][k]
                    if x:
                        j = lay.var(t, k, c)
                        row[j] = row.get(j, 0) - x
                rows.append({j: x for j, x in row.items() if x})
    return rows, lay


def _unflatten_vertex_maps(lay: _Layout, vec: dict):
    V, W = lay.V, lay.W
    F = V.field
    out = []
    for i in range(V.quiver.n):
        m = Matrix.zeros(F, W.dims[i], V.dims[i])
        for r in range(W.dims[i]):
            for c in range(V.dims[i]):
                x = vec.get(lay.var(i, r, c))
                if x:
                    m.rows[r][c] = x
        out.append(m)
    return tuple(out)


@dataclass(frozen=True)
class HomSpace:
    basis: tuple
    source: QuiverRep
    target: QuiverRep

    @property
    def dim(self):
        return len(self.basis)


class ExtSpace:
    """Ext^1(V, W) as a quotient of arrow-wise maps V_t(a) -> W_h(a)."""

    def __init__(self, V: QuiverRep, W: QuiverRep):
        _same_setting(V, W)
        rows, lay = defect_rows(V, W)
        self.V, self.W, self.layout = V, W, lay
        cols = [dict() for _ in range(lay.nsrc)]
        for r, row in enumerate(rows):
            for c, x in row.items():
                cols[c][r] = x
        self._quot = Quotient(field=V.field, nrows=lay.ntgt, columns=cols)
        self.representatives = tuple(self.cochain_from_vector(v) for v in self._quot.representatives)

    @property
    def dim(self):
        return self._quot.dim

    @property
    def defect_rank(self):
        return self._quot.image_rank

    def vector_from_cochain(self, cochain) -> dict:
        Q = self.V.quiver
        out = {}
        for a in Q.arrows:
            m = cochain[a.id]
            off = self.layout.tgt_off[a.id]
            for r, line in enumerate(m.rows):
                for c, x in enumerate(line):
                    if x:
                        out[off + r * m.ncols + c] = x
        return out

    def cochain_from_vector(self, vec) -> dict:
        Q = self.V.quiver
        F = self.V.field
        if not isinstance(vec, dict):
            vec = {i: x for i, x in enumerate(vec) if x}
        out = {}
        for a in Q.arrows:
            r_n, c_n = self.W.dims[Q.h(a)], self.V.dims[Q.t(a)]
            off = self.layout.tgt_off[a.id]
            m = Matrix.zeros(F, r_n, c_n)
            for r in range(r_n):
                for c in range(c_n):
                    x = vec.get(off + r * c_n + c)
                    if x:
                        m.rows[r][c] = x
            out[a.id] = m
        return out

    def coords(self, cochain) -> list:
        """Coordinates of a cochain's class in the representative basis."""
        return self._quot.coords(self.vector_from_cochain(cochain))

    def cochain(self, coords) -> dict:
        return self.cochain_from_vector(self._quot.lift(coords))


def hom_space(V: QuiverRep, W: QuiverRep) -> HomSpace:
    _same_setting(V, W)
    rows, lay = defect_rows(V, W)
    ker = kernel_rows(V.field, rows, lay.nsrc)
    return HomSpace(tuple(_unflatten_vertex_maps(lay, v) for v in ker), V, W)


def ext_space(V: QuiverRep, W: QuiverRep) -> ExtSpace:
    return ExtSpace(V, W)


def hom_ext_dims(V: QuiverRep, W: QuiverRep):
    """(dim Hom, dim Ext^1) from a single rank computation."""
    _same_setting(V, W)
    rows, lay = defect_rows(V, W)
    r = rank_rows(V.field, rows, lay.nsrc)
    return lay.nsrc - r, lay.ntgt - r


def is_intertwiner(f, V: QuiverRep, W: QuiverRep) -> bool:
    Q = V.quiver
    return all(f[Q.h(a)] @ V[a.id] == W[a.id] @ f[Q.t(a)] for a in Q.arrows)


def end_space(V: QuiverRep) -> HomSpace:
    return hom_space(V, V)


def is_schur(V: QuiverRep) -> bool:
    return hom_ext_dims(V, V)[0] == 1


def perp_check(W: QuiverRep, V: QuiverRep) -> bool:
    h, e = hom_ext_dims(W, V)
    return h == 0 and e == 0


def negative_multiple(vec, lam):
    """The rational c < 0 with vec = c * lam, or None."""
    if not any(lam):
        return None
    c = None
    for v, l in zip(vec, lam):
        if l == 0:
            if v != 0:
                return None
            continue
        q = Fraction(v, l)
        if c is None:
            c = q
        elif q != c:
            return None
    return c if c is not None and c < 0 else None


def semistable_witness_check(W: QuiverRep, V: QuiverRep, lam) -> bool:
    """Does W certify semistability of V for the weight lam?"""
    if sum(l * d for l, d in zip(lam, V.dims)) != 0:
        raise WeightNotOrthogonal(f"lambda . dim V = {sum(l * d for l, d in zip(lam, V.dims))}")
    if not any(W.dims):
        return False
    if negative_multiple(codim_vector(W.quiver, W.dims), lam) is None:
        return False
    return perp_check(W, V)


# -- stability over finite fields -------------------------------------------

def subspaces(field: Field, n: int):
    """All subspaces of field^n as tuples of RREF rows, by dimension then lex."""
    q = field.p
    out = []
    for k in range(n + 1):
        batch = []
        for piv in combinations(range(n), k):
            free = [(r, c) for r in range(k) for c in range(piv[r] + 1, n) if c not in piv]
            for vals in product(range(q), repeat=len(free)):
                rows = [[0] * n for _ in range(k)]
                for r, c in enumerate(piv):
                    rows[r][c] = 1
                for (r, c), v in zip(free, vals):
                    rows[r][c] = v
                batch.append(tuple(tuple(row) for row in rows))
        batch.sort()
        out.extend(batch)
    return out


def _is_subrep(V: QuiverRep, U) -> bool:
    Q = V.quiver
    F = V.field
    for a in Q.arrows:
        src, dst = U[Q.t(a)], U[Q.h(a)]
        if not src:
            continue
        ech = Echelon(F, V.dims[Q.h(a)])
        for row in dst:
            ech.add({j: F(x) for j, x in enumerate(row) if x})
        M = V[a.id]
        for u in src:
            img = M.apply([F(x) for x in u])
            if not ech.contains({j: x for j, x in enumerate(img) if x}):
                return False
    return True


def stability_bruteforce(V: QuiverRep, lam, budget: int | None = None) -> str:
    """Classify V as 'stable', 'strictly_semistable' or 'unstable' for lam.

    Semistable means lam.beta >= lam.alpha for every proper nonzero
    subrepresentation of dimension beta; stable means strict inequality.
    """
    F = V.field
    if F.kind != "prime_field":
        raise NotFiniteField("exhaustive stability needs a prime field")
    if budget is None:
        budget = enumeration_budget()
    cost = F.p ** sum(V.dims)
    if cost > budget:
        raise BudgetExceeded(f"enumeration cost {cost} exceeds budget {budget}")
    alpha = sum(l * d for l, d in zip(lam, V.dims))
    per_vertex = [subspaces(F, d) for d in V.dims]
    candidates = sorted(product(*per_vertex),
                        key=lambda U: (sum(len(s) for s in U), U))
    equal = False
    for U in candidates:
        dims = [len(s) for s in U]
        if sum(dims) == 0 or tuple(dims) == V.dims:
            continue
        if not _is_subrep(V, U):
            continue
        beta = sum(l * d for l, d in zip(lam, dims))
        if beta < alpha:
            return "unstable"
        if beta == alpha:
            equal = True
    return "strictly_semistable" if equal else "stable"


def euler_identity_holds(V: QuiverRep, W: QuiverRep) -> bool:
    h, e = hom_ext_dims(V, W)
    return h - e == euler_form(V.quiver, V.dims, W.dims)
