"""Exact linear algebra over any field descriptor.

Matrices act on column vectors.  Internally every routine funnels into a
sparse incremental row-echelon engine (rows as ``{column: value}`` dicts);
reduced row-echelon forms are unique, so every public result is canonical
whatever order the engine eliminates in.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from heapq import heapify, heappop, heappush
from math import lcm as _ilcm

from .errors import ShapeMismatch
from .fields import Field, RatFunc, canonicalize
from .polys import Poly, int_divexact, int_mul, int_sub, poly_gcd


class Matrix:
    """Dense matrix with entries in a fixed field."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, rows, ncols: int | None = None):
        self.field = field
        self.rows = [[field(x) for x in r] for r in rows]
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        self.ncols = ncols
        for r in self.rows:
            if len(r) != ncols:
                raise ShapeMismatch("ragged matrix rows")

    @classmethod
    def zeros(cls, field, nrows, ncols):
        z = field.zero()
        return cls(field, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero(), field.one()
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_sparse(cls, field, rows, ncols):
        z = field.zero()
        dense = []
        for r in rows:
            line = [z] * ncols
            for c, v in r.items():
                line[c] = v
            dense.append(line)
        return cls(field, dense, ncols)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def column(self, j):
        return [r[j] for r in self.rows]

    @property
    def T(self):
        return Matrix(self.field, [list(c) for c in zip(*self.rows)] if self.nrows else [], self.nrows)

    def sparse_rows(self):
        return [{j: x for j, x in enumerate(r) if x} for r in self.rows]

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ShapeMismatch(f"{self.shape} @ {other.shape}")
            z = self.field.zero()
            cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
            out = []
            for r in self.rows:
                nz = [(k, a) for k, a in enumerate(r) if a]
                line = []
                for col in cols:
                    s = z
                    for k, a in nz:
                        b = col[k]
                        if b:
                            s = s + a * b
                    line.append(s)
                out.append(line)
            return Matrix(self.field, out, other.ncols)
        return self.apply(other)

    def apply(self, v):
        if len(v) != self.ncols:
            raise ShapeMismatch(f"vector of length {len(v)} for {self.shape} matrix")
        z = self.field.zero()
        out = []
        for r in self.rows:
            s = z
            for a, b in zip(r, v):
                if a and b:
                    s = s + a * b
            out.append(s)
        return out

    def __add__(self, other):
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        return Matrix(self.field, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other):
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} - {other.shape}")
        return Matrix(self.field, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self):
        return Matrix(self.field, [[-a for a in r] for r in self.rows], self.ncols)

    def scale(self, c):
        return Matrix(self.field, [[a * c for a in r] for r in self.rows], self.ncols)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, tuple(tuple(r) for r in self.rows)))

    def is_zero(self):
        return not any(x for r in self.rows for x in r)

    def map_entries(self, fn, field=None):
        field = field or self.field
        return Matrix(field, [[fn(x) for x in r] for r in self.rows], self.ncols)

    def to_strings(self):
        return [[self.field.format(x) for x in r] for r in self.rows]

    def __repr__(self):
        return f"Matrix({self.to_strings()})"


def block_matrix(field, blocks):
    """Assemble a matrix from a grid of blocks (``None`` means zero)."""
    heights = []
    widths = []
    for bi, brow in enumerate(blocks):
        for bj, b in enumerate(brow):
            if b is None:
                continue
            if len(heights) <= bi:
                heights.extend([None] * (bi + 1 - len(heights)))
            if len(widths) <= bj:
                widths.extend([None] * (bj + 1 - len(widths)))
            heights[bi] = b.nrows
            widths[bj] = b.ncols
    if None in heights or None in widths or len(heights) != len(blocks):
        raise ShapeMismatch("cannot infer block sizes")
    z = field.zero()
    rows = []
    for bi, brow in enumerate(blocks):
        for i in range(heights[bi]):
            line = []
            for bj in range(len(widths)):
                b = brow[bj] if bj < len(brow) else None
                line.extend(b.rows[i] if b is not None else [z] * widths[bj])
            rows.append(line)
    return Matrix(field, rows, sum(widths))


# -- the elimination engine ---------------------------------------------------

def _clear_denominators(row: dict, field: Field) -> dict:
    # function fields only: scale a row to polynomial entries
    den = None
    for x in row.values():
        if not x.den.is_one():
            den = x.den if den is None else den * x.den.divexact(poly_gcd(den, x.den))
    if den is None:
        return row
    scale = RatFunc._raw(field, den, field.one().den)
    return {c: x * scale for c, x in row.items()}


class Echelon:
    """Incrementally maintained row-echelon basis of a row space.

    ``pivots[c]`` is a row whose first nonzero entry sits in column ``c``
    and equals 1.  Rows are added by reducing against the existing pivots.
    """

    __slots__ = ("field", "ncols", "pivots", "_clear")

    def __init__(self, field: Field, ncols: int):
        self.field = field
        self.ncols = ncols
        self.pivots: dict = {}
        self._clear = field.is_function_field

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        v = dict(row)
        piv = self.pivots
        heap = [c for c in v if c in piv]
        heapify(heap)
        while heap:
            c = heappop(heap)
            a = v.get(c)
            if a is None:
                continue
            for k, x in piv[c].items():
                y = v.get(k)
                if y is None:
                    v[k] = -(a * x)
                    if k in piv:
                        heappush(heap, k)
                else:
                    y = y - a * x
                    if y:
                        v[k] = y
                    else:
                        del v[k]
        return v

    def add(self, row: dict) -> int | None:
        """Insert a row; returns its new pivot column, or None if dependent."""
        if self._clear and row:
            row = _clear_denominators(row, self.field)
        v = self.reduce(row)
        if not v:
            return None
        lead = min(v)
        inv = 1 / v[lead]
        if inv != 1:
            v = {k: x * inv for k, x in v.items()}
        self.pivots[lead] = v
        return lead

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def rref(self):
        """Fully reduced rows, sorted by pivot column."""
        cols = sorted(self.pivots)
        done: dict = {}
        for c in reversed(cols):
            row = dict(self.pivots[c])
            for k in sorted(k for k in row if k in done and k != c):
                a = row.get(k)
                if a is None:
                    continue
                for j, x in done[k].items():
                    y = row.get(j)
                    if y is None:
                        row[j] = -(a * x)
                    else:
                        y = y - a * x
                        if y:
                            row[j] = y
                        else:
                            del row[j]
            done[c] = row
        self.pivots = done
        return [done[c] for c in cols], cols


class _PolyOps:
    """Coefficient arithmetic for the Bareiss loop over ``Poly`` entries."""

    def __init__(self, field):
        self.zero = Poly(field.base, field.ngens)
        self.one = Poly.const(field.base, field.ngens, 1)

    def lift(self, row):
        return {c: x.num for c, x in row.items()}

    @staticmethod
    def is_one(p):
        return p.is_one()

    mul = staticmethod(lambda a, b: a * b)
    sub = staticmethod(lambda a, b: a - b)
    div = staticmethod(lambda a, b: a.divexact(b))

    def back(self, p):
        return p


class _IntOps:
    """Same loop over integer-coefficient dicts; Fraction arithmetic dominates otherwise."""

    def __init__(self, field):
        self.field = field
        self.zero = {}
        self.one = {(0,) * field.ngens: 1}

    def lift(self, row):
        den = 1
        for x in row.values():
            for c in x.num.terms.values():
                den = _ilcm(den, c.denominator)
        return {c: {e: int(v * den) for e, v in x.num.terms.items()} for c, x in row.items()}

    def is_one(self, p):
        return p == self.one

    mul = staticmethod(int_mul)
    sub = staticmethod(int_sub)
    div = staticmethod(int_divexact)

    def back(self, p):
        return Poly(self.field.base, self.field.ngens, {e: Fraction(c) for e, c in p.items()})


def _fraction_free_rref(field, rows, ncols, normalize=True):
    """Bareiss elimination over the polynomial ring of a function field.

    Rows are first scaled to polynomial entries.  Each update
    ``(p*a_ij - a_ic*a_rj) / prev`` divides exactly, so no gcd is taken
    until the final division by the pivot values.  With ``normalize`` off
    only the rank is wanted and rows above the pivot are left alone.
    """
    ops = _IntOps(field) if field.base.kind == "rationals" else _PolyOps(field)
    zero, mul, sub, div, is_one = ops.zero, ops.mul, ops.sub, ops.div, ops.is_one
    A = []
    for r in rows:
        if not r:
            continue
        r = ops.lift(_clear_denominators(r, field))
        line = [zero] * ncols
        for c, x in r.items():
            line[c] = x
        A.append(line)
    m = len(A)
    prev = ops.one
    rank = 0
    pivots = []
    for c in range(ncols):
        if rank == m:
            break
        i = next((i for i in range(rank, m) if A[i][c]), None)
        if i is None:
            continue
        A[rank], A[i] = A[i], A[rank]
        prow = A[rank]
        p = prow[c]
        for i in range(0 if normalize else rank + 1, m):
            if i == rank:
                continue
            row = A[i]
            f = row[c]
            if not f and is_one(prev):
                if not is_one(p):
                    A[i] = [mul(x, p) if x else zero for x in row]
                continue
            new = []
            for j in range(ncols):
                x = row[j]
                y = prow[j]
                t = mul(x, p) if x else zero
                if f and y:
                    t = sub(t, mul(f, y))
                if t and not is_one(prev):
                    t = div(t, prev)
                new.append(t)
            A[i] = new
        prev = p
        pivots.append(c)
        rank += 1
    if not normalize:
        return [None] * rank, pivots
    out = []
    for k, c in enumerate(pivots):
        row = [ops.back(x) if x else None for x in A[k]]
        d = row[c]
        out.append({j: canonicalize(x, d, field) for j, x in enumerate(row) if x})
    return out, pivots


def _echelon_of(field, rows, ncols) -> Echelon:
    e = Echelon(field, ncols)
    if field.is_function_field:
        red, pivots = _fraction_free_rref(field, rows, ncols)
        e.pivots = dict(zip(pivots, red))
        return e
    for r in rows:
        if r:
            e.add(r)
    return e


def rank_rows(field, rows, ncols) -> int:
    if field.is_function_field:
        return len(_fraction_free_rref(field, rows, ncols, normalize=False)[1])
    return _echelon_of(field, rows, ncols).rank


def rref_rows(field, rows, ncols):
    return _echelon_of(field, rows, ncols).rref()


def kernel_rows(field, rows, ncols):
    """Canonical (RREF) basis of the right kernel, as sparse dicts."""
    r, pivots = rref_rows(field, rows, ncols)
    pivset = set(pivots)
    one = field.one()
    vecs = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = {f: one}
        for row, p in zip(r, pivots):
            x = row.get(f)
            if x:
                v[p] = -x
        vecs.append(v)
    out, _ = rref_rows(field, vecs, ncols)
    return out


def _dense(field, row: dict, n):
    z = field.zero()
    out = [z] * n
    for c, x in row.items():
        out[c] = x
    return out


def _check_field(M):
    if not isinstance(M, Matrix):
        raise TypeError("expected a Matrix")


# -- public operations ----------------------------------------------------------

@dataclass(frozen=True)
class SubspaceBasis:
    """A subspace of ``field^ambient_dim`` given by its RREF basis."""

    field: Field
    ambient_dim: int
    vectors: tuple

    @property
    def dim(self):
        return len(self.vectors)

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def pivots(self):
        return [next(i for i, x in enumerate(v) if x) for v in self.vectors]

    def contains(self, v) -> bool:
        e = _echelon_of(self.field, [{i: x for i, x in enumerate(w) if x} for w in self.vectors],
                        self.ambient_dim)
        return e.contains({i: x for i, x in enumerate(v) if x})

    def coordinates(self, v):
        """Coefficients expressing v in this basis, or None if v is outside."""
        coords = [v[p] for p in self.pivots()]
        z = self.field.zero()
        recon = [z] * self.ambient_dim
        for c, w in zip(coords, self.vectors):
            if c:
                recon = [a + c * b for a, b in zip(recon, w)]
        if list(recon) != [self.field(x) for x in v]:
            return None
        return coords

    def as_matrix(self) -> Matrix:
        """Basis vectors as the columns of a matrix."""
        if not self.vectors:
            return Matrix(self.field, [[] for _ in range(self.ambient_dim)], 0)
        return Matrix(self.field, [list(c) for c in zip(*self.vectors)], len(self.vectors))


def _basis(field, rows, n):
    return SubspaceBasis(field, n, tuple(tuple(_dense(field, r, n)) for r in rows))


def rank(M: Matrix) -> int:
    _check_field(M)
    if M.nrows > M.ncols:
        return rank_rows(M.field, M.T.sparse_rows(), M.nrows)
    return rank_rows(M.field, M.sparse_rows(), M.ncols)


def rref(M: Matrix):
    """Reduced row-echelon form and pivot columns."""
    rows, piv = rref_rows(M.field, M.sparse_rows(), M.ncols)
    z = [_dense(M.field, r, M.ncols) for r in rows]
    z.extend([[M.field.zero()] * M.ncols for _ in range(M.nrows - len(rows))])
    return Matrix(M.field, z, M.ncols), piv


def kernel_basis(M: Matrix) -> SubspaceBasis:
    _check_field(M)
    return _basis(M.field, kernel_rows(M.field, M.sparse_rows(), M.ncols), M.ncols)


def image_basis(M: Matrix) -> SubspaceBasis:
    """Canonical basis of the column space."""
    rows, _ = rref_rows(M.field, M.T.sparse_rows(), M.nrows)
    return _basis(M.field, rows, M.nrows)


def solve(M: Matrix, b):
    """Canonical particular solution of M v = b (free variables zero), or None."""
    _check_field(M)
    if len(b) != M.nrows:
        raise ShapeMismatch(f"right-hand side of length {len(b)} for {M.shape} matrix")
    n = M.ncols
    field = M.field
    aug = []
    for r, bi in zip(M.rows, b):
        row = {j: x for j, x in enumerate(r) if x}
        bi = field(bi)
        if bi:
            row[n] = bi
        aug.append(row)
    rows, pivots = rref_rows(field, aug, n + 1)
    if pivots and pivots[-1] == n:
        return None
    v = [field.zero()] * n
    for row, p in zip(rows, pivots):
        x = row.get(n)
        if x:
            v[p] = x
    return v


def cokernel_basis(M: Matrix) -> SubspaceBasis:
    """Standard unit vectors spanning a complement of the column space."""
    return Quotient(M).representatives


class Quotient:
    """``field^nrows / image(M)`` with canonical representatives.

    Representatives are the unit vectors at the non-pivot positions of the
    RREF of the image; :meth:`coords` projects any vector onto them.
    """

    def __init__(self, M: Matrix | None = None, *, field=None, nrows=None, columns=None):
        if M is not None:
            field, nrows, columns = M.field, M.nrows, M.T.sparse_rows()
        self.field = field
        self.ambient_dim = nrows
        self._image = _echelon_of(field, columns, nrows)
        self._image.rref()
        piv = set(self._image.pivots)
        self.free = [i for i in range(nrows) if i not in piv]
        one, z = field.one(), field.zero()
        vecs = tuple(tuple(one if k == i else z for k in range(nrows)) for i in self.free)
        self.representatives = SubspaceBasis(field, nrows, vecs)

    @property
    def dim(self):
        return len(self.free)

    @property
    def image_rank(self):
        return self._image.rank

    def coords(self, v) -> list:
        row = v if isinstance(v, dict) else {i: x for i, x in enumerate(v) if x}
        red = self._image.reduce(row)
        z = self.field.zero()
        return [red.get(i, z) for i in self.free]

    def lift(self, coords) -> list:
        z = self.field.zero()
        out = [z] * self.ambient_dim
        for i, c in zip(self.free, coords):
            out[i] = self.field(c)
        return out

    def in_image(self, v) -> bool:
        return not any(self.coords(v))

