"""Hochschild cohomology, by two independent routes.

* Finite-dimensional graded algebras: the cochain complex
  C^n(B, M)_j = {n-linear maps B^n -> M of internal degree j} with

    (df)(a_0..a_n) = (-1)^{|a_0||f|} a_0 f(a_1..a_n)
                     + sum_i (-1)^i f(.., a_{i-1} a_i, ..)
                     + (-1)^{n+1} f(a_0..a_{n-1}) a_n.

  When the unit is a basis vector the normalized subcomplex (cochains that
  vanish as soon as one argument is the unit) is used; it is
  quasi-isomorphic to the full complex and much smaller.

* Function fields L = k(x_1..x_d): the diagonal ideal of L (x) L is
  generated by the regular sequence x_i (x) 1 - 1 (x) x_i, so HH^*(L, M) is
  the cohomology of the Koszul complex of the commuting operators
  delta_i = (left x_i) - (right x_i) acting on M.  The infinite-dimensional
  algebra L itself never enters a bar complex.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations, product
from math import comb

from .config import max_arity
from .errors import (
    ArityBudgetExceeded,
    AxiomViolation,
    NonCommutingOperators,
    NotADerivation,
)
from .fields import QQ, Field
from .linalg import Matrix, kernel_rows, rank_rows, rref_rows, solve


def _sparse(d):
    return {k: v for k, v in d.items() if v}


def _add_into(acc: dict, key, value):
    v = acc.get(key)
    v = value if v is None else v + value
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


# -- algebras and modules ----------------------------------------------------

class GradedAlgebra:
    """Finite-dimensional graded algebra given by structure constants.

    ``mult[(i, j)]`` is a dict ``{k: c}`` meaning e_i e_j = sum c e_k.
    ``differential`` (optional) maps i to a dict giving d(e_i).
    """

    def __init__(self, names, degrees, mult, unit, field: Field = QQ, differential=None):
        self.names = list(names)
        self.degrees = [int(d) for d in degrees]
        self.field = field
        self.dim = len(self.names)
        self.mult = {}
        for (i, j), out in mult.items():
            row = _sparse({k: field(c) for k, c in out.items()})
            if row:
                self.mult[(i, j)] = row
        self.unit = _sparse({k: field(c) for k, c in unit.items()})
        self.differential = None
        if differential:
            diff = {i: _sparse({k: field(c) for k, c in out.items()}) for i, out in differential.items()}
            diff = {i: v for i, v in diff.items() if v}
            self.differential = diff or None

    def __repr__(self):
        return f"GradedAlgebra({self.names})"

    @property
    def unit_index(self):
        """Index of the unit if it is a basis vector, else None."""
        if len(self.unit) == 1:
            (k, c), = self.unit.items()
            if c == 1:
                return k
        return None

    def product(self, i, j) -> dict:
        return self.mult.get((i, j), {})

    def mul(self, u: dict, v: dict) -> dict:
        out = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self.product(i, j).items():
                    _add_into(out, k, a * b * c)
        return out

    def d(self, u: dict) -> dict:
        out = {}
        if not self.differential:
            return out
        for i, a in u.items():
            for k, c in self.differential.get(i, {}).items():
                _add_into(out, k, a * c)
        return out

    def degree_of(self, u: dict):
        degs = {self.degrees[i] for i in u}
        return degs.pop() if len(degs) == 1 else None

    def validate(self):
        """Raise AxiomViolation unless this is a (DG) graded algebra."""
        n = self.dim
        basis = [{i: self.field.one()} for i in range(n)]
        for (i, j), out in self.mult.items():
            for k in out:
                if self.degrees[k] != self.degrees[i] + self.degrees[j]:
                    raise AxiomViolation(f"e_{i} e_{j} has a component of the wrong degree")
        for i in range(n):
            if self.mul(self.unit, basis[i]) != basis[i] or self.mul(basis[i], self.unit) != basis[i]:
                raise AxiomViolation(f"unit law fails on {self.names[i]}")
        for i, j, k in product(range(n), repeat=3):
            lhs = self.mul(self.mul(basis[i], basis[j]), basis[k])
            rhs = self.mul(basis[i], self.mul(basis[j], basis[k]))
            if lhs != rhs:
                raise AxiomViolation(f"associativity fails on ({self.names[i]}, {self.names[j]}, {self.names[k]})")
        if self.differential:
            for i, out in self.differential.items():
                if any(self.degrees[k] != self.degrees[i] + 1 for k in out):
                    raise AxiomViolation(f"d({self.names[i]}) has the wrong degree")
                if self.d(out):
                    raise AxiomViolation(f"d^2({self.names[i]}) != 0")
            for i, j in product(range(n), repeat=2):
                lhs = self.d(self.product(i, j))
                rhs = dict(self.mul(self.d(basis[i]), basis[j]))
                sign = -1 if self.degrees[i] % 2 else 1
                for k, c in self.mul(basis[i], self.d(basis[j])).items():
                    _add_into(rhs, k, sign * c)
                if lhs != rhs:
                    raise AxiomViolation(f"Leibniz rule fails on ({self.names[i]}, {self.names[j]})")
        return True

    def is_concentrated_in_degree_zero(self):
        return all(d == 0 for d in self.degrees)

    # -- standard examples ----------------------------------------------------
    @classmethod
    def ground(cls, field: Field = QQ):
        return cls(["1"], [0], {(0, 0): {0: 1}}, {0: 1}, field)

    @classmethod
    def truncated_polynomial(cls, k: int, field: Field = QQ, degree: int = 0):
        """k[t]/(t^k) with t in the given internal degree."""
        names = ["1"] + [f"t^{i}" if i > 1 else "t" for i in range(1, k)]
        mult = {(i, j): {i + j: 1} for i in range(k) for j in range(k) if i + j < k}
        return cls(names, [i * degree for i in range(k)], mult, {0: 1}, field)

    @classmethod
    def dual_numbers(cls, field: Field = QQ):
        return cls.truncated_polynomial(2, field)

    @classmethod
    def matrix_algebra(cls, n: int, field: Field = QQ):
        idx = {(r, c): r * n + c for r in range(n) for c in range(n)}
        names = [f"E{r + 1}{c + 1}" for r in range(n) for c in range(n)]
        mult = {}
        for (r, c), i in idx.items():
            for (r2, c2), j in idx.items():
                if c == r2:
                    mult[(i, j)] = {idx[(r, c2)]: 1}
        unit = {idx[(r, r)]: 1 for r in range(n)}
        return cls(names, [0] * (n * n), mult, unit, field)

    @classmethod
    def upper_triangular(cls, field: Field = QQ):
        """Upper triangular 2x2 matrices, basis E11, E12, E22."""
        names = ["E11", "E12", "E22"]
        mult = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 2): {1: 1}, (2, 2): {2: 1}}
        return cls(names, [0, 0, 0], mult, {0: 1, 2: 1}, field)

    @classmethod
    def unital_basis(cls, A: "GradedAlgebra") -> "GradedAlgebra":
        """An isomorphic copy whose basis starts with the unit."""
        if A.unit_index is not None:
            return A
        F = A.field
        rows = [{i: c for i, c in A.unit.items()}]
        for i in range(A.dim):
            rows.append({i: F.one()})
        # keep the first rows that are linearly independent, unit first
        chosen = []
        for r in rows:
            trial = chosen + [r]
            if rank_rows(F, trial, A.dim) == len(trial):
                chosen = trial
        P = Matrix.from_sparse(F, chosen, A.dim).T  # columns = new basis
        inv = _inverse(P)
        newmult = {}
        for a in range(A.dim):
            for b in range(A.dim):
                prod = A.mul(_col(P, a), _col(P, b))
                coords = inv.apply([prod.get(k, F.zero()) for k in range(A.dim)])
                newmult[(a, b)] = {k: c for k, c in enumerate(coords) if c}
        names = ["1"] + [n for n, r in zip(A.names, chosen[1:])]
        degrees = [A.degree_of(_col(P, a)) or 0 for a in range(A.dim)]
        return cls(names, degrees, newmult, {0: 1}, F)


def _col(P: Matrix, j) -> dict:
    return {i: P.rows[i][j] for i in range(P.nrows) if P.rows[i][j]}


def _inverse(P: Matrix) -> Matrix:
    n = P.nrows
    cols = []
    for j in range(n):
        e = [P.field.one() if i == j else P.field.zero() for i in range(n)]
        cols.append(solve(P, e))
    return Matrix(P.field, [list(r) for r in zip(*cols)], n)


class GradedModule:
    """Left module: ``action[(a, m)] = {m': c}`` for basis elements."""

    def __init__(self, algebra: GradedAlgebra, names, degrees, action):
        self.algebra = algebra
        self.names = list(names)
        self.degrees = [int(d) for d in degrees]
        self.dim = len(self.names)
        F = algebra.field
        self.action = {}
        for key, out in action.items():
            row = _sparse({k: F(c) for k, c in out.items()})
            if row:
                self.action[key] = row

    def act(self, a, m) -> dict:
        return self.action.get((a, m), {})

    def act_vec(self, u: dict, v: dict) -> dict:
        out = {}
        for a, x in u.items():
            for m, y in v.items():
                for k, c in self.act(a, m).items():
                    _add_into(out, k, x * y * c)
        return out

    def validate(self):
        B = self.algebra
        one = B.field.one()
        for m in range(self.dim):
            if self.act_vec(B.unit, {m: one}) != {m: one}:
                raise AxiomViolation(f"unit does not act as identity on {self.names[m]}")
        for a, b, m in product(range(B.dim), range(B.dim), range(self.dim)):
            lhs = self.act_vec(B.product(a, b), {m: one})
            rhs = self.act_vec({a: one}, self.act(b, m))
            if lhs != rhs:
                raise AxiomViolation("module associativity fails")
        return True

    @classmethod
    def regular(cls, B: GradedAlgebra):
        return cls(B, B.names, B.degrees, dict(B.mult))

    @classmethod
    def from_augmentation(cls, B: GradedAlgebra, aug, degree=0):
        """One-dimensional module on which b acts by the scalar aug[b]."""
        return cls(B, ["k"], [degree], {(a, 0): {0: aug[a]} for a in range(B.dim) if aug[a]})

    @classmethod
    def column(cls, B: GradedAlgebra, n: int):
        """The column module k^n of the n x n matrix algebra."""
        action = {}
        for r in range(n):
            for c in range(n):
                action[(r * n + c, c)] = {r: 1}
        return cls(B, [f"v{i + 1}" for i in range(n)], [0] * n, action)


class GradedBimodule:
    """``left[(a, m)]`` and ``right[(m, a)]`` are dicts ``{m': c}``."""

    def __init__(self, algebra: GradedAlgebra, names, degrees, left, right):
        self.algebra = algebra
        self.names = list(names)
        self.degrees = [int(d) for d in degrees]
        self.dim = len(self.names)
        F = algebra.field
        self.left = {}
        for key, out in left.items():
            row = _sparse({k: F(c) for k, c in out.items()})
            if row:
                self.left[key] = row
        self.right = {}
        for key, out in right.items():
            row = _sparse({k: F(c) for k, c in out.items()})
            if row:
                self.right[key] = row

    def lact(self, a, m):
        return self.left.get((a, m), {})

    def ract(self, m, a):
        return self.right.get((m, a), {})

    def _lvec(self, u, v):
        out = {}
        for a, x in u.items():
            for m, y in v.items():
                for k, c in self.lact(a, m).items():
                    _add_into(out, k, x * y * c)
        return out

    def _rvec(self, v, u):
        out = {}
        for m, y in v.items():
            for a, x in u.items():
                for k, c in self.ract(m, a).items():
                    _add_into(out, k, x * y * c)
        return out

    def validate(self):
        B = self.algebra
        one = B.field.one()
        for (a, m), out in self.left.items():
            if any(self.degrees[k] != B.degrees[a] + self.degrees[m] for k in out):
                raise AxiomViolation("left action does not respect degrees")
        for (m, a), out in self.right.items():
            if any(self.degrees[k] != B.degrees[a] + self.degrees[m] for k in out):
                raise AxiomViolation("right action does not respect degrees")
        for m in range(self.dim):
            e = {m: one}
            if self._lvec(B.unit, e) != e or self._rvec(e, B.unit) != e:
                raise AxiomViolation("unit does not act as identity")
        for a, b, m in product(range(B.dim), range(B.dim), range(self.dim)):
            e = {m: one}
            ea, eb = {a: one}, {b: one}
            if self._lvec(B.product(a, b), e) != self._lvec(ea, self._lvec(eb, e)):
                raise AxiomViolation("left associativity fails")
            if self._rvec(e, B.product(a, b)) != self._rvec(self._rvec(e, ea), eb):
                raise AxiomViolation("right associativity fails")
            if self._rvec(self._lvec(ea, e), eb) != self._lvec(ea, self._rvec(e, eb)):
                raise AxiomViolation("left and right actions do not commute")
        return True

    @classmethod
    def regular(cls, B: GradedAlgebra):
        left = {k: v for k, v in B.mult.items()}
        right = {(m, a): v for (m, a), v in B.mult.items()}
        return cls(B, B.names, B.degrees, left, right)

    @classmethod
    def from_augmentation(cls, B: GradedAlgebra, aug, degree=0):
        """k with both actions through the augmentation aug (list of scalars)."""
        left = {(a, 0): {0: aug[a]} for a in range(B.dim) if aug[a]}
        right = {(0, a): {0: aug[a]} for a in range(B.dim) if aug[a]}
        return cls(B, ["k"], [degree], left, right)

    @classmethod
    def restricted(cls, A: GradedAlgebra, C: GradedAlgebra, phi):
        """C as an A-bimodule through an algebra map; phi[a] = dict in C."""
        left, right = {}, {}
        for a in range(A.dim):
            for m in range(C.dim):
                l = C.mul(phi[a], {m: C.field.one()})
                r = C.mul({m: C.field.one()}, phi[a])
                if l:
                    left[(a, m)] = l
                if r:
                    right[(m, a)] = r
        return cls(A, C.names, C.degrees, left, right)

    @classmethod
    def hom(cls, M: GradedModule, N: GradedModule):
        """Hom_k(M, N) with (b f)(m) = b f(m) and (f b)(m) = f(b m).

        Basis element (n, m) sends e_m to e_n; no signs are introduced, so
        use this for algebras concentrated in degree 0.
        """
        B = M.algebra
        keys = [(n, m) for n in range(N.dim) for m in range(M.dim)]
        idx = {k: i for i, k in enumerate(keys)}
        names = [f"{N.names[n]}<-{M.names[m]}" for n, m in keys]
        degrees = [N.degrees[n] - M.degrees[m] for n, m in keys]
        left, right = {}, {}
        for a in range(B.dim):
            for (n, m), i in idx.items():
                out = {}
                for n2, c in N.act(a, n).items():
                    _add_into(out, idx[(n2, m)], c)
                if out:
                    left[(a, i)] = out
                # (f b)(e_m') = f(b e_m') has a component on e_n iff b e_m' hits e_m
                out = {}
                for m2 in range(M.dim):
                    c = M.act(a, m2).get(m)
                    if c:
                        _add_into(out, idx[(n, m2)], c)
                if out:
                    right[(i, a)] = out
        return cls(B, names, degrees, left, right)


# -- the bar cochain complex ----------------------------------------------------

@dataclass
class CohomologyReport:
    degree: int
    internal_degree: object
    rank: int
    cochain_dim: int
    rank_d_out: int
    rank_d_in: int
    route: str
    d_squared_zero: bool = True
    _complex: object = dc_field(default=None, repr=False, compare=False)

    def cocycle_basis(self):
        """Kernel of the outgoing differential, as sparse coordinate dicts."""
        return self._complex.cocycles(self.degree, self.internal_degree)

    def as_dict(self):
        return {"n": self.degree, "j": self.internal_degree, "rank": self.rank,
                "cochain_dim": self.cochain_dim, "rank_d_out": self.rank_d_out,
                "rank_d_in": self.rank_d_in, "route": self.route,
                "d_squared_zero": self.d_squared_zero}


def _check_arity(n, budget):
    limit = max_arity() if budget is None else budget
    if n > limit:
        raise ArityBudgetExceeded(f"arity {n} exceeds budget {limit}")


def _check_characteristic(field: Field, n):
    p = field.characteristic
    if p and p <= n:
        raise ValueError(f"characteristic {p} is too small for arity {n}")


def _compose_columns(outer, inner):
    # columns of outer o inner
    out = []
    for col in inner:
        acc = {}
        for k, c in col.items():
            for r, x in outer[k].items():
                _add_into(acc, r, c * x)
        out.append(acc)
    return out


class HochschildComplex:
    """Cochains C^n(B, M)_j with lexicographic (arguments, target) bases."""

    def __init__(self, B: GradedAlgebra, M: GradedBimodule, normalized: bool | None = None):
        if B.differential:
            raise ValueError("the bar complex takes a graded algebra without differential")
        self.B, self.M = B, M
        self.field = B.field
        u = B.unit_index
        if normalized is None:
            normalized = u is not None
        if normalized and u is None:
            raise ValueError("normalized cochains need the unit as a basis vector")
        self.normalized = normalized
        self.args = [i for i in range(B.dim) if not (normalized and i == u)]
        argset = set(self.args)
        self.into = {}
        for (x, y), out in B.mult.items():
            if x in argset and y in argset:
                for k, c in out.items():
                    if k in argset:
                        self.into.setdefault(k, []).append((x, y, c))
        self._bases = {}
        self._diffs = {}

    def basis(self, n, j):
        key = (n, j)
        if key not in self._bases:
            B, M = self.B, self.M
            out = []
            for args in product(self.args, repeat=n):
                s = sum(B.degrees[a] for a in args)
                for m in range(M.dim):
                    if j is None or M.degrees[m] - s == j:
                        out.append((args, m))
            self._bases[key] = (out, {b: i for i, b in enumerate(out)})
        return self._bases[key]

    def differential(self, n, j):
        """Columns of d: C^n_j -> C^{n+1}_j as sparse dicts."""
        key = (n, j)
        if key in self._diffs:
            return self._diffs[key]
        B, M = self.B, self.M
        src, _ = self.basis(n, j)
        _, tgt = self.basis(n + 1, j)
        cols = []
        for args0, m0 in src:
            fdeg = M.degrees[m0] - sum(B.degrees[a] for a in args0)
            acc = {}
            for a0 in self.args:
                sign = -1 if (B.degrees[a0] * fdeg) % 2 else 1
                for m, c in M.lact(a0, m0).items():
                    _add_into(acc, ((a0,) + args0, m), sign * c)
            for i in range(1, n + 1):
                sign = -1 if i % 2 else 1
                for x, y, c in self.into.get(args0[i - 1], ()):
                    _add_into(acc, (args0[:i - 1] + (x, y) + args0[i:], m0), sign * c)
            sign = -1 if (n + 1) % 2 else 1
            for an in self.args:
                for m, c in M.ract(m0, an).items():
                    _add_into(acc, (args0 + (an,), m), sign * c)
            col = {}
            for k, c in acc.items():
                col[tgt[k]] = c
            cols.append(col)
        self._diffs[key] = cols
        return cols

    def dims(self, n, j):
        return len(self.basis(n, j)[0])

    def rank_of_differential(self, n, j):
        if n < 0:
            return 0
        cols = self.differential(n, j)
        return rank_rows(self.field, cols, self.dims(n + 1, j))

    def cocycles(self, n, j):
        cols = self.differential(n, j)
        rows = _transpose(cols, self.dims(n + 1, j))
        return kernel_rows(self.field, rows, self.dims(n, j))

    def is_cocycle(self, vec: dict, n, j) -> bool:
        return not self.apply(vec, n, j)

    def apply(self, vec: dict, n, j) -> dict:
        cols = self.differential(n, j)
        acc = {}
        for k, c in vec.items():
            for r, x in cols[k].items():
                _add_into(acc, r, c * x)
        return acc

    def is_coboundary(self, vec: dict, n, j) -> bool:
        if n == 0:
            return not vec
        cols = self.differential(n - 1, j)
        dim = self.dims(n, j)
        rows = list(cols) + [vec]
        return rank_rows(self.field, rows, dim) == rank_rows(self.field, cols, dim)

    def coboundary_preimage(self, vec: dict, n, j):
        """Some cochain g with d g = vec, or None."""
        if n == 0:
            return {} if not vec else None
        cols = self.differential(n - 1, j)
        rows = _transpose(cols, self.dims(n, j))
        ncols = self.dims(n - 1, j)
        aug = []
        for r, row in enumerate(rows):
            row = dict(row)
            x = vec.get(r)
            if x:
                row[ncols] = x
            aug.append(row)
        red, piv = rref_rows(self.field, aug, ncols + 1)
        if piv and piv[-1] == ncols:
            return None
        return {p: row[ncols] for row, p in zip(red, piv) if row.get(ncols)}

    def d_squared_zero(self, n, j) -> bool:
        if n < 1:
            return True
        return all(not c for c in _compose_columns(self.differential(n, j), self.differential(n - 1, j)))

    def report(self, n, j, verify=True) -> CohomologyReport:
        dim = self.dims(n, j)
        r_out = self.rank_of_differential(n, j)
        r_in = self.rank_of_differential(n - 1, j) if n > 0 else 0
        ok = self.d_squared_zero(n, j) and self.d_squared_zero(n + 1, j) if verify else True
        return CohomologyReport(n, j, dim - r_out - r_in, dim, r_out, r_in,
                                "bar-normalized" if self.normalized else "bar", ok, self)


def _transpose(cols, nrows):
    rows = [dict() for _ in range(nrows)]
    for c, col in enumerate(cols):
        for r, x in col.items():
            rows[r][c] = x
    return rows


def bar_hh(B: GradedAlgebra, M: GradedBimodule, n: int, j=None, budget=None,
           normalized=None) -> CohomologyReport:
    """HH^n(B, M) in internal degree j (all degrees when j is None)."""
    if n < 0:
        raise ValueError("negative degree")
    _check_arity(n + 1, budget)
    _check_characteristic(B.field, n + 1)
    return HochschildComplex(B, M, normalized).report(n, j)


# -- the Koszul route for function fields ---------------------------------------------

class KoszulBimodule:
    """Finite-dimensional L-space with commuting operators delta_1..delta_d."""

    def __init__(self, field: Field, dim: int, deltas, check=True):
        self.field = field
        self.dim = dim
        self.deltas = [d if isinstance(d, Matrix) else Matrix(field, d, dim) for d in deltas]
        for d in self.deltas:
            if d.shape != (dim, dim):
                raise ValueError("delta operators must be square of size dim")
        if check:
            for i, j in combinations(range(len(self.deltas)), 2):
                if self.deltas[i] @ self.deltas[j] != self.deltas[j] @ self.deltas[i]:
                    raise NonCommutingOperators(f"delta_{i + 1} and delta_{j + 1} do not commute")

    @property
    def d(self):
        return len(self.deltas)

    @classmethod
    def symmetric(cls, field: Field, dim: int):
        return cls(field, dim, [Matrix.zeros(field, dim, dim) for _ in range(field.ngens)])

    def is_symmetric(self):
        return all(D.is_zero() for D in self.deltas)


class KoszulComplex:
    def __init__(self, M: KoszulBimodule):
        self.M = M
        self.subsets = [list(combinations(range(M.d), k)) for k in range(M.d + 1)]

    def dims(self, k):
        if k < 0 or k > self.M.d:
            return 0
        return len(self.subsets[k]) * self.M.dim

    def rows(self, k):
        """Sparse rows of the differential C^k -> C^{k+1}."""
        M = self.M
        if k < 0 or k >= M.d:
            return []
        src = {S: i for i, S in enumerate(self.subsets[k])}
        out = []
        for T in self.subsets[k + 1]:
            for r in range(M.dim):
                row = {}
                for pos, i in enumerate(T):
                    S = T[:pos] + T[pos + 1:]
                    base = src[S] * M.dim
                    sign = -1 if pos % 2 else 1
                    for c, x in enumerate(M.deltas[i].rows[r]):
                        if x:
                            _add_into(row, base + c, sign * x)
                out.append(row)
        return out

    def rank(self, k):
        if k < 0 or k >= self.M.d:
            return 0
        return rank_rows(self.M.field, self.rows(k), self.dims(k))

    def cocycles(self, k, _j=None):
        if k >= self.M.d:
            one = self.M.field.one()
            return [{i: one} for i in range(self.dims(k))]
        return kernel_rows(self.M.field, self.rows(k), self.dims(k))

    def apply(self, vec: dict, k) -> dict:
        acc = {}
        for r, row in enumerate(self.rows(k)):
            x = sum((c * vec[i] for i, c in row.items() if i in vec), self.M.field.zero())
            if x:
                acc[r] = x
        return acc


def koszul_hh(M: KoszulBimodule, n: int) -> CohomologyReport:
    if n < 0 or n > M.d:
        raise ValueError(f"Koszul degree {n} outside 0..{M.d}")
    K = KoszulComplex(M)
    dim = K.dims(n)
    r_out, r_in = K.rank(n), K.rank(n - 1)
    return CohomologyReport(n, "all", dim - r_out - r_in, dim, r_out, r_in, "koszul", True, K)


def koszul_ranks(M: KoszulBimodule):
    return [koszul_hh(M, n).rank for n in range(M.d + 1)]


def symmetric_rank_law(dim, d, n):
    return dim * comb(d, n)


def _as_vec(e, field):
    return [field(x) for x in e]


def derivation_check(e, M: KoszulBimodule) -> bool:
    """Degree-one Koszul cocycle condition delta_i(e_j) = delta_j(e_i)."""
    if len(e) != M.d:
        raise ValueError(f"expected {M.d} generator images")
    e = [_as_vec(v, M.field) for v in e]
    for i, j in combinations(range(M.d), 2):
        if M.deltas[i].apply(e[j]) != M.deltas[j].apply(e[i]):
            return False
    return True


def is_inner(e, M: KoszulBimodule):
    """Some m with delta_i(m) = e_i for all i, or None if the class is nonzero."""
    if not derivation_check(e, M):
        raise NotADerivation("generator images fail the derivation condition")
    F = M.field
    stacked = []
    rhs = []
    for D, v in zip(M.deltas, e):
        stacked.extend(D.rows)
        rhs.extend(_as_vec(v, F))
    if not stacked:
        return [F.zero()] * M.dim
    return solve(Matrix(F, stacked, M.dim), rhs)


def inner_certificate(e, M: KoszulBimodule):
    """Ranks showing whether e lies in the image of m -> (delta_i m)_i."""
    F = M.field
    cols = []
    for c in range(M.dim):
        col = {}
        for i, D in enumerate(M.deltas):
            for r in range(M.dim):
                x = D.rows[r][c]
                if x:
                    col[i * M.dim + r] = x
        cols.append(col)
    target = {}
    for i, v in enumerate(e):
        for r, x in enumerate(_as_vec(v, F)):
            if x:
                target[i * M.dim + r] = x
    n = M.d * M.dim
    r0 = rank_rows(F, cols, n)
    r1 = rank_rows(F, cols + [target], n)
    return {"coboundary_rank": r0, "augmented_rank": r1}


# -- vanishing conditions ---------------------------------------------------------------

MODES = {
    # mode: (first arity n, offset c with j = c - n)
    "lift_object": (3, 2),
    "lift_morphism": (2, 1),
    "faithful": (1, 0),
}


@dataclass
class ConditionReport:
    mode: str
    holds: bool
    verified_to: int
    rows: list

    def __bool__(self):
        return self.holds

    def as_dict(self):
        return {"mode": self.mode, "holds": self.holds, "verified_to_arity": self.verified_to,
                "rows": [{"n": n, "j": j, "rank": r} for n, j, r in self.rows]}


def hh_condition(HB: GradedAlgebra, E: GradedBimodule, mode: str, max_n: int | None = None,
                 budget=None) -> ConditionReport:
    """Check HH^n(HB, E)_{c-n} = 0 for n from the mode's start up to max_n."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {sorted(MODES)}")
    start, offset = MODES[mode]
    if max_n is None:
        max_n = max_arity() if budget is None else budget
    _check_arity(max_n, budget)
    _check_characteristic(HB.field, max_n + 1)
    C = HochschildComplex(HB, E)
    rows = []
    for n in range(start, max_n + 1):
        j = offset - n
        rows.append((n, j, C.report(n, j, verify=False).rank))
    return ConditionReport(mode, all(r == 0 for _, _, r in rows), max_n, rows)


# -- Ext through the bar resolution ---------------------------------------------------------

class BarExtComplex:
    """Hom_k(B^n (x) M, N) with the differential of the bar resolution of M."""

    def __init__(self, B: GradedAlgebra, M: GradedModule, N: GradedModule):
        if not B.is_concentrated_in_degree_zero():
            raise ValueError("Ext through the bar resolution needs B in degree 0")
        self.B, self.M, self.N = B, M, N
        self.field = B.field
        self.into = {}
        for (x, y), out in B.mult.items():
            for k, c in out.items():
                self.into.setdefault(k, []).append((x, y, c))
        self.mod_into = {}
        for (b, m), out in M.action.items():
            for k, c in out.items():
                self.mod_into.setdefault(k, []).append((b, m, c))
        self._bases = {}

    def basis(self, n):
        if n not in self._bases:
            out = [(args, m, t) for args in product(range(self.B.dim), repeat=n)
                   for m in range(self.M.dim) for t in range(self.N.dim)]
            self._bases[n] = (out, {b: i for i, b in enumerate(out)})
        return self._bases[n]

    def differential(self, n):
        src, _ = self.basis(n)
        _, tgt = self.basis(n + 1)
        B, N = self.B, self.N
        cols = []
        for args0, m0, t0 in src:
            acc = {}
            for b in range(B.dim):
                for t, c in N.act(b, t0).items():
                    _add_into(acc, ((b,) + args0, m0, t), c)
            for i in range(1, n + 1):
                sign = -1 if i % 2 else 1
                for x, y, c in self.into.get(args0[i - 1], ()):
                    _add_into(acc, (args0[:i - 1] + (x, y) + args0[i:], m0, t0), sign * c)
            sign = -1 if (n + 1) % 2 else 1
            for b, m, c in self.mod_into.get(m0, ()):
                _add_into(acc, (args0 + (b,), m, t0), sign * c)
            cols.append({tgt[k]: c for k, c in acc.items()})
        return cols

    def rank(self, n):
        dim = len(self.basis(n)[0])
        r_out = rank_rows(self.field, self.differential(n), len(self.basis(n + 1)[0]))
        r_in = rank_rows(self.field, self.differential(n - 1), dim) if n > 0 else 0
        return dim - r_out - r_in


def ext_via_bar(B: GradedAlgebra, M: GradedModule, N: GradedModule, n: int, budget=None) -> int:
    _check_arity(n + 1, budget)
    _check_characteristic(B.field, n + 1)
    return BarExtComplex(B, M, N).rank(n)
