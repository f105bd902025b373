"""Linear systems whose equations are components with LinExpr coefficients."""
from __future__ import annotations

from ..linalg import rref_rows
from .core import LinExpr


class LinearSystem:
    def __init__(self, field):
        self.field = field
        self.names = []
        self.rows = []
        self.rhs = []

    def new_var(self, name, base=None):
        v = len(self.names)
        self.names.append(name)
        one = self.field.one()
        return LinExpr(self.field.zero() if base is None else base, {v: one})

    @property
    def nvars(self):
        return len(self.names)

    def require_zero(self, comp):
        """Add one equation per entry of a component."""
        for row in comp.values():
            for c in row.values():
                self.require(c)

    def require(self, c):
        if isinstance(c, LinExpr):
            if c.terms:
                self.rows.append(dict(c.terms))
                self.rhs.append(-c.const)
                return
            c = c.const
        if c:
            # constant nonzero equation: infeasible
            self.rows.append({})
            self.rhs.append(-c)

    def solve(self, free_values=None):
        """Canonical solution (free unknowns zero, or drawn from ``free_values``), or None."""
        n = self.nvars
        aug = []
        for row, r in zip(self.rows, self.rhs):
            row = dict(row)
            if r:
                row[n] = r
            if row:
                aug.append(row)
        red, piv = rref_rows(self.field, aug, n + 1)
        if piv and piv[-1] == n:
            return None
        pivset = set(piv)
        values = [self.field.zero()] * n
        if free_values is not None:
            for j in range(n):
                if j not in pivset:
                    values[j] = self.field(free_values(j))
        for row, p in zip(red, piv):
            x = row.get(n, self.field.zero())
            for j, c in row.items():
                if j != p and j != n and values[j]:
                    x = x - c * values[j]
            values[p] = x
        self.pivots = piv
        self.rank = len(piv)
        return values

    def rank_certificate(self):
        """(rank of the coefficient matrix, rank of the augmented matrix)."""
        n = self.nvars
        coeff = [dict(r) for r in self.rows if r]
        aug = []
        for row, r in zip(self.rows, self.rhs):
            row = dict(row)
            if r:
                row[n] = r
            if row:
                aug.append(row)
        from ..linalg import rank_rows
        return rank_rows(self.field, coeff, n), rank_rows(self.field, aug, n + 1)

    @staticmethod
    def value(c, sol):
        if isinstance(c, LinExpr):
            x = c.const
            for v, k in c.terms.items():
                x = x + k * sol[v]
            return x
        return c

    def substitute(self, comp, sol):
        out = {}
        for key, row in comp.items():
            r = {}
            for o, c in row.items():
                x = self.value(c, sol)
                if x:
                    r[o] = x
            if r:
                out[key] = r
        return out
