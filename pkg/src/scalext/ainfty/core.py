"""Sparse multilinear maps on shifted graded spaces.

A component of arity n is a dict ``{(i_1, ..., i_n): {o: c}}`` sending the
tensor of basis vectors e_{i_1} (x) ... (x) e_{i_n} to sum c e_o.  Inputs and
outputs are read in the suspended space sA, whose basis vector i has degree
``deg_i - 1``; Koszul signs are always computed from those shifted degrees.

Coefficients may be field elements or :class:`LinExpr` (an affine form in
unknowns), which lets the lifting algorithms reuse the same composition code
to assemble their linear systems.
"""
from __future__ import annotations

from itertools import product

from ..fields import QQ, Field


class GradedSpace:
    def __init__(self, names, degrees, field: Field = QQ):
        self.names = list(names)
        self.degrees = [int(d) for d in degrees]
        if len(self.names) != len(self.degrees):
            raise ValueError("names and degrees differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("basis names must be distinct")
        self.field = field
        self.shifted = [d - 1 for d in self.degrees]

    @property
    def dim(self):
        return len(self.names)

    def index(self, name):
        return self.names.index(name)

    def by_degree(self):
        out = {}
        for i, d in enumerate(self.degrees):
            out.setdefault(d, []).append(i)
        return out

    def __repr__(self):
        return "GradedSpace(" + ", ".join(f"{n}:{d}" for n, d in zip(self.names, self.degrees)) + ")"

    def to_json(self):
        return {"basis": [[n, d] for n, d in zip(self.names, self.degrees)]}


class LinExpr:
    """Affine form const + sum coeff * var with exact coefficients."""

    __slots__ = ("const", "terms")

    def __init__(self, const=0, terms=None):
        self.const = const
        self.terms = terms or {}

    @classmethod
    def var(cls, v, base=0, one=1):
        return cls(base, {v: one})

    def _coerce(self, other):
        if isinstance(other, LinExpr):
            return other
        return LinExpr(other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for v, c in other.terms.items():
            x = terms.get(v)
            x = c if x is None else x + c
            if x:
                terms[v] = x
            else:
                terms.pop(v, None)
        return LinExpr(self.const + other.const, terms)

    __radd__ = __add__

    def __neg__(self):
        return LinExpr(-self.const, {v: -c for v, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, LinExpr):
            if other.terms and self.terms:
                raise ValueError("product of two unknown-dependent coefficients")
            if not other.terms:
                other = other.const
            else:
                return other * self.const
        if not other:
            return LinExpr(self.const * other)
        return LinExpr(self.const * other, {v: c * other for v, c in self.terms.items()})

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.const) or bool(self.terms)

    def __eq__(self, other):
        other = self._coerce(other)
        return self.const == other.const and self.terms == other.terms

    def __hash__(self):
        return hash((self.const, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        return f"LinExpr({self.const}, {self.terms})"


def _add(acc, key, out, value):
    row = acc.get(key)
    if row is None:
        row = acc[key] = {}
    x = row.get(out)
    x = value if x is None else x + value
    if x:
        row[out] = x
    else:
        row.pop(out, None)
        if not row:
            del acc[key]


def clean(comp):
    out = {}
    for k, row in comp.items():
        r = {o: c for o, c in row.items() if c}
        if r:
            out[k] = r
    return out


def reverse_index(comp):
    rev = {}
    for key, row in comp.items():
        for o, c in row.items():
            rev.setdefault(o, []).append((key, c))
    return rev


def insert(outer, inner, p, sdeg, inner_degree, into=None, scale=1):
    """Add scale * outer o (id^p (x) inner (x) id^r) to ``into``.

    The Koszul sign is (-1)^(inner_degree * sum of the shifted degrees of the
    first p inputs).  ``p = -1`` means the last slot of each outer key.
    """
    acc = {} if into is None else into
    if not outer or not inner:
        return acc
    rev = reverse_index(inner)
    odd = inner_degree % 2
    for okey, outs in outer.items():
        q = len(okey) - 1 if p == -1 else p
        if q >= len(okey):
            continue
        hits = rev.get(okey[q])
        if not hits:
            continue
        sign = scale
        if odd and sum(sdeg[x] for x in okey[:q]) % 2:
            sign = -scale
        head, tail = okey[:q], okey[q + 1:]
        for ikey, c in hits:
            key = head + ikey + tail
            f = sign * c
            for o, d in outs.items():
                _add(acc, key, o, f * d)
    return acc


def tensor_into(outer, parts, into=None, scale=1):
    """Add scale * outer o (parts[0] (x) ... (x) parts[k-1]) for degree-0 parts."""
    acc = {} if into is None else into
    if not outer or any(not q for q in parts):
        return acc
    revs = [reverse_index(q) for q in parts]
    for okey, outs in outer.items():
        if len(okey) != len(parts):
            continue
        lists = []
        for x, rev in zip(okey, revs):
            hit = rev.get(x)
            if not hit:
                break
            lists.append(hit)
        else:
            for combo in product(*lists):
                key = ()
                f = scale
                for ikey, c in combo:
                    key += ikey
                    f = f * c
                for o, d in outs.items():
                    _add(acc, key, o, f * d)
    return acc


def add_scaled(acc, comp, scale=1):
    for k, row in comp.items():
        for o, c in row.items():
            _add(acc, k, o, scale * c)
    return acc


def compositions(total, parts, allowed):
    """Ordered tuples of ``parts`` positive integers in ``allowed`` summing to total."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in allowed:
        if first <= total - (parts - 1):
            for rest in compositions(total - first, parts - 1, allowed):
                yield (first,) + rest


def evaluate(comp, vectors):
    """Apply a multilinear component to sparse vectors ``{index: coeff}``."""
    out = {}
    for combo in product(*[list(v.items()) for v in vectors]):
        key = tuple(i for i, _ in combo)
        row = comp.get(key)
        if not row:
            continue
        f = 1
        for _, c in combo:
            f = f * c
        for o, d in row.items():
            x = out.get(o)
            x = f * d if x is None else x + f * d
            if x:
                out[o] = x
            else:
                out.pop(o, None)
    return out


def degree_keys(src_sdeg, tgt_sdeg, arity, degree, skip=()):
    """All (input key, output) pairs of a homogeneous component of the given degree."""
    by_deg = {}
    for o, d in enumerate(tgt_sdeg):
        by_deg.setdefault(d, []).append(o)
    idx = [i for i in range(len(src_sdeg)) if i not in skip]
    out = []
    for key in product(idx, repeat=arity):
        s = sum(src_sdeg[i] for i in key) + degree
        for o in by_deg.get(s, ()):
            out.append((key, o))
    return out


def module_keys(alg_sdeg, src_deg, tgt_deg, nargs, degree, skip=()):
    """(key, output) pairs for maps (sB)^nargs (x) M -> N of the given degree."""
    by_deg = {}
    for o, d in enumerate(tgt_deg):
        by_deg.setdefault(d, []).append(o)
    idx = [i for i in range(len(alg_sdeg)) if i not in skip]
    out = []
    for bkey in product(idx, repeat=nargs):
        s = sum(alg_sdeg[i] for i in bkey) + degree
        for m, dm in enumerate(src_deg):
            for o in by_deg.get(s + dm, ()):
                out.append((bkey + (m,), o))
    return out


def is_zero(comp):
    return not any(row for row in comp.values())


def nonzero_entries(comp):
    return sum(len(r) for r in comp.values())


def to_strings(comp):
    return {",".join(map(str, k)): {str(o): str(c) for o, c in row.items()}
            for k, row in sorted(comp.items())}
