"""Sparse multivariate polynomials over Q or F_p, with exact division and gcd.

Terms are stored as ``{exponent_tuple: coefficient}`` with nonzero
coefficients only.  The monomial order is graded lexicographic with the
first variable largest.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product as _cartesian
from math import gcd as _igcd, isqrt, lcm as _ilcm


def deglex_key(exp):
    return (sum(exp), exp)


class Poly:
    __slots__ = ("terms", "nvars", "ring")

    def __init__(self, ring, nvars: int, terms=None):
        self.ring = ring
        self.nvars = nvars
        self.terms = {} if terms is None else terms

    # -- constructors -------------------------------------------------------
    @classmethod
    def const(cls, ring, nvars, c):
        c = ring(c)
        if not c:
            return cls(ring, nvars)
        return cls(ring, nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, ring, nvars, i, power=1):
        exp = [0] * nvars
        exp[i] = power
        return cls(ring, nvars, {tuple(exp): ring.one()})

    def _new(self, terms):
        return Poly(self.ring, self.nvars, terms)

    # -- predicates ---------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_const(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def is_one(self):
        if len(self.terms) != 1:
            return False
        exp, c = next(iter(self.terms.items()))
        return not any(exp) and c == 1

    def const_value(self):
        if not self.terms:
            return self.ring.zero()
        return self.terms[(0,) * self.nvars]

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, int):
            return self == Poly.const(self.ring, self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- structure ----------------------------------------------------------
    def leading(self):
        exp = max(self.terms, key=deglex_key)
        return exp, self.terms[exp]

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i):
        return max((e[i] for e in self.terms), default=-1)

    def variables_used(self):
        used = set()
        for e in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        return used

    # -- arithmetic ---------------------------------------------------------
    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self.ring, self.nvars, other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return self._new(out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self.ring, self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        if not c:
            return self._new({})
        return self._new({e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(self.ring(other))
        if len(other.terms) < len(self.terms):
            small, big = other, self
        else:
            small, big = self, other
        out = {}
        get = out.get
        for e1, c1 in small.terms.items():
            for e2, c2 in big.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return self._new({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Poly.const(self.ring, self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_monomial(self, exp, c):
        return self._new({tuple(a + b for a, b in zip(e, exp)): v * c for e, v in self.terms.items()})

    def divexact(self, other: "Poly") -> "Poly":
        """Quotient of an exact division; raises ArithmeticError if inexact."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if len(other.terms) == 1:
            (be, bc), = other.terms.items()
            inv = 1 / bc
            out = {}
            for e, c in self.terms.items():
                q = tuple(a - b for a, b in zip(e, be))
                if min(q, default=0) < 0:
                    raise ArithmeticError("inexact polynomial division")
                out[q] = c * inv
            return self._new(out)
        lexp, lc = other.leading()
        inv = 1 / lc
        rem = dict(self.terms)
        quot = {}
        rest = [(e, c) for e, c in other.terms.items() if e != lexp]
        while rem:
            e = max(rem, key=deglex_key)
            c = rem.pop(e)
            q = tuple(a - b for a, b in zip(e, lexp))
            if min(q, default=0) < 0:
                raise ArithmeticError("inexact polynomial division")
            qc = c * inv
            quot[q] = qc
            for be, bc in rest:
                t = tuple(a + b for a, b in zip(q, be))
                v = rem.get(t)
                v = -qc * bc if v is None else v - qc * bc
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return self._new(quot)

    def monic(self):
        if self.is_zero():
            return self
        _, lc = self.leading()
        if lc == 1:
            return self
        return self.scale(1 / lc)

    def evaluate(self, point):
        total = self.ring.zero()
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * x ** k
            total = total + t
        return total

    def substitute_var(self, i, value):
        """Replace variable ``i`` by a base-field scalar, keeping nvars."""
        out = Poly(self.ring, self.nvars)
        for e, c in self.terms.items():
            e2 = list(e)
            k = e2[i]
            e2[i] = 0
            out = out + Poly(self.ring, self.nvars, {tuple(e2): c * value ** k})
        return out

    # -- univariate views ---------------------------------------------------
    def split_by(self, i):
        """Coefficients in variable ``i``: ``{k: Poly without x_i}``."""
        parts = {}
        for e, c in self.terms.items():
            k = e[i]
            rest = e[:i] + (0,) + e[i + 1:]
            parts.setdefault(k, {})[rest] = c
        return {k: self._new(t) for k, t in parts.items()}

    def format(self, names):
        if not self.terms:
            return "0"
        pieces = []
        for e in sorted(self.terms, key=deglex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            cs = self.ring.format(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if mono:
                body = mono if cs == "1" else f"{cs}*{mono}"
            else:
                body = cs
            if not pieces:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append((" - " if neg else " + ") + body)
        return "".join(pieces)

    def __repr__(self):
        return f"Poly({self.format([f'x{i}' for i in range(self.nvars)])})"


# -- gcd --------------------------------------------------------------------

def _monomial_gcd(mono: Poly, other: Poly) -> Poly:
    (me, _), = mono.terms.items()
    low = list(me)
    for e in other.terms:
        low = [min(a, b) for a, b in zip(low, e)]
    return Poly(mono.ring, mono.nvars, {tuple(low): mono.ring.one()})


def _univariate_gcd(a: Poly, b: Poly, i: int) -> Poly:
    # Euclid over the coefficient field, both polynomials only in x_i.
    ua = {k: p.const_value() for k, p in a.split_by(i).items()}
    ub = {k: p.const_value() for k, p in b.split_by(i).items()}
    if max(ua) < max(ub):
        ua, ub = ub, ua
    while ub:
        db = max(ub)
        inv = 1 / ub[db]
        while ua and max(ua) >= db:
            da = max(ua)
            f = ua[da] * inv
            shift = da - db
            for k, c in ub.items():
                v = ua.get(k + shift, 0) - f * c
                if v:
                    ua[k + shift] = v
                else:
                    ua.pop(k + shift, None)
        ua, ub = ub, ua
    top = max(ua)
    inv = 1 / ua[top]
    n = a.nvars
    terms = {}
    for k, c in ua.items():
        e = [0] * n
        e[i] = k
        terms[tuple(e)] = c * inv
    return Poly(a.ring, n, terms)


def _content(p: Poly, i: int) -> Poly:
    g = None
    for coeff in p.split_by(i).values():
        g = coeff if g is None else poly_gcd(g, coeff)
        if g.is_const():
            return Poly.const(p.ring, p.nvars, 1)
    return g.monic()


def _prem(a: dict, b: dict) -> dict:
    # pseudo-remainder of univariate polynomials with Poly coefficients
    a = dict(a)
    db = max(b)
    lcb = b[db]
    while a and max(a) >= db:
        da = max(a)
        lca = a[da]
        shift = da - db
        new = {k: c * lcb for k, c in a.items()}
        for k, c in b.items():
            v = new.get(k + shift)
            v = -(lca * c) if v is None else v - lca * c
            new[k + shift] = v
        a = {k: c for k, c in new.items() if c}
    return a


def _join(parts: dict, i: int, nvars: int, ring) -> Poly:
    terms = {}
    for k, coeff in parts.items():
        for e, c in coeff.terms.items():
            terms[e[:i] + (k,) + e[i + 1:]] = c
    return Poly(ring, nvars, terms)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic (under deglex) greatest common divisor."""
    if a.ring.kind == "rationals" and a.terms and b.terms and not a.is_const() and not b.is_const():
        g = _rational_heuristic_gcd(a, b)
        if g is not None:
            return g
    return _generic_gcd(a, b)


def _generic_gcd(a: Poly, b: Poly) -> Poly:
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.is_const() or b.is_const():
        return Poly.const(a.ring, a.nvars, 1)
    if len(a.terms) == 1:
        return _monomial_gcd(a, b)
    if len(b.terms) == 1:
        return _monomial_gcd(b, a)
    va, vb = a.variables_used(), b.variables_used()
    common = va & vb
    if not common:
        return Poly.const(a.ring, a.nvars, 1)
    i = min(common)
    if va == vb == {i}:
        return _univariate_gcd(a, b, i)
    ca, cb = _content(a, i), _content(b, i)
    pa = a.divexact(ca) if not ca.is_one() else a
    pb = b.divexact(cb) if not cb.is_one() else b
    c = poly_gcd(ca, cb)
    ua, ub = pa.split_by(i), pb.split_by(i)
    if max(ua) < max(ub):
        ua, ub = ub, ua
    while True:
        r = _prem(ua, ub)
        if not r:
            break
        if max(r) == 0:
            return c.monic()
        rp = _join(r, i, a.nvars, a.ring)
        rp = rp.divexact(_content(rp, i))
        ua, ub = ub, rp.split_by(i)
    g = _join(ub, i, a.nvars, a.ring)
    g = g.divexact(_content(g, i))
    return (c * g).monic()


def all_monomials(nvars, max_degree):
    for exp in _cartesian(range(max_degree + 1), repeat=nvars):
        if sum(exp) <= max_degree:
            yield exp


# -- heuristic gcd over Z ---------------------------------------------------
# Integer polynomials are plain {exp: int} dicts.  The gcd is found by
# evaluating one variable at a large integer, recursing, and interpolating
# the result back xi-adically; a candidate is accepted only if it divides
# both inputs exactly.  Callers fall back to the PRS route on failure.

def _to_integer(p: Poly) -> dict:
    den = 1
    for c in p.terms.values():
        den = _ilcm(den, c.denominator)
    return {e: int(c * den) for e, c in p.terms.items()}


def int_mul(f: dict, g: dict) -> dict:
    if len(g) < len(f):
        f, g = g, f
    out = {}
    get = out.get
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = c1 * c2 + get(e, 0)
    return {e: c for e, c in out.items() if c}


def int_sub(f: dict, g: dict) -> dict:
    out = dict(f)
    for e, c in g.items():
        v = out.get(e, 0) - c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def int_divexact(f: dict, g: dict) -> dict:
    """f / g for integer polynomials known to divide exactly."""
    if len(g) == 1:
        (be, bc), = g.items()
        out = {}
        for e, c in f.items():
            q, r = divmod(c, bc)
            if r:
                raise ArithmeticError("inexact polynomial division")
            out[tuple(a - b for a, b in zip(e, be))] = q
        return out
    lexp = max(g, key=deglex_key)
    lc = g[lexp]
    rest = [(e, c) for e, c in g.items() if e != lexp]
    rem = dict(f)
    quot = {}
    while rem:
        e = max(rem, key=deglex_key)
        c = rem.pop(e)
        q = tuple(a - b for a, b in zip(e, lexp))
        qc, r = divmod(c, lc)
        if r or min(q, default=0) < 0:
            raise ArithmeticError("inexact polynomial division")
        quot[q] = qc
        for be, bc in rest:
            t = tuple(a + b for a, b in zip(q, be))
            v = rem.get(t, 0) - qc * bc
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return quot


def _icontent(f: dict) -> int:
    g = 0
    for c in f.values():
        g = _igcd(g, c)
        if g == 1:
            break
    return g


def _ieval(f: dict, i: int, xi: int) -> dict:
    out = {}
    for e, c in f.items():
        k = e[i]
        e2 = e[:i] + (0,) + e[i + 1:]
        out[e2] = out.get(e2, 0) + c * xi ** k
    return {e: c for e, c in out.items() if c}


def _interpolate(h: dict, i: int, xi: int) -> dict:
    out = {}
    k = 0
    half = xi // 2
    while h:
        nxt = {}
        for e, c in h.items():
            r = c % xi
            if r > half:
                r -= xi
            if r:
                out[e[:i] + (k,) + e[i + 1:]] = r
            q = (c - r) // xi
            if q:
                nxt[e] = q
        h = nxt
        k += 1
    return out


def _idivides(h: dict, f: dict) -> bool:
    lexp = max(h, key=deglex_key)
    lc = h[lexp]
    rest = [(e, c) for e, c in h.items() if e != lexp]
    rem = dict(f)
    hdeg = sum(lexp)
    while rem:
        e = max(rem, key=deglex_key)
        if sum(e) < hdeg:
            return False
        c = rem.pop(e)
        q = tuple(a - b for a, b in zip(e, lexp))
        if min(q) < 0 or c % lc:
            return False
        qc = c // lc
        for be, bc in rest:
            t = tuple(a + b for a, b in zip(q, be))
            v = rem.get(t, 0) - qc * bc
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return True


def _heu(f: dict, g: dict, active: list):
    cf, cg = _icontent(f), _icontent(g)
    c = _igcd(cf, cg)
    if cf != 1:
        f = {e: v // cf for e, v in f.items()}
    if cg != 1:
        g = {e: v // cg for e, v in g.items()}
    used = set()
    for e in list(f) + list(g):
        used.update(j for j in active if e[j])
    active = [j for j in active if j in used]
    if not active:
        zero = next(iter(f))
        return {tuple(0 for _ in zero): c}
    i = active[0]
    fn = max(abs(v) for v in f.values())
    gn = max(abs(v) for v in g.values())
    xi = 2 * min(fn, gn) + 29
    for _ in range(8):
        ff = _ieval(f, i, xi)
        gg = _ieval(g, i, xi)
        if ff and gg:
            h = _heu(ff, gg, active[1:])
            if h is not None:
                cand = _interpolate(h, i, xi)
                if cand:
                    ic = _icontent(cand)
                    if ic != 1:
                        cand = {e: v // ic for e, v in cand.items()}
                    if _idivides(cand, f) and _idivides(cand, g):
                        return {e: v * c for e, v in cand.items()}
        xi = xi * 73794 * isqrt(isqrt(xi)) // 27011 + 1
    return None


def _rational_heuristic_gcd(a: Poly, b: Poly):
    f, g = _to_integer(a), _to_integer(b)
    h = _heu(f, g, list(range(a.nvars)))
    if h is None:
        return None
    return Poly(a.ring, a.nvars, {e: Fraction(v) for e, v in h.items()}).monic()
