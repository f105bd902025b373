"""Exact scalar fields: Q, prime fields F_p and rational function fields.

Q elements are plain :class:`fractions.Fraction` values, F_p elements are
:class:`ModP` and function-field elements are :class:`RatFunc`.  Every
function-field element is stored reduced, with a denominator whose leading
coefficient (graded lex order, first variable largest) equals 1.

>>> L = FunctionField(QQ, "x", "y")
>>> x, y = L.gens()
>>> 1 / x + 1 / y
(x + y)/(x*y)
>>> L.parse("(x^2 - 1)/(x - 1)")
x + 1
"""
from __future__ import annotations

import random
import re
from fractions import Fraction

from .errors import (
    DescriptorMismatch,
    DivisionByZero,
    ParseError,
    PoleAtPoint,
    ZeroDenominator,
)
from .polys import Poly, all_monomials, poly_gcd


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class ModP:
    """Residue class modulo a prime."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise DescriptorMismatch(f"F_{self.p} vs F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise DivisionByZero("denominator divisible by p")
            return other.numerator * pow(other.denominator, -1, self.p)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.v, self.p)

    def inverse(self):
        if self.v == 0:
            raise DivisionByZero(f"inverse of 0 in F_{self.p}")
        return ModP(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * ModP(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ModP(o, self.p) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return ModP(pow(self.v, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return (self.v - other) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return str(self.v)


class Field:
    """Descriptor of an exact field.

    Build instances with :data:`QQ`, :func:`GF` or :func:`FunctionField`
    rather than calling the constructor directly.
    """

    __slots__ = ("kind", "p", "base", "variables")

    def __init__(self, kind, p=0, base=None, variables=()):
        self.kind = kind
        self.p = p
        self.base = base
        self.variables = tuple(variables)

    def _key(self):
        return (self.kind, self.p, self.base._key() if self.base else None, self.variables)

    def __eq__(self, other):
        return isinstance(other, Field) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.kind == "rationals":
            return "QQ"
        if self.kind == "prime_field":
            return f"GF({self.p})"
        return f"{self.base!r}({','.join(self.variables)})"

    # -- basic data ---------------------------------------------------------
    @property
    def is_function_field(self):
        return self.kind == "function_field"

    @property
    def characteristic(self):
        if self.kind == "prime_field":
            return self.p
        if self.kind == "function_field":
            return self.base.characteristic
        return 0

    @property
    def ground(self):
        """The coefficient field (self unless a function field)."""
        return self.base if self.is_function_field else self

    @property
    def ngens(self):
        return len(self.variables)

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def gens(self):
        n = len(self.variables)
        return [RatFunc._raw(self, Poly.var(self.base, n, i), Poly.const(self.base, n, 1))
                for i in range(n)]

    # -- coercion -----------------------------------------------------------
    def __call__(self, value):
        if self.kind == "rationals":
            if isinstance(value, Fraction):
                return value
            if isinstance(value, int):
                return Fraction(value)
            if isinstance(value, str):
                return self.parse(value)
            if isinstance(value, ModP):
                raise DescriptorMismatch("F_p element used as a rational")
            if isinstance(value, RatFunc):
                raise DescriptorMismatch("function-field element used as a rational")
            raise TypeError(f"cannot coerce {value!r} into QQ")
        if self.kind == "prime_field":
            if isinstance(value, ModP):
                if value.p != self.p:
                    raise DescriptorMismatch(f"F_{value.p} element used in F_{self.p}")
                return value
            if isinstance(value, int):
                return ModP(value, self.p)
            if isinstance(value, Fraction):
                if value.denominator % self.p == 0:
                    raise DivisionByZero(f"{value} has no image in F_{self.p}")
                return ModP(value.numerator * pow(value.denominator, -1, self.p), self.p)
            if isinstance(value, str):
                return self.parse(value)
            raise DescriptorMismatch(f"cannot coerce {value!r} into F_{self.p}")
        # function field
        if isinstance(value, RatFunc):
            if value.field != self:
                raise DescriptorMismatch(f"{value.field!r} element used in {self!r}")
            return value
        if isinstance(value, str):
            return self.parse(value)
        c = self.base(value)
        n = len(self.variables)
        return RatFunc._raw(self, Poly.const(self.base, n, c), Poly.const(self.base, n, 1))

    def contains(self, value) -> bool:
        try:
            return field_of(value) == self
        except TypeError:
            return False

    # -- text ---------------------------------------------------------------
    def format(self, x) -> str:
        if self.kind == "rationals":
            x = Fraction(x)
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        if self.kind == "prime_field":
            return str(self(x).v)
        return str(self(x))

    def parse(self, text: str):
        return _Parser(self, text).parse()

    # -- randomness ---------------------------------------------------------
    def random_element(self, rng: random.Random, degree=2, terms=3, bound=5, fraction=True):
        """A pseudo-random element; function-field values may be fractions."""
        if self.kind == "rationals":
            return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if self.kind == "prime_field":
            return ModP(rng.randrange(self.p), self.p)
        num = self.random_polynomial(rng, degree, terms, bound)
        if not fraction or rng.random() < 0.5:
            return num
        den = self.random_polynomial(rng, degree, terms, bound)
        if not den:
            return num
        return num / den

    def random_polynomial(self, rng, degree=2, terms=3, bound=5):
        n = len(self.variables)
        monos = list(all_monomials(n, degree))
        out = self.zero()
        for _ in range(terms):
            e = rng.choice(monos)
            c = self.base.random_element(rng, bound=bound)
            out = out + RatFunc._raw(self, Poly(self.base, n, {e: c} if c else {}),
                                     Poly.const(self.base, n, 1))
        return out


QQ = Field("rationals")

_GF_CACHE: dict = {}


def GF(p: int) -> Field:
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    f = _GF_CACHE.get(p)
    if f is None:
        f = _GF_CACHE[p] = Field("prime_field", p=p)
    return f


def FunctionField(base: Field, *variables: str) -> Field:
    if len(variables) == 1 and not isinstance(variables[0], str):
        variables = tuple(variables[0])
    if base.kind == "function_field":
        raise ValueError("nested function fields are not supported")
    if len(set(variables)) != len(variables) or not variables:
        raise ValueError("variables must be distinct and nonempty")
    for v in variables:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
            raise ValueError(f"bad variable name {v!r}")
    return Field("function_field", base=base, variables=tuple(variables))


def field_of(x) -> Field:
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        return QQ
    if isinstance(x, ModP):
        return GF(x.p)
    if isinstance(x, RatFunc):
        return x.field
    raise TypeError(f"{x!r} is not a field element")


class RatFunc:
    """Reduced quotient of polynomials."""

    __slots__ = ("field", "num", "den")

    @classmethod
    def _raw(cls, field, num, den):
        obj = object.__new__(cls)
        obj.field = field
        obj.num = num
        obj.den = den
        return obj

    # -- arithmetic ---------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, RatFunc):
            if other.field != self.field:
                raise DescriptorMismatch(f"{self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, (int, Fraction, ModP)):
            return self.field(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.den.is_one() and self.den.is_one():
            return RatFunc._raw(self.field, self.num + o.num, self.den)
        if self.den == o.den:
            return canonicalize(self.num + o.num, self.den, self.field)
        g = poly_gcd(self.den, o.den)
        if g.is_one():
            return canonicalize(self.num * o.den + o.num * self.den, self.den * o.den,
                                self.field)
        d1 = self.den.divexact(g)
        d2 = o.den.divexact(g)
        return canonicalize(self.num * d2 + o.num * d1, d1 * o.den, self.field)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(self.field, -self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return self.field.zero()
        if self.den.is_one() and o.den.is_one():
            return RatFunc._raw(self.field, self.num * o.num, self.den)
        g1 = poly_gcd(self.num, o.den)
        g2 = poly_gcd(o.num, self.den)
        n1 = self.num if g1.is_one() else self.num.divexact(g1)
        d2 = o.den if g1.is_one() else o.den.divexact(g1)
        n2 = o.num if g2.is_one() else o.num.divexact(g2)
        d1 = self.den if g2.is_one() else self.den.divexact(g2)
        return _normalize(self.field, n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero("inverse of zero")
        return _normalize(self.field, self.den, self.num)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc._raw(self.field, self.num ** k, self.den ** k)

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.field == other.field and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, ModP)):
            if not other:
                return not self.num
            return self.den.is_one() and self.num == Poly.const(self.field.base, self.num.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((hash(self.num), hash(self.den)))

    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self):
        return self.den.is_one()

    def __str__(self):
        names = self.field.variables
        ns = self.num.format(names)
        if self.den.is_one():
            return ns
        ds = self.den.format(names)
        if len(self.num.terms) > 1:
            ns = f"({ns})"
        if not re.fullmatch(r"[A-Za-z_0-9]+", ds):
            ds = f"({ds})"
        return f"{ns}/{ds}"

    __repr__ = __str__

    def evaluate(self, point):
        return evaluate(self, point)


def _normalize(field, num: Poly, den: Poly) -> RatFunc:
    # num/den already coprime: only fix the denominator's leading coefficient
    if not num:
        return field.zero()
    _, lc = den.leading()
    if lc != 1:
        inv = 1 / lc
        num = num.scale(inv)
        den = den.scale(inv)
    return RatFunc._raw(field, num, den)


def canonicalize(num, den, field: Field) -> RatFunc:
    """Reduce ``num/den`` to canonical form.

    ``num`` and ``den`` may be :class:`Poly` instances or function-field
    elements (which are combined as a quotient first).
    """
    if isinstance(num, RatFunc) or isinstance(den, RatFunc):
        num, den = field(num), field(den)
        if not den:
            raise ZeroDenominator("zero denominator")
        return num / den
    if den.is_zero():
        raise ZeroDenominator("zero denominator")
    if num.is_zero():
        return field.zero()
    g = poly_gcd(num, den)
    if not g.is_one():
        num = num.divexact(g)
        den = den.divexact(g)
    return _normalize(field, num, den)


def evaluate(a, point):
    """Evaluate a function-field element at a point of the ground field."""
    field = field_of(a)
    if not field.is_function_field:
        raise TypeError("evaluate needs a function-field element")
    if len(point) != field.ngens:
        raise ValueError(f"expected {field.ngens} coordinates, got {len(point)}")
    pt = [field.base(v) for v in point]
    d = a.den.evaluate(pt)
    if not d:
        raise PoleAtPoint(f"{a} has a pole at {tuple(point)}")
    return a.num.evaluate(pt) / d


_OPS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
    "neg": lambda a, b: -a,
    "inv": lambda a, b: 1 / a,
}


def field_arith(op: str, a, b=None):
    """Dispatch one field operation after checking both operands agree."""
    fa = field_of(a)
    if b is not None and field_of(b) != fa:
        raise DescriptorMismatch(f"{fa!r} vs {field_of(b)!r}")
    if op in ("div", "inv"):
        den = b if op == "div" else a
        if not den:
            raise DivisionByZero(f"{op} by zero")
    if op not in ("neg", "inv") and b is None:
        raise TypeError(f"{op} needs two operands")
    a = fa(a)
    try:
        return _OPS[op](a, None if b is None else fa(b))
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None


# -- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class _Parser:
    def __init__(self, field: Field, text: str):
        self.field = field
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                break
            if m.group(1):
                self.tokens.append(("num", int(m.group(1)), m.start(1)))
            elif m.group(2):
                self.tokens.append(("name", m.group(2), m.start(2)))
            elif m.group(3):
                if m.group(3) not in "+-*/^()":
                    raise ParseError(f"unexpected character {m.group(3)!r}", column=m.start(3) + 1)
                self.tokens.append(("op", m.group(3), m.start(3)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def fail(self, msg):
        raise ParseError(msg, column=self.peek()[2] + 1)

    def parse(self):
        if not self.tokens:
            raise ParseError("empty scalar", column=1)
        value = self.expr()
        if self.i != len(self.tokens):
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while True:
            kind, tok, _ = self.peek()
            if kind == "op" and tok in ("*", "/"):
                self.take()
                rhs = self.unary()
                if tok == "*":
                    value = value * rhs
                else:
                    if not rhs:
                        self.fail("division by zero")
                    value = value / rhs
            elif kind in ("num", "name") or (kind == "op" and tok == "("):
                value = value * self.unary()
            else:
                return value

    def unary(self):
        kind, tok, _ = self.peek()
        if kind == "op" and tok in ("+", "-"):
            self.take()
            v = self.unary()
            return -v if tok == "-" else v
        return self.power()

    def power(self):
        base = self.atom()
        kind, tok, _ = self.peek()
        if kind == "op" and tok == "^":
            self.take()
            sign = 1
            if self.peek()[1] == "-":
                self.take()
                sign = -1
            kind, tok, _ = self.peek()
            if kind != "num":
                self.fail("exponent must be an integer")
            self.take()
            if sign < 0 and not base:
                self.fail("division by zero")
            return base ** (sign * tok)
        return base

    def atom(self):
        kind, tok, _ = self.peek()
        if kind == "num":
            self.take()
            return self.field(tok)
        if kind == "name":
            if not self.field.is_function_field or tok not in self.field.variables:
                self.fail(f"unknown variable {tok!r}")
            self.take()
            return self.field.gens()[self.field.variables.index(tok)]
        if kind == "op" and tok == "(":
            self.take()
            v = self.expr()
            if self.peek()[1] != ")":
                self.fail("expected ')'")
            self.take()
            return v
        self.fail("expected a number, variable or '('")


def parse_field(text: str) -> Field:
    """Parse a descriptor string: ``QQ``, ``GF(7)`` or ``QQ(x,y)``."""
    t = text.replace(" ", "")
    m = re.fullmatch(r"(QQ|GF\((\d+)\))(?:\(([^()]*)\))?", t)
    if not m:
        raise ParseError(f"bad field descriptor {text!r}")
    base = QQ if m.group(1) == "QQ" else GF(int(m.group(2)))
    if m.group(3) is None:
        return base
    return FunctionField(base, *m.group(3).split(","))
