"""Independent reference computations, written without the package's linear algebra."""
from itertools import product

from sympy import QQ as SQQ
from sympy.polys.matrices import DomainMatrix


def sympy_rank(cols, nrows):
    """Rank of a matrix given as sparse columns {row: Fraction}."""
    if not cols or not nrows:
        return 0
    rows = [[SQQ(0)] * len(cols) for _ in range(nrows)]
    for c, col in enumerate(cols):
        for r, x in col.items():
            rows[r][c] = SQQ(x.numerator, x.denominator)
    return DomainMatrix(rows, (nrows, len(cols)), SQQ).rank()


def _mul(B, i, j):
    return B.mult.get((i, j), {})


def brute_hh(B, M, n):
    """dim HH^n(B, M) for B and M concentrated in degree 0, unnormalized bar cochains.

    A cochain f is indexed by (a_1..a_n, m) meaning f(e_a1..e_an) has coefficient
    on e_m.  (df)(a_0..a_n) = a_0 f(..) + sum (-1)^i f(.. a_{i-1} a_i ..)
    + (-1)^{n+1} f(a_0..a_{n-1}) a_n.
    """
    def columns(k):
        src = list(product(range(B.dim), repeat=k))
        tgt = {t: i for i, t in enumerate(product(range(B.dim), repeat=k + 1))}
        cols = []
        for args in src:
            for m in range(M.dim):
                col = {}

                def put(targs, mm, c):
                    key = tgt[targs] * M.dim + mm
                    col[key] = col.get(key, 0) + c

                for a0 in range(B.dim):
                    for mm, c in M.left.get((a0, m), {}).items():
                        put((a0,) + args, mm, c)
                    for mm, c in M.right.get((m, a0), {}).items():
                        put(args + (a0,), mm, (-1) ** (k + 1) * c)
                for i in range(1, k + 1):
                    for (x, y), out in B.mult.items():
                        c = out.get(args[i - 1])
                        if c:
                            put(args[:i - 1] + (x, y) + args[i:], m, (-1) ** i * c)
                cols.append({r: v for r, v in col.items() if v})
        return cols, len(tgt) * M.dim

    dim = B.dim ** n * M.dim
    out_cols, out_rows = columns(n)
    r_out = sympy_rank(out_cols, out_rows)
    r_in = 0
    if n > 0:
        in_cols, in_rows = columns(n - 1)
        r_in = sympy_rank(in_cols, in_rows)
    return dim - r_out - r_in


def ext_dual_numbers_from_k(N):
    """Ext^p(k, N) over k[t]/(t^2) from ... -t-> B -t-> B -> k.

    Hom_B(B, N) = N and every map in the dual complex is multiplication by t.
    """
    t = [[N.action.get((1, c), {}).get(r, 0) for c in range(N.dim)] for r in range(N.dim)]
    col = [{r: t[r][c] for r in range(N.dim) if t[r][c]} for c in range(N.dim)]
    rk = sympy_rank(col, N.dim)
    ker = N.dim - rk
    return lambda p: ker if p == 0 else ker - rk


# -- bar construction materialized on tensor words ------------------------------------
#
# A word is a tuple of basis indices standing for s x_1 (x) ... (x) s x_n.  Linear
# combinations of words are dicts {word: coeff}.  Coderivations and coalgebra maps
# are applied word by word with the Koszul rule written out explicitly.

def _acc(out, w, c):
    v = out.get(w, 0) + c
    if v:
        out[w] = v
    else:
        out.pop(w, None)


def apply_coderivation(b, sdeg, word):
    """Extension of components b (arity -> {inputs: {out: c}}), degree 1, to one word."""
    out = {}
    n = len(word)
    for q, comp in b.items():
        for p in range(n - q + 1):
            seg = word[p:p + q]
            row = comp.get(seg)
            if not row:
                continue
            # b_q jumps over s x_1 .. s x_p
            sign = (-1) ** sum(sdeg[x] for x in word[:p])
            for o, c in row.items():
                _acc(out, word[:p] + (o,) + word[p + q:], sign * c)
    return out


def _splits(n, allowed):
    if n == 0:
        yield ()
        return
    for k in allowed:
        if k <= n:
            for rest in _splits(n - k, allowed):
                yield (k,) + rest


def apply_coalgebra_map(psi, word):
    """Extension of degree-0 components psi to one word: sum of psi_i1 (x) ... (x) psi_ik."""
    out = {}
    allowed = sorted(k for k, c in psi.items() if c)
    for split in _splits(len(word), allowed):
        partial = {(): 1}
        pos = 0
        for k in split:
            row = psi[k].get(word[pos:pos + k], {})
            pos += k
            nxt = {}
            # psi has degree 0, so no sign when it passes earlier factors
            for w, c in partial.items():
                for o, x in row.items():
                    _acc(nxt, w + (o,), c * x)
            partial = nxt
            if not partial:
                break
        for w, c in partial.items():
            _acc(out, w, c)
    return out


def _linear(fn, combo):
    out = {}
    for w, c in combo.items():
        for w2, x in fn(w).items():
            _acc(out, w2, c * x)
    return out


def bar_defect(bA, sdegA, bC, sdegC, psi, arity, dimA):
    """Arity-`arity` component of b_C psi - psi b_A, projected to output length one."""
    result = {}
    for word in product(range(dimA), repeat=arity):
        lhs = _linear(lambda w: apply_coderivation(bC, sdegC, w), apply_coalgebra_map(psi, word))
        rhs = _linear(lambda w: apply_coalgebra_map(psi, w), apply_coderivation(bA, sdegA, word))
        row = {}
        for w, c in lhs.items():
            if len(w) == 1:
                _acc(row, w[0], c)
        for w, c in rhs.items():
            if len(w) == 1:
                _acc(row, w[0], -c)
        if row:
            result[word] = row
    return result


def bar_square_oracle(b, sdeg, arity, dim):
    """Arity-`arity` component of b o b, projected to output length one."""
    result = {}
    for word in product(range(dim), repeat=arity):
        once = apply_coderivation(b, sdeg, word)
        row = {}
        for w, c in _linear(lambda x: apply_coderivation(b, sdeg, x), once).items():
            if len(w) == 1:
                _acc(row, w[0], c)
        if row:
            result[word] = row
    return result
