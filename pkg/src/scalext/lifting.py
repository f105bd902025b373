"""Lifting a field action on a two-term complex U + sV, or certifying that it cannot be lifted.

An L-action on Z = U + sV that is upper triangular with respect to the two
terms is determined by the actions on U and V together with an off-diagonal
map phi21: L -> Ext^1(U, V).  It comes from a genuine L-object exactly when
phi21 is an inner derivation of the Ext^1 bimodule, which is a degree-one
Koszul cohomology question handled by :mod:`scalext.hochschild`.

phi21 is stored through the images of the field generators only.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DescriptorMismatch, NotADerivation, ShapeMismatch
from .fields import Field, FunctionField, QQ
from .hochschild import (
    KoszulBimodule,
    KoszulComplex,
    derivation_check,
    inner_certificate,
    is_inner,
    koszul_hh,
)
from .linalg import Matrix, solve
from .quiver import BUILTIN
from .representations import (
    QuiverRep,
    direct_sum,
    ext_space,
    hom_space,
    scalar_rep,
)


def scalar_actions(V: QuiverRep):
    """Generator actions on V when End(V) = L: vertex-wise x_i * identity."""
    F = V.field
    out = []
    for g in F.gens():
        out.append(tuple(Matrix.identity(F, n).scale(g) for n in V.dims))
    return out


def _block_actions(a1, a2, V1: QuiverRep, V2: QuiverRep):
    F = V1.field
    out = []
    for m1, m2 in zip(a1, a2):
        blocks = []
        for i in range(V1.quiver.n):
            z = F.zero()
            rows = [list(r) + [z] * V2.dims[i] for r in m1[i].rows]
            rows += [[z] * V1.dims[i] + list(r) for r in m2[i].rows]
            blocks.append(Matrix(F, rows, V1.dims[i] + V2.dims[i]))
        out.append(tuple(blocks))
    return out


def _check_actions(V: QuiverRep, actions):
    if len(actions) != V.field.ngens:
        raise ShapeMismatch(f"expected {V.field.ngens} generator actions")
    for act in actions:
        if len(act) != V.quiver.n:
            raise ShapeMismatch("an action needs one matrix per vertex")
        for i, m in enumerate(act):
            if m.shape != (V.dims[i], V.dims[i]):
                raise ShapeMismatch(f"action matrix at vertex {i} has shape {m.shape}")


class ExtBimodule:
    """Ext^1(U, V) with the left (through V) and right (through U) generator actions.

    The operators act on coordinates with respect to the canonical cokernel
    representatives; delta_i = left_i - right_i.
    """

    def __init__(self, U: QuiverRep, V: QuiverRep, actions_U=None, actions_V=None):
        F = U.field
        if not F.is_function_field:
            raise DescriptorMismatch("the Ext bimodule needs a function field")
        self.U, self.V = U, V
        self.actions_U = actions_U if actions_U is not None else scalar_actions(U)
        self.actions_V = actions_V if actions_V is not None else scalar_actions(V)
        _check_actions(U, self.actions_U)
        _check_actions(V, self.actions_V)
        self.space = ext_space(U, V)
        Q = U.quiver
        n = self.space.dim
        self.left, self.right = [], []
        for aU, aV in zip(self.actions_U, self.actions_V):
            lcols, rcols = [], []
            for rep in self.space.representatives:
                post = {a.id: aV[Q.h(a)] @ rep[a.id] for a in Q.arrows}
                pre = {a.id: rep[a.id] @ aU[Q.t(a)] for a in Q.arrows}
                lcols.append(self.space.coords(post))
                rcols.append(self.space.coords(pre))
            self.left.append(_from_columns(F, lcols, n))
            self.right.append(_from_columns(F, rcols, n))
        self.koszul = KoszulBimodule(F, n, [l - r for l, r in zip(self.left, self.right)])

    @property
    def dim(self):
        return self.space.dim

    @property
    def field(self) -> Field:
        return self.U.field


def _from_columns(F, cols, n):
    rows = [[cols[c][r] for c in range(len(cols))] for r in range(n)]
    return Matrix(F, rows, len(cols))


def ext_bimodule(U: QuiverRep, V: QuiverRep, actions_U=None, actions_V=None) -> KoszulBimodule:
    return ExtBimodule(U, V, actions_U, actions_V).koszul


def hom_bimodule(U: QuiverRep, V: QuiverRep, actions_U=None, actions_V=None) -> KoszulBimodule:
    """Hom(U, V) with delta_i f = (x_i on V) f - f (x_i on U), in hom-basis coordinates."""
    F = U.field
    actions_U = actions_U if actions_U is not None else scalar_actions(U)
    actions_V = actions_V if actions_V is not None else scalar_actions(V)
    H = hom_space(U, V)
    n = H.dim
    flat = [_flatten(f) for f in H.basis]
    basis_matrix = Matrix(F, [list(r) for r in zip(*flat)], n) if n else None
    deltas = []
    for aU, aV in zip(actions_U, actions_V):
        cols = []
        for f in H.basis:
            g = [aV[i] @ f[i] - f[i] @ aU[i] for i in range(len(f))]
            c = solve(basis_matrix, _flatten(g))
            if c is None:
                raise NotADerivation("the generator actions do not preserve Hom")
            cols.append(c)
        deltas.append(_from_columns(F, cols, n))
    return KoszulBimodule(F, n, deltas)


def _flatten(maps):
    return [x for m in maps for row in m.rows for x in row]


# -- two-term objects and the lifting decision -------------------------------------

class TwoStepObject:
    """U + sV with the generator images phi21 in Ext^1(U, V) coordinates."""

    def __init__(self, U: QuiverRep, V: QuiverRep, phi21, actions_U=None, actions_V=None):
        self.bimodule = ExtBimodule(U, V, actions_U, actions_V)
        F = U.field
        d = F.ngens
        if len(phi21) != d:
            raise ShapeMismatch(f"phi21 needs {d} generator images")
        self.phi21 = [[F(x) for x in v] for v in phi21]
        for v in self.phi21:
            if len(v) != self.bimodule.dim:
                raise ShapeMismatch(f"phi21 entries must have length {self.bimodule.dim}")
        if not derivation_check(self.phi21, self.bimodule.koszul):
            raise NotADerivation("phi21 fails the derivation condition")

    @property
    def U(self):
        return self.bimodule.U

    @property
    def V(self):
        return self.bimodule.V

    @property
    def field(self):
        return self.U.field

    def phi21_cochains(self):
        """phi21(x_i) as arrow-wise cochains."""
        return [self.bimodule.space.cochain(v) for v in self.phi21]

    def to_json(self):
        return {"quiver": self.U.quiver.to_json(), "U": self.U.to_json(), "V": self.V.to_json(),
                "ext_dim": self.bimodule.dim,
                "phi21": [[str(x) for x in v] for v in self.phi21],
                "actions_U": [[m.to_strings() for m in a] for a in self.bimodule.actions_U],
                "actions_V": [[m.to_strings() for m in a] for a in self.bimodule.actions_V]}


@dataclass(frozen=True)
class LiftCertificate:
    verdict: str
    witness: tuple | None
    cocycle_check: bool
    coboundary_rank: int
    augmented_rank: int
    class_rank: int

    @property
    def lifts(self):
        return self.verdict == "lifts"

    def as_dict(self):
        return {"verdict": self.verdict,
                "witness": None if self.witness is None else [str(x) for x in self.witness],
                "cocycle_check": self.cocycle_check, "coboundary_rank": self.coboundary_rank,
                "augmented_rank": self.augmented_rank, "hh1_rank": self.class_rank}


def lift_test(Z: TwoStepObject) -> LiftCertificate:
    M = Z.bimodule.koszul
    if not derivation_check(Z.phi21, M):
        raise NotADerivation("phi21 fails the derivation condition")
    ranks = inner_certificate(Z.phi21, M)
    hh1 = koszul_hh(M, 1).rank if M.d >= 1 else 0
    m = is_inner(Z.phi21, M)
    if m is not None:
        for D, e in zip(M.deltas, Z.phi21):
            if D.apply(m) != e:
                raise AssertionError("inner witness failed to re-verify")
        return LiftCertificate("lifts", tuple(m), True, ranks["coboundary_rank"],
                               ranks["augmented_rank"], hh1)
    if ranks["augmented_rank"] <= ranks["coboundary_rank"]:
        raise AssertionError("infeasible solve without a rank jump")
    return LiftCertificate("obstructed", None, True, ranks["coboundary_rank"],
                           ranks["augmented_rank"], hh1)


@dataclass(frozen=True)
class Unit:
    """Lower triangular automorphism (u1, 0; w, u2) of U + sV; u1, u2 are L-scalars."""
    u1: object
    u2: object
    w: tuple


def unit_from_witness(m, u1=1, u2=1) -> Unit:
    return Unit(u1, u2, tuple(m))


def phi21_from_unit(pi: Unit, bimodule: ExtBimodule):
    """Off-diagonal part of pi^{-1} phi_triv(x_i) pi for each generator.

    With phi11, phi22 the generator actions this is
    -u2^{-1} w u1^{-1} phi11 u1 + u2^{-1} phi22 w, i.e. u2^{-1} (left_i - right_i)(w).
    """
    F = bimodule.field
    inv2 = 1 / F(pi.u2)
    w = [F(x) for x in pi.w]
    out = []
    # u1 is a scalar, so u1^{-1} phi11 u1 = phi11
    for L, R in zip(bimodule.left, bimodule.right):
        a = R.apply(w)
        b = L.apply(w)
        out.append([inv2 * (y - x) for x, y in zip(a, b)])
    return out


def summand_class_check(Z: TwoStepObject, Zp: TwoStepObject) -> bool:
    """Does the class of Z + Z' vanish exactly when both component classes vanish?"""
    if Z.U.quiver != Zp.U.quiver or Z.field != Zp.field:
        raise DescriptorMismatch("summands must share quiver and field")
    B1, B2 = Z.bimodule, Zp.bimodule
    U = direct_sum(B1.U, B2.U)
    V = direct_sum(B1.V, B2.V)
    aU = _block_actions(B1.actions_U, B2.actions_U, B1.U, B2.U)
    aV = _block_actions(B1.actions_V, B2.actions_V, B1.V, B2.V)
    combined = ExtBimodule(U, V, aU, aV)
    Q = U.quiver
    F = U.field
    phi = []
    for c1, c2 in zip(Z.phi21_cochains(), Zp.phi21_cochains()):
        cochain = {}
        for a in Q.arrows:
            t = Q.t(a)
            z = F.zero()
            rows = [list(r) + [z] * B2.U.dims[t] for r in c1[a.id].rows]
            rows += [[z] * B1.U.dims[t] + list(r) for r in c2[a.id].rows]
            cochain[a.id] = Matrix(F, rows, U.dims[t])
        phi.append(combined.space.coords(cochain))
    inner_combined = is_inner(phi, combined.koszul) is not None
    inner_parts = lift_test(Z).lifts and lift_test(Zp).lifts
    return inner_combined == inner_parts


# -- Ext versus Hom rank comparison -----------------------------------------------

def _koszul_rank(M: KoszulBimodule, n):
    if n < 0 or n > M.d:
        return 0
    return koszul_hh(M, n).rank


@dataclass(frozen=True)
class RankComparison:
    rows: tuple  # (i, rank HH^{1+i}(Ext), rank HH^{3+i}(Hom))

    @property
    def passed(self):
        return all(a == b for _, a, b in self.rows)

    def as_dict(self):
        return {"pass": self.passed,
                "rows": [{"i": i, "hh_ext": a, "hh_hom": b, "equal": a == b} for i, a, b in self.rows]}


def ext_hom_rank_check(U: QuiverRep, V: QuiverRep, actions_U=None, actions_V=None, top=None) -> RankComparison:
    """Compare rank HH^{1+i}(L, Ext^1(U,V)) with rank HH^{3+i}(L, Hom(U,V)) for i = 0..top."""
    ext = ext_bimodule(U, V, actions_U, actions_V)
    hom = hom_bimodule(U, V, actions_U, actions_V)
    d = U.field.ngens
    top = d if top is None else top
    rows = tuple((i, _koszul_rank(ext, 1 + i), _koszul_rank(hom, 3 + i)) for i in range(top + 1))
    return RankComparison(rows)


# -- the two counterexamples --------------------------------------------------------

def generic_field(base: Field = QQ) -> Field:
    return FunctionField(base, "x", "y", "z")


def threeloop_rep(L: Field | None = None) -> QuiverRep:
    L = L or generic_field()
    x, y, z = L.gens()
    return scalar_rep(BUILTIN["threeloop"](), L, {"a1": x, "a2": y, "a3": z})


def kronecker4_rep(L: Field | None = None) -> QuiverRep:
    L = L or generic_field()
    x, y, z = L.gens()
    return scalar_rep(BUILTIN["kronecker4"](), L, {"a1": L.one(), "a2": x, "a3": y, "a4": z})


def _first_class(U: QuiverRep) -> TwoStepObject:
    n = ext_space(U, U).dim
    F = U.field
    e1 = [F.one() if k == 0 else F.zero() for k in range(n)]
    zero = [F.zero()] * n
    return TwoStepObject(U, U, [e1] + [zero] * (F.ngens - 1))


def build_counterexample_threeloop(base: Field = QQ) -> TwoStepObject:
    return _first_class(threeloop_rep(generic_field(base)))


def build_counterexample_kronecker4(base: Field = QQ) -> TwoStepObject:
    return _first_class(kronecker4_rep(generic_field(base)))


def trivial_object(U: QuiverRep, V: QuiverRep | None = None) -> TwoStepObject:
    V = U if V is None else V
    n = ext_space(U, V).dim
    F = U.field
    return TwoStepObject(U, V, [[F.zero()] * n for _ in range(F.ngens)])


def unipotent_double(U: QuiverRep, shifts):
    """V = U + U with generator x_i acting by [[x_i, c_i], [0, x_i]] at every vertex.

    These actions commute with each other and with the arrows, and make
    Ext^1(U, V) a non-symmetric bimodule as soon as some c_i is nonzero.
    """
    F = U.field
    if len(shifts) != F.ngens:
        raise ShapeMismatch(f"need {F.ngens} shifts")
    V = direct_sum(U, U)
    acts = []
    for g, c in zip(F.gens(), shifts):
        c = F(c)
        blocks = []
        for n in U.dims:
            z = F.zero()
            rows = [[g if j == i else z for j in range(n)] + [c if j == i else z for j in range(n)]
                    for i in range(n)]
            rows += [[z] * n + [g if j == i else z for j in range(n)] for i in range(n)]
            blocks.append(Matrix(F, rows, 2 * n))
        acts.append(tuple(blocks))
    return V, acts


def inner_object(U: QuiverRep, V: QuiverRep, m, actions_U=None, actions_V=None) -> TwoStepObject:
    """The object whose phi21 is the coboundary of m."""
    B = ExtBimodule(U, V, actions_U, actions_V)
    phi = [D.apply([U.field(x) for x in m]) for D in B.koszul.deltas]
    return TwoStepObject(U, V, phi, actions_U, actions_V)


def koszul_cocycles(M: KoszulBimodule, n: int):
    return KoszulComplex(M).cocycles(n)
