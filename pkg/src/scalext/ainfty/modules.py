"""A-infinity modules over an A-infinity algebra B, their morphisms and homotopies.

A left module structure on a graded space M is a family of degree-1 maps
b_M^(k): (sB)^k (x) M -> M, k >= 0, with b_M^(0) = d_M and
b_M^(1)(sb, m) = b.m for a strict DG module.  Components are stored with keys
(b_1, ..., b_k, m); M itself is not suspended.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
import random

from ..errors import (
    DefectAtLowerArity,
    NoChainLevelLift,
    NotCohomologyMultiplicative,
    ObstructionNonzero,
)
from ..hochschild import GradedAlgebra, GradedBimodule, GradedModule, hh_condition
from .algebra import AInftyAlgebra, Cohomology, TaylorMap, cohomology_algebra, differential_of
from .core import GradedSpace, _add, evaluate, insert, is_zero, module_keys
from .morphisms import (
    LiftResult,
    ObstructionClass,
    _budget,
    _gauge,
    _unknown_component,
    certify,
    cohomology_cochain,
    lift_algebra_morphism,
)
from .solve import LinearSystem


class AInftyModule:
    def __init__(self, algebra: AInftyAlgebra, space: GradedSpace, components: dict):
        self.algebra = algebra
        self.space = space
        self.field = space.field
        self.b = {k: {key: dict(r) for key, r in c.items() if r} for k, c in components.items()}

    def component(self, k):
        return self.b.get(k, {})

    @classmethod
    def strict(cls, B: AInftyAlgebra, space: GradedSpace, d: dict, action: dict):
        """DG module: d = {m: {m': c}}, action = {(b, m): {m': c}}."""
        comps = {0: {(m,): dict(r) for m, r in d.items() if r},
                 1: {(b, m): dict(r) for (b, m), r in action.items() if r}}
        return cls(B, space, comps)

    @classmethod
    def regular(cls, B: AInftyAlgebra):
        m = B.m_components()
        d = {k[0]: r for k, r in m.get(1, {}).items()}
        action = {k: r for k, r in m.get(2, {}).items()}
        return cls.strict(B, B.space, d, action)

    def differential(self):
        return {k[0]: dict(r) for k, r in self.b.get(0, {}).items()}

    def is_strictly_unital(self):
        u = self.algebra.unit
        if u is None:
            return False
        one = self.field.one()
        for m in range(self.space.dim):
            if self.b.get(1, {}).get((u, m)) != {m: one}:
                return False
        for k, comp in self.b.items():
            if k >= 2 and any(u in key[:-1] for key in comp):
                return False
        return True

    def to_json(self):
        from .core import to_strings
        return {"space": self.space.to_json(),
                "b": {str(k): to_strings(c) for k, c in sorted(self.b.items()) if c}}


def module_square(M: AInftyModule, k: int):
    """Component with k algebra arguments of b_M o b_M (including b_B insertions)."""
    B = M.algebra
    acc = {}
    for j in range(k + 1):
        outer, inner = M.b.get(k - j), M.b.get(j)
        if outer and inner:
            insert(outer, inner, -1, B.sdeg, 1, acc)
    for q in range(1, k + 1):
        outer, bq = M.b.get(k - q + 1), B.b.get(q)
        if outer and bq:
            for p in range(k - q + 1):
                insert(outer, bq, p, B.sdeg, 1, acc)
    return acc


def module_square_violations(M: AInftyModule, N: int):
    return [k for k in range(N) if not is_zero(module_square(M, k))]


def module_defect(M: AInftyModule, N: AInftyModule, f: dict, k: int):
    """(b_N o f - f o b_M) with k algebra arguments, f of degree 0."""
    B = M.algebra
    acc = {}
    for j in range(k + 1):
        outer, inner = N.b.get(k - j), f.get(j)
        if outer and inner:
            insert(outer, inner, -1, B.sdeg, 0, acc)
        outer, inner = f.get(k - j), M.b.get(j)
        if outer and inner:
            insert(outer, inner, -1, B.sdeg, 1, acc, scale=-1)
    for q in range(1, k + 1):
        outer, bq = f.get(k - q + 1), B.b.get(q)
        if outer and bq:
            for p in range(k - q + 1):
                insert(outer, bq, p, B.sdeg, 1, acc, scale=-1)
    return acc


def homotopy_image(M: AInftyModule, N: AInftyModule, h: dict, k: int):
    """(b_N o h + h o b_M) with k algebra arguments, h of degree -1."""
    B = M.algebra
    acc = {}
    for j in range(k + 1):
        outer, inner = N.b.get(k - j), h.get(j)
        if outer and inner:
            insert(outer, inner, -1, B.sdeg, -1, acc)
        outer, inner = h.get(k - j), M.b.get(j)
        if outer and inner:
            insert(outer, inner, -1, B.sdeg, 1, acc)
    for q in range(1, k + 1):
        outer, bq = h.get(k - q + 1), B.b.get(q)
        if outer and bq:
            for p in range(k - q + 1):
                insert(outer, bq, p, B.sdeg, 1, acc)
    return acc


# -- cohomology of modules ------------------------------------------------------------

class ModuleCohomology:
    """H(B) as a graded algebra and H(M) as a graded H(B)-module."""

    def __init__(self, M: AInftyModule, HB: GradedAlgebra | None = None, cohB: Cohomology | None = None):
        B = M.algebra
        if HB is None:
            HB, cohB = cohomology_algebra(B, Cohomology(B.space, differential_of(B)))
        self.HB, self.cohB = HB, cohB
        self.coh = Cohomology(M.space, M.differential())
        action = {}
        b1 = M.b.get(1, {})
        for i, rb in enumerate(cohB.reps):
            for j, rm in enumerate(self.coh.reps):
                v = evaluate(b1, [rb, rm])
                c = self.coh.project(v)
                if c:
                    action[(i, j)] = c
        names = [f"m{i}" for i in range(self.coh.dim)]
        self.HM = GradedModule(HB, names, self.coh.degrees, action)


def hom_bimodule_of(HM: GradedModule, HN: GradedModule):
    return GradedBimodule.hom(HM, HN)


def _module_obstruction(M, N, D, k, cm: ModuleCohomology, cn: ModuleCohomology, sys_):
    cochain = cohomology_cochain(D, cm.cohB, cn.coh, k + 1, tail=cm.coh)
    E = hom_bimodule_of(cm.HM, cn.HM)
    j = -k + 1
    closed, exact, ranks = certify(cochain, cm.HB, E, k, j, tail_dim=cm.coh.dim)
    if not closed or exact:
        raise AssertionError(f"inconsistent module obstruction at {k} arguments: closed={closed} exact={exact}")
    return ObstructionClass(k, j, cochain, closed, exact, sys_.rank_certificate(), ranks)


def _skip_unit(M, N):
    if M.is_strictly_unital() and N.is_strictly_unital():
        return (M.algebra.unit,)
    return ()


def lift_module_morphism(M: AInftyModule, N: AInftyModule, f1: dict, N_arity: int,
                         budget=None, gauge_seed=None) -> LiftResult:
    """Extend a chain map f1 = {m: {n: c}} to an A-infinity module morphism.

    N_arity counts all inputs, so the top component has N_arity - 1 algebra arguments.
    """
    _budget(N_arity, budget)
    B = M.algebra
    f = {0: {(m,): dict(r) for m, r in f1.items() if r}}
    if not is_zero(module_defect(M, N, f, 0)):
        raise DefectAtLowerArity("f1 is not a chain map")
    cm = ModuleCohomology(M)
    cn = ModuleCohomology(N, cm.HB, cm.cohB)
    D1 = module_defect(M, N, f, 1)
    if cohomology_cochain(D1, cm.cohB, cn.coh, 2, tail=cm.coh):
        raise NotCohomologyMultiplicative("f1 is not H(B)-linear on cohomology")
    rng = random.Random(gauge_seed) if gauge_seed is not None else None
    skip = _skip_unit(M, N)
    for k in range(0, N_arity - 1):
        sys_ = LinearSystem(M.field)
        trial = dict(f)
        if k >= 1:
            keys = module_keys(B.sdeg, M.space.degrees, N.space.degrees, k, 0, skip)
            trial[k] = _unknown_component(sys_, keys, "delta", f.get(k, {}))
            delta = {key: {o: c - (f.get(k, {}).get(key, {}).get(o) or 0) for o, c in row.items()}
                     for key, row in trial[k].items()}
            sys_.require_zero(module_defect(M, N, {k: delta}, k))
        keys = module_keys(B.sdeg, M.space.degrees, N.space.degrees, k + 1, 0, skip)
        trial[k + 1] = _unknown_component(sys_, keys, "f", None)
        sys_.require_zero(module_defect(M, N, trial, k + 1))
        sol = sys_.solve(_gauge(rng))
        if sol is None:
            D = module_defect(M, N, f, k + 1)
            return LiftResult(None, _module_obstruction(M, N, D, k + 1, cm, cn, sys_), k + 1)
        if k >= 1:
            f[k] = sys_.substitute(trial[k], sol)
        f[k + 1] = sys_.substitute(trial[k + 1], sol)
    for k in range(N_arity):
        if not is_zero(module_defect(M, N, f, k)):
            raise AssertionError(f"lifted module morphism fails with {k} arguments")
    return LiftResult(TaylorMap(M.space, N.space, f, 0, "module", N_arity), None, N_arity)


def module_morphism_holds(M, N, f: dict, N_arity: int) -> bool:
    return all(is_zero(module_defect(M, N, f, k)) for k in range(N_arity))


def nullhomotopy(M: AInftyModule, N: AInftyModule, g: dict, N_arity: int, budget=None,
                 check_condition=True) -> TaylorMap:
    """Find h with g = b_N o h + h o b_M through N_arity inputs."""
    _budget(N_arity, budget)
    B = M.algebra
    if not module_morphism_holds(M, N, g, N_arity):
        raise DefectAtLowerArity("g is not a module morphism")
    cm = ModuleCohomology(M)
    cn = ModuleCohomology(N, cm.HB, cm.cohB)
    g0 = g.get(0, {})
    for rm in cm.coh.reps:
        if cn.coh.project(evaluate(g0, [rm])):
            raise ValueError("g is nonzero on cohomology")
    if check_condition:
        report = hh_condition(cm.HB, hom_bimodule_of(cm.HM, cn.HM), "faithful",
                              max(1, N_arity - 1), budget=max(N_arity, 1))
        if not report.holds:
            raise ObstructionNonzero(f"faithfulness groups do not vanish: {report.rows}")
    skip = _skip_unit(M, N)
    h = {}
    for k in range(N_arity):
        sys_ = LinearSystem(M.field)
        trial = dict(h)
        if k >= 1:
            keys = module_keys(B.sdeg, M.space.degrees, N.space.degrees, k - 1, -1, skip)
            trial[k - 1] = _unknown_component(sys_, keys, "delta", h.get(k - 1, {}))
            delta = {key: {o: c - (h.get(k - 1, {}).get(key, {}).get(o) or 0) for o, c in row.items()}
                     for key, row in trial[k - 1].items()}
            sys_.require_zero(homotopy_image(M, N, {k - 1: delta}, k - 1))
        keys = module_keys(B.sdeg, M.space.degrees, N.space.degrees, k, -1, skip)
        trial[k] = _unknown_component(sys_, keys, "h", None)
        resid = homotopy_image(M, N, trial, k)
        for key, row in g.get(k, {}).items():
            for o, c in row.items():
                _add(resid, key, o, -c)
        sys_.require_zero(resid)
        sol = sys_.solve()
        if sol is None:
            raise ObstructionNonzero(f"no homotopy extends to {k} algebra arguments")
        if k >= 1:
            h[k - 1] = sys_.substitute(trial[k - 1], sol)
        h[k] = sys_.substitute(trial[k], sol)
    if not homotopy_holds(M, N, g, h, N_arity):
        raise AssertionError("homotopy identity fails after solving")
    return TaylorMap(M.space, N.space, h, -1, "module", N_arity)


def homotopy_holds(M, N, g: dict, h: dict, N_arity: int) -> bool:
    for k in range(N_arity):
        r = homotopy_image(M, N, h, k)
        for key, row in g.get(k, {}).items():
            for o, c in row.items():
                _add(r, key, o, -c)
        if not is_zero(r):
            return False
    return True


# -- module structures from an action on cohomology ---------------------------------------

def endomorphism_algebra(space: GradedSpace, d: dict) -> AInftyAlgebra:
    """End_k(M) with composition and differential [d, f]; E_ij sends e_j to e_i."""
    n = space.dim
    idx = lambda i, j: i * n + j
    names = [f"E{i},{j}" for i in range(n) for j in range(n)]
    degrees = [space.degrees[i] - space.degrees[j] for i in range(n) for j in range(n)]
    F = space.field
    m2 = {}
    for i, j, l in product(range(n), repeat=3):
        m2[(idx(i, j), idx(j, l))] = {idx(i, l): F.one()}
    m1 = {}
    for i, j in product(range(n), repeat=2):
        out = {}
        e = degrees[idx(i, j)]
        for k, c in d.get(i, {}).items():
            _vadd(out, idx(k, j), c)
        for l in range(n):
            c = d.get(l, {}).get(j)
            if c:
                _vadd(out, idx(i, l), -c if e % 2 == 0 else c)
        if out:
            m1[(idx(i, j),)] = out
    E = AInftyAlgebra.from_m(GradedSpace(names, degrees, F), {1: m1, 2: m2})
    E.unit_vector = {idx(i, i): F.one() for i in range(n)}
    return E


def _vadd(acc, k, v):
    x = acc.get(k)
    x = v if x is None else x + v
    if x:
        acc[k] = x
    else:
        acc.pop(k, None)


@dataclass
class StructureResult:
    module: AInftyModule | None
    obstruction: ObstructionClass | None
    chain_map: dict
    verified_to: int

    @property
    def ok(self):
        return self.obstruction is None

    def as_dict(self):
        d = {"ok": self.ok, "verified_to_arity": self.verified_to}
        if self.module is not None:
            d["module"] = self.module.to_json()
        if self.obstruction is not None:
            d["obstruction"] = self.obstruction.as_dict()
        return d


def chain_level_action(B: AInftyAlgebra, space: GradedSpace, d: dict, action: dict):
    """A chain map B -> End(M) inducing ``action`` on cohomology.

    ``action[(i, j)]`` gives the class of (H(B) basis i) . (H(M) basis j) in
    the H(M) basis, both bases being those of :class:`Cohomology`.
    Raises NoChainLevelLift when no such chain map exists.
    """
    F = space.field
    n = space.dim
    cohB = Cohomology(B.space, differential_of(B))
    cohM = Cohomology(space, d)
    E = endomorphism_algebra(space, d)
    Ed = differential_of(E)
    mB = differential_of(B)
    sys_ = LinearSystem(F)
    phi = {}
    for b in range(B.space.dim):
        row = {}
        for e in range(E.space.dim):
            if E.space.degrees[e] == B.space.degrees[b]:
                row[e] = sys_.new_var(("phi", b, e))
        phi[b] = row
    # chain map: phi(d b) = [d, phi(b)]
    for b in range(B.space.dim):
        lhs = {}
        for b2, c in mB.get(b, {}).items():
            for e, x in phi[b2].items():
                _vadd(lhs, e, c * x)
        for e, x in phi[b].items():
            for e2, c in Ed.get(e, {}).items():
                _vadd(lhs, e2, -c * x)
        for v in lhs.values():
            sys_.require(v)
    # prescribed action on cohomology, up to boundaries d(w)
    for i, rb in enumerate(cohB.reps):
        for j, rm in enumerate(cohM.reps):
            target_deg = cohB.degrees[i] + cohM.degrees[j]
            out = {}
            for b, cb in rb.items():
                for e, x in phi[b].items():
                    r, s = divmod(e, n)
                    c = rm.get(s)
                    if c:
                        _vadd(out, r, cb * c * x)
            for t, c in action.get((i, j), {}).items():
                for r, x in cohM.reps[t].items():
                    _vadd(out, r, -c * x)
            for w in range(n):
                if space.degrees[w] == target_deg - 1:
                    var = sys_.new_var(("w", i, j, w))
                    for r, c in d.get(w, {}).items():
                        _vadd(out, r, -c * var)
            for v in out.values():
                sys_.require(v)
    if B.unit is not None:
        for e, x in phi[B.unit].items():
            r, s = divmod(e, n)
            sys_.require(x - (F.one() if r == s else F.zero()))
    sol = sys_.solve()
    if sol is None:
        raise NoChainLevelLift("no chain map B -> End(M) induces the given action")
    out = {}
    for b, row in phi.items():
        vals = {e: sys_.value(x, sol) for e, x in row.items()}
        vals = {e: x for e, x in vals.items() if x}
        if vals:
            out[b] = vals
    return out, E, cohB, cohM


def module_from_morphism(B: AInftyAlgebra, space: GradedSpace, d: dict, psi: dict) -> AInftyModule:
    """b_M^(k)(x, m) = (s^-1 psi_k(x))(m), with b_M^(0) = d."""
    n = space.dim
    comps = {0: {(m,): dict(r) for m, r in d.items() if r}}
    for k, comp in psi.items():
        out = {}
        for key, row in comp.items():
            for e, c in row.items():
                i, j = divmod(e, n)
                _add(out, key + (j,), i, c)
        comps[k] = out
    return AInftyModule(B, space, comps)


def lift_module_structure(B: AInftyAlgebra, space: GradedSpace, d: dict, action: dict,
                          N_arity: int, budget=None) -> StructureResult:
    _budget(N_arity, budget)
    phi, E, cohB, cohM = chain_level_action(B, space, d, action)
    res = lift_algebra_morphism(B, E, phi, max(N_arity, 2), budget=budget)
    if not res.ok:
        return StructureResult(None, res.obstruction, phi, res.verified_to)
    M = module_from_morphism(B, space, d, res.map.components)
    bad = module_square_violations(M, N_arity)
    if bad:
        raise AssertionError(f"module structure fails with {bad} algebra arguments")
    return StructureResult(M, None, phi, N_arity)
