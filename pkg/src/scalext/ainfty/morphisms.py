"""A-infinity morphisms: defects, arity-by-arity lifting and obstruction classes.

A morphism psi: A -> C is a family of degree-0 components psi_n: (sA)^n -> sC
with b_C o psi = psi o b_A.  Given psi_1..psi_n solving this through arity n,
the arity-(n+1) equation is affine in (psi_n + delta_n, psi_{n+1}) where
delta_n ranges over b_1-closed components; solving for both at once is the
"modify psi_n, then solve for psi_{n+1}" step of the obstruction theory.  When
that system is infeasible the defect D_{n+1}, pushed down to cohomology, is a
Hochschild cocycle that is not a coboundary, and both facts are re-checked
with :mod:`scalext.hochschild`.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product
import random

from ..config import max_arity
from ..errors import ArityBudgetExceeded, DefectAtLowerArity, NotCohomologyMultiplicative
from ..hochschild import GradedBimodule, HochschildComplex
from .algebra import AInftyAlgebra, Cohomology, TaylorMap, cohomology_algebra, differential_of
from .core import (
    _add,
    compositions,
    degree_keys,
    evaluate,
    insert,
    is_zero,
    tensor_into,
)
from .solve import LinearSystem


def defect_component(A: AInftyAlgebra, C: AInftyAlgebra, psi: dict, m: int):
    """(b_C o psi - psi o b_A) at arity m, using whatever components psi has."""
    acc = {}
    have = sorted(k for k, v in psi.items() if v)
    for k, bk in C.b.items():
        if k > m:
            continue
        for parts in compositions(m, k, have):
            tensor_into(bk, [psi[i] for i in parts], acc)
    for q, bq in A.b.items():
        outer = psi.get(m - q + 1)
        if not outer or q > m:
            continue
        for p in range(m - q + 1):
            insert(outer, bq, p, A.sdeg, 1, acc, scale=-1)
    return acc


def b1_commutator(C: AInftyAlgebra, A: AInftyAlgebra, comp: dict, degree: int):
    """[b_1, comp] = b_1 comp - (-1)^|comp| comp b_1 for a component of one arity."""
    acc = {}
    b1C = C.b.get(1)
    if b1C:
        tensor_into(b1C, [comp], acc)
    b1A = A.b.get(1)
    if b1A and comp:
        n = len(next(iter(comp)))
        scale = 1 if degree % 2 else -1
        for p in range(n):
            insert(comp, b1A, p, A.sdeg, 1, acc, scale=scale)
    return acc


@dataclass
class ObstructionClass:
    arity: int
    internal_degree: int
    cochain: dict  # {(args, target): coeff} on cohomology bases
    closed: bool
    exact: bool
    system_ranks: tuple  # (coefficient rank, augmented rank) of the infeasible solve
    hochschild_ranks: dict = dc_field(default_factory=dict)

    @property
    def vanishing(self):
        return self.exact

    def as_dict(self):
        return {"arity": self.arity, "internal_degree": self.internal_degree,
                "closed": self.closed, "exact": self.exact, "vanishing": self.vanishing,
                "cochain": {f"{','.join(map(str, a))}->{t}": str(c)
                            for (a, t), c in sorted(self.cochain.items())},
                "system_ranks": list(self.system_ranks), **self.hochschild_ranks}


@dataclass
class LiftResult:
    map: TaylorMap | None
    obstruction: ObstructionClass | None
    verified_to: int

    @property
    def ok(self):
        return self.obstruction is None

    def as_dict(self):
        d = {"ok": self.ok, "verified_to_arity": self.verified_to}
        if self.map is not None:
            d["map"] = self.map.to_json()
        if self.obstruction is not None:
            d["obstruction"] = self.obstruction.as_dict()
        return d


def _budget(N, budget):
    limit = max_arity() if budget is None else budget
    if N > limit:
        raise ArityBudgetExceeded(f"arity {N} exceeds budget {limit}")


def morphism_defect(A: AInftyAlgebra, C: AInftyAlgebra, psi: TaylorMap, n: int | None = None):
    """Defect of psi_{<=n}: checks D_m = 0 for m <= n and returns D_{n+1}.

    D_{n+1} is also checked to satisfy [b_1, D_{n+1}] = 0.
    """
    comps = {k: v for k, v in psi.components.items() if v and (n is None or k <= n)}
    if n is None:
        n = max(comps, default=0)
    for m in range(1, n + 1):
        if not is_zero(defect_component(A, C, comps, m)):
            raise DefectAtLowerArity(f"the morphism equation fails at arity {m}")
    D = defect_component(A, C, comps, n + 1)
    if not is_zero(b1_commutator(C, A, D, 1)):
        raise AssertionError("defect is not b_1-closed")
    return TaylorMap(A.space, C.space, {n + 1: D}, 1, "b", n)


# -- cohomology-level data -----------------------------------------------------------

class _CohomologyPair:
    """H(A), H(C) as graded algebras, with H(C) an H(A)-bimodule through H(phi)."""

    def __init__(self, A: AInftyAlgebra, C: AInftyAlgebra, psi1: dict):
        self.HA, self.cohA = cohomology_algebra(A, Cohomology(A.space, differential_of(A)))
        self.HC, self.cohC = cohomology_algebra(C, Cohomology(C.space, differential_of(C)))
        phi = []
        for rep in self.cohA.reps:
            img = evaluate(psi1, [rep])
            phi.append(self.cohC.project(img))
        self.phi = phi
        self.bimodule = GradedBimodule.restricted(self.HA, self.HC, phi)

    def multiplicative(self):
        HA, HC = self.HA, self.HC
        for i, j in product(range(HA.dim), repeat=2):
            lhs = {}
            for k, c in HA.product(i, j).items():
                for t, x in self.phi[k].items():
                    _add_vec(lhs, t, c * x)
            rhs = HC.mul(self.phi[i], self.phi[j])
            if lhs != rhs:
                return False
        return True


def _add_vec(acc, k, v):
    x = acc.get(k)
    x = v if x is None else x + v
    if x:
        acc[k] = x
    else:
        acc.pop(k, None)


def _suspension_sign(degrees):
    # s^{(x) n} applied to a_1 (x) ... (x) a_n
    n = len(degrees)
    e = sum((n - 1 - i) * d for i, d in enumerate(degrees))
    return -1 if e % 2 else 1


def cohomology_cochain(D: dict, coh_src: Cohomology, coh_tgt: Cohomology, arity: int, tail=None):
    """Push a closed defect down to an unsuspended cochain on cohomology bases.

    With ``tail`` (source-module cohomology) the last slot ranges over that
    space instead and the result is a Hom-valued cochain keyed by
    ((args..., m), target).
    """
    out = {}
    nargs = arity if tail is None else arity - 1
    for args in product(range(coh_src.dim), repeat=nargs):
        vecs = [coh_src.reps[a] for a in args]
        degs = [coh_src.degrees[a] for a in args]
        last = [None] if tail is None else range(tail.dim)
        for m in last:
            if m is None:
                val = evaluate(D, vecs)
                sign = _suspension_sign(degs)
                key = args
            else:
                # the module slot is not suspended
                val = evaluate(D, vecs + [tail.reps[m]])
                sign = _suspension_sign(degs)
                key = args + (m,)
            for t, c in coh_tgt.project(val).items():
                out[(key, t)] = sign * c
    return out


def certify(cochain: dict, HB, bimodule, n: int, j: int, tail_dim=None):
    """(closed, exact, ranks) of a cochain in C^n(HB, bimodule)_j."""
    hc = HochschildComplex(HB, bimodule, normalized=False)
    basis, index = hc.basis(n, j)
    vec = {}
    for (key, t), c in cochain.items():
        if tail_dim is None:
            args, target = key, t
        else:
            args, m = key[:-1], key[-1]
            target = t * tail_dim + m
        idx = index.get((args, target))
        if idx is None:
            if c:
                raise AssertionError("obstruction cochain has the wrong internal degree")
            continue
        vec[idx] = c
    closed = hc.is_cocycle(vec, n, j)
    exact = hc.is_coboundary(vec, n, j)
    ranks = {"cochain_dim": len(basis), "hh_rank": hc.report(n, j, verify=False).rank}
    return closed, exact, ranks


# -- lifting ---------------------------------------------------------------------------

def _unknown_component(sys_: LinearSystem, keys, tag, base=None):
    comp = {}
    for key, o in keys:
        b = None if base is None else base.get(key, {}).get(o)
        _add(comp, key, o, sys_.new_var((tag, key, o), b))
    return comp


def _gauge(rng):
    if rng is None:
        return None
    return lambda j: rng.randint(-3, 3)


def _normal_skip(A: AInftyAlgebra, C: AInftyAlgebra, psi1):
    # strictly unital data lets higher components vanish on the unit
    if A.unit is None or C.unit_vector is None:
        return ()
    if psi1.get((A.unit,)) != C.unit_vector:
        return ()
    return (A.unit,)


def lift_algebra_morphism(A: AInftyAlgebra, C: AInftyAlgebra, phi: dict, N: int,
                          budget=None, gauge_seed=None) -> LiftResult:
    """Extend a chain map phi (``{i: {j: c}}``) to an A-infinity morphism up to arity N."""
    if N < 2:
        raise ValueError("target arity must be at least 2")
    _budget(N, budget)
    psi = {1: {(i,): dict(row) for i, row in phi.items() if row}}
    if not is_zero(defect_component(A, C, psi, 1)):
        raise DefectAtLowerArity("phi is not a chain map")
    pair = _CohomologyPair(A, C, psi[1])
    if not pair.multiplicative():
        raise NotCohomologyMultiplicative("phi does not induce an algebra map on cohomology")
    rng = random.Random(gauge_seed) if gauge_seed is not None else None
    skip = _normal_skip(A, C, psi[1])
    for n in range(1, N):
        sys_ = LinearSystem(C.field)
        trial = dict(psi)
        delta = None
        if n >= 2:
            keys = degree_keys(A.sdeg, C.sdeg, n, 0, skip)
            trial[n] = _unknown_component(sys_, keys, "delta", psi.get(n, {}))
            delta = {k: {o: c - (psi.get(n, {}).get(k, {}).get(o) or 0) for o, c in row.items()}
                     for k, row in trial[n].items()}
            sys_.require_zero(b1_commutator(C, A, delta, 0))
        keys = degree_keys(A.sdeg, C.sdeg, n + 1, 0, skip)
        trial[n + 1] = _unknown_component(sys_, keys, "psi", None)
        sys_.require_zero(defect_component(A, C, trial, n + 1))
        sol = sys_.solve(_gauge(rng))
        if sol is None:
            return LiftResult(None, _algebra_obstruction(A, C, psi, n, pair, sys_), n)
        if n >= 2:
            psi[n] = sys_.substitute(trial[n], sol)
        psi[n + 1] = sys_.substitute(trial[n + 1], sol)
    for m in range(1, N + 1):
        if not is_zero(defect_component(A, C, psi, m)):
            raise AssertionError(f"lifted morphism fails at arity {m}")
    return LiftResult(TaylorMap(A.space, C.space, psi, 0, "b", N), None, N)


def _algebra_obstruction(A, C, psi, n, pair: _CohomologyPair, sys_: LinearSystem):
    D = defect_component(A, C, psi, n + 1)
    cochain = cohomology_cochain(D, pair.cohA, pair.cohC, n + 1)
    j = -n + 1
    closed, exact, ranks = certify(cochain, pair.HA, pair.bimodule, n + 1, j)
    if not closed or exact:
        raise AssertionError(f"inconsistent obstruction at arity {n + 1}: closed={closed} exact={exact}")
    return ObstructionClass(n + 1, j, cochain, closed, exact, sys_.rank_certificate(), ranks)


def strict_identity(A: AInftyAlgebra) -> dict:
    return {i: {i: A.field.one()} for i in range(A.space.dim)}


def morphism_equation_holds(A, C, psi: TaylorMap, N: int) -> bool:
    return all(is_zero(defect_component(A, C, psi.components, m)) for m in range(1, N + 1))
