"""JSON file forms for quivers, representations, algebras, modules and two-term objects.

Every loader raises :class:`ParseError`; JSON syntax errors carry the line and
column reported by the decoder, schema errors carry the JSON path.
"""
from __future__ import annotations

import json
from pathlib import Path

from .errors import ParseError, ScalextError
from .fields import QQ, Field, parse_field
from .hochschild import GradedAlgebra, GradedBimodule, GradedModule
from .linalg import Matrix
from .quiver import BUILTIN, Quiver
from .representations import QuiverRep

SCHEMA_VERSION = 1


def load_json(source):
    """Parse a path or an already-decoded object."""
    if isinstance(source, (dict, list)):
        return source
    path = Path(source)
    try:
        text = path.read_text()
    except OSError as e:
        raise ParseError(f"cannot read {source}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path.name}: {e.msg}", line=e.lineno, column=e.colno) from None


def _need(obj, key, where, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"{where}: missing key {key!r}")
    v = obj[key]
    if kind is not None and not isinstance(v, kind):
        raise ParseError(f"{where}.{key}: expected {kind.__name__ if isinstance(kind, type) else 'value'}")
    return v


def _scalar(field: Field, x, where):
    if isinstance(x, bool):
        raise ParseError(f"{where}: booleans are not scalars")
    try:
        if isinstance(x, int):
            return field(x)
        if isinstance(x, str):
            return field.parse(x)
    except ParseError as e:
        raise ParseError(f"{where}: {e}") from None
    except (ScalextError, ValueError, ZeroDivisionError) as e:
        raise ParseError(f"{where}: {e}") from None
    raise ParseError(f"{where}: scalars are integers or strings")


def field_from(obj, where="field") -> Field:
    if obj is None:
        return QQ
    if not isinstance(obj, str):
        raise ParseError(f"{where}: expected a descriptor string")
    return parse_field(obj)


def dim_vector(text: str, n: int | None = None):
    try:
        v = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ParseError(f"bad vector {text!r}; expected comma separated integers") from None
    if n is not None and len(v) != n:
        raise ParseError(f"vector {text!r} has {len(v)} entries, quiver has {n} vertices")
    return v


# -- quivers and representations ---------------------------------------------------

def quiver_from(source) -> Quiver:
    """A builtin name (``threeloop``, ``kronecker4``, ...) or a quiver file."""
    if isinstance(source, Quiver):
        return source
    if isinstance(source, str) and source in BUILTIN:
        return BUILTIN[source]()
    obj = load_json(source)
    verts = _need(obj, "vertices", "quiver", list)
    arrows = _need(obj, "arrows", "quiver", list)
    arr = []
    for k, a in enumerate(arrows):
        w = f"quiver.arrows[{k}]"
        arr.append((_need(a, "id", w), _need(a, "from", w), _need(a, "to", w)))
    try:
        return Quiver(verts, arr)
    except ValueError as e:
        raise ParseError(f"quiver: {e}") from None


def matrix_from(field: Field, rows, ncols, where) -> Matrix:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise ParseError(f"{where}: a matrix is a list of rows")
    for r in rows:
        if len(r) != ncols:
            raise ParseError(f"{where}: row of length {len(r)}, expected {ncols}")
    return Matrix(field, [[_scalar(field, x, where) for x in r] for r in rows], ncols)


def rep_from(source, quiver=None) -> QuiverRep:
    """``{quiver, field, dims, arrows: {id: rows}}``; quiver may be inherited."""
    if isinstance(source, QuiverRep):
        return source
    obj = load_json(source)
    qsrc = obj.get("quiver", quiver) if isinstance(obj, dict) else quiver
    if qsrc is None:
        raise ParseError("representation: missing key 'quiver'")
    Q = quiver_from(qsrc)
    F = field_from(obj.get("field"))
    dims = _need(obj, "dims", "representation", list)
    if len(dims) != Q.n:
        raise ParseError(f"representation.dims: {len(dims)} entries for {Q.n} vertices")
    arrows = _need(obj, "arrows", "representation", dict)
    mats = {}
    for a in Q.arrows:
        if a.id not in arrows:
            raise ParseError(f"representation.arrows: missing arrow {a.id!r}")
        mats[a.id] = matrix_from(F, arrows[a.id], dims[Q.t(a)], f"representation.arrows.{a.id}")
        if mats[a.id].nrows != dims[Q.h(a)]:
            raise ParseError(f"representation.arrows.{a.id}: expected {dims[Q.h(a)]} rows")
    return QuiverRep(Q, F, dims, mats)


def actions_from(obj, V: QuiverRep, where):
    """One list of vertex matrices per field generator."""
    if obj is None:
        return None
    if not isinstance(obj, list):
        raise ParseError(f"{where}: expected a list of per-generator actions")
    out = []
    for g, act in enumerate(obj):
        if not isinstance(act, list) or len(act) != V.quiver.n:
            raise ParseError(f"{where}[{g}]: one matrix per vertex expected")
        out.append(tuple(matrix_from(V.field, m, V.dims[i], f"{where}[{g}][{i}]") for i, m in enumerate(act)))
    return out


def object_from(source):
    from .lifting import TwoStepObject
    obj = load_json(source)
    q = obj.get("quiver") if isinstance(obj, dict) else None
    U = rep_from(_need(obj, "U", "object"), q)
    V = rep_from(_need(obj, "V", "object"), q)
    aU = actions_from(obj.get("actions_U"), U, "object.actions_U")
    aV = actions_from(obj.get("actions_V"), V, "object.actions_V")
    phi = _need(obj, "phi21", "object", list)
    vecs = [[_scalar(U.field, x, f"object.phi21[{i}]") for x in v] for i, v in enumerate(phi)]
    return TwoStepObject(U, V, vecs, aU, aV)


# -- graded algebras and modules ----------------------------------------------------

_ALGEBRAS = {
    "ground": lambda F: GradedAlgebra.ground(F),
    "dual_numbers": lambda F: GradedAlgebra.dual_numbers(F),
    "upper_triangular": lambda F: GradedAlgebra.upper_triangular(F),
    "upper_triangular_unital": lambda F: GradedAlgebra.unital_basis(GradedAlgebra.upper_triangular(F)),
    "matrix2": lambda F: GradedAlgebra.matrix_algebra(2, F),
}


def _basis(obj, where):
    basis = _need(obj, "basis", where, list)
    names, degrees = [], []
    for k, b in enumerate(basis):
        if not (isinstance(b, list) and len(b) == 2 and isinstance(b[0], str) and isinstance(b[1], int)):
            raise ParseError(f"{where}.basis[{k}]: expected [name, degree]")
        names.append(b[0])
        degrees.append(b[1])
    if len(set(names)) != len(names):
        raise ParseError(f"{where}.basis: names must be distinct")
    return names, degrees


def _vector(field, idx, obj, where):
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected {{name: coefficient}}")
    out = {}
    for name, c in obj.items():
        if name not in idx:
            raise ParseError(f"{where}: unknown basis element {name!r}")
        out[idx[name]] = _scalar(field, c, f"{where}.{name}")
    return out


def _name(idx, x, where):
    if x not in idx:
        raise ParseError(f"{where}: unknown basis element {x!r}")
    return idx[x]


def algebra_from(source) -> GradedAlgebra:
    """``{"builtin": name}`` or ``{field, basis, unit, products, differential}``.

    ``products`` is a list of ``[x, y, {z: c}]``; ``differential`` maps
    names to vectors.
    """
    obj = load_json(source)
    F = field_from(obj.get("field") if isinstance(obj, dict) else None)
    if isinstance(obj, dict) and "builtin" in obj:
        name = obj["builtin"]
        if name not in _ALGEBRAS:
            raise ParseError(f"algebra.builtin: unknown algebra {name!r}; known: {sorted(_ALGEBRAS)}")
        return _ALGEBRAS[name](F)
    names, degrees = _basis(obj, "algebra")
    idx = {n: i for i, n in enumerate(names)}
    unit = obj.get("unit", {})
    unit = {idx[unit]: F.one()} if isinstance(unit, str) and unit in idx else _vector(F, idx, unit, "algebra.unit")
    mult = {}
    for k, p in enumerate(_need(obj, "products", "algebra", list)):
        w = f"algebra.products[{k}]"
        if not (isinstance(p, list) and len(p) == 3):
            raise ParseError(f"{w}: expected [left, right, {{out: c}}]")
        mult[(_name(idx, p[0], w), _name(idx, p[1], w))] = _vector(F, idx, p[2], w)
    diff = {}
    for x, v in obj.get("differential", {}).items():
        diff[_name(idx, x, "algebra.differential")] = _vector(F, idx, v, f"algebra.differential.{x}")
    return GradedAlgebra(names, degrees, mult, unit, F, diff or None)


def module_from(source, B: GradedAlgebra) -> GradedModule:
    """``{"builtin": "regular" | "augmentation" | "column"}`` or ``{basis, action}``.

    ``action`` is a list of ``[b, m, {m': c}]``.  ``augmentation`` takes
    ``"values"``, one scalar per algebra basis element.
    """
    obj = load_json(source)
    if "builtin" in obj:
        kind = obj["builtin"]
        if kind == "regular":
            return GradedModule.regular(B)
        if kind == "augmentation":
            vals = [_scalar(B.field, x, "module.values") for x in _need(obj, "values", "module", list)]
            if len(vals) != B.dim:
                raise ParseError(f"module.values: need {B.dim} entries")
            return GradedModule.from_augmentation(B, vals, obj.get("degree", 0))
        if kind == "column":
            return GradedModule.column(B, obj.get("n", 2))
        raise ParseError(f"module.builtin: unknown module {kind!r}")
    names, degrees = _basis(obj, "module")
    idx = {n: i for i, n in enumerate(names)}
    bidx = {n: i for i, n in enumerate(B.names)}
    action = {}
    for k, p in enumerate(_need(obj, "action", "module", list)):
        w = f"module.action[{k}]"
        if not (isinstance(p, list) and len(p) == 3):
            raise ParseError(f"{w}: expected [b, m, {{out: c}}]")
        action[(_name(bidx, p[0], w), _name(idx, p[1], w))] = _vector(B.field, idx, p[2], w)
    return GradedModule(B, names, degrees, action)


def bimodule_from(spec, B: GradedAlgebra, modules=()) -> GradedBimodule:
    """Coefficients: the regular bimodule, or Hom(M, N) for two module files."""
    if not modules:
        return GradedBimodule.regular(B)
    M, N = (module_from(m, B) for m in modules)
    return GradedBimodule.hom(M, N)


# -- A-infinity data -------------------------------------------------------------------

def _components(F, idx, obj, where):
    """``{"n": [[[inputs...], {out: c}], ...]}`` -> ``{n: {key: {o: c}}}``."""
    comps = {}
    for n, entries in obj.items():
        try:
            arity = int(n)
        except ValueError:
            raise ParseError(f"{where}: arity keys are integers, got {n!r}") from None
        comp = {}
        for k, e in enumerate(entries):
            w = f"{where}.{n}[{k}]"
            if not (isinstance(e, list) and len(e) == 2 and isinstance(e[0], list)):
                raise ParseError(f"{w}: expected [[inputs...], {{out: c}}]")
            if len(e[0]) != arity:
                raise ParseError(f"{w}: expected {arity} inputs")
            key = tuple(_name(idx, x, w) for x in e[0])
            row = _vector(F, idx, e[1], w)
            for o, c in row.items():
                comp.setdefault(key, {})[o] = comp.get(key, {}).get(o, F.zero()) + c
        comps[arity] = comp
    return comps


def ainfty_algebra_from(source):
    """A DG algebra file, or ``{field, basis, unit, m | b: components}``."""
    from .ainfty import AInftyAlgebra, GradedSpace
    obj = load_json(source)
    if "m" not in obj and "b" not in obj:
        return AInftyAlgebra.from_dg(algebra_from(obj))
    F = field_from(obj.get("field"))
    names, degrees = _basis(obj, "algebra")
    idx = {n: i for i, n in enumerate(names)}
    space = GradedSpace(names, degrees, F)
    unit = obj.get("unit")
    unit = None if unit is None else _name(idx, unit, "algebra.unit")
    if "m" in obj:
        comps = _components(F, idx, obj["m"], "algebra.m")
        return AInftyAlgebra.from_m(space, comps, unit)
    comps = _components(F, idx, obj["b"], "algebra.b")
    return AInftyAlgebra(space, comps, unit)


def space_from(obj, field, where):
    from .ainfty import GradedSpace
    names, degrees = _basis(obj, where)
    return GradedSpace(names, degrees, field)


def strict_module_parts(obj, B, where="module"):
    """(space, d, action) of a strict module file ``{basis, d, action}``."""
    F = B.field
    space = space_from(obj, F, where)
    idx = {n: i for i, n in enumerate(space.names)}
    bidx = {n: i for i, n in enumerate(B.space.names)}
    d = {_name(idx, x, f"{where}.d"): _vector(F, idx, v, f"{where}.d.{x}") for x, v in obj.get("d", {}).items()}
    action = {}
    for k, p in enumerate(obj.get("action", [])):
        w = f"{where}.action[{k}]"
        if not (isinstance(p, list) and len(p) == 3):
            raise ParseError(f"{w}: expected [b, m, {{out: c}}]")
        action[(_name(bidx, p[0], w), _name(idx, p[1], w))] = _vector(F, idx, p[2], w)
    return space, d, action


def ainfty_module_from(source, B):
    from .ainfty import AInftyModule
    obj = load_json(source)
    space, d, action = strict_module_parts(obj, B)
    return AInftyModule.strict(B, space, d, action)


def linear_map_from(obj, src_names, tgt_names, field, where):
    """``{source_name: {target_name: c}}`` -> ``{i: {j: c}}``."""
    sidx = {n: i for i, n in enumerate(src_names)}
    tidx = {n: i for i, n in enumerate(tgt_names)}
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected {{name: {{name: c}}}}")
    return {_name(sidx, x, where): _vector(field, tidx, v, f"{where}.{x}") for x, v in obj.items()}


def module_map_from(obj, B, M, N, where):
    """Components keyed by the number of algebra inputs; inputs list algebra names then one module name."""
    bidx = {n: i for i, n in enumerate(B.space.names)}
    midx = {n: i for i, n in enumerate(M.space.names)}
    nidx = {n: i for i, n in enumerate(N.space.names)}
    out = {}
    for k, entries in obj.items():
        try:
            nargs = int(k)
        except ValueError:
            raise ParseError(f"{where}: keys are algebra-input counts, got {k!r}") from None
        comp = {}
        for t, e in enumerate(entries):
            w = f"{where}.{k}[{t}]"
            if not (isinstance(e, list) and len(e) == 2 and isinstance(e[0], list) and len(e[0]) == nargs + 1):
                raise ParseError(f"{w}: expected [[{nargs} algebra names, module name], {{out: c}}]")
            key = tuple(_name(bidx, x, w) for x in e[0][:-1]) + (_name(midx, e[0][-1], w),)
            comp[key] = _vector(B.field, nidx, e[1], w)
        out[nargs] = comp
    return out
