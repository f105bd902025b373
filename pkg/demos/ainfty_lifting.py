"""Lift A-infinity morphisms arity by arity, and watch one fail.

F1 lifts to arity 5 with zero residuals.  F2 carries a Massey product that the
formal target cannot match, so lifting stops at arity 3 with a certified class.
"""
from scalext.ainfty import coderivation_square, lift_algebra_morphism, morphism_equation_holds
from scalext.ainfty.fixtures import F1, F2, matrix_thickening


def show(fx, arity=5):
    d = fx.data
    A, C = d["algebra"], d["target"]
    print(f"{fx.name}: {fx.summary}")
    print("  source squares to zero:", coderivation_square(A, arity) == [])
    res = lift_algebra_morphism(A, C, d["phi"], arity)
    if res.ok:
        nonzero = {n: sum(len(r) for r in c.values()) for n, c in res.map.components.items() if c}
        print("  lifted; nonzero entries per arity:", nonzero)
        print("  morphism equation holds to arity", arity, ":", morphism_equation_holds(A, C, res.map, arity))
    else:
        ob = res.obstruction
        print(f"  obstructed at arity {ob.arity}: closed={ob.closed} exact={ob.exact} ranks={ob.system_ranks}")


def main():
    for fx in (F1(), matrix_thickening(2), F2()):
        show(fx)


if __name__ == "__main__":
    main()
