"""Walk through the two-term lifting decision on the three-loop quiver.

Run with ``python3 demos/two_term_lifting.py``.
"""
import random

from scalext.lifting import (
    build_counterexample_threeloop,
    ext_bimodule,
    inner_object,
    lift_test,
    threeloop_rep,
    unipotent_double,
)
from scalext.quiver import BUILTIN, moduli_dimension
from scalext.representations import end_space, ext_space


def main():
    U = threeloop_rep()
    print("three-loop quiver, dims:", U.dims, "field:", U.field)
    print("moduli dimension at (1):", moduli_dimension(BUILTIN["threeloop"](), (1,)))
    print("dim End(U):", end_space(U).dim)
    print("dim Ext^1(U, U):", ext_space(U, U).dim)
    print("Ext bimodule dimension:", ext_bimodule(U, U).dim)

    # an object whose off-diagonal part is inner by construction
    rng = random.Random(1)
    F = U.field
    V, actions = unipotent_double(U, [F.random_polynomial(rng, 1, 2, 3) for _ in range(F.ngens)])
    m = [F.random_polynomial(rng, 1, 2, 3) for _ in range(ext_space(U, V).dim)]
    cert = lift_test(inner_object(U, V, m, None, actions))
    print("\ninner object:", cert.verdict)
    print("  coboundary rank", cert.coboundary_rank, "augmented rank", cert.augmented_rank)

    cert = lift_test(build_counterexample_threeloop())
    print("\ncounterexample:", cert.verdict)
    print("  coboundary rank", cert.coboundary_rank, "augmented rank", cert.augmented_rank)
    print("  the rank jump certifies the class is not a coboundary")


if __name__ == "__main__":
    main()
