"""Koszul ranks of Hochschild cohomology over k(x, y, z).

Prints the HKR ranks of the diagonal bimodule and the rank table comparing the
Ext and Hom bimodules of the two Schur representations.  The two columns do not
agree; see the decisions ledger for the analysis.
"""
from scalext.fields import QQ, FunctionField
from scalext.hochschild import KoszulBimodule, koszul_ranks
from scalext.lifting import ext_hom_rank_check, hom_bimodule, kronecker4_rep, threeloop_rep


def main():
    L = FunctionField(QQ, "x", "y", "z")
    print("HH^n(L, L), n = 0..3:", koszul_ranks(KoszulBimodule.symmetric(L, 1)))
    for name, U in (("threeloop", threeloop_rep()), ("kronecker4", kronecker4_rep())):
        print(f"\n{name}: Hom bimodule dim {hom_bimodule(U, U).dim}")
        print("  i  HH^(1+i)(Ext)  HH^(3+i)(Hom)")
        for i, a, b in ext_hom_rank_check(U, U, top=3).rows:
            print(f"  {i}  {a:>13}  {b:>13}")


if __name__ == "__main__":
    main()
