"""Chevalley bases over Z: structure constants, Jacobi, and the regular
nilpotent e on the dual side.

Run:  python3 demos/02_chevalley_basis.py
"""

from liedual import (QQ, ad_kernel_dim, build_chevalley, load_datum,
                     principal_e)

d = load_datum("G2")
basis = build_chevalley(d.dual_datum())
print(f"dual Lie algebra of G2 has dimension {len(basis.basis_keys())}")

print("\nAll structure constants N(a, b) with both roots positive:")
pos = {rt.coeffs for rt in basis.datum.positive_roots()}
for a, b, n in basis.structure_constant_table():
    if a in pos and b in pos:
        print(f"  N({a}, {b}) = {n:+d}")

basis.verify_jacobi()
print("\nJacobi identity holds on every basis triple (exhaustive check)")

# e = sum of |alpha_i|^2 / |short|^2 times the simple root vectors
e = principal_e(basis, d, QQ)
print(f"\nregular nilpotent e: {e}")
print(f"ad-kernel dimension over Q: {ad_kernel_dim(basis, e, QQ)} "
      f"(= rank {d.rank}, so e is regular)")
