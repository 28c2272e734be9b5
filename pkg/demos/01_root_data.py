"""Root data: presets, roots, exponents, duality, and component groups.

Run:  python3 demos/01_root_data.py
"""

from liedual import load_datum, preset_names

print("Available presets:", ", ".join(preset_names()))
print()

for name in ["SL3", "PGL3", "Sp4", "G2"]:
    d = load_datum(name)
    print(f"{name}: rank {d.rank}, {len(d.roots())} roots, "
          f"length ratio {d.length_ratio()}, exponents {d.exponents()}")
    print(f"  pi0 = {d.component_group()}, center = {d.center()}")
    dual = d.dual_datum()
    print(f"  dual has pi0 = {dual.component_group()}, "
          f"center = {dual.center()}  (swapped)")
print()

# duality is an involution on the nose
g2 = load_datum("G2")
assert g2.dual_datum().dual_datum().cochar_basis == g2.cochar_basis
print("dual(dual(G2)) == G2: the construction is an exact involution")

# positive roots come out sorted by height; the highest root is last
print("\nG2 positive roots by (height, coefficients):")
for rt in g2.positive_roots():
    print(f"  height {rt.height}: {rt.coeffs}  coroot {rt.coroot}")
