"""The exact commutative-algebra layer: weighted Groebner bases, Krull
dimension, and Hilbert series with closed forms.

Run:  python3 demos/03_groebner_hilbert.py
"""

from liedual import (GF, QQ, PolyRing, groebner_basis, hilbert_series,
                     ideal_dimension, parse_polynomial)

R = PolyRing(QQ, ("x", "y", "z"))
gens = [parse_polynomial(R, s) for s in ["x^2 + y^2 - 1", "x - y"]]
gb = groebner_basis(gens)
print("reduced Groebner basis of (x^2 + y^2 - 1, x - y):")
for g in gb:
    print("  ", g)
print("Krull dimension of the quotient:", ideal_dimension(gb))

# weighted rings: variable degrees other than 1
W = PolyRing(GF(2), ("u", "v", "w"), weights=(2, 4, 10))
u = W.gen("u")
hs = hilbert_series([u * u], ring=W, truncation=40)
print("\nHilbert series of F2[u,v,w]/(u^2), weights (2,4,10):")
print("  closed form:", hs.closed_form_str())
print("  coefficients to t^20:", hs.coeffs[:21])

# same data through the repeated-runs determinism guarantee
gb2 = groebner_basis(list(gens))
assert [str(g) for g in gb] == [str(g) for g in gb2]
print("\nGroebner output is order-deterministic: repeated runs agree")
