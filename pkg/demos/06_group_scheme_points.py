"""The centralizer as a group scheme: finite-field points close under the
group law, the coordinate-ring coproduct is coassociative, and its graded
dual is a divided-power algebra.

Run:  python3 demos/06_group_scheme_points.py
"""

from math import comb

from liedual import (GF, QQ, BorelCoordinates, brute_force_group_check,
                     build_chevalley, load_datum, present_centralizer,
                     truncated_dist, verify_coassociativity)

for name in ["SL2", "PGL2", "SL3"]:
    d = load_datum(name)
    for p in (2, 3, 5):
        r = brute_force_group_check(d, p)
        print(f"{name}(F_{p}): {r['count']} points, closed {r['closed']}, "
              f"inverses {r['inverses']}, commutative {r['commutative']}")
print()

coords = BorelCoordinates(build_chevalley(load_datum("SL3").dual_datum()), QQ)
assert verify_coassociativity(coords)
print("universal group law on the unipotent part is coassociative (SL3)")

# over Q the graded dual of the coordinate ring is the divided-power algebra
pres = present_centralizer(load_datum("SL2"), QQ)
dp = truncated_dist(pres, 20)["dual_product"]
print("\ndivided powers for SL2 over Q:  a^(m) a^(n) = C(m+n, n) a^(m+n)")
for m, n in [(1, 1), (2, 1), (2, 3), (4, 4)]:
    print(f"  a^({m}) a^({n}) = {dp((m,), (n,))[(m + n,)]} a^({m + n}) "
          f"(binomial {comb(m + n, n)})")

# in characteristic 2 the degree-2 dual generator squares to zero
dp2 = truncated_dist(present_centralizer(load_datum("SL2"), GF(2)), 8)["dual_product"]
assert dp2((1,), (1,)) == {}
print("\nover F2 the square of the degree-2 dual generator vanishes")
