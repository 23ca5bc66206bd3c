"""
Diagonals on a polygon
======================

A polygon with vertices v1..vn splits its boundary into two directed paths
from v1 to vt.  The operations Δ_k send the face P to increasing k-tuples of
edges along each path, with a minus sign on the right-hand path.
"""

from math import comb

from ainfsurf import build_polygon

# the standard pentagon has t = n, so every edge lies on the left path
pentagon = build_polygon(5)
print("∂P   =", pentagon.boundary_of(pentagon.face))
for k in range(2, 6):
    print(f"Δ{k}(P) =", pentagon.diagonal(k, pentagon.face))

# %%
# Moving the terminal vertex to v5 on a 7-gon puts e5, e6, e7 on the
# right path.  Those words come out descending and negative.
seven = build_polygon(7, 5)
print(seven.diagonal(2, seven.face))
print(seven.diagonal(3, seven.face))
print("vanishes from k =", seven.vanishing_index)

# %%
# Word counts on the standard n-gon are binomial coefficients.
for n in range(3, 9):
    poly = build_polygon(n)
    counts = [len(poly.diagonal(k, poly.face)) for k in range(3, n)]
    print(n, counts, [comb(n - 1, k) for k in range(3, n)])
