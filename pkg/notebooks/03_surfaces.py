"""
From polygons to surfaces
=========================

Gluing the edges of a polygon according to a word gives a closed surface.
The polygon operations push forward along the quotient map.  Here we
look at the connected sum of three projective planes, cut open as a
hexagon.
"""

import numpy as np

from ainfsurf import (
    agreement,
    build_special,
    build_surface,
    closed_form_diagonal,
    cup_matrix,
    has_higher_structure,
    mod2_homology,
)
from ainfsurf.surface import TOP

x3 = build_surface(3, orientable=False)
print("word:", x3.scheme, " t =", x3.scheme.t)
for k in range(2, 6):
    print(f"Δ{k}(X) =", x3.projected_diagonal(k, TOP))

# %%
# The closed-form Δ2 lacks the 4 e1⊗e3 cross term that the projection
# produces over Z.  The two agree mod 2 and for every k >= 3.
print(closed_form_diagonal(2, 3, False)(TOP))
print(agreement(x3, 2))
print(agreement(x3, 2, mod2=True))

# %%
# Homology mod 2 and the cup product pairing read off Δ2.
h = mod2_homology(x3)
print("ranks:", h.ranks)
print(cup_matrix(x3))

torus2 = build_surface(2, orientable=True)
m = cup_matrix(torus2)
print(m)
print("symmetric:", np.array_equal(m, m.T))

# %%
# Higher operations survive mod 2 only once the surface is complicated enough.
for name, cx in [("sphere", build_special("sphere")), ("Klein bottle", build_surface(2, False)),
                 ("torus", build_surface(1, True)), ("X3", x3), ("genus 2", torus2)]:
    print(f"{name:13s}", has_higher_structure(cx))
