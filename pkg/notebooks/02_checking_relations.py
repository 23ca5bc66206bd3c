"""
Checking the structure relation
===============================

``check_relation`` expands both sides of the relation of index n on every
cell and reports the difference.  Zero everywhere means the operations fit
together.
"""

from ainfsurf import build_polygon, check_relation, coassociativity_defect, verify_all
from ainfsurf.chains import GradedOperation

hexagon = build_polygon(6)
for report in verify_all(hexagon, 7):
    print(report.n, "holds" if report.holds else report.failures())

# %%
# Δ2 alone is not coassociative on a polygon: the associator is nonzero.
print(coassociativity_defect(hexagon, hexagon.face))

# %%
# Throw Δ3 away and the relation of index 3 breaks exactly on the face.
broken = hexagon.with_diagonals({3: GradedOperation.zero(1, 3)})
report = check_relation(broken, 3)
for cell in report.failures():
    print(cell.label, ":", report.defects[cell])
