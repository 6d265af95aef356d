"""
Dimension bound calculators and the hypothesis checklist
========================================================

The bound formulas turn two integers (the growth degree d of the acting group
and the dimension of the space) into tube and nuclear dimension bounds.  The
checklist bundles the empirical point-set checks into one verdict.
"""

from fractions import Fraction

from apercut import (
    Box,
    Scheme,
    build_checklist,
    check_window_regular,
    complexity_table,
    delone_report,
    generate_model_set,
    hull_dim_bound,
    nuclear_dim_bound,
    nuclear_dim_from_tube,
    period_search,
    periodic_control_model_set,
    repetitivity_radii,
    tube_dim_bound,
)
from apercut.heisenberg import GroupKind
from apercut.quadratic import RingSpec

# --- the formulas ----------------------------------------------------------

for d_g, dim_x in ((1, 1), (2, 0), (4, 3)):
    tube = tube_dim_bound(d_g, dim_x)
    nuclear = nuclear_dim_bound(d_g, dim_x)
    print(f"d={d_g} dimX={dim_x}: tube <= {tube}, nuclear <= {nuclear}, "
          f"composed: {nuclear_dim_from_tube(dim_x, tube)}")

# the hull of a point set in G is at most dim G dimensional
print("hull dim, R^2:", hull_dim_bound(GroupKind.euclidean(2)))
print("hull dim, H_1:", hull_dim_bound(GroupKind.heisenberg(1)))

# --- checklist on the 1d quasicrystal --------------------------------------

scheme = Scheme(GroupKind.euclidean(1), RingSpec(2))
window = Box(((Fraction(-9, 10), Fraction(11, 10)),))
ms = generate_model_set(scheme, window, Box(((-100, 100),)))

checklist = build_checklist(
    scheme.kind, 1,
    delone_report(ms, grid_step=Fraction(1, 4), erosion=Fraction(3)),
    complexity_table(ms, [1, 2, 3]),
    repetitivity_radii(ms, 1),
    period_search(ms, 3, 3),
    check_window_regular(scheme, window),
    len(ms.points))
print("aperiodic sample:", checklist.verdict)
print("  evidence:", checklist.flc_evidence.value, checklist.delone_evidence.value,
      checklist.repetitivity_evidence.value, checklist.aperiodicity_evidence.value)
print("  dims used:", checklist.tube_dim, checklist.nuclear_dim)

# --- and on a periodic control, which must be refuted ----------------------

ctrl = periodic_control_model_set(scheme, Box(((-30, 30),)))
refuted = build_checklist(
    ctrl.scheme.kind, 1, delone_report(ctrl),
    complexity_table(ctrl, [1, 2]),
    repetitivity_radii(ctrl, 1),
    period_search(ctrl, 3, 3),
    check_window_regular(ctrl.scheme, ctrl.window),
    len(ctrl.points))
print("periodic control:", refuted.verdict)
