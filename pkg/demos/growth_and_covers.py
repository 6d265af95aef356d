"""
Word growth and ball covers in Z^m and the Heisenberg group
===========================================================

Ball sizes |B_k| in the Cayley graph grow like k^d with d = m for Z^m and
d = 2n + 2 for H_n.  A maximal 2n-separated subset S of B_(a*n) gives a cover
of B_(a*n) by translates of B_2n with |S| controlled by ball quotients.
"""

from apercut import GenSet, bfs_balls, fit_growth_exponent, verify_cover
from apercut.heisenberg import GroupKind

H1 = GroupKind.heisenberg(1)
Z2 = GroupKind.euclidean(2)

# --- growth tables ---------------------------------------------------------

tab = bfs_balls(GenSet.standard(H1), 24)
print("H1 ball sizes:", tab.counts[:8], "...", tab.counts[-1])

fit = fit_growth_exponent(tab, k_min=8)
print(f"H1 fitted exponent: {fit.exponent:.4f}  (degree of growth is 4)")

# doubling ratios |B_2k| / |B_k| climb toward 2^4 = 16
ratios = [tab.counts[2 * k] / tab.counts[k] for k in (2, 4, 8, 12)]
print("H1 doubling ratios:", [f"{r:.2f}" for r in ratios])

tab2 = bfs_balls(GenSet.standard(Z2), 24)
fit2 = fit_growth_exponent(tab2, k_min=8)
print(f"Z2 fitted exponent: {fit2.exponent:.4f}  (degree of growth is 2)")

# --- covering experiment ---------------------------------------------------

# For each run: S is a greedy maximal 2n-separated subset of B_(a*n).
# Maximality forces the translates s*B_2n to cover B_(a*n); separation makes
# the translates s*B_n pairwise disjoint, so |S| * |B_n| <= |B_((a+1)n)|.
# The packing bound |S| <= (a+1)^d is expected only for large n.
for kind, a, ns, d_used in ((GroupKind.euclidean(1), 10, range(1, 11), 1),
                            (Z2, 3, range(1, 7), 2),
                            (H1, 2, range(1, 4), 4)):
    gens = GenSet.standard(kind)
    label = f"{kind.family.value}{kind.rank}"
    for n in ns:
        rep = verify_cover(gens, a, n, d_used)
        print(f"{label} a={a} n={n}: |S|={rep.packing_size} covered="
              f"{rep.covered} disjoint={rep.packing_disjoint} "
              f"|S|<=({a}+1)^{d_used}: {rep.bound_holds}")
