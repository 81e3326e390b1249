"""
How many Taylor orders buy how much coupling
============================================

The corrected Coulomb-gauge coupling enters through cos and sin of the field
quadrature.  Expanding them to finite order n reproduces the familiar
polynomial models: n = 2 is the standard model plus its quadratic term.
Each order only tolerates a limited coupling before its spectrum degrades;
even n = 200 gives out between eta = 1 and 1.5.
"""

from gaugeqed import taylor_study

# modest grid and cutoff keep this demo quick; the shipped defaults
# (cutoff 200, step 0.025) reproduce the frozen thresholds
study = taylor_study(orders=(2, 3, 10, 40), eta_grid=[0.05 * k for k in range(1, 25)],
                     cutoff=120, tol=0.01)

for n, star, first in zip(study.orders, study.eta_star, study.first_bad):
    where = f"fails at {first:g}" if first is not None else "holds on this grid"
    print(f"order {n:3d}: accurate to 1% up to eta = {star:g}  ({where})")
