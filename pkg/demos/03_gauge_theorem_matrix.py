"""
Why truncation breaks gauge equivalence, entrywise
==================================================

Untruncated, conjugating the dipole-gauge model (plus the constant it drops)
by the photon displacement reproduces the corrected Coulomb-gauge model as a
matrix identity.  At finite Fock cutoff the identity survives in the
interior of the matrix and fails only near the truncation boundary, which is
exactly where the two gauges' operator orderings stop commuting past.
"""

from gaugeqed import RabiParams, check_gauge_theorem

print("cutoff  interior deviation  full-matrix dev  full dev / |H|")
for cutoff in (60, 80, 100, 140):
    r = check_gauge_theorem(RabiParams(eta=0.5, cutoff=cutoff))
    print(f"{cutoff:6d}  {r.max_dev_interior:16.3e}  {r.max_dev_full:13.3e}"
          f"  {r.max_dev_full_rel:12.4f}")

print("\nthe interior deviation collapses with cutoff; the raw boundary")
print("deviation grows like sqrt(cutoff) but shrinks relative to the")
print("matrix scale, so the identity holds wherever the basis is complete")
