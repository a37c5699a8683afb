"""A ring whose blocks have small averaged influence but whose scan never mixes.

Block i copies the spin of site i onto i+1 and redraws site i.  Under the
shared-draw coupling alpha = 1 while the weight-averaged version is 1/2, and a
full scan returns site 0's old spin to site 0, so the worst-start TV stays
at 1/2.  The random-update chain on the same blocks does mix.
"""
from scanmix import demonstrate_nonmixing

ev = demonstrate_nonmixing(n=4, q=2, scans=200, seed=7, exact=True, t_max=30)
print("alpha =", ev.alpha, " averaged alpha =", ev.alpha_weitz)
print("site 0 constant over", ev.scans, "scans:", ev.site0_invariant)
print("scan TV floor:", ev.tv_floor)
for t in (0, 1, 5, 10, 30):
    print(f"t={t:>2}  scan {float(ev.tv_curve[t]):.4f}  random {float(ev.random_update_curve[t]):.4f}")
