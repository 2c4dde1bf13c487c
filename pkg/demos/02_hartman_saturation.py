"""The Hartman effect: the phase time stops growing with barrier width.

Sweeping the width a at fixed (E, V0, l) shows tau_p and tau_d rising at
first, then locking onto constants while the free and light transit
times keep growing linearly.  Past a few 1/q the tunneling particle is
formally faster than light across the span, at exponentially small
transmission.
"""

import numpy as np

from dirac_tunneling import (
    BarrierSystem,
    SweepSpec,
    kinematic_point,
    opaque_limit_times,
    run_sweep,
)

E, V0, l = 1.8, 1.5, 0.7
base = BarrierSystem(V0=V0, a=0.7, l=l)
kp = kinematic_point(E, base)

sat = opaque_limit_times(E, base)
print(f"saturated constants (depend only on E, V0):")
print(f"  tau_p -> {sat.tau_p:.12f}")
print(f"  tau_d -> {sat.tau_d:.12f}")
print(f"  tau_i -> {sat.tau_i:.12f}")
print()

spec = SweepSpec(swept="width_a", lo=0.01, hi=6.0, points=600, system=base, E=E)
ds = run_sweep(spec)

print(f"{'a':>6} {'q a':>6} {'tau_p':>12} {'tau_d':>12} {'t_light':>9} {'|T|^2':>10}")
for a_pick in (0.25, 0.5, 1.0, 2.0, 3.0, 4.5, 6.0):
    i = int(np.argmin(np.abs(ds.swept - a_pick)))
    print(f"{ds.swept[i]:6.2f} {kp.q * ds.swept[i]:6.2f} {ds.tau_p[i]:12.8f} "
          f"{ds.tau_d[i]:12.8f} {ds.t_light[i]:9.4f} {ds.magT2[i]:10.3e}")
print()

dev = np.abs(ds.tau_p - sat.tau_p) / sat.tau_p
for tol in (1e-1, 1e-2, 1e-3):
    above = np.nonzero(dev > tol)[0]
    if above.size == 0 or above[-1] + 1 >= len(ds):
        print(f"tau_p never settles within {tol:.0e} on this grid")
        continue
    j = int(above[-1]) + 1
    print(f"tau_p stays within {tol:.0e} of the constant from a = {ds.swept[j]:.3f} "
          f"(q a = {kp.q * ds.swept[j]:.1f})")
print()

superluminal = (ds.tau_p < ds.t_light) & (ds.magT2 > 1e-12)
first = int(np.argmax(superluminal))
print(f"{int(superluminal.sum())} of {len(ds)} grid points have tau_p < t_light,")
print(f"starting at a = {ds.swept[first]:.3f} where |T|^2 = {ds.magT2[first]:.2e}")
