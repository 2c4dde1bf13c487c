"""Transmission resonances of the inter-barrier cavity.

The gap acts as a cavity: at discrete separations l the round-trip phase
matches, |R| drops to zero, and the pair transmits perfectly.  There the
self-interference delay vanishes and the phase and dwell times agree; at
thin-barrier parameters the resonances sit near multiples of pi/k.
"""

import math

from dirac_tunneling import (
    BarrierSystem,
    find_resonances,
    kinematic_point,
    self_interference_delay,
    time_report,
)

E = 1.8
system = BarrierSystem(V0=1.5, a=0.7, l=0.01)
kp = kinematic_point(E, system)
print(f"pi / k = {math.pi / kp.k:.6f}  (free half-wavelength in the gap)")
print()

hits = find_resonances(system, E, (0.01, 10.0))
print(f"{len(hits)} resonances in l over [0.01, 10]:")
print(f"{'l':>10} {'|R|':>10} {'tau_p':>12} {'tau_d':>12} {'spacing':>9}")
prev = None
for l_res, absR, tau_p, tau_d in hits:
    spacing = "" if prev is None else f"{l_res - prev:9.6f}"
    print(f"{l_res:10.6f} {absR:10.2e} {tau_p:12.8f} {tau_d:12.8f} {spacing:>9}")
    prev = l_res
print()

# on resonance the reflected wave is gone, so its interference with the
# incident one contributes no delay
l_res = hits[0][0]
on = BarrierSystem(V0=1.5, a=0.7, l=l_res)
off = BarrierSystem(V0=1.5, a=0.7, l=l_res + 0.5)
for label, s in (("on resonance ", on), ("off resonance", off)):
    rep = time_report(E, s)
    print(f"{label}: l = {s.l:.6f}  tau_i = {rep.tau_i:+.3e}  "
          f"tau_p - tau_d = {rep.tau_p - rep.tau_d:+.3e}")
print()
print(f"tau_i on resonance: {self_interference_delay(E, on):.3e}")
