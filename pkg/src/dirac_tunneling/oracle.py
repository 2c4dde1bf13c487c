"""Independent numerical ground truth for the closed-form layer.

Nothing in this module uses the closed amplitude or time formulas.  The
stationary solution is obtained by solving the eight spinor-continuity
equations (two components at each of the four interfaces) as a dense
linear system; the phase time comes from finite differences of that
solution's transmission phase; the dwell time from adaptive quadrature of
the probability density.  Tests compare the closed forms against these
routines, so the two layers must share as little code as possible.

The linear system is assembled in rescaled unknowns: every evanescent
coefficient is multiplied by the exponential factor that makes it O(1)
(for example B, the growing-mode coefficient of the first barrier, enters
as B e^{2qa}).  The matrix entries are then bounded by 1 uniformly in qa
and the solve stays well-conditioned arbitrarily deep into the opaque
regime; the true coefficients are recovered by undoing the scaling.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .amplitudes import RegionCoefficients
from .kinematics import (
    BarrierSystem,
    KinematicPoint,
    Regime,
    classify_regime,
    kinematic_point,
    regime_error,
)
from .numerics import adaptive_simpson, phase_derivative

__all__ = [
    "FieldSample",
    "InterfaceMatrix",
    "default_flux_samples",
    "dwell_integral",
    "flux_profile",
    "interface_matrix",
    "numeric_phase_time",
    "random_evanescent_grid",
    "single_barrier_amplitudes",
    "tm_solve",
    "transfer_relation",
]


@dataclass(frozen=True)
class InterfaceMatrix:
    """2x2 map from evanescent to plane coefficient pairs at a step.

    In the local variables u = (P+ e^{ikz0}, P- e^{-ikz0}) and
    v = (Q+ e^{-qz0}, Q- e^{qz0}) the continuity conditions at an
    interface z0 read u = M v with M depending only on alpha.  Its
    determinant is i/alpha, so the map is always invertible.
    """

    matrix: np.ndarray

    @property
    def det(self) -> complex:
        return complex(np.linalg.det(self.matrix))


@dataclass(frozen=True)
class FieldSample:
    """Probability density and flux at one position."""

    z: float
    psi_dag_psi: float
    J: float


def tm_solve(E: float, system: BarrierSystem) -> RegionCoefficients:
    """All region coefficients from a direct linear solve.

    Assembles the eight continuity equations in rescaled unknowns
    (R, A, B e^{2qa}, C e^{qa}, D e^{qa}, F e^{-ql}, G e^{q(2a+l)} e^{2qa},
    T e^{2qa}) and solves with LAPACK.  No closed amplitude formulas are
    involved.
    """
    kp = kinematic_point(E, system)
    a, l = system.a, system.l
    k, q, al = kp.k, kp.q, kp.alpha
    s = a + l
    w = system.span
    e2 = math.exp(-2.0 * q * a)
    eika = cmath.exp(1.0j * k * a)
    emika = eika.conjugate()
    eiks = cmath.exp(1.0j * k * s)
    emiks = eiks.conjugate()
    eikw = cmath.exp(1.0j * k * w)

    m = np.zeros((8, 8), dtype=complex)
    rhs = np.zeros(8, dtype=complex)
    # Unknown order: R, A, B^, C^, D^, F^, G^, T^
    m[0, 0], m[0, 1], m[0, 2] = -1.0, 1.0, e2
    rhs[0] = 1.0
    m[1, 0], m[1, 1], m[1, 2] = al, 1.0j, -1.0j * e2
    rhs[1] = al
    m[2, 1], m[2, 2], m[2, 3], m[2, 4] = 1.0, 1.0, -eika, -emika
    m[3, 1], m[3, 2], m[3, 3], m[3, 4] = 1.0j, -1.0j, -al * eika, al * emika
    m[4, 3], m[4, 4], m[4, 5], m[4, 6] = eiks, emiks, -1.0, -e2
    m[5, 3], m[5, 4], m[5, 5], m[5, 6] = al * eiks, -al * emiks, -1.0j, 1.0j * e2
    m[6, 5], m[6, 6], m[6, 7] = 1.0, 1.0, -eikw
    m[7, 5], m[7, 6], m[7, 7] = 1.0j, -1.0j, -al * eikw

    x = np.linalg.solve(m, rhs)
    e1 = math.exp(-q * a)
    return RegionCoefficients(
        A=complex(x[1]),
        B=complex(x[2]) * e2,
        C=complex(x[3]) * e1,
        D=complex(x[4]) * e1,
        F=complex(x[5]) * math.exp(q * l),
        G=complex(x[6]) * math.exp(-q * w) * e2,
        T=complex(x[7]) * e2,
        R=complex(x[0]),
    )


def single_barrier_amplitudes(
    E: float, width: float, V0: float, mass: float = 1.0
) -> tuple[complex, complex]:
    """(T, R) of one rectangular barrier from an explicit 3-region solve.

    Independent of `tm_solve`; used to check the l = 0 double barrier
    against a single barrier of twice the width.
    """
    kp = kinematic_point(E, BarrierSystem(V0=V0, a=width, l=0.0, mass=mass))
    k, q, al = kp.k, kp.q, kp.alpha
    e2w = math.exp(-2.0 * q * width)
    eikw = cmath.exp(1.0j * k * width)

    m = np.zeros((4, 4), dtype=complex)
    rhs = np.zeros(4, dtype=complex)
    # Unknown order: R, A, B e^{2qw}, T e^{qw}
    m[0, 0], m[0, 1], m[0, 2] = -1.0, 1.0, e2w
    rhs[0] = 1.0
    m[1, 0], m[1, 1], m[1, 2] = al, 1.0j, -1.0j * e2w
    rhs[1] = al
    m[2, 1], m[2, 2], m[2, 3] = 1.0, 1.0, -eikw
    m[3, 1], m[3, 2], m[3, 3] = 1.0j, -1.0j, -al * eikw

    x = np.linalg.solve(m, rhs)
    return complex(x[3]) * math.exp(-q * width), complex(x[0])


def _tm_phase(E: float, system: BarrierSystem) -> float:
    """arg(T) + k(2a+l) from the linear solve; defined modulo 2 pi."""
    sol = tm_solve(E, system)
    k = math.sqrt(E * E - system.mass * system.mass)
    return cmath.phase(sol.T) + k * system.span


def numeric_phase_time(E: float, system: BarrierSystem) -> float:
    """Phase time as a Richardson-extrapolated finite difference.

    Differentiates the transfer-matrix transmission phase with relative
    step 1e-6 in E; the four stencil samples are branch-aligned before
    differencing.  The stencil must stay inside the evanescent window.
    """
    h = 1e-6 * E
    for edge in (E - h, E + h):
        regime = classify_regime(edge, system)
        if regime is not Regime.EVANESCENT_PARTICLE:
            raise regime_error(regime, f"derivative stencil endpoint E={edge:g}")
    return phase_derivative(lambda x: _tm_phase(x, system), E, h, period=math.pi)


def _density_functions(kp: KinematicPoint, system: BarrierSystem):
    """Factories for the per-region probability densities |psi1|^2 + |psi3|^2."""
    E, k, q = kp.E, kp.k, kp.q
    mass = system.mass
    kappa1 = k / (E + mass)
    kappa2 = q / (E - system.V0 + mass)

    def plane(c_plus: complex, c_minus: complex):
        def dens(z: float) -> float:
            up = c_plus * cmath.exp(1.0j * k * z)
            dn = c_minus * cmath.exp(-1.0j * k * z)
            p1 = up + dn
            p3 = kappa1 * (up - dn)
            return abs(p1) ** 2 + abs(p3) ** 2

        return dens

    def evanescent(c_decay: complex, c_grow: complex):
        def dens(z: float) -> float:
            dc = c_decay * math.exp(-q * z)
            gr = c_grow * math.exp(q * z)
            p1 = dc + gr
            p3 = 1.0j * kappa2 * (dc - gr)
            return abs(p1) ** 2 + abs(p3) ** 2

        return dens

    return plane, evanescent


def _dwell_integral_detail(
    E: float, system: BarrierSystem, rtol: float = 1e-9
) -> tuple[float, float]:
    """(dwell time, quadrature error estimate)."""
    kp = kinematic_point(E, system)
    coeffs = tm_solve(E, system)
    plane, evanescent = _density_functions(kp, system)
    a, s, w = system.a, system.a + system.l, system.span
    pieces = [
        (evanescent(coeffs.A, coeffs.B), 0.0, a),
        (plane(coeffs.C, coeffs.D), a, s),
        (evanescent(coeffs.F, coeffs.G), s, w),
    ]
    total = 0.0
    err = 0.0
    for dens, lo, hi in pieces:
        value, piece_err = adaptive_simpson(dens, lo, hi, rtol=rtol)
        total += value
        err += piece_err
    j_inc = 2.0 * kp.k / (E + system.mass)
    return total / j_inc, err / j_inc


def dwell_integral(E: float, system: BarrierSystem) -> float:
    """Dwell time as integrated probability density over incident flux.

    Integrates psi^dag psi over the potential arrangement 0 < z < 2a+l
    (both barriers and the gap) by adaptive Simpson quadrature split at
    the interior interfaces, then divides by the incident flux
    J_inc = 2k/(E+m).
    """
    value, err = _dwell_integral_detail(E, system)
    if err > 1e-7 * max(abs(value), 1e-300):
        raise RuntimeError(
            f"dwell quadrature did not converge (value {value:g}, error estimate {err:g})"
        )
    return value


def _wavefunction(
    kp: KinematicPoint, system: BarrierSystem, coeffs: RegionCoefficients, z: float
) -> tuple[complex, complex]:
    """(psi1, psi3) at position z, dispatched by region."""
    E, k, q = kp.E, kp.k, kp.q
    mass = system.mass
    kappa1 = k / (E + mass)
    kappa2 = q / (E - system.V0 + mass)
    a, s, w = system.a, system.a + system.l, system.span
    if z < 0.0:
        up = cmath.exp(1.0j * k * z)
        dn = coeffs.R * cmath.exp(-1.0j * k * z)
        return up + dn, kappa1 * (up - dn)
    if z <= a:
        dc = coeffs.A * math.exp(-q * z)
        gr = coeffs.B * math.exp(q * z)
        return dc + gr, 1.0j * kappa2 * (dc - gr)
    if z < s:
        up = coeffs.C * cmath.exp(1.0j * k * z)
        dn = coeffs.D * cmath.exp(-1.0j * k * z)
        return up + dn, kappa1 * (up - dn)
    if z <= w:
        dc = coeffs.F * math.exp(-q * z)
        gr = coeffs.G * math.exp(q * z)
        return dc + gr, 1.0j * kappa2 * (dc - gr)
    up = coeffs.T * cmath.exp(1.0j * k * z)
    return up, kappa1 * up


def flux_profile(
    E: float, system: BarrierSystem, z_samples: Sequence[float]
) -> list[FieldSample]:
    """Density and flux J = 2 Re(psi1* psi3) at the given positions.

    For a stationary solution J is position-independent and equals
    J_inc |T|^2 everywhere, including inside the barriers where the two
    evanescent modes sustain it jointly.
    """
    kp = kinematic_point(E, system)
    coeffs = tm_solve(E, system)
    samples = []
    for z in z_samples:
        z = float(z)
        p1, p3 = _wavefunction(kp, system, coeffs, z)
        samples.append(
            FieldSample(
                z=z,
                psi_dag_psi=abs(p1) ** 2 + abs(p3) ** 2,
                J=2.0 * (p1.conjugate() * p3).real,
            )
        )
    return samples


def default_flux_samples(
    system: BarrierSystem, per_region: int = 20, offset: float = 1e-6
) -> np.ndarray:
    """Sample positions covering all five regions, kept off the interfaces.

    20 points per region by default; each region's endpoints are pulled
    inward by ``offset`` (capped at a quarter of the region width) so no
    sample lands exactly on a density kink.  The outer regions extend one
    span (at least 1.0) beyond the potential.
    """
    ext = max(1.0, system.span)
    a, s, w = system.a, system.a + system.l, system.span
    chunks = []
    for lo, hi in ((-ext, 0.0), (0.0, a), (a, s), (s, w), (w, w + ext)):
        width = hi - lo
        if width <= 0.0:
            continue
        off = min(offset, 0.25 * width)
        chunks.append(np.linspace(lo + off, hi - off, per_region))
    return np.concatenate(chunks)


def interface_matrix(E: float, system: BarrierSystem) -> InterfaceMatrix:
    """The evanescent-to-plane coefficient map shared by all four steps."""
    kp = kinematic_point(E, system)
    ia = 1.0j / kp.alpha
    return InterfaceMatrix(
        matrix=0.5 * np.array([[1.0 + ia, 1.0 - ia], [1.0 - ia, 1.0 + ia]])
    )


def transfer_relation(E: float, system: BarrierSystem) -> tuple[complex, complex]:
    """Compose interface maps and propagators from region V back to region I.

    Starting from the transmitted pair (T e^{ikw}, 0) of the linear solve
    and walking back through the four interfaces with diagonal propagation
    factors must reproduce the incident pair (1, R).  Uses true (unscaled)
    propagation factors e^{+-qa}, so it is meaningful at moderate qa only.
    """
    kp = kinematic_point(E, system)
    sol = tm_solve(E, system)
    k, q = kp.k, kp.q
    m = interface_matrix(E, system).matrix
    m_inv = np.linalg.inv(m)
    d_evan = np.diag([math.exp(q * system.a), math.exp(-q * system.a)])
    d_plane = np.diag(
        [cmath.exp(-1.0j * k * system.l), cmath.exp(1.0j * k * system.l)]
    )
    u_out = np.array([sol.T * cmath.exp(1.0j * k * system.span), 0.0], dtype=complex)
    u_in = m @ d_evan @ m_inv @ d_plane @ m @ d_evan @ m_inv @ u_out
    return complex(u_in[0]), complex(u_in[1])


def random_evanescent_grid(
    count: int,
    seed: int = 0,
    mass: float = 1.0,
    a_max: float = 30.0,
    l_max: float = 10.0,
    margin: float = 1e-3,
) -> dict[str, np.ndarray]:
    """Randomized parameter grid inside the evanescent window.

    E is drawn from (m, 3m), V0 from the open window (E-m, E+m) clipped
    positive, a from (0, a_max), l from (0, l_max); ``margin`` keeps all
    draws away from the window edges where k or q vanish.  Deterministic
    for a fixed seed.
    """
    rng = np.random.default_rng(seed)
    E = rng.uniform((1.0 + margin) * mass, 3.0 * mass, count)
    lo = np.maximum(E - mass + margin * mass, margin * mass)
    hi = E + mass - margin * mass
    V0 = rng.uniform(lo, hi)
    a = rng.uniform(margin, a_max, count)
    l = rng.uniform(margin, l_max, count)
    return {"E": E, "V0": V0, "a": a, "l": l}
