"""Dispersive-limit pulse sequence on the collective-spin space.

The interferometer acts on N atoms starting from all-ground |theta=0>:

    R1 (pi/2 pulse)  ->  C1 (cavity cat phase)  ->  R2(phi) (Stark phase)
                     ->  C2 (cavity cat phase)  ->  R3 (pi/2 pulse)

In the far-detuned limit each cavity transit reduces to the diagonal
unitary exp(+/- i pi/2 (Jz^2 - Jz)), which splits a coherent state into a
two-component cat.  Closed forms for the final states and the measured
signals are provided as independent cross-checks of the unitary pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spin import (
    DickeVector,
    apply_unitary,
    coherent_amplitudes,
    jz_mean,
    jz_second_moment,
    m_values,
    rotation,
    validate_spin,
)


class UnsupportedPhaseError(ValueError):
    """Odd-N closed forms are only available for |phi| <= pi/2."""


@dataclass(frozen=True)
class PulseSequenceSpec:
    """Parameters of one run: atom number, Stark phase, and C2 inversion flag."""

    n_atoms: int
    phase_shift: float
    inversion: bool = False

    def __post_init__(self):
        if self.n_atoms < 1:
            raise ValueError(f"n_atoms must be >= 1, got {self.n_atoms}")
        validate_spin(0.5 * self.n_atoms)

    @property
    def j(self) -> float:
        return 0.5 * self.n_atoms


def cavity_cat_unitary(j: float, sign: int = 1) -> np.ndarray:
    """Diagonal cavity unitary exp(i * sign * pi/2 * (Jz^2 - Jz))."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    m = m_values(j)
    return np.diag(np.exp(1j * sign * 0.5 * np.pi * (m * m - m)))


def stark_pulse_unitary(j: float, phi: float) -> np.ndarray:
    """Composite pulse exp(i pi Jx / 2) exp(i phi Jz) exp(-i pi Jx / 2).

    Equal to exp(i phi Jy): the two pi/2 pulses rotate the Stark z-phase
    onto the y axis.
    """
    half_x = rotation(j, "x", 0.5 * np.pi)
    return half_x @ rotation(j, "z", phi) @ half_x.conj().T


def inverted_sequence_pulses(j: float, phi: float) -> tuple[np.ndarray, np.ndarray]:
    """Ramsey-zone unitaries for the inverted-C2 scheme.

    R2' appends a +pi Stark z-shift right before C2 and R3' prepends the
    opposite -pi shift right after it.
    """
    u2 = rotation(j, "z", np.pi) @ stark_pulse_unitary(j, phi)
    u3 = rotation(j, "y", 0.5 * np.pi) @ rotation(j, "z", -np.pi)
    return u2, u3


def run_dispersive_sequence(spec: PulseSequenceSpec) -> DickeVector:
    """Apply the full pulse sequence to |theta=0> and return the final state."""
    j = spec.j
    psi = np.zeros(spec.n_atoms + 1, dtype=complex)
    psi[0] = 1.0  # |theta=0>: all atoms in |g>
    r1 = rotation(j, "y", 0.5 * np.pi)
    psi = cavity_cat_unitary(j, +1) @ (r1 @ psi)
    if spec.inversion:
        u2, u3 = inverted_sequence_pulses(j, spec.phase_shift)
        psi = u3 @ (cavity_cat_unitary(j, -1) @ (u2 @ psi))
    else:
        psi = r1 @ (cavity_cat_unitary(j, +1) @ (stark_pulse_unitary(j, spec.phase_shift) @ psi))
    return DickeVector(j, psi)


def intermediate_cat_state(n_atoms: int, phi: float) -> DickeVector:
    """State after R2 in the even-N sequence: the phase-split two-pole cat.

    (1/sqrt2) [e^{i pi/4 + i N phi/2} |pi/2, pi/2> +
               (-1)^{N/2} e^{-i pi/4 - i N phi/2} |pi/2, 3pi/2>]
    """
    if n_atoms % 2:
        raise ValueError("the two-pole intermediate form holds for even N only")
    j = 0.5 * n_atoms
    half = 0.5 * n_atoms * phi
    raw = np.exp(1j * (0.25 * np.pi + half)) * coherent_amplitudes(j, 0.5 * np.pi, 0.5 * np.pi)
    raw = raw + (-1) ** (n_atoms // 2) * np.exp(-1j * (0.25 * np.pi + half)) * coherent_amplitudes(
        j, 0.5 * np.pi, 1.5 * np.pi
    )
    return DickeVector(j, raw / np.linalg.norm(raw))


def closed_form_final_state(spec: PulseSequenceSpec) -> DickeVector:
    """Final state built directly from the coherent-state superpositions.

    Even N: two Jz poles with amplitudes -sin(N phi/2), cos(N phi/2)
    (identical with and without inversion).  Odd N: four coherent states
    in the xz plane, valid for |phi| <= pi/2.
    """
    n = spec.n_atoms
    j = spec.j
    phi = spec.phase_shift
    if n % 2 == 0:
        amps = np.zeros(n + 1, dtype=complex)
        amps[0] = -np.sin(0.5 * n * phi)
        amps[-1] = (-1) ** (n // 2) * np.cos(0.5 * n * phi)
    else:
        if abs(phi) > 0.5 * np.pi + 1e-12:
            raise UnsupportedPhaseError(
                f"odd-N closed form requires |phi| <= pi/2, got phi={phi!r}"
            )
        sgn = (-1) ** ((n - 1) // 2)
        near = coherent_amplitudes(j, phi, 0.0)
        near_pi = coherent_amplitudes(j, phi, np.pi)
        far = coherent_amplitudes(j, np.pi - phi, 0.0)
        far_pi = coherent_amplitudes(j, np.pi - phi, np.pi)
        if spec.inversion:
            amps = 0.5 * (near - near_pi - 1j * sgn * (far - far_pi))
        else:
            amps = 0.5 * (near + near_pi + 1j * sgn * (far + far_pi))
    return DickeVector(j, amps / np.linalg.norm(amps))


def ideal_signal(n_atoms: int, phi, inversion: bool = False):
    """Measured <Jz> of a single run: (N/2)cos(N phi) for even N,
    -/+ (N/2) cos^{N-1}(phi) for odd N without/with inversion."""
    phi = np.asarray(phi, dtype=float)
    if n_atoms % 2 == 0:
        return 0.5 * n_atoms * np.cos(n_atoms * phi)
    sign = 1.0 if inversion else -1.0
    return sign * 0.5 * n_atoms * np.cos(phi) ** (n_atoms - 1)


def ideal_signal_slope(n_atoms: int, phi, inversion: bool = False):
    phi = np.asarray(phi, dtype=float)
    if n_atoms % 2 == 0:
        return -0.5 * n_atoms**2 * np.sin(n_atoms * phi)
    sign = -1.0 if inversion else 1.0
    return sign * 0.5 * n_atoms * (n_atoms - 1) * np.cos(phi) ** (n_atoms - 2) * np.sin(phi)


def ideal_jz_squared(n_atoms: int, phi):
    """Second moment <Jz^2>: N^2/4 (even), (N^2 cos^2 + N sin^2)/4 (odd)."""
    phi = np.asarray(phi, dtype=float)
    if n_atoms % 2 == 0:
        return 0.25 * n_atoms**2 * np.ones_like(phi)
    c2 = np.cos(phi) ** 2
    return 0.25 * (n_atoms**2 * c2 + n_atoms * (1.0 - c2))


def sequence_moments(spec: PulseSequenceSpec) -> tuple[float, float]:
    """(<Jz>, <Jz^2>) of the unitary-pipeline final state."""
    state = run_dispersive_sequence(spec)
    return jz_mean(state), jz_second_moment(state)


def single_run_sensitivity(n_atoms: int, phi: float, inversion: bool = False) -> float:
    """Phase uncertainty Delta Jz / |d<Jz>/d phi| of a single fixed-N run.

    Even N: the ratio is identically 1/N (numerator and slope share the
    same |sin(N phi)| factor).  Odd N: the 0/0 points phi = 0, +/-pi have
    the finite limit 1/sqrt(N); points of genuinely vanishing slope
    (cos phi = 0, and every phi when N = 1) return +inf.
    """
    if n_atoms % 2 == 0:
        return 1.0 / n_atoms
    if n_atoms == 1:
        return np.inf  # signal is constant: no phase information
    c = np.cos(phi)
    s = np.sin(phi)
    if abs(s) < 1e-8:
        return 1.0 / np.sqrt(n_atoms)
    slope = 0.5 * n_atoms * (n_atoms - 1) * abs(c) ** (n_atoms - 2) * abs(s)
    if slope == 0.0:
        return np.inf
    # c^2 - c^(2N-2) evaluated as -c^2 expm1((2N-4) log|c|) to survive the
    # near-cancellation at small |phi|
    var = 0.25 * n_atoms * s * s
    if abs(c) > 0.0:
        var -= 0.25 * n_atoms**2 * c * c * np.expm1((2 * n_atoms - 4) * np.log(abs(c)))
    else:
        var += 0.25 * n_atoms**2 * c * c
    return float(np.sqrt(max(var, 0.0)) / slope)
