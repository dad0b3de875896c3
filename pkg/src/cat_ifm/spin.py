"""Collective-spin algebra on the symmetric (Dicke) subspace.

N symmetric two-level atoms live in the spin J = N/2 irreducible subspace
spanned by |J,m>, m = -J..J.  Amplitude vectors are indexed by k = J + m,
so k = 0 is all atoms in |g> and k = 2J is all atoms in |e>.  The number
of atoms found in |e> for outcome m is N_e = J + m.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

MAX_ATOMS = 64  # largest supported ensemble (2J); larger spins are out of scope


def validate_spin(j: float) -> int:
    """Return 2J as an int, rejecting non-half-integer or oversized spins."""
    two_j = int(round(2 * j))
    if abs(2 * j - two_j) > 1e-9 or two_j < 0:
        raise ValueError(f"spin must be a non-negative half-integer, got j={j!r}")
    if two_j > MAX_ATOMS:
        raise ValueError(f"ensembles beyond {MAX_ATOMS} atoms (2J) are not supported")
    return two_j


def m_values(j: float) -> np.ndarray:
    """Eigenvalues of J_z in index order k = J + m."""
    two_j = validate_spin(j)
    return np.arange(two_j + 1) - 0.5 * two_j


@dataclass(frozen=True)
class BlochAngles:
    """Orientation on the Bloch sphere: polar theta in [0, pi], azimuth phi in [0, 2pi)."""

    theta: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= np.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta!r}")
        if not 0.0 <= self.phi < 2 * np.pi:
            raise ValueError(f"phi must lie in [0, 2pi), got {self.phi!r}")


@dataclass(frozen=True)
class DickeVector:
    """Pure collective-spin state: unit-norm amplitudes over |J,m>, m = -J..J."""

    j: float
    amplitudes: np.ndarray

    def __post_init__(self):
        two_j = validate_spin(self.j)
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (two_j + 1,):
            raise ValueError(
                f"amplitude vector must have length 2J+1 = {two_j + 1}, got shape {amps.shape}"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > 1e-6:
            raise ValueError(f"amplitudes must be unit norm, got |psi| = {norm!r}")
        object.__setattr__(self, "amplitudes", amps / norm)

    @property
    def n_atoms(self) -> int:
        return validate_spin(self.j)


@dataclass(frozen=True)
class SpinOperators:
    """Dense matrices of the collective ladder and z operators for one spin J."""

    j: float
    j_plus: np.ndarray
    j_minus: np.ndarray
    j_z: np.ndarray

    @property
    def j_x(self) -> np.ndarray:
        return 0.5 * (self.j_plus + self.j_minus)

    @property
    def j_y(self) -> np.ndarray:
        return -0.5j * (self.j_plus - self.j_minus)


def spin_operators(j: float) -> SpinOperators:
    """Build J+, J-, Jz with <J,m+1|J+|J,m> = sqrt(J(J+1) - m(m+1))."""
    two_j = validate_spin(j)
    j = 0.5 * two_j
    m = np.arange(two_j + 1) - j
    ladder = np.sqrt(j * (j + 1) - m[:-1] * (m[:-1] + 1))
    j_plus = np.zeros((two_j + 1, two_j + 1), dtype=complex)
    j_plus[np.arange(1, two_j + 1), np.arange(two_j)] = ladder
    return SpinOperators(
        j=j, j_plus=j_plus, j_minus=j_plus.conj().T, j_z=np.diag(m).astype(complex)
    )


def coherent_amplitudes(j: float, theta: float, phi: float) -> np.ndarray:
    """Amplitudes sqrt(C(2J,k)) sin^k(theta/2) cos^(2J-k)(theta/2) e^{-i phi k}.

    Analytic in theta (no range checks), which gives the usual formal
    identities such as |-theta, 0> = |theta, pi>.
    """
    two_j = validate_spin(j)
    k = np.arange(two_j + 1)
    root_binom = np.exp(0.5 * (gammaln(two_j + 1) - gammaln(k + 1) - gammaln(two_j - k + 1)))
    half = 0.5 * theta
    return root_binom * np.sin(half) ** k * np.cos(half) ** (two_j - k) * np.exp(-1j * phi * k)


def coherent_state(j: float, angles: BlochAngles | tuple) -> DickeVector:
    """Atomic coherent state pointing along (theta, phi) on the Bloch sphere."""
    if not isinstance(angles, BlochAngles):
        angles = BlochAngles(*angles)
    return DickeVector(j, coherent_amplitudes(j, angles.theta, angles.phi))


@lru_cache(maxsize=None)
def _axis_eigensystem(two_j: int, axis: str):
    ops = spin_operators(0.5 * two_j)
    gen = ops.j_x if axis == "x" else ops.j_y
    evals, evecs = np.linalg.eigh(gen)
    return evals, evecs


def rotation(j: float, axis: str, angle: float) -> np.ndarray:
    """Unitary exp(i * angle * J_axis), axis in {x, y, z}.

    Hermitian generators are exponentiated by exact eigendecomposition
    (cached per spin and axis); J_z is diagonal.
    """
    two_j = validate_spin(j)
    if axis == "z":
        m = np.arange(two_j + 1) - 0.5 * two_j
        return np.diag(np.exp(1j * angle * m))
    if axis not in ("x", "y"):
        raise ValueError(f"axis must be one of x, y, z, got {axis!r}")
    evals, evecs = _axis_eigensystem(two_j, axis)
    return (evecs * np.exp(1j * angle * evals)) @ evecs.conj().T


def apply_unitary(u: np.ndarray, state: DickeVector) -> DickeVector:
    return DickeVector(state.j, u @ state.amplitudes)


def measurement_distribution(state: DickeVector) -> np.ndarray:
    """Probability P(m) = |c_m|^2 of counting N_e = J + m atoms in |e>."""
    p = np.abs(state.amplitudes) ** 2
    total = p.sum()
    if abs(total - 1.0) > 1e-8:
        raise ValueError(f"state is not normalized: sum P(m) = {total!r}")
    return p


def jz_mean(state: DickeVector) -> float:
    return float(measurement_distribution(state) @ m_values(state.j))


def jz_second_moment(state: DickeVector) -> float:
    return float(measurement_distribution(state) @ m_values(state.j) ** 2)


def fidelity(a: DickeVector, b: DickeVector) -> float:
    """Overlap |<a|b>|^2 (global phases drop out)."""
    if a.j != b.j:
        raise ValueError("states live on different spins")
    return float(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2)
