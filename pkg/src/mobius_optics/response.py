"""Linear-response description of a medium of aligned Mobius rings.

Near the lowest inter-band resonance Delta_0 (the transition from the
ground state (0, down) into the degenerate pair (0, up), (1, up)) the
medium is characterised by a single complex response function

    eta(omega) = e^2 W^2 / (8 hbar eps0 v0) * 1 / (omega - Delta_0 + i gamma)

and the relative permittivity / permeability tensors (molecular frame,
interface normal along z):

    eps_r = [[1 - eta', 0, 0], [0, 1 - eta', -2 eta'], [0, -2 eta', 1 - 4 eta']]
    mu_r  = [[1 - a^2 eta', 0, 0], [0, 1 - a^2 eta', -2 a b eta'],
             [0, -2 a b eta', 1 - 4 b^2 eta']]

with the dimensionless magnetic coupling strengths

    a = (R / hbar c) [V + xi (cos delta - cos delta/2)]
    b = 2 (R xi / hbar c) sin^2(delta/2) cos(delta/2).

In lossless mode eta' = Re(eta) is used; in lossy mode the full complex
eta replaces it entrywise.  The yz blocks have exact eigenvalue pairs
{1, 1 - 5 eta'} and {1, 1 - (a^2 + 4 b^2) eta'}; the second members are the
principal values eps1 and mu1 whose zero crossings bound the negative
windows.  Both tensors follow from the Green-Kubo dipole sums restricted to
the resonant pair; the full sums over all 2N - 1 excited states are kept in
``full_polarization`` / ``full_magnetization`` as a validation route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import C_LIGHT, EPSILON_0, EV, E_CHARGE, HBAR, MU_0
from .dipole import electric_table, magnetic_table
from .ring import (
    Band,
    EigenLabel,
    RingParams,
    VolumeConvention,
    all_labels,
    transition_frequency,
)

# lossless-mode near-resonance mask half width, in units of gamma
NEAR_RESONANCE_FACTOR = 1e-3


class ResonanceSingularityError(ZeroDivisionError):
    """eta evaluated exactly on resonance with zero damping."""


class LocalFieldPoleError(ZeroDivisionError):
    """Local-field corrected permittivity evaluated at one of its poles."""


@dataclass(frozen=True)
class MediumConfig:
    """A Mobius-ring medium: one molecule per volume cell, fixed orientation."""

    ring: RingParams
    lossy: bool = False

    @property
    def volume_convention(self) -> VolumeConvention:
        return self.ring.volume_convention


@dataclass(frozen=True)
class ResponseTensors:
    omega: float
    eta: complex
    eps_r: np.ndarray   # (3, 3), real lossless / complex lossy
    mu_r: np.ndarray
    alpha: float
    beta: float
    eps1: complex       # 1 - 5 eta'
    mu1: complex        # 1 - (alpha^2 + 4 beta^2) eta'
    near_resonance: bool = False


def molecular_volume(config: MediumConfig) -> float:
    """Volume per molecule in m^3 under the configured convention.

    CYLINDER_2W gives 2 pi (R + W)^2 W; CYLINDER_4W exactly twice that.
    """
    ring = config.ring
    base = 2.0 * math.pi * (ring.radius + ring.half_width) ** 2 * ring.half_width
    if ring.volume_convention is VolumeConvention.CYLINDER_4W:
        return 2.0 * base
    return base


def resonance_frequency(config: MediumConfig) -> float:
    """Delta_0 = (2V + 2 xi (1 - cos delta/2)) / hbar in rad/s."""
    return transition_frequency(config.ring, EigenLabel(0, Band.UP))


def eta_prefactor(config: MediumConfig) -> float:
    """e^2 W^2 / (8 hbar eps0 v0) in rad/s."""
    w = config.ring.half_width
    return E_CHARGE**2 * w**2 / (8.0 * HBAR * EPSILON_0 * molecular_volume(config))


def eta(config: MediumConfig, omega):
    """Complex response eta(omega); accepts scalars or arrays (rad/s)."""
    gamma = config.ring.decay_rate
    delta0 = resonance_frequency(config)
    omega = np.asarray(omega, dtype=float)
    if gamma == 0.0 and np.any(omega == delta0):
        raise ResonanceSingularityError(
            "eta diverges exactly on resonance when the decay rate is zero"
        )
    value = eta_prefactor(config) / (omega - delta0 + 1j * gamma)
    return complex(value) if value.ndim == 0 else value


def is_near_resonance(config: MediumConfig, omega) -> bool | np.ndarray:
    """Bins within 1e-3 gamma of the resonance; masked in lossless sweeps."""
    gamma = config.ring.decay_rate
    delta0 = resonance_frequency(config)
    out = np.abs(np.asarray(omega, dtype=float) - delta0) < NEAR_RESONANCE_FACTOR * gamma
    return bool(out) if out.ndim == 0 else out


def alpha_beta(config: MediumConfig) -> tuple[float, float]:
    ring = config.ring
    d = ring.delta
    v_j = ring.v_inter * EV
    xi_j = ring.xi_intra * EV
    hbar_c = HBAR * C_LIGHT
    alpha = ring.radius / hbar_c * (v_j + xi_j * (math.cos(d) - math.cos(d / 2.0)))
    beta = 2.0 * ring.radius * xi_j / hbar_c * math.sin(d / 2.0) ** 2 * math.cos(d / 2.0)
    return alpha, beta


def _effective_eta(config: MediumConfig, omega):
    """eta' in lossless mode, complex eta in lossy mode."""
    h = eta(config, omega)
    return h if config.lossy else np.real(h)


def epsilon_tensor(config: MediumConfig, omega) -> np.ndarray:
    h = _effective_eta(config, omega)
    dtype = complex if config.lossy else float
    out = np.zeros((3, 3), dtype=dtype)
    out[0, 0] = 1.0 - h
    out[1, 1] = 1.0 - h
    out[2, 2] = 1.0 - 4.0 * h
    out[1, 2] = out[2, 1] = -2.0 * h
    return out


def mu_tensor(config: MediumConfig, omega) -> np.ndarray:
    h = _effective_eta(config, omega)
    a, b = alpha_beta(config)
    dtype = complex if config.lossy else float
    out = np.zeros((3, 3), dtype=dtype)
    out[0, 0] = 1.0 - a**2 * h
    out[1, 1] = 1.0 - a**2 * h
    out[2, 2] = 1.0 - 4.0 * b**2 * h
    out[1, 2] = out[2, 1] = -2.0 * a * b * h
    return out


def eps1(config: MediumConfig, omega):
    """Principal permittivity 1 - 5 eta' (complex eta when lossy)."""
    return 1.0 - 5.0 * _effective_eta(config, omega)


def mu1(config: MediumConfig, omega):
    """Principal permeability 1 - (alpha^2 + 4 beta^2) eta'."""
    a, b = alpha_beta(config)
    return 1.0 - (a**2 + 4.0 * b**2) * _effective_eta(config, omega)


def response_tensors(config: MediumConfig, omega: float) -> ResponseTensors:
    h = eta(config, omega)
    a, b = alpha_beta(config)
    return ResponseTensors(
        omega=float(omega),
        eta=h,
        eps_r=epsilon_tensor(config, omega),
        mu_r=mu_tensor(config, omega),
        alpha=a,
        beta=b,
        eps1=eps1(config, omega),
        mu1=mu1(config, omega),
        near_resonance=bool(is_near_resonance(config, omega)),
    )


# ---------------------------------------------------------------------------
# Full Green-Kubo sums over every excited state (validation route)
# ---------------------------------------------------------------------------

def _ground_dyads(config: MediumConfig, table: np.ndarray):
    """Per-excited-label dyads v v^dag with v = <ground| O |excited>."""
    n = config.ring.n_per_ring
    labels = all_labels(n)
    g = 0  # index of (0, down) in all_labels ordering
    freqs, dyads = [], []
    for idx, lab in enumerate(labels):
        if idx == g:
            continue
        vec = table[g, idx]  # <ground| O |excited>
        freqs.append(transition_frequency(config.ring, lab))
        dyads.append(np.outer(vec, vec.conj()))
    return np.array(freqs), np.array(dyads)


def _kubo_sum(config: MediumConfig, omega: float, freqs, dyads) -> np.ndarray:
    gamma = config.ring.decay_rate
    lorentz = 1.0 / (omega - freqs + 1j * gamma)
    total = np.tensordot(lorentz, dyads, axes=(0, 0))
    return total if config.lossy else total.real


def full_polarization(config: MediumConfig, omega: float, e_field) -> np.ndarray:
    """Polarization P (C/m^2) from the full dipole sum; ground state excluded."""
    freqs, dyads = _ground_dyads(config, electric_table(config.ring))
    s = _kubo_sum(config, omega, freqs, dyads)
    return -(1.0 / (HBAR * molecular_volume(config))) * (s @ np.asarray(e_field))


def full_magnetization(config: MediumConfig, omega: float, h_field) -> np.ndarray:
    """Magnetization M (A/m) from the full magnetic sum, drive given as H."""
    freqs, dyads = _ground_dyads(config, magnetic_table(config.ring))
    s = _kubo_sum(config, omega, freqs, dyads)
    return -(MU_0 / (HBAR * molecular_volume(config))) * (s @ np.asarray(h_field))


def full_response_sums(config: MediumConfig, omega: float, e_field, h_field):
    """(P, M) from the full sums; linear in the respective drive fields."""
    return (
        full_polarization(config, omega, e_field),
        full_magnetization(config, omega, h_field),
    )


def epsilon_from_full_sum(config: MediumConfig, omega: float) -> np.ndarray:
    """3x3 permittivity rebuilt from full_polarization on unit drives."""
    out = np.eye(3, dtype=complex if config.lossy else float)
    for c in range(3):
        unit = np.zeros(3)
        unit[c] = 1.0
        out[:, c] += full_polarization(config, omega, unit) / EPSILON_0
    return out


def mu_from_full_sum(config: MediumConfig, omega: float) -> np.ndarray:
    """3x3 permeability rebuilt from full_magnetization on unit drives."""
    out = np.eye(3, dtype=complex if config.lossy else float)
    for c in range(3):
        unit = np.zeros(3)
        unit[c] = 1.0
        out[:, c] += full_magnetization(config, omega, unit)
    return out


# ---------------------------------------------------------------------------
# Negative-permeability window
# ---------------------------------------------------------------------------

def bandwidth(config: MediumConfig) -> float:
    """Width of the mu1 < 0 window in rad/s; 0 when overdamped.

    mu1(omega) = 0 has two roots above resonance whenever the oscillator
    strength beats the damping; their separation is

        B = sqrt( [e^2 (a^2 + 4 b^2) W^2 / (8 eps0 v0 hbar)]^2 - 4 gamma^2 ).
    """
    a, b = alpha_beta(config)
    pref = (a**2 + 4.0 * b**2) * eta_prefactor(config)
    radicand = pref**2 - 4.0 * config.ring.decay_rate**2
    return math.sqrt(radicand) if radicand > 0.0 else 0.0


def mu1_zero_detunings(config: MediumConfig) -> tuple[float, float] | None:
    """Detunings (from resonance) of the two mu1 zeros, or None if overdamped."""
    a, b = alpha_beta(config)
    pref = (a**2 + 4.0 * b**2) * eta_prefactor(config)
    radicand = pref**2 - 4.0 * config.ring.decay_rate**2
    if radicand <= 0.0:
        return None
    root = math.sqrt(radicand)
    return (0.5 * (pref - root), 0.5 * (pref + root))


def critical_lifetime(config: MediumConfig) -> float:
    """Minimum excited-state lifetime (s) for the mu1 < 0 window to open."""
    a, b = alpha_beta(config)
    w = config.ring.half_width
    return (
        16.0 * EPSILON_0 * molecular_volume(config) * HBAR
        / (E_CHARGE**2 * (a**2 + 4.0 * b**2) * w**2)
    )


# ---------------------------------------------------------------------------
# Local field (mean-field) correction
# ---------------------------------------------------------------------------

def local_field_epsilon(config: MediumConfig, omega) -> np.ndarray:
    """Permittivity corrected for the field of the surrounding molecules.

    Entrywise closed form near the resonance:

        diag x:   (3 - 2 eta') / (3 + eta')
        yz block: [[(3 + 2 eta'), -6 eta'], [-6 eta', (3 - 7 eta')]] / (3 + 5 eta')

    with eigenvalues (3 - 2 eta')/(3 + eta'), (3 - 10 eta')/(3 + 5 eta'), 1.
    The corrected principal value crosses zero at eta' = 3/10 instead of the
    uncorrected 1/5.
    """
    h = _effective_eta(config, omega)
    pole_x = 3.0 + h
    pole_yz = 3.0 + 5.0 * h
    if min(abs(pole_x), abs(pole_yz)) < 1e-12:
        raise LocalFieldPoleError("corrected permittivity evaluated at a pole")
    dtype = complex if config.lossy else float
    out = np.zeros((3, 3), dtype=dtype)
    out[0, 0] = (3.0 - 2.0 * h) / pole_x
    out[1, 1] = (3.0 + 2.0 * h) / pole_yz
    out[2, 2] = (3.0 - 7.0 * h) / pole_yz
    out[1, 2] = out[2, 1] = -6.0 * h / pole_yz
    return out


def molecular_polarizability(
    config: MediumConfig, omega: float, resonant_only: bool = False
) -> np.ndarray:
    """Molecular polarizability gamma_mol (m^3), dispersive part.

    gamma_mol = -(1 / hbar eps0) sum' dyad * (omega - Delta) / ((omega - Delta)^2 + gamma^2)

    With resonant_only=True the sum keeps just the degenerate resonant pair,
    which is the regime where the closed-form corrected permittivity applies.
    """
    freqs, dyads = _ground_dyads(config, electric_table(config.ring))
    if resonant_only:
        delta0 = resonance_frequency(config)
        keep = np.abs(freqs - delta0) < 1e-6 * delta0
        freqs, dyads = freqs[keep], dyads[keep]
    gamma = config.ring.decay_rate
    x = omega - freqs
    weights = x / (x**2 + gamma**2)
    total = np.tensordot(weights, dyads, axes=(0, 0))
    return -total.real / (HBAR * EPSILON_0)


def epsilon_from_polarizability(gamma_mol: np.ndarray, volume: float) -> np.ndarray:
    """eps_r = 1 + (1 - gamma_mol / 3 v0)^{-1} gamma_mol / v0 (matrix form)."""
    g = np.asarray(gamma_mol) / volume
    return np.eye(3) + np.linalg.inv(np.eye(3) - g / 3.0) @ g
