"""Plane-wave refraction at the z = 0 interface between air and the medium.

A monochromatic wave arrives from vacuum in the y-z plane at angle theta
from the interface normal.  Two polarizations are treated: E along x
("E-polarized") and H along x ("H-polarized").  Matching the tangential
wave vector k_ty = (omega/c) sin(theta) leaves a quadratic for k_tz; for
the E case (mu block relevant, d = det of the mu yz block, equal to the
principal value mu1 for the Mobius tensors):

    mu_zz k_tz^2 + 2 mu_yz k_iy k_tz + mu_yy k_iy^2 - d (omega/c)^2 eps_xx = 0

The two roots carry opposite Poynting z components S_tz = +/- sqrt(disc)/2d,
so causality (S_tz > 0, energy flowing into the medium) always selects
exactly one branch: the "+" root when d > 0 and the "-" root when d < 0.

Classification of each (theta, omega) cell:

    TR  no real propagating root reaches S_tz > 0 (total reflection)
    LH  causal branch has k_t . S_t < 0 (left-handed, negative refraction)
    RH  otherwise (ordinary refraction)

The H-polarized case is the exact dual with eps and mu exchanged.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .constants import C_LIGHT
from .response import (
    MediumConfig,
    ResponseTensors,
    bandwidth,
    is_near_resonance,
    mu1_zero_detunings,
    resonance_frequency,
    response_tensors,
)

REALNESS_TOL = 1e-9      # |Im k_tz| <= tol * k_i counts as propagating
DEGENERACY_TOL = 1e-12   # |det yz block| below this is a degenerate quadratic


class Polarization(enum.Enum):
    E = "E"
    H = "H"


class Classification(enum.IntEnum):
    LH = -1
    TR = 0
    RH = 1
    MASKED = 2   # near-resonance bin, excluded from diagrams


class ConicClass(enum.Enum):
    CIRCLE = "circle"        # closed (elliptic) wave-vector surface
    HYPERBOLA = "hyperbola"
    DEGENERATE = "degenerate"  # no real surface points


class DegenerateFresnelError(ArithmeticError):
    """The yz response block is singular; the dispersion quadratic degenerates."""


@dataclass(frozen=True)
class IncidentWave:
    polarization: Polarization
    theta: float   # radians, in [0, pi/2)
    omega: float   # rad/s

    def __post_init__(self):
        if not 0.0 <= self.theta < math.pi / 2.0:
            raise ValueError("theta must lie in [0, pi/2)")
        if self.omega <= 0.0:
            raise ValueError("omega must be positive")

    @property
    def k_i(self) -> float:
        return self.omega / C_LIGHT

    @property
    def k_iy(self) -> float:
        return self.k_i * math.sin(self.theta)


@dataclass(frozen=True)
class RefractionResult:
    wave: IncidentWave
    roots: np.ndarray            # (2,) complex k_tz, rad/m
    chosen: int | None           # index into roots, None if totally reflected
    k_ty: float
    poynting_dir: tuple[float, float] | None  # (S_ty, S_tz) up to positive prefactor
    classification: Classification


@dataclass(frozen=True)
class SurfacePoint:
    n_ty: float
    n_tz: float
    normal_dir: np.ndarray   # (2,) unit normal of the surface at the point


def _blocks(tensors: ResponseTensors, pol: Polarization):
    """(curl tensor, transverse xx entry) for the polarization.

    E-polarized fields see mu in the double curl and eps_xx on the source
    side; H-polarized is the dual.
    """
    if pol is Polarization.E:
        t, other_xx = tensors.mu_r, tensors.eps_r[0, 0]
    else:
        t, other_xx = tensors.eps_r, tensors.mu_r[0, 0]
    tyy, tyz, tzz = t[1, 1], t[1, 2], t[2, 2]
    det = tyy * tzz - tyz * tyz
    return tyy, tyz, tzz, det, other_xx


def _quadratic(tensors, pol, k_iy, k_i):
    tyy, tyz, tzz, det, other_xx = _blocks(tensors, pol)
    if abs(det) < DEGENERACY_TOL:
        raise DegenerateFresnelError(
            "the yz response block is singular (principal value 0); the "
            "boundary between the propagating regimes is classified TR"
        )
    a = tzz
    b = 2.0 * tyz * k_iy
    c = tyy * k_iy**2 - det * k_i**2 * other_xx
    return a, b, c, det


def fresnel_roots(tensors: ResponseTensors, wave: IncidentWave) -> np.ndarray:
    """Both k_tz roots (complex ndarray, shape (2,)), '+' discriminant first."""
    a, b, c, _ = _quadratic(tensors, wave.polarization, wave.k_iy, wave.k_i)
    disc = complex(b * b - 4.0 * a * c)
    root = np.sqrt(disc)
    return np.array([(-b + root) / (2.0 * a), (-b - root) / (2.0 * a)])


def fresnel_roots_E(tensors: ResponseTensors, wave: IncidentWave) -> np.ndarray:
    if wave.polarization is not Polarization.E:
        raise ValueError("fresnel_roots_E expects an E-polarized wave")
    return fresnel_roots(tensors, wave)


def fresnel_roots_H(tensors: ResponseTensors, wave: IncidentWave) -> np.ndarray:
    if wave.polarization is not Polarization.H:
        raise ValueError("fresnel_roots_H expects an H-polarized wave")
    return fresnel_roots(tensors, wave)


def _poynting(tensors, pol, k_iy, k_tz):
    """(S_ty, S_tz) up to the positive prefactor amplitude^2 t^2 / (2 omega mu0|eps0).

    Valid for real and complex inputs; for complex arguments the returned
    components are the real parts of the complex Poynting flow.
    """
    tyy, tyz, tzz, det, _ = _blocks(tensors, pol)
    s_ty = np.real((tyz * k_tz + tyy * k_iy) / det)
    s_tz = np.real((tyz * k_iy + tzz * k_tz) / det)
    return float(s_ty), float(s_tz)


def poynting_E(tensors: ResponseTensors, wave: IncidentWave, k_tz: float):
    """Refracted-wave Poynting components for a real propagating E-pol root."""
    return _poynting(tensors, Polarization.E, wave.k_iy, k_tz)


def poynting_H(tensors: ResponseTensors, wave: IncidentWave, k_tz: float):
    return _poynting(tensors, Polarization.H, wave.k_iy, k_tz)


def classify(tensors: ResponseTensors, wave: IncidentWave,
             realness_tol: float = REALNESS_TOL) -> RefractionResult:
    """Classify one incident (polarization, theta, omega) cell.

    A root counts as propagating when |Im k_tz| <= realness_tol * k_i.  The
    causal branch must carry energy into the medium (S_tz > 0); if no
    propagating root does, the wave is totally reflected.
    """
    try:
        roots = fresnel_roots(tensors, wave)
    except DegenerateFresnelError:
        return RefractionResult(
            wave, np.array([np.nan + 0j, np.nan + 0j]), None, wave.k_iy, None,
            Classification.TR,
        )
    tol = realness_tol * wave.k_i
    chosen, s_dir = None, None
    for idx in range(2):
        if abs(roots[idx].imag) > tol:
            continue
        k_tz = roots[idx].real
        s_ty, s_tz = _poynting(tensors, wave.polarization, wave.k_iy, k_tz)
        if s_tz > 0.0:
            chosen, s_dir = idx, (s_ty, s_tz)
            break
    if chosen is None:
        return RefractionResult(wave, roots, None, wave.k_iy, None, Classification.TR)
    k_tz = roots[chosen].real
    k_dot_s = wave.k_iy * s_dir[0] + k_tz * s_dir[1]
    cls = Classification.LH if k_dot_s < 0.0 else Classification.RH
    return RefractionResult(wave, roots, chosen, wave.k_iy, s_dir, cls)


def classify_E(tensors: ResponseTensors, wave: IncidentWave) -> RefractionResult:
    if wave.polarization is not Polarization.E:
        raise ValueError("classify_E expects an E-polarized wave")
    return classify(tensors, wave)


def classify_H(tensors: ResponseTensors, wave: IncidentWave) -> RefractionResult:
    if wave.polarization is not Polarization.H:
        raise ValueError("classify_H expects an H-polarized wave")
    return classify(tensors, wave)


# ---------------------------------------------------------------------------
# Phase diagram over a (theta, omega) grid
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PhaseDiagram:
    polarization: Polarization
    theta: np.ndarray        # (n_theta,) radians
    omega: np.ndarray        # (n_omega,) rad/s
    codes: np.ndarray        # (n_theta, n_omega) int8 Classification values

    def count(self, cls: Classification) -> int:
        return int(np.count_nonzero(self.codes == int(cls)))


def _classify_grid(config: MediumConfig, pol: Polarization, theta, omega) -> np.ndarray:
    """Vectorised lossless classification; same rules as ``classify``."""
    from .response import alpha_beta, eta

    theta = np.asarray(theta, dtype=float)
    omega = np.asarray(omega, dtype=float)
    h = np.real(eta(config, omega))[None, :]          # (1, n_omega)
    a, b = alpha_beta(config)
    if pol is Polarization.E:
        tyy = 1.0 - a**2 * h
        tyz = -2.0 * a * b * h
        tzz = 1.0 - 4.0 * b**2 * h
        other_xx = 1.0 - h
    else:
        tyy = 1.0 - h
        tyz = -2.0 * h
        tzz = 1.0 - 4.0 * h
        other_xx = 1.0 - a**2 * h
    det = tyy * tzz - tyz**2
    k_i = (omega / C_LIGHT)[None, :]
    sin_t = np.sin(theta)[:, None]
    k_iy = k_i * sin_t
    qa = tzz
    qb = 2.0 * tyz * k_iy
    qc = tyy * k_iy**2 - det * k_i**2 * other_xx
    disc = qb**2 - 4.0 * qa * qc
    # real roots have S_tz = +/- sqrt(disc) / (2 det): the causal branch exists
    # whenever disc > 0 and det != 0, with k_tz = (-qb + sign(det) sqrt(disc)) / (2 qa)
    propagating = disc > 0.0
    degenerate = np.abs(det) < DEGENERACY_TOL
    sqrt_disc = np.sqrt(np.where(propagating, disc, 0.0))
    k_tz = (-qb + np.sign(det) * sqrt_disc) / (2.0 * qa)
    s_ty = (tyz * k_tz + tyy * k_iy) / det
    s_tz = (tyz * k_iy + tzz * k_tz) / det
    k_dot_s = k_iy * s_ty + k_tz * s_tz
    codes = np.full(disc.shape, int(Classification.TR), dtype=np.int8)
    ok = propagating & ~degenerate & (s_tz > 0.0)
    codes[ok & (k_dot_s < 0.0)] = int(Classification.LH)
    codes[ok & (k_dot_s >= 0.0)] = int(Classification.RH)
    masked = np.broadcast_to(is_near_resonance(config, omega)[None, :], codes.shape)
    codes[masked] = int(Classification.MASKED)
    return codes


def phase_diagram(config: MediumConfig, pol: Polarization,
                  theta_grid, omega_grid) -> PhaseDiagram:
    """Classify every (theta, omega) cell of a monotone grid.

    Emits a warning when the omega spacing is too coarse to resolve the
    mu1 < 0 window (target: bandwidth / 50), if that window overlaps the
    grid at all.
    """
    theta = np.asarray(theta_grid, dtype=float)
    omega = np.asarray(omega_grid, dtype=float)
    if np.any(np.diff(theta) <= 0) or (omega.size > 1 and np.any(np.diff(omega) <= 0)):
        raise ValueError("theta and omega grids must be strictly increasing")
    bw = bandwidth(config)
    zeros = mu1_zero_detunings(config)
    if bw > 0.0 and omega.size > 1 and zeros is not None:
        delta0 = resonance_frequency(config)
        spacing = np.diff(omega).max()
        lo, hi = delta0 + zeros[0], delta0 + zeros[1]
        if spacing > bw / 2.0 and omega[0] < hi and omega[-1] > lo:
            warnings.warn(
                f"omega grid spacing {spacing:.3e} rad/s cannot resolve the "
                f"negative-permeability window (width {bw:.3e}); a spacing "
                f"of bandwidth/50 = {bw / 50.0:.3e} is recommended",
                stacklevel=2,
            )
    codes = _classify_grid(config, pol, theta, omega)
    return PhaseDiagram(pol, theta, omega, codes)


# ---------------------------------------------------------------------------
# Wave-vector surfaces
# ---------------------------------------------------------------------------

def mixing_angle(tensors: ResponseTensors, pol: Polarization = Polarization.E) -> float:
    """Rotation angle (radians) that diagonalizes the yz quadratic form.

    tan(2 phi) = 2 t_yz / (t_yy - t_zz); for the E-polarized Mobius tensors
    this is -4 a b / (4 b^2 - a^2).  Rotating (n_ty, n_tz) by phi removes
    the cross term, putting the conic in canonical form.
    """
    tyy, tyz, tzz, _, _ = _blocks(tensors, pol)
    return 0.5 * math.atan2(2.0 * tyz, tyy - tzz)


def _principal_frame(tensors, pol):
    """Rotation phi plus principal coefficients (lam_ty, lam_tz, rhs).

    In the rotated frame the surface is lam_ty nt~^2 + lam_tz nz~^2 = rhs
    with nt~ = n_ty cos(phi) + n_tz sin(phi), nz~ = -n_ty sin(phi) + n_tz cos(phi).
    """
    tyy, tyz, tzz, det, other_xx = _blocks(tensors, pol)
    phi = mixing_angle(tensors, pol)
    c, s = math.cos(phi), math.sin(phi)
    lam_ty = tyy * c**2 + 2.0 * tyz * s * c + tzz * s**2
    lam_tz = tyy * s**2 - 2.0 * tyz * s * c + tzz * c**2
    return phi, lam_ty, lam_tz, det * other_xx


def conic_classification(tensors: ResponseTensors,
                         pol: Polarization = Polarization.E) -> ConicClass:
    _, lam1, lam2, rhs = _principal_frame(tensors, pol)
    if lam1 * lam2 > 0.0:
        return ConicClass.CIRCLE if rhs / lam1 > 0.0 else ConicClass.DEGENERATE
    if lam1 * lam2 < 0.0:
        return ConicClass.HYPERBOLA
    return ConicClass.DEGENERATE


def rotated_conic_residual(tensors: ResponseTensors, pol: Polarization,
                           point: SurfacePoint) -> float:
    """|lam_ty nt~^2 + lam_tz nz~^2 - rhs| / |rhs| in the principal frame.

    For the hyperbolic regime this is exactly the residual of the canonical
    two-branch form nz~^2 / ((1 - eta') mu1) - nt~^2 / (eta' - 1) = 1.
    """
    phi, lam_ty, lam_tz, rhs = _principal_frame(tensors, pol)
    c, s = math.cos(phi), math.sin(phi)
    nt = point.n_ty * c + point.n_tz * s
    nz = -point.n_ty * s + point.n_tz * c
    return abs((lam_ty * nt**2 + lam_tz * nz**2) / rhs - 1.0)


def _causal_n_tz(tensors, pol, n_ty):
    """Causal-branch n_tz at reduced transverse component n_ty, or None."""
    tyy, tyz, tzz, det, other_xx = _blocks(tensors, pol)
    # disc/4 of the reduced quadratic tzz n^2 + 2 tyz n_ty n + tyy n_ty^2 = det other_xx
    disc4 = tyz**2 * n_ty**2 - tzz * (tyy * n_ty**2 - det * other_xx)
    if disc4 <= 0.0:
        return None
    return (-tyz * n_ty + math.copysign(1.0, det) * math.sqrt(disc4)) / tzz


def surface_determinant_residual(tensors, pol, n_ty, n_tz) -> float:
    tyy, tyz, tzz, det, other_xx = _blocks(tensors, pol)
    val = other_xx - (tyy * n_ty**2 + 2.0 * tyz * n_ty * n_tz + tzz * n_tz**2) / det
    return abs(val)


@dataclass(frozen=True)
class SurfaceResult:
    conic: ConicClass
    points: list[SurfacePoint]


def wave_vector_surface(tensors: ResponseTensors,
                        pol: Polarization = Polarization.E,
                        n_samples: int = 200) -> SurfaceResult:
    """Sample the causal branch of the wave-vector surface at fixed omega.

    Points are reduced wave vectors n = k c / omega satisfying the Fresnel
    determinant condition, with the branch chosen so the Poynting flow is
    into the medium (S_tz > 0).  Apex neighbourhoods (vertical tangents)
    are avoided so finite-difference tangents stay well conditioned.
    Returns an empty sample set when the surface has no real points.
    """
    tyy, tyz, tzz, det, other_xx = _blocks(tensors, pol)
    conic = conic_classification(tensors, pol)
    if conic is ConicClass.DEGENERATE:
        return SurfaceResult(conic, [])
    lim = tzz * other_xx  # disc > 0 iff det * (lim - n_ty^2) > 0
    if conic is ConicClass.CIRCLE:
        n_max = math.sqrt(lim)
        grid = np.linspace(-0.95 * n_max, 0.95 * n_max, n_samples)
    elif lim > 0.0:
        apex = math.sqrt(lim)
        half = n_samples // 2
        right = np.linspace(1.05 * apex, 3.0 * apex, half)
        grid = np.concatenate([-right[::-1], right])
    else:
        # hyperbola straddling the n_ty axis: every n_ty is admissible
        scale = math.sqrt(abs(det * other_xx / tzz))
        grid = np.linspace(-2.0 * scale, 2.0 * scale, n_samples)
    pts = []
    for n_ty in grid:
        n_tz = _causal_n_tz(tensors, pol, float(n_ty))
        if n_tz is None:
            continue
        grad = np.array([
            (tyy * n_ty + tyz * n_tz),
            (tyz * n_ty + tzz * n_tz),
        ]) * (-2.0 / det)
        norm = np.linalg.norm(grad)
        pts.append(SurfacePoint(float(n_ty), float(n_tz), grad / norm))
    return SurfaceResult(conic, pts)


class ApexTangentError(ArithmeticError):
    """Finite-difference tangent undefined at a conic apex."""


def surface_normal_check(tensors: ResponseTensors, pol: Polarization,
                         point: SurfacePoint, step: float = 1e-6) -> float:
    """|S_hat . tangent_hat| at a surface point (exactly 0 for symmetric tensors).

    The tangent is a central difference along the causal branch with the
    given step in n_ty; the Poynting direction comes from the same response
    entries.  Raises ApexTangentError where the branch ends inside the
    stencil.
    """
    left = _causal_n_tz(tensors, pol, point.n_ty - step)
    right = _causal_n_tz(tensors, pol, point.n_ty + step)
    if left is None or right is None:
        raise ApexTangentError("surface tangent undefined at the conic apex")
    tangent = np.array([2.0 * step, right - left])
    tangent /= np.linalg.norm(tangent)
    s_ty, s_tz = _poynting(tensors, pol, point.n_ty, point.n_tz)
    s_vec = np.array([s_ty, s_tz])
    s_vec /= np.linalg.norm(s_vec)
    return abs(float(np.dot(s_vec, tangent)))


# ---------------------------------------------------------------------------
# Lossy normal incidence
# ---------------------------------------------------------------------------

def lossy_normal_incidence(config: MediumConfig, omega: float) -> RefractionResult:
    """E-polarized normal incidence with the complex response kept.

    The quadratic becomes k_tz^2 = (omega/c)^2 det eps_xx / mu_zz with
    complex tensors; the branch with Im(k_tz) > 0 decays into the medium.
    Phase velocity runs along Re(k_tz), so a propagating cell is
    left-handed when Re(k_tz) S_tz < 0 with S_tz > 0 into the medium.

    With absorption nothing is exactly totally reflected, so the
    propagating/TR boundary is not intrinsically defined; here a cell
    counts as propagating exactly when its lossless limit (same gamma in
    eta', absorption dropped) admits a propagating causal root.  Under
    this convention the left-handed window coincides with the lossless
    one wherever the complex-root test keeps reporting a backward phase,
    which it does for the default molecule.
    """
    wave = IncidentWave(Polarization.E, 0.0, omega)
    lossless = classify(
        response_tensors(MediumConfig(config.ring, lossy=False), omega), wave
    )
    if lossless.classification is Classification.TR:
        return RefractionResult(
            wave, lossless.roots, None, 0.0, None, Classification.TR
        )
    tensors = response_tensors(MediumConfig(config.ring, lossy=True), omega)
    t = tensors.mu_r
    tyy, tyz, tzz = t[1, 1], t[1, 2], t[2, 2]
    det = tyy * tzz - tyz * tyz
    k_sq = wave.k_i**2 * det * tensors.eps_r[0, 0] / tzz
    root = complex(np.sqrt(complex(k_sq)))
    if root.imag < 0.0 or (root.imag == 0.0 and root.real < 0.0):
        root = -root
    roots = np.array([root, -root])
    # decaying branch; verify it actually carries energy into the medium
    s_tz = float(np.real(tzz * root / det))
    if root.imag == 0.0 and s_tz <= 0.0:
        root = -root
        roots = roots[::-1]
        s_tz = float(np.real(tzz * root / det))
    if s_tz <= 0.0:
        return RefractionResult(wave, roots, None, 0.0, None, Classification.TR)
    cls = Classification.LH if root.real * s_tz < 0.0 else Classification.RH
    return RefractionResult(wave, roots, 0, 0.0, (0.0, s_tz), cls)


def lossy_lh_window(config: MediumConfig, omega_grid) -> tuple[float, float] | None:
    """(omega_low, omega_high) bounds of LH cells at theta = 0, or None."""
    lh = [
        om for om in np.asarray(omega_grid, dtype=float)
        if lossy_normal_incidence(config, float(om)).classification is Classification.LH
    ]
    if not lh:
        return None
    return min(lh), max(lh)
