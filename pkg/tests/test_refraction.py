import math
import warnings

import numpy as np
import pytest
from scipy.optimize import brentq

from mobius_optics import refraction as rf
from mobius_optics import response as rs
from mobius_optics.ring import RingParams

CFG = rs.MediumConfig(RingParams(12))
DELTA0 = rs.resonance_frequency(CFG)
BW = rs.bandwidth(CFG)
ZEROS = rs.mu1_zero_detunings(CFG)
WINDOW_MID = DELTA0 + 0.5 * (ZEROS[0] + ZEROS[1])
E, H = rf.Polarization.E, rf.Polarization.H
LH, RH, TR = rf.Classification.LH, rf.Classification.RH, rf.Classification.TR


def wave(pol, theta_deg, om):
    return rf.IncidentWave(pol, math.radians(theta_deg), om)


def test_identity_medium_roots_and_classification():
    # on resonance the lossless response vanishes and the medium is vacuum
    t = rs.response_tensors(CFG, DELTA0)
    for theta in (0.0, 20.0, 75.0):
        w = wave(E, theta, DELTA0)
        roots = rf.fresnel_roots_E(t, w)
        expected = w.k_i * math.cos(w.theta)
        assert sorted(np.real(roots)) == pytest.approx([-expected, expected], rel=1e-12)
        assert np.abs(np.imag(roots)).max() < 1e-12 * w.k_i
        assert rf.classify_E(t, w).classification is RH
        wh = wave(H, theta, DELTA0)
        assert sorted(np.real(rf.fresnel_roots_H(t, wh))) == pytest.approx(
            [-expected, expected], rel=1e-12)
        assert rf.classify_H(t, wh).classification is RH


def _closed_form_roots_E(t, w):
    """Closed-form root expression, an independent check on the quadratic."""
    h = t.eta.real
    a, b = t.alpha, t.beta
    mu1 = 1 - (a**2 + 4 * b**2) * h
    mu_yz = -2 * a * b * h
    mu_zz = 1 - 4 * b**2 * h
    disc = mu1 * ((1 - h) * (1 - 4 * b**2 * h) - math.sin(w.theta) ** 2)
    root = np.sqrt(complex(disc))
    return np.array([
        (w.k_i * root - mu_yz * w.k_iy) / mu_zz,
        (-w.k_i * root - mu_yz * w.k_iy) / mu_zz,
    ])


def test_quadratic_matches_closed_form_roots():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        om = DELTA0 + rng.uniform(-20 * BW, 20 * BW)
        theta = rng.uniform(0.0, 89.0)
        t = rs.response_tensors(CFG, om)
        w = wave(E, theta, om)
        got = sorted(rf.fresnel_roots_E(t, w), key=lambda z: (z.real, z.imag))
        want = sorted(_closed_form_roots_E(t, w), key=lambda z: (z.real, z.imag))
        scale = max(abs(z) for z in want) + w.k_i
        assert max(abs(g - v) for g, v in zip(got, want)) < 1e-10 * scale


def test_total_reflection_when_discriminant_negative():
    # mu1 > 0 but eta' > 1: no real propagating root
    om = DELTA0 + 2.5 * ZEROS[1]
    t = rs.response_tensors(CFG, om)
    assert t.mu1 > 0 and t.eta.real > 1
    w = wave(E, 10.0, om)
    roots = rf.fresnel_roots_E(t, w)
    assert np.abs(np.imag(roots)).min() > 1e-6 * w.k_i
    assert rf.classify_E(t, w).classification is TR


def test_branch_flip_reverses_energy_flow():
    rng = np.random.default_rng(11)
    checked = 0
    while checked < 1000:
        om = DELTA0 + rng.uniform(-20 * BW, 20 * BW)
        theta = rng.uniform(0.0, 89.0)
        t = rs.response_tensors(CFG, om)
        w = wave(E, theta, om)
        roots = rf.fresnel_roots_E(t, w)
        if np.abs(np.imag(roots)).max() > 1e-12 * w.k_i:
            continue
        s0 = rf.poynting_E(t, w, roots[0].real)[1]
        s1 = rf.poynting_E(t, w, roots[1].real)[1]
        assert s0 * s1 < 0, "the two branches must carry opposite S_tz"
        checked += 1


def test_tangential_wavevector_is_conserved():
    for om in (0.7 * DELTA0, WINDOW_MID, 1.3 * DELTA0):
        t = rs.response_tensors(CFG, om)
        w = wave(E, 37.0, om)
        res = rf.classify_E(t, w)
        assert res.k_ty == w.k_iy


def test_left_handed_inside_negative_mu_window():
    t = rs.response_tensors(CFG, WINDOW_MID)
    assert t.mu1 < 0
    for theta in (0.0, 15.0, 45.0, 80.0):
        res = rf.classify_E(t, wave(E, theta, WINDOW_MID))
        assert res.classification is LH
        k_tz = res.roots[res.chosen].real
        s_ty, s_tz = res.poynting_dir
        assert s_tz > 0
        assert res.k_ty * s_ty + k_tz * s_tz < 0


def test_poynting_nearly_parallel_to_wavevector_far_below_resonance():
    om = 0.5 * DELTA0
    t = rs.response_tensors(CFG, om)
    w = wave(E, 30.0, om)
    res = rf.classify_E(t, w)
    assert res.classification is RH
    k = np.array([res.k_ty, res.roots[res.chosen].real])
    s = np.array(res.poynting_dir)
    cosang = np.dot(k, s) / (np.linalg.norm(k) * np.linalg.norm(s))
    assert cosang > 0.999


def test_h_polarization_never_left_handed_on_default_grid():
    theta = np.linspace(0.0, math.radians(89.0), 128)
    omega = np.linspace(DELTA0 - 10 * BW, DELTA0 + 10 * BW, 512)
    pd = rf.phase_diagram(CFG, H, theta, omega)
    assert pd.count(rf.Classification.LH) == 0
    assert pd.count(rf.Classification.RH) > 0
    assert pd.count(rf.Classification.TR) > 0


def test_h_polarization_total_reflection_far_above_resonance_at_grazing():
    om = 1.4 * DELTA0
    t = rs.response_tensors(CFG, om)
    found_tr = any(
        rf.classify_H(t, wave(H, th, om)).classification is TR
        for th in (80.0, 85.0, 89.0)
    )
    assert found_tr


def test_duality_between_polarizations():
    # swapping the tensors maps one polarization's roots onto the other's
    rng = np.random.default_rng(3)
    for _ in range(50):
        h = rng.uniform(-0.8, 0.8)
        yz = rng.uniform(-0.3, 0.3, size=2)
        eps = np.diag([1 - h, 1 + 0.3 * h, 1 - 0.4 * h])
        eps[1, 2] = eps[2, 1] = yz[0]
        mu = np.diag([1 + 0.2 * h, 1 - 0.1 * h, 1 + 0.5 * h])
        mu[1, 2] = mu[2, 1] = yz[1]
        om = DELTA0
        base = dict(omega=om, eta=0j, alpha=0.0, beta=0.0,
                    eps1=1.0, mu1=1.0, near_resonance=False)
        t_e = rs.ResponseTensors(eps_r=eps, mu_r=mu, **base)
        t_h = rs.ResponseTensors(eps_r=mu, mu_r=eps, **base)
        w_e = wave(E, 25.0, om)
        w_h = wave(H, 25.0, om)
        np.testing.assert_allclose(
            rf.fresnel_roots(t_e, w_e), rf.fresnel_roots(t_h, w_h), rtol=1e-12)


def test_grid_cells_are_exhaustive_and_lh_implies_negative_mu1():
    theta = np.linspace(0.0, math.radians(89.0), 64)
    omega = np.linspace(DELTA0 - 10 * BW, DELTA0 + 10 * BW, 256)
    pd = rf.phase_diagram(CFG, E, theta, omega)
    assert set(np.unique(pd.codes)) <= {-1, 0, 1, 2}
    mu1_vals = np.array([rs.mu1(CFG, om) for om in omega])
    lh_cols = (pd.codes == int(LH)).any(axis=0)
    assert np.all(mu1_vals[lh_cols] < 0)


def test_realness_tolerance_monotonicity():
    theta = np.linspace(0.0, math.radians(89.0), 16)
    omega = np.linspace(DELTA0 - 10 * BW, DELTA0 + 10 * BW, 64)
    for th in theta:
        for om in omega:
            t = rs.response_tensors(CFG, om)
            w = rf.IncidentWave(E, float(th), float(om))
            loose = rf.classify(t, w, realness_tol=1e-9).classification
            tight = rf.classify(t, w, realness_tol=1e-13).classification
            if loose is not tight:
                assert tight is TR and loose in (LH, RH)


def test_phase_diagram_lh_band_bounded_by_mu1_zeros():
    theta = np.linspace(0.0, math.radians(89.0), 32)
    omega = np.linspace(DELTA0 - 10 * BW, DELTA0 + 10 * BW, 512)
    pd = rf.phase_diagram(CFG, E, theta, omega)
    lh_cols = np.where((pd.codes == int(LH)).any(axis=0))[0]
    assert lh_cols.size > 0
    assert np.array_equal(lh_cols, np.arange(lh_cols[0], lh_cols[-1] + 1))
    step = omega[1] - omega[0]
    assert abs(omega[lh_cols[0]] - (DELTA0 + ZEROS[0])) <= step
    assert abs(omega[lh_cols[-1]] - (DELTA0 + ZEROS[1])) <= step


def test_single_cell_grid_with_negligible_response():
    pd = rf.phase_diagram(CFG, E, np.array([0.0]), np.array([2.0 * DELTA0]))
    assert pd.codes.shape == (1, 1)
    assert rf.Classification(pd.codes[0, 0]) is RH


def test_coarse_grid_warns_with_suggested_resolution():
    theta = np.array([0.0, 0.5])
    omega = np.linspace(DELTA0 - 10 * BW, DELTA0 + 10 * BW, 4)
    with pytest.warns(UserWarning, match="bandwidth/50"):
        rf.phase_diagram(CFG, E, theta, omega)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        rf.phase_diagram(CFG, E, theta,
                         np.linspace(DELTA0 - 10 * BW, DELTA0 + 10 * BW, 512))


def test_masked_cells_near_resonance():
    omega = np.array([DELTA0 - 1e5, DELTA0, DELTA0 + 1e5, DELTA0 + 1e9])
    pd = rf.phase_diagram(CFG, E, np.array([0.0]), omega)
    labels = [rf.Classification(c) for c in pd.codes[0]]
    assert labels[0] is rf.Classification.MASKED
    assert labels[1] is rf.Classification.MASKED
    assert labels[2] is rf.Classification.MASKED
    assert labels[3] is not rf.Classification.MASKED


def test_wave_vector_surface_unit_circle_without_response():
    t = rs.response_tensors(CFG, DELTA0)  # lossless on resonance: vacuum
    result = rf.wave_vector_surface(t, E, 100)
    assert result.conic is rf.ConicClass.CIRCLE
    for pt in result.points:
        assert abs(pt.n_ty**2 + pt.n_tz**2 - 1.0) < 1e-12
        assert rf.surface_normal_check(t, E, pt) < 1e-8


def test_wave_vector_surface_regimes():
    t_low = rs.response_tensors(CFG, 0.5 * DELTA0)
    low = rf.wave_vector_surface(t_low, E, 150)
    assert low.conic is rf.ConicClass.CIRCLE
    h = t_low.eta.real
    assert max(abs(p.n_ty**2 + p.n_tz**2 - (1 - h)) for p in low.points) < 1e-3

    t_mid = rs.response_tensors(CFG, WINDOW_MID)
    mid = rf.wave_vector_surface(t_mid, E, 150)
    assert mid.conic is rf.ConicClass.HYPERBOLA
    assert len(mid.points) >= 100
    assert max(rf.rotated_conic_residual(t_mid, E, p) for p in mid.points) < 1e-6

    t_above = rs.response_tensors(CFG, DELTA0 + 2.5 * ZEROS[1])
    above = rf.wave_vector_surface(t_above, E, 150)
    assert above.conic is rf.ConicClass.DEGENERATE
    assert above.points == []


def test_causal_branch_flows_into_medium_on_every_sample():
    for om in (0.5 * DELTA0, WINDOW_MID, 1.5 * DELTA0):
        t = rs.response_tensors(CFG, om)
        result = rf.wave_vector_surface(t, E, 150)
        for pt in result.points:
            assert rf._poynting(t, E, pt.n_ty, pt.n_tz)[1] > 0


def test_surface_determinant_residual_small():
    t = rs.response_tensors(CFG, WINDOW_MID)
    result = rf.wave_vector_surface(t, E, 150)
    for pt in result.points:
        assert rf.surface_determinant_residual(t, E, pt.n_ty, pt.n_tz) < 1e-10 * (
            1 + abs(t.eta.real))


def test_poynting_orthogonal_to_surface_tangent():
    for om, tol in ((0.5 * DELTA0, 1e-6), (WINDOW_MID, 1e-6)):
        t = rs.response_tensors(CFG, om)
        result = rf.wave_vector_surface(t, E, 120)
        assert len(result.points) >= 100
        worst = max(rf.surface_normal_check(t, E, pt, step=1e-6)
                    for pt in result.points)
        assert worst < tol


def test_surface_normal_check_signals_apex():
    t = rs.response_tensors(CFG, 0.5 * DELTA0)
    result = rf.wave_vector_surface(t, E, 50)
    n_max = math.sqrt((t.mu_r[2, 2] * t.eps_r[0, 0]))
    apex = rf.SurfacePoint(n_max, 0.0, np.array([1.0, 0.0]))
    with pytest.raises(rf.ApexTangentError):
        rf.surface_normal_check(t, E, apex, step=1e-6)


def test_mixing_angle_diagonalizes_the_block():
    t = rs.response_tensors(CFG, WINDOW_MID)
    phi = rf.mixing_angle(t, E)
    c, s = math.cos(phi), math.sin(phi)
    rot = np.array([[c, s], [-s, c]])
    block = np.array([[t.mu_r[1, 1], t.mu_r[1, 2]], [t.mu_r[1, 2], t.mu_r[2, 2]]])
    diag = rot @ block @ rot.T
    assert abs(diag[0, 1]) < 1e-15
    a, b = t.alpha, t.beta
    assert math.tan(2 * phi) == pytest.approx(-4 * a * b / (4 * b**2 - a**2), rel=1e-9)


def test_degenerate_yz_block_signaled_and_classified_tr():
    # a singular mu yz block degenerates the dispersion quadratic
    mu = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 1.0], [0.0, 1.0, 1.0]])
    t = rs.ResponseTensors(omega=DELTA0, eta=0j, eps_r=np.eye(3), mu_r=mu,
                           alpha=0.0, beta=0.0, eps1=1.0, mu1=0.0,
                           near_resonance=False)
    w = wave(E, 10.0, DELTA0)
    with pytest.raises(rf.DegenerateFresnelError):
        rf.fresnel_roots_E(t, w)
    assert rf.classify_E(t, w).classification is TR


def test_classification_flips_from_lh_to_tr_across_upper_mu1_zero():
    om_zero = brentq(lambda om: rs.mu1(CFG, om),
                     WINDOW_MID, DELTA0 + 2 * ZEROS[1], xtol=1e-6)
    below = rs.response_tensors(CFG, om_zero - 1e3)
    above = rs.response_tensors(CFG, om_zero + 1e3)
    assert rf.classify_E(below, wave(E, 10.0, om_zero - 1e3)).classification is LH
    assert rf.classify_E(above, wave(E, 10.0, om_zero + 1e3)).classification is TR


def test_lossy_limit_reproduces_lossless_at_normal_incidence():
    sharp = rs.MediumConfig(RingParams(12, decay_rate=1.0))
    d0 = rs.resonance_frequency(sharp)
    zeros = rs.mu1_zero_detunings(sharp)
    cases = (
        (0.5 * d0, RH),
        (d0 + 0.5 * (zeros[0] + zeros[1]), LH),
        (d0 + 2.5 * zeros[1], TR),
    )
    for om, expected in cases:
        lossy = rf.lossy_normal_incidence(sharp, om).classification
        t = rs.response_tensors(sharp, om)
        lossless = rf.classify_E(t, rf.IncidentWave(E, 0.0, om)).classification
        assert lossy is lossless is expected


def test_lossy_window_tracks_lossless_window():
    grid = np.linspace(DELTA0 - 2 * BW, DELTA0 + 2 * BW, 2000)
    window = rf.lossy_lh_window(CFG, grid)
    assert window is not None
    lo_shift = abs((window[0] - DELTA0) - ZEROS[0]) / BW
    hi_shift = abs((window[1] - DELTA0) - ZEROS[1]) / BW
    assert lo_shift < 0.1
    assert hi_shift < 0.1


def test_short_lifetime_kills_the_window():
    tau_c = rs.critical_lifetime(CFG)
    cfg = rs.MediumConfig(RingParams(12, decay_rate=1.0 / (0.5 * tau_c)))
    grid = np.linspace(DELTA0 - 2 * BW, DELTA0 + 2 * BW, 500)
    assert rf.lossy_lh_window(cfg, grid) is None


def test_incident_wave_validation():
    with pytest.raises(ValueError):
        rf.IncidentWave(E, math.pi / 2, DELTA0)
    with pytest.raises(ValueError):
        rf.IncidentWave(E, -0.1, DELTA0)
    with pytest.raises(ValueError):
        rf.IncidentWave(E, 0.0, 0.0)


def test_polarization_guards():
    t = rs.response_tensors(CFG, DELTA0)
    with pytest.raises(ValueError):
        rf.fresnel_roots_E(t, wave(H, 0.0, DELTA0))
    with pytest.raises(ValueError):
        rf.classify_H(t, wave(E, 0.0, DELTA0))
