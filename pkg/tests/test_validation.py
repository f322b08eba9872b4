import json

from mobius_optics.ring import RingParams
from mobius_optics.validation import validation_report


def test_full_report_passes_and_serialises():
    report = validation_report(RingParams(12))
    assert report["all_passed"] is True
    assert report["n_per_ring"] == 12
    names = [c["name"] for c in report["checks"]]
    assert len(names) == len(set(names))
    expected = {
        "spectrum_closed_vs_dense_ev",
        "electric_table_vs_numeric",
        "magnetic_table_vs_numeric",
        "selection_rule_sparsity",
        "perfect_ring_commutator",
        "annulene_shared_transitions",
        "mobius_shared_transition",
        "bandwidth_closed_vs_roots",
        "critical_lifetime_cylinder_4w",
        "critical_lifetime_cylinder_2w",
        "phase_diagram_H_no_lh",
        "lh_band_bounded_by_mu1_zeros",
        "surface_hyperbola_residual",
        "poynting_normal_to_surface",
        "lossy_window_shift",
        "overdamped_window_empty",
    }
    assert expected <= set(names)
    # the report is plain data, consumable as JSON downstream
    json.dumps(report)
