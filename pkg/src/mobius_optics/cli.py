"""Command-line interface: deterministic tabular output for every computation.

One binary with subcommands; a JSON configuration file (path or "-" for
stdin) selects the molecule, the medium options and the sweep grids.
Outputs are written atomically (temp file + rename) and are byte-stable
across runs: CSV uses 17-significant-digit floats (exact round trip for
64-bit values), '.' decimals and '\n' line endings.

Exit codes: 0 success, 1 validation failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass

import numpy as np

from .constants import EV, HBAR, NM, NS, angular_frequency_to_ev
from .dipole import (
    DipoleKind,
    electric_element,
    electric_selection,
    magnetic_element,
    magnetic_selection,
)
from .refraction import (
    Classification,
    Polarization,
    phase_diagram,
    wave_vector_surface,
)
from .response import (
    MediumConfig,
    alpha_beta,
    bandwidth,
    critical_lifetime,
    eta_prefactor,
    molecular_volume,
    mu1_zero_detunings,
    resonance_frequency,
    response_tensors,
)
from .ring import RingParams, Topology, VolumeConvention, all_labels, band_energy
from .validation import validation_report

EXIT_OK = 0
EXIT_VALIDATION_FAILURE = 1
EXIT_CONFIG_ERROR = 2


class ConfigError(ValueError):
    pass


# key: (default, unit / allowed values, description)
CONFIG_KEYS = {
    "n_per_ring": (12, "count (alias: N)", "atoms per sub-ring, >= 3"),
    "v_inter_ev": (3.6, "eV", "inter-ring resonance integral V, > 0"),
    "xi_intra_ev": (3.6, "eV", "intra-ring resonance integral xi, > 0"),
    "eps_onsite_ev": (0.0, "eV", "on-site energy splitting (0 for identical atoms)"),
    "half_width_nm": (0.077, "nm", "half-width parameter W (molecule width is 4W)"),
    "radius_nm": (None, "nm", "ring radius R; default N * W / pi"),
    "gamma_inv_ns": (4.0, "ns", "excited-state lifetime 1/gamma"),
    "topology": ("mobius", "mobius | double_ring_periodic | single_ring",
                 "boundary condition of the double ring"),
    "volume_convention": ("cylinder_4w", "cylinder_4w | cylinder_2w",
                          "molecular volume convention"),
    "lossy": (False, "bool", "keep the imaginary part of the response"),
    "theta_min_deg": (0.0, "deg", "incidence-angle grid start"),
    "theta_max_deg": (89.0, "deg", "incidence-angle grid end (< 90)"),
    "theta_count": (256, "count", "incidence-angle grid points, >= 1"),
    "omega_center_ev": (None, "eV", "sweep centre; default: resonance"),
    "omega_span_ev": (None, "eV", "sweep half-span as detuning (eV)"),
    "omega_span_rad_s": (None, "rad/s",
                         "sweep half-span as detuning; default 10x bandwidth"),
    "omega_count": (512, "count", "sweep grid points, >= 1"),
    "polarization": ("E", "E | H", "incident polarization for phase-diagram"),
    "surface_detunings_ev": (None, "eV list",
                             "wave-surface detunings; default: three regimes"),
    "surface_samples": (200, "count", "points per wave-vector surface"),
    "output_path": (None, "path", "output file; default <command>.<format>"),
    "format": ("csv", "csv | json", "output table format"),
}

_ALIASES = {"N": "n_per_ring"}


@dataclass(frozen=True)
class RunConfig:
    ring: RingParams
    lossy: bool
    theta_min_deg: float
    theta_max_deg: float
    theta_count: int
    omega_center_ev: float | None
    omega_span_ev: float | None
    omega_span_rad_s: float | None
    omega_count: int
    polarization: Polarization
    surface_detunings_ev: list[float] | None
    surface_samples: int
    output_path: str | None
    format: str


def _expect(condition, message):
    if not condition:
        raise ConfigError(message)


def parse_config(text: bytes | str) -> RunConfig:
    """Parse and validate a JSON configuration; unknown keys are rejected."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    text = text.strip() or "{}"
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON configuration: {exc}") from exc
    _expect(isinstance(raw, dict), "configuration must be a JSON object")
    cfg = {}
    for key, value in raw.items():
        key = _ALIASES.get(key, key)
        _expect(key in CONFIG_KEYS, f"unknown config key: {key!r}")
        _expect(key not in cfg, f"config key given twice (via alias): {key!r}")
        cfg[key] = value
    for key, (default, _, _) in CONFIG_KEYS.items():
        cfg.setdefault(key, default)

    def number(key, positive=False, nonneg=False):
        val = cfg[key]
        _expect(isinstance(val, (int, float)) and not isinstance(val, bool),
                f"{key} must be a number")
        if positive:
            _expect(val > 0, f"{key} must be > 0")
        if nonneg:
            _expect(val >= 0, f"{key} must be >= 0")
        return float(val)

    def integer(key, minimum):
        val = cfg[key]
        _expect(isinstance(val, int) and not isinstance(val, bool),
                f"{key} must be an integer")
        _expect(val >= minimum, f"{key} must be >= {minimum}")
        return val

    n = integer("n_per_ring", 3)
    v_ev = number("v_inter_ev", positive=True)
    xi_ev = number("xi_intra_ev", positive=True)
    eps_ev = number("eps_onsite_ev")
    w_m = number("half_width_nm", positive=True) * NM
    radius = cfg["radius_nm"]
    if radius is not None:
        radius = number("radius_nm", positive=True) * NM
    gamma = 1.0 / (number("gamma_inv_ns", positive=True) * NS)
    try:
        topology = Topology(cfg["topology"])
    except ValueError:
        raise ConfigError(
            "topology must be one of: mobius, double_ring_periodic, single_ring")
    try:
        convention = VolumeConvention(cfg["volume_convention"])
    except ValueError:
        raise ConfigError("volume_convention must be cylinder_4w or cylinder_2w")
    _expect(isinstance(cfg["lossy"], bool), "lossy must be a boolean")
    try:
        ring = RingParams(
            n_per_ring=n, v_inter=v_ev, xi_intra=xi_ev, eps_onsite=eps_ev,
            half_width=w_m, radius=radius, decay_rate=gamma,
            topology=topology, volume_convention=convention,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    theta_min = number("theta_min_deg", nonneg=True)
    theta_max = number("theta_max_deg")
    _expect(theta_max < 90.0, "theta_max_deg must be < 90")
    _expect(theta_max >= theta_min, "theta_max_deg must be >= theta_min_deg")
    theta_count = integer("theta_count", 1)
    omega_count = integer("omega_count", 1)
    omega_center = cfg["omega_center_ev"]
    if omega_center is not None:
        omega_center = number("omega_center_ev", positive=True)
    span_ev = cfg["omega_span_ev"]
    span_rad = cfg["omega_span_rad_s"]
    _expect(span_ev is None or span_rad is None,
            "give at most one of omega_span_ev and omega_span_rad_s")
    if span_ev is not None:
        span_ev = number("omega_span_ev", positive=True)
    if span_rad is not None:
        span_rad = number("omega_span_rad_s", positive=True)
    try:
        pol = Polarization(cfg["polarization"])
    except ValueError:
        raise ConfigError("polarization must be E or H")
    detunings = cfg["surface_detunings_ev"]
    if detunings is not None:
        _expect(isinstance(detunings, list) and detunings
                and all(isinstance(x, (int, float)) and not isinstance(x, bool)
                        for x in detunings),
                "surface_detunings_ev must be a non-empty list of numbers")
        detunings = [float(x) for x in detunings]
    samples = integer("surface_samples", 10)
    out_path = cfg["output_path"]
    _expect(out_path is None or isinstance(out_path, str),
            "output_path must be a string")
    _expect(cfg["format"] in ("csv", "json"), "format must be csv or json")
    return RunConfig(
        ring=ring, lossy=cfg["lossy"],
        theta_min_deg=theta_min, theta_max_deg=theta_max, theta_count=theta_count,
        omega_center_ev=omega_center, omega_span_ev=span_ev,
        omega_span_rad_s=span_rad, omega_count=omega_count,
        polarization=pol, surface_detunings_ev=detunings,
        surface_samples=samples, output_path=out_path, format=cfg["format"],
    )


# ---------------------------------------------------------------------------
# Table serialisation
# ---------------------------------------------------------------------------

def _format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def emit_table(header: list[str], rows: list[dict], fmt: str) -> bytes:
    """Serialise rectangular rows deterministically (bit-stable floats)."""
    if fmt == "csv":
        buf = io.StringIO()
        buf.write(",".join(header) + "\n")
        for row in rows:
            buf.write(",".join(_format_value(row[col]) for col in header) + "\n")
        return buf.getvalue().encode("utf-8")
    if fmt == "json":
        clean = []
        for row in rows:
            item = {}
            for col in header:
                val = row[col]
                if isinstance(val, (np.integer,)):
                    val = int(val)
                elif isinstance(val, (np.floating,)):
                    val = float(val)
                item[col] = val
            clean.append(item)
        return (json.dumps({"columns": header, "rows": clean},
                           separators=(",", ":")) + "\n").encode("utf-8")
    raise ConfigError("format must be csv or json")


def _atomic_write(path: str, data: bytes):
    """Write the complete table or nothing: temp file plus atomic rename."""
    try:
        directory = os.path.dirname(os.path.abspath(path))
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    except OSError as exc:
        raise OSError(f"cannot write output file {path!r}: {exc}") from exc
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        if isinstance(sys.exc_info()[1], OSError):
            exc = sys.exc_info()[1]
            raise OSError(f"cannot write output file {path!r}: {exc}") from exc
        raise


# ---------------------------------------------------------------------------
# Grids
# ---------------------------------------------------------------------------

def _medium(config: RunConfig) -> MediumConfig:
    return MediumConfig(config.ring, lossy=config.lossy)


def _require_mobius(config: RunConfig, command: str):
    if config.ring.topology is not Topology.MOBIUS:
        raise ConfigError(
            f"{command} requires topology=mobius (use validate for the others)")


def _omega_grid(config: RunConfig):
    medium = _medium(config)
    center = (resonance_frequency(medium) if config.omega_center_ev is None
              else config.omega_center_ev * EV / HBAR)
    if config.omega_span_ev is not None:
        span = config.omega_span_ev * EV / HBAR
    elif config.omega_span_rad_s is not None:
        span = config.omega_span_rad_s
    else:
        span = 10.0 * bandwidth(medium)
        if span == 0.0:
            span = 0.1 * center
    if config.omega_count == 1:
        return np.array([center])
    return np.linspace(center - span, center + span, config.omega_count)


def _theta_grid(config: RunConfig):
    if config.theta_count == 1:
        return np.array([math.radians(config.theta_min_deg)])
    return np.radians(
        np.linspace(config.theta_min_deg, config.theta_max_deg, config.theta_count))


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _cmd_spectrum(config: RunConfig):
    _require_mobius(config, "spectrum")
    rows = [
        {
            "l": lab.momentum_index,
            "band": lab.band.value,
            "energy_ev": band_energy(config.ring, lab),
        }
        for lab in all_labels(config.ring.n_per_ring)
    ]
    header = ["l", "band", "energy_ev"]
    minimum = min(r["energy_ev"] for r in rows)
    summary = (f"spectrum: {len(rows)} states, ground energy "
               f"{format(minimum, '.6g')} eV")
    return header, rows, summary, EXIT_OK


def _cmd_elements(config: RunConfig):
    _require_mobius(config, "elements")
    n = config.ring.n_per_ring
    labels = all_labels(n)
    header = ["kind", "from_l", "from_band", "to_l", "to_band",
              "x_re", "x_im", "y_re", "y_im", "z_re", "z_im",
              "nonzero_components", "selection_rule"]
    rows = []
    for kind, element_fn, selection_fn in (
        (DipoleKind.ELECTRIC, electric_element, electric_selection),
        (DipoleKind.MAGNETIC, magnetic_element, magnetic_selection),
    ):
        scale = 0.0
        cached = {}
        for la in labels:
            for lb in labels:
                vec = element_fn(config.ring, la, lb).vector
                cached[(la, lb)] = vec
                scale = max(scale, float(np.abs(vec).max()))
        for la in labels:
            for lb in labels:
                vec = cached[(la, lb)]
                if np.abs(vec).max() <= 1e-13 * scale:
                    continue
                nonzero = "".join(
                    c for c, comp in zip("xyz", vec) if abs(comp) > 1e-13 * scale)
                rule = "".join(sorted(selection_fn(n, la, lb)))
                rows.append({
                    "kind": kind.value,
                    "from_l": la.momentum_index, "from_band": la.band.value,
                    "to_l": lb.momentum_index, "to_band": lb.band.value,
                    "x_re": vec[0].real, "x_im": vec[0].imag,
                    "y_re": vec[1].real, "y_im": vec[1].imag,
                    "z_re": vec[2].real, "z_im": vec[2].imag,
                    "nonzero_components": nonzero,
                    "selection_rule": rule,
                })
    n_e = sum(1 for r in rows if r["kind"] == "electric")
    summary = (f"elements: {n_e} electric and {len(rows) - n_e} magnetic "
               "nonzero dipole elements")
    return header, rows, summary, EXIT_OK


def _cmd_response(config: RunConfig):
    _require_mobius(config, "response")
    medium = _medium(config)
    delta0 = resonance_frequency(medium)
    omegas = _omega_grid(config)
    a, b = alpha_beta(medium)
    header = ["omega_rad_s", "detuning_rad_s", "detuning_ev",
              "eta_re", "eta_im",
              "eps1_re", "eps1_im", "mu1_re", "mu1_im",
              "eps_xx_re", "eps_xx_im", "eps_yz_re", "eps_yz_im",
              "eps_zz_re", "eps_zz_im",
              "mu_xx_re", "mu_xx_im", "mu_yz_re", "mu_yz_im",
              "mu_zz_re", "mu_zz_im", "near_resonance"]
    rows = []
    for om in omegas:
        t = response_tensors(medium, float(om))
        h = t.eta if config.lossy else complex(t.eta.real)
        eps1_c, mu1_c = complex(t.eps1), complex(t.mu1)
        det = float(om) - delta0
        rows.append({
            "omega_rad_s": float(om),
            "detuning_rad_s": det,
            "detuning_ev": angular_frequency_to_ev(det),
            "eta_re": t.eta.real, "eta_im": t.eta.imag,
            "eps1_re": eps1_c.real, "eps1_im": eps1_c.imag,
            "mu1_re": mu1_c.real, "mu1_im": mu1_c.imag,
            "eps_xx_re": complex(t.eps_r[0, 0]).real,
            "eps_xx_im": complex(t.eps_r[0, 0]).imag,
            "eps_yz_re": complex(t.eps_r[1, 2]).real,
            "eps_yz_im": complex(t.eps_r[1, 2]).imag,
            "eps_zz_re": complex(t.eps_r[2, 2]).real,
            "eps_zz_im": complex(t.eps_r[2, 2]).imag,
            "mu_xx_re": complex(t.mu_r[0, 0]).real,
            "mu_xx_im": complex(t.mu_r[0, 0]).imag,
            "mu_yz_re": complex(t.mu_r[1, 2]).real,
            "mu_yz_im": complex(t.mu_r[1, 2]).imag,
            "mu_zz_re": complex(t.mu_r[2, 2]).real,
            "mu_zz_im": complex(t.mu_r[2, 2]).imag,
            "near_resonance": bool(t.near_resonance),
        })
    n_neg = sum(1 for r in rows if r["eps1_re"] < 0 and r["mu1_re"] < 0)
    summary = (f"response: {len(rows)} frequencies, "
               f"{n_neg} with eps1 < 0 and mu1 < 0; alpha={a:.4g} beta={b:.4g}")
    return header, rows, summary, EXIT_OK


_CLASS_LABEL = {
    int(Classification.LH): "LH",
    int(Classification.RH): "RH",
    int(Classification.TR): "TR",
    int(Classification.MASKED): "masked",
}


def _cmd_phase_diagram(config: RunConfig):
    _require_mobius(config, "phase-diagram")
    medium = MediumConfig(config.ring, lossy=False)
    delta0 = resonance_frequency(medium)
    thetas = _theta_grid(config)
    omegas = _omega_grid(config)
    diagram = phase_diagram(medium, config.polarization, thetas, omegas)
    header = ["theta_deg", "omega_rad_s", "detuning_rad_s", "code", "label"]
    rows = []
    for i, th in enumerate(thetas):
        for j, om in enumerate(omegas):
            code = int(diagram.codes[i, j])
            rows.append({
                "theta_deg": math.degrees(float(th)),
                "omega_rad_s": float(om),
                "detuning_rad_s": float(om) - delta0,
                "code": code,
                "label": _CLASS_LABEL[code],
            })
    counts = {name: diagram.count(cls) for name, cls in (
        ("LH", Classification.LH), ("RH", Classification.RH),
        ("TR", Classification.TR), ("masked", Classification.MASKED))}
    summary = (f"phase-diagram {config.polarization.value}: "
               f"LH cells {counts['LH']}, RH cells {counts['RH']}, "
               f"TR cells {counts['TR']}, masked {counts['masked']} "
               "(codes: LH=-1, RH=+1, TR=0, masked=2)")
    return header, rows, summary, EXIT_OK


def _default_surface_detunings(medium: MediumConfig) -> list[float]:
    delta0 = resonance_frequency(medium)
    below = -0.5 * delta0 * HBAR / EV
    zeros = mu1_zero_detunings(medium)
    if zeros is None:
        return [below]
    mid = 0.5 * (zeros[0] + zeros[1]) * HBAR / EV
    above = 2.0 * zeros[1] * HBAR / EV
    return [below, mid, above]


def _cmd_surface(config: RunConfig):
    _require_mobius(config, "surface")
    medium = MediumConfig(config.ring, lossy=False)
    delta0 = resonance_frequency(medium)
    detunings = (config.surface_detunings_ev
                 if config.surface_detunings_ev is not None
                 else _default_surface_detunings(medium))
    header = ["detuning_ev", "omega_rad_s", "conic",
              "n_ty", "n_tz", "normal_y", "normal_z"]
    rows, conics = [], []
    for det_ev in detunings:
        om = delta0 + det_ev * EV / HBAR
        if om <= 0:
            raise ConfigError(
                f"surface detuning {det_ev} eV puts omega below zero")
        tensors = response_tensors(medium, om)
        result = wave_vector_surface(tensors, config.polarization,
                                     config.surface_samples)
        conics.append(f"{det_ev:+.4g} eV -> {result.conic.value}")
        for pt in result.points:
            rows.append({
                "detuning_ev": det_ev,
                "omega_rad_s": om,
                "conic": result.conic.value,
                "n_ty": pt.n_ty,
                "n_tz": pt.n_tz,
                "normal_y": float(pt.normal_dir[0]),
                "normal_z": float(pt.normal_dir[1]),
            })
    summary = "surface: " + "; ".join(conics)
    return header, rows, summary, EXIT_OK


def _cmd_bandwidth(config: RunConfig):
    _require_mobius(config, "bandwidth")
    header = ["volume_convention", "molecular_volume_m3", "eta_prefactor_rad_s",
              "alpha", "beta", "bandwidth_rad_s", "tau_c_s", "tau_c_ns",
              "gamma_per_s"]
    rows = []
    values = {}
    for convention in (VolumeConvention.CYLINDER_4W, VolumeConvention.CYLINDER_2W):
        ring = RingParams(
            n_per_ring=config.ring.n_per_ring, v_inter=config.ring.v_inter,
            xi_intra=config.ring.xi_intra, eps_onsite=config.ring.eps_onsite,
            half_width=config.ring.half_width, radius=config.ring.radius,
            decay_rate=config.ring.decay_rate, topology=config.ring.topology,
            volume_convention=convention,
        )
        medium = MediumConfig(ring)
        a, b = alpha_beta(medium)
        tau = critical_lifetime(medium)
        values[convention] = tau
        rows.append({
            "volume_convention": convention.value,
            "molecular_volume_m3": molecular_volume(medium),
            "eta_prefactor_rad_s": eta_prefactor(medium),
            "alpha": a, "beta": b,
            "bandwidth_rad_s": bandwidth(medium),
            "tau_c_s": tau, "tau_c_ns": tau / NS,
            "gamma_per_s": ring.decay_rate,
        })
    summary = (
        f"bandwidth: tau_c {values[VolumeConvention.CYLINDER_4W] / NS:.4g} ns "
        f"(cylinder_4w) vs {values[VolumeConvention.CYLINDER_2W] / NS:.4g} ns "
        "(cylinder_2w); the conventions differ by exactly a factor 2"
    )
    return header, rows, summary, EXIT_OK


def _cmd_validate(config: RunConfig):
    report = validation_report(config.ring if config.ring.topology is
                               Topology.MOBIUS else RingParams(12))
    header = ["name", "value", "threshold", "passed", "note"]
    rows = [
        {
            "name": c["name"],
            "value": (float(c["value"]) if isinstance(c["value"], (int, float,
                                                                   np.floating,
                                                                   np.integer))
                      else c["value"]),
            "threshold": c["threshold"],
            "passed": bool(c["passed"]),
            "note": c["note"].replace(",", ";"),
        }
        for c in report["checks"]
    ]
    n_failed = sum(1 for c in report["checks"] if not c["passed"])
    lines = [
        f"{'PASS' if c['passed'] else 'FAIL'} {c['name']}: {c['value']!r}"
        for c in report["checks"]
    ]
    status = "all checks passed" if report["all_passed"] else f"{n_failed} checks FAILED"
    summary = "\n".join(lines + [f"validate: {len(rows)} checks, {status}"])
    code = EXIT_OK if report["all_passed"] else EXIT_VALIDATION_FAILURE
    return header, rows, summary, code


_COMMANDS = {
    "spectrum": _cmd_spectrum,
    "elements": _cmd_elements,
    "response": _cmd_response,
    "phase-diagram": _cmd_phase_diagram,
    "surface": _cmd_surface,
    "bandwidth": _cmd_bandwidth,
    "validate": _cmd_validate,
}


def run_command(command: str, config: RunConfig, stdout=None) -> int:
    """Execute a subcommand: compute, write the output file, print a summary."""
    stdout = stdout if stdout is not None else sys.stdout
    if command not in _COMMANDS:
        raise ConfigError(f"unknown command: {command!r}")
    header, rows, summary, code = _COMMANDS[command](config)
    path = config.output_path or f"{command}.{config.format}"
    _atomic_write(path, emit_table(header, rows, config.format))
    print(summary, file=stdout)
    print(f"wrote {path} ({len(rows)} rows)", file=stdout)
    return code


def _read_config_text(source: str | None) -> bytes:
    if source is None:
        return b"{}"
    if source == "-":
        return sys.stdin.buffer.read()
    try:
        with open(source, "rb") as handle:
            return handle.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {source!r}: {exc}") from exc


def _key_documentation() -> str:
    lines = ["configuration keys (JSON object):"]
    for key, (default, unit, desc) in CONFIG_KEYS.items():
        lines.append(f"  {key:<22} {desc} [{unit}; default {default!r}]")
    lines.append("  N                      alias for n_per_ring")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mobius-optics",
        description=(
            "Band structure, transition dipoles, response tensors and "
            "negative-refraction classification for Mobius molecular rings."
        ),
        epilog=_key_documentation(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    descriptions = {
        "spectrum": "band energies of all 2N states",
        "elements": "nonzero electric and magnetic dipole elements",
        "response": "eta, permittivity and permeability over a frequency sweep",
        "phase-diagram": "LH/RH/TR classification over a (theta, omega) grid",
        "surface": "wave-vector surface samples and conic class",
        "bandwidth": "negative-permeability bandwidth and critical lifetime",
        "validate": "cross-check closed forms against the dense numerics",
    }
    for name, desc in descriptions.items():
        cmd = sub.add_parser(name, help=desc)
        cmd.add_argument(
            "config", nargs="?", default=None,
            help="JSON config path, or '-' for stdin (omit for defaults)")
        if name == "phase-diagram":
            cmd.add_argument("--pol", choices=["E", "H"], default=None,
                             help="incident polarization (overrides config)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = parse_config(_read_config_text(args.config))
        if getattr(args, "pol", None):
            config = RunConfig(**{**config.__dict__,
                                  "polarization": Polarization(args.pol)})
        return run_command(args.command, config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION_FAILURE


if __name__ == "__main__":
    raise SystemExit(main())
