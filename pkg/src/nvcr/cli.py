"""Command-line surface: every computation as a file-emitting subcommand.

Outputs are deterministic for a fixed configuration and seed.  Bad
flags or config keys exit with status 2; numeric failures exit with
status 1 and print a JSON diagnostic.  A config file of ``key = value``
lines supplies defaults that flags override; the environment variable
``NVCR_OUTPUT_DIR`` sets the default output directory only.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .analysis import (FitError, FitResult, LineProfile, LineShape, fit_beta,
                       fit_decay, sensitivity, spectral_overlap)
from .constants import (DEFAULT_CONSTANTS, DEFAULT_CR_RANGE_MHZ,
                        DEFAULT_E_PERP_MHZ, PhysicalConstants)
from .eta_average import (DEFAULT_QUADRATURE, ConvergenceError,
                          FieldOrientationScenario, QuadratureSpec, eta_table,
                          multiplier_table)
from .geometry import class_frame
from .odmr import all_transitions, degeneracy_lift, synth_spectrum, \
    transitions_matrix
from .relaxation import DecayModel, decay_signal
from .serialize import read_decay_csv, write_csv, write_json
from .spin_model import eigenstate_map, transverse_field_scan
from .version import TOOL_NAME, __version__

__all__ = ["main", "run"]

OUTPUT_DIR_ENV = "NVCR_OUTPUT_DIR"

_CONSTANT_KEYS = ("d_ghz", "gamma_e_mhz_per_g", "d_perp_hz_cm_per_v",
                  "d_par_hz_cm_per_v", "j0_mhz_nm3")
_QUAD_INT_KEYS = ("n_theta", "n_phi", "n_psi", "max_doublings")
_QUAD_FLOAT_KEYS = ("tolerance",)

_SCENARIO_ORDER = ("RANDOM_DIRECTION", "PLANE_100", "PLANE_110",
                   "AXIS_111", "AXIS_100", "ZERO_FIELD_ELECTRIC")
_SCENARIO_DISPLAY = {"RANDOM_DIRECTION": "RANDOM",
                     "ZERO_FIELD_ELECTRIC": "ZERO_FIELD"}


class UsageError(Exception):
    """Bad configuration or argument combination; exits with status 2."""


@dataclass(frozen=True)
class RunConfig:
    """Resolved runtime configuration for one invocation."""

    constants: PhysicalConstants = DEFAULT_CONSTANTS
    quadrature: QuadratureSpec = DEFAULT_QUADRATURE
    output_dir: Path = Path(".")
    output_format: str | None = None
    seed: int | None = None


def _parse_config_file(path: str) -> dict:
    values: dict[str, str] = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key in values:
            raise UsageError(f"{path}:{lineno}: duplicate key {key!r}")
        values[key] = value
    return values


def load_run_config(config_path: str | None, output_format: str | None = None,
                    seed: int | None = None) -> RunConfig:
    """Merge defaults, config file and flag overrides; reject unknown keys."""
    consts = DEFAULT_CONSTANTS
    quad = DEFAULT_QUADRATURE
    out_dir = Path(os.environ.get(OUTPUT_DIR_ENV, "."))
    fmt = None
    cfg_seed = None
    if config_path is not None:
        values = _parse_config_file(config_path)
        known = set(_CONSTANT_KEYS) | set(_QUAD_INT_KEYS) | \
            set(_QUAD_FLOAT_KEYS) | {"output_dir", "format", "seed"}
        unknown = sorted(set(values) - known)
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(unknown)}")
        try:
            const_over = {k: float(values[k]) for k in _CONSTANT_KEYS
                          if k in values}
            quad_over: dict = {k: int(values[k]) for k in _QUAD_INT_KEYS
                               if k in values}
            quad_over.update({k: float(values[k]) for k in _QUAD_FLOAT_KEYS
                              if k in values})
            if "seed" in values:
                cfg_seed = int(values["seed"])
        except ValueError as exc:
            raise UsageError(f"bad config value: {exc}") from exc
        if const_over:
            consts = replace(consts, **const_over)
        if quad_over:
            quad = replace(quad, **quad_over)
        if "output_dir" in values:
            out_dir = Path(values["output_dir"])
        if "format" in values:
            fmt = values["format"]
    if output_format is not None:
        fmt = output_format
    if fmt is not None and fmt not in ("csv", "json"):
        raise UsageError(f"format must be 'csv' or 'json', got {fmt!r}")
    try:
        consts.validate()
    except ValueError as exc:
        raise UsageError(f"bad constants override: {exc}") from exc
    return RunConfig(constants=consts, quadrature=quad, output_dir=out_dir,
                     output_format=fmt, seed=seed if seed is not None
                     else cfg_seed)


def _positive(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not v > 0.0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {text}")
    return v


def _nonneg(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if v < 0.0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return v


def _count(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 2:
        raise argparse.ArgumentTypeError(f"must be >= 2, got {text}")
    return v


def _vector3(text: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            f"expected 'x,y,z' with three components, got {text!r}")
    try:
        v = np.array([float(p) for p in parts])
    except ValueError:
        raise argparse.ArgumentTypeError(f"non-numeric component in {text!r}")
    if np.linalg.norm(v) < 1e-12:
        raise argparse.ArgumentTypeError("direction must be nonzero")
    return v


def _header_params(args: argparse.Namespace, cfg: RunConfig) -> dict:
    skip = {"func", "command", "config", "output", "format"}
    params = {k: v for k, v in vars(args).items()
              if k not in skip and v is not None}
    if cfg.seed is not None:
        params["seed"] = cfg.seed
    return params


def _out_path(args: argparse.Namespace, cfg: RunConfig,
              default_name: str) -> Path:
    if args.output is not None:
        return Path(args.output)
    return cfg.output_dir / default_name


def _fmt_or(args: argparse.Namespace, cfg: RunConfig, default: str) -> str:
    if args.format is not None:
        return args.format
    if cfg.output_format is not None:
        return cfg.output_format
    return default


def _emit_columns(args, cfg, subcommand: str, default_stem: str,
                  names: list[str], columns, comments=None) -> Path:
    params = _header_params(args, cfg)
    fmt = _fmt_or(args, cfg, "csv")
    if fmt == "json":
        payload = {"columns": {n: np.atleast_1d(np.asarray(c)).tolist()
                               for n, c in zip(names, columns)}}
        if comments:
            payload["notes"] = list(comments)
        return write_json(_out_path(args, cfg, default_stem + ".json"),
                          payload, subcommand, params)
    return write_csv(_out_path(args, cfg, default_stem + ".csv"),
                     names, columns, subcommand, params,
                     extra_comments=comments)


def _emit_record(args, cfg, subcommand: str, default_stem: str,
                 payload: dict) -> Path:
    params = _header_params(args, cfg)
    fmt = _fmt_or(args, cfg, "json")
    if fmt == "csv":
        keys = list(payload)
        vals = [payload[k] if payload[k] is not None else "" for k in keys]
        return write_csv(_out_path(args, cfg, default_stem + ".csv"),
                         ["key", "value"],
                         [np.array(keys, dtype=object),
                          np.array([str(v) for v in vals], dtype=object)],
                         subcommand, params)
    return write_json(_out_path(args, cfg, default_stem + ".json"),
                      payload, subcommand, params)


def _fit_payload(res: FitResult) -> dict:
    m = res.model
    t1ph = None if np.isinf(m.t1_ph_s) else m.t1_ph_s
    return {"A": m.amplitude, "T1_dd_s": m.t1_dd_s, "T1_ph_s": t1ph,
            "beta": m.beta, "rss": res.residual_rss,
            "converged": res.converged, "iterations": res.iterations}


# subcommand runners


def _cmd_eigen_map(args, cfg: RunConfig) -> Path:
    frame = class_frame(args.class_id)
    b = np.linspace(args.b_min_gauss, args.b_max_gauss, args.n_b)
    th = np.linspace(args.theta_min_rad, args.theta_max_rad, args.n_theta)
    o_p1, o_plus = eigenstate_map(frame, b, th, args.e_perp_mhz,
                                  cfg.constants)
    cols = [np.repeat(b, th.size), np.tile(th, b.size),
            o_p1.ravel(), o_plus.ravel()]
    return _emit_columns(args, cfg, "eigen-map", "eigen_map",
                         ["B_gauss", "theta_rad", "overlap_e_p1",
                          "overlap_e_plus"], cols)


def _cmd_transverse_scan(args, cfg: RunConfig) -> Path:
    frame = class_frame(args.class_id)
    b = np.linspace(args.b_min_gauss, args.b_max_gauss, args.n_b)
    energies, dnu, matching = transverse_field_scan(frame, b,
                                                    args.e_perp_mhz,
                                                    cfg.constants)
    cols = [b, energies[:, 0], energies[:, 1], energies[:, 2], dnu, matching]
    return _emit_columns(args, cfg, "transverse-scan", "transverse_scan",
                         ["B_gauss", "e_g_GHz", "e_d_GHz", "e_e_GHz",
                          "dnu_MHz", "overlap_e_plus"], cols)


def _cmd_eta_table(args, cfg: RunConfig) -> Path:
    table = eta_table(cfg.quadrature)
    families = ["magnetic", "nonmagnetic_random", "nonmagnetic_aligned"]
    cols = [np.array(families, dtype=object)]
    for axis in ("same", "close", "far"):
        cols.append(np.array([table[(fam, axis)] for fam in families]))
    return _emit_columns(args, cfg, "eta-table", "eta_table",
                         ["family", "same", "close", "far"], cols)


def _cmd_multipliers(args, cfg: RunConfig) -> Path:
    table = multiplier_table(cfg.quadrature)
    names = [_SCENARIO_DISPLAY.get(n, n) for n in _SCENARIO_ORDER]
    values = np.array([table[n] for n in _SCENARIO_ORDER])
    return _emit_columns(args, cfg, "multipliers", "multipliers",
                         ["scenario", "multiplier"],
                         [np.array(names, dtype=object), values])


def _cmd_transitions(args, cfg: RunConfig) -> Path:
    b = np.linspace(args.b_min_gauss, args.b_max_gauss, args.n_b)
    sets = all_transitions(args.direction, b, args.e_perp_mhz, cfg.constants)
    amps, freqs = transitions_matrix(sets)
    names = ["B_gauss"] + [f"nu{k}_GHz" for k in range(1, 9)]
    cols = [amps] + [freqs[:, k] for k in range(8)]
    return _emit_columns(args, cfg, "transitions", "transitions", names, cols)


def _cmd_degeneracy(args, cfg: RunConfig) -> Path:
    b = np.linspace(args.b_min_gauss, args.b_max_gauss, args.n_b)
    rep = degeneracy_lift(args.direction, b, args.cr_range_mhz,
                          args.e_perp_mhz, cfg.constants)
    names = ["B_gauss"] + [f"dnu_pair{k + 1}_MHz"
                           for k in range(len(rep.pair_labels))]
    cols = [rep.b_gauss] + [rep.dnu_mhz[:, k]
                            for k in range(len(rep.pair_labels))]
    comments = []
    for k, (label, crossing) in enumerate(zip(rep.pair_labels,
                                              rep.pair_crossings_b_gauss)):
        state = "degenerate" if label in rep.degenerate_pairs else \
            ("absent" if crossing is None else f"{crossing:.4f}")
        comments.append(f"pair{k + 1}: {label} crossing_B_gauss={state}")
    sep = "absent" if rep.all_separated_b_gauss is None \
        else f"{rep.all_separated_b_gauss:.4f}"
    comments.append(f"all_separated_B_gauss: {sep}")
    return _emit_columns(args, cfg, "degeneracy", "degeneracy", names, cols,
                         comments=comments)


def _cmd_spectrum(args, cfg: RunConfig) -> Path:
    ts = all_transitions(args.direction, [args.b_gauss], args.e_perp_mhz,
                         cfg.constants)[0]
    profile = LineProfile(shape=LineShape(args.shape),
                          width_mhz=args.linewidth_mhz)
    freq = None
    if args.f_min_ghz is not None and args.f_max_ghz is not None:
        freq = np.linspace(args.f_min_ghz, args.f_max_ghz, args.n_freq)
    elif (args.f_min_ghz is None) != (args.f_max_ghz is None):
        raise UsageError("--f-min-ghz and --f-max-ghz go together")
    freq, pl = synth_spectrum(ts, profile, args.contrast, freq)
    return _emit_columns(args, cfg, "spectrum", "spectrum",
                         ["freq_GHz", "pl_norm"], [freq, pl])


def _cmd_decay_sim(args, cfg: RunConfig) -> Path:
    t1ph = np.inf if args.t1ph_s is None else args.t1ph_s
    model = DecayModel(t1_dd_s=args.t1dd_s, t1_ph_s=t1ph,
                       amplitude=args.amplitude, beta=args.beta)
    if args.log_spacing:
        tau = np.geomspace(args.tau_min_s, args.tau_max_s, args.n_tau)
    else:
        tau = np.linspace(args.tau_min_s, args.tau_max_s, args.n_tau)
    sig = decay_signal(tau, model, mode=args.mode)
    return _emit_columns(args, cfg, "decay-sim", "decay_curve",
                         ["tau_s", "signal"], [tau, sig])


def _cmd_fit_t1(args, cfg: RunConfig) -> Path:
    curve = read_decay_csv(args.input)
    res = fit_decay(curve, fixed_t1_ph_s=args.fix_t1ph_s, seed=cfg.seed)
    return _emit_record(args, cfg, "fit-t1", "fit_t1", _fit_payload(res))


def _cmd_fit_beta(args, cfg: RunConfig) -> Path:
    curve = read_decay_csv(args.input)
    res = fit_beta(curve, seed=cfg.seed)
    return _emit_record(args, cfg, "fit-beta", "fit_beta", _fit_payload(res))


def _cmd_overlap(args, cfg: RunConfig) -> Path:
    p1 = LineProfile(shape=LineShape(args.shape1), width_mhz=args.width1_mhz,
                     center_mhz=args.center1_mhz)
    p2 = LineProfile(shape=LineShape(args.shape2), width_mhz=args.width2_mhz,
                     center_mhz=args.center2_mhz)
    dnu = np.linspace(args.dnu_min_mhz, args.dnu_max_mhz, args.n_dnu)
    s = spectral_overlap(p1, p2, dnu)
    return _emit_columns(args, cfg, "overlap", "overlap",
                         ["dnu_MHz", "overlap_per_MHz"], [dnu, s])


def _cmd_sensitivity(args, cfg: RunConfig) -> Path:
    eta = sensitivity(args.sigma_b_t, args.tau_lp_s)
    payload = {"sigma_b_tesla": args.sigma_b_t, "tau_lp_s": args.tau_lp_s,
               "sensitivity_t_per_sqrt_hz": eta}
    return _emit_record(args, cfg, "sensitivity", "sensitivity", payload)


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--output", help="output file path (default: derived "
                   "name in the output directory)")
    p.add_argument("--config", help="config file of key = value lines")
    p.add_argument("--format", choices=("csv", "json"),
                   help="output format override")
    p.add_argument("--seed", type=int, help="seed for multi-start fits")


def _add_field_scan(p: argparse.ArgumentParser, b_max: float, n_b: int):
    p.add_argument("--direction", type=_vector3, default=None,
                   help="crystal-frame field direction x,y,z "
                   "(default: 24 deg off [100])")
    p.add_argument("--b-min-gauss", type=_nonneg, default=0.0,
                   help="lowest field amplitude (Gauss)")
    p.add_argument("--b-max-gauss", type=_positive, default=b_max,
                   help="highest field amplitude (Gauss)")
    p.add_argument("--n-b", type=_count, default=n_b,
                   help="number of amplitude points")
    p.add_argument("--e-perp-mhz", type=_nonneg, default=DEFAULT_E_PERP_MHZ,
                   help="transverse electric splitting energy (MHz)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=TOOL_NAME,
        description="Spin-1 defect ensemble model: eigenstructure, angular "
                    "averages, relaxation and spectra as reproducible files.")
    parser.add_argument("--version", action="version",
                        version=f"{TOOL_NAME} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eigen-map",
                       help="upper-state character over field amplitude "
                            "and polar angle")
    _add_common(p)
    p.add_argument("--class-id", type=int, default=0, choices=range(4),
                   help="orientation class index")
    p.add_argument("--b-min-gauss", type=_nonneg, default=0.0,
                   help="lowest field amplitude (Gauss)")
    p.add_argument("--b-max-gauss", type=_positive, default=200.0,
                   help="highest field amplitude (Gauss)")
    p.add_argument("--n-b", type=_count, default=41,
                   help="number of amplitude points")
    p.add_argument("--theta-min-rad", type=_nonneg, default=0.0,
                   help="smallest polar angle from the defect axis (rad)")
    p.add_argument("--theta-max-rad", type=_positive,
                   default=float(np.pi / 2),
                   help="largest polar angle from the defect axis (rad)")
    p.add_argument("--n-theta", type=_count, default=31,
                   help="number of angle points")
    p.add_argument("--e-perp-mhz", type=_nonneg, default=DEFAULT_E_PERP_MHZ,
                   help="transverse electric splitting energy (MHz)")
    p.set_defaults(func=_cmd_eigen_map)

    p = sub.add_parser("transverse-scan",
                       help="energies, splitting and upper-state overlap "
                            "vs transverse field")
    _add_common(p)
    p.add_argument("--class-id", type=int, default=0, choices=range(4),
                   help="orientation class index")
    p.add_argument("--b-min-gauss", type=_nonneg, default=0.0,
                   help="lowest transverse amplitude (Gauss)")
    p.add_argument("--b-max-gauss", type=_positive, default=200.0,
                   help="highest transverse amplitude (Gauss)")
    p.add_argument("--n-b", type=_count, default=201,
                   help="number of amplitude points")
    p.add_argument("--e-perp-mhz", type=_nonneg, default=DEFAULT_E_PERP_MHZ,
                   help="transverse electric splitting energy (MHz)")
    p.set_defaults(func=_cmd_transverse_scan)

    p = sub.add_parser("eta-table",
                       help="3x3 table of angular averages (dimensionless)")
    _add_common(p)
    p.set_defaults(func=_cmd_eta_table)

    p = sub.add_parser("multipliers",
                       help="relaxation-rate multiplier per field scenario "
                            "(dimensionless)")
    _add_common(p)
    p.set_defaults(func=_cmd_multipliers)

    p = sub.add_parser("transitions",
                       help="eight transition frequencies (GHz) vs field "
                            "amplitude")
    _add_common(p)
    _add_field_scan(p, b_max=30.0, n_b=121)
    p.set_defaults(func=_cmd_transitions)

    p = sub.add_parser("degeneracy",
                       help="line-pair gaps (MHz) vs field and crossing "
                            "fields (Gauss)")
    _add_common(p)
    _add_field_scan(p, b_max=30.0, n_b=121)
    p.add_argument("--cr-range-mhz", type=_positive,
                   default=DEFAULT_CR_RANGE_MHZ,
                   help="interaction range the gaps must clear (MHz)")
    p.set_defaults(func=_cmd_degeneracy)

    p = sub.add_parser("spectrum",
                       help="synthetic ODMR spectrum at one field amplitude")
    _add_common(p)
    p.add_argument("--b-gauss", type=_nonneg, default=0.0,
                   help="field amplitude (Gauss)")
    p.add_argument("--direction", type=_vector3, default=None,
                   help="crystal-frame field direction x,y,z")
    p.add_argument("--e-perp-mhz", type=_nonneg, default=DEFAULT_E_PERP_MHZ,
                   help="transverse electric splitting energy (MHz)")
    p.add_argument("--linewidth-mhz", type=_positive, default=1.0,
                   help="line width parameter (MHz)")
    p.add_argument("--shape", choices=("gaussian", "lorentzian"),
                   default="lorentzian", help="line profile shape")
    p.add_argument("--contrast", type=_positive, default=0.02,
                   help="fractional dip depth per line")
    p.add_argument("--f-min-ghz", type=_positive, default=None,
                   help="lowest probe frequency (GHz)")
    p.add_argument("--f-max-ghz", type=_positive, default=None,
                   help="highest probe frequency (GHz)")
    p.add_argument("--n-freq", type=_count, default=2001,
                   help="number of frequency points")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("decay-sim",
                       help="generate a synthetic decay curve CSV")
    _add_common(p)
    p.add_argument("--t1dd-s", type=_positive, default=0.6e-3,
                   help="dipolar decay timescale (seconds)")
    p.add_argument("--t1ph-s", type=_positive, default=None,
                   help="phonon decay timescale (seconds; omit for none)")
    p.add_argument("--amplitude", type=_positive, default=1.0,
                   help="signal amplitude at tau=0 (dimensionless)")
    p.add_argument("--beta", type=_positive, default=0.5,
                   help="stretch exponent (stretched mode only)")
    p.add_argument("--mode", choices=("two_channel", "stretched"),
                   default="two_channel", help="decay law")
    p.add_argument("--tau-min-s", type=_positive, default=1e-5,
                   help="shortest wait time (seconds)")
    p.add_argument("--tau-max-s", type=_positive, default=5e-3,
                   help="longest wait time (seconds)")
    p.add_argument("--n-tau", type=_count, default=64,
                   help="number of wait times")
    p.add_argument("--log-spacing", action="store_true",
                   help="log-spaced wait times instead of linear")
    p.set_defaults(func=_cmd_decay_sim)

    p = sub.add_parser("fit-t1",
                       help="fit the two-channel decay law to a curve CSV")
    _add_common(p)
    p.add_argument("--input", required=True,
                   help="input CSV with header tau_s,signal[,sigma]")
    p.add_argument("--fix-t1ph-s", "--fix-t1ph", type=_positive,
                   default=None, dest="fix_t1ph_s",
                   help="hold the phonon timescale fixed (seconds)")
    p.set_defaults(func=_cmd_fit_t1)

    p = sub.add_parser("fit-beta",
                       help="fit a stretched exponential with free exponent")
    _add_common(p)
    p.add_argument("--input", required=True,
                   help="input CSV with header tau_s,signal[,sigma]")
    p.set_defaults(func=_cmd_fit_beta)

    p = sub.add_parser("overlap",
                       help="overlap of two line profiles vs detuning")
    _add_common(p)
    p.add_argument("--shape1", choices=("gaussian", "lorentzian"),
                   default="gaussian", help="first profile shape")
    p.add_argument("--width1-mhz", type=_positive, default=1.0,
                   help="first profile width (MHz)")
    p.add_argument("--center1-mhz", type=float, default=0.0,
                   help="first profile center (MHz)")
    p.add_argument("--shape2", choices=("gaussian", "lorentzian"),
                   default="gaussian", help="second profile shape")
    p.add_argument("--width2-mhz", type=_positive, default=1.0,
                   help="second profile width (MHz)")
    p.add_argument("--center2-mhz", type=float, default=0.0,
                   help="second profile center (MHz)")
    p.add_argument("--dnu-min-mhz", type=float, default=-20.0,
                   help="lowest detuning (MHz)")
    p.add_argument("--dnu-max-mhz", type=float, default=20.0,
                   help="highest detuning (MHz)")
    p.add_argument("--n-dnu", type=_count, default=201,
                   help="number of detuning points")
    p.set_defaults(func=_cmd_overlap)

    p = sub.add_parser("sensitivity",
                       help="DC field sensitivity from readout noise")
    _add_common(p)
    p.add_argument("--sigma-b-t", type=_positive, default=1.5e-6,
                   help="field readout noise standard deviation (Tesla)")
    p.add_argument("--tau-lp-s", type=_positive, default=3e-3,
                   help="low-pass time constant (seconds)")
    p.set_defaults(func=_cmd_sensitivity)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_run_config(args.config, args.format, args.seed)
        out = args.func(args, cfg)
    except UsageError as exc:
        print(f"{TOOL_NAME}: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, ConvergenceError, FitError,
            OSError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)},
                         sort_keys=True))
        return 1
    print(out)
    return 0


def run(subcommand: str, args: list[str] | None = None,
        config: str | None = None) -> int:
    """Programmatic entry point mirroring the command line."""
    argv = [subcommand] + list(args or [])
    if config is not None:
        argv += ["--config", config]
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
