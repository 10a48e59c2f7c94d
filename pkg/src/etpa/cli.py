"""Command-line interface.

Subcommands: delay-scan, spectrum, gamma, fig1, fig2, verify. Exit codes:
0 success, 2 configuration or usage error, 3 domain error, 4 verification
failure, 1 any other library error.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
import warnings
from pathlib import Path

import numpy as np

from . import figures
from ._backend import BACKEND
from .config import load_absorber
from .errors import ConfigError, DomainError, EtpaError, VerificationFailed
from .freq_domain import gamma_spectrum_full, truncate_physical
from .level_model import coupling_set
from .output import csv_text, svg_line_plot, write_text
from .special_functions import gamma_profile, sinc_approx
from .time_domain import GaussianEntangled, IdealEntangled, ProductGaussian, delay_scan
from .verify import format_report, run_checks

EXIT_OK, EXIT_OTHER, EXIT_CONFIG, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2, 3, 4

DELAY_SPAN = (-10.0, 10.0)
DELAY_POINTS = 2001
SPECTRUM_SPAN = (-2.0, 2.0)
# even count keeps w = 0 and the symmetric half-band points off the grid
SPECTRUM_POINTS = 2000


def _add_grid(p, what):
    p.add_argument("--grid-min", type=float, help=f"lower end of the {what} grid")
    p.add_argument("--grid-max", type=float, help=f"upper end of the {what} grid")
    p.add_argument("--grid-n", type=int, help="number of grid points (>= 2)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="etpa",
        description="Optimally absorbed two-photon states: delay scans, spectra, profiles.")
    parser.add_argument("--version", action="version", version=f"%(prog)s ({BACKEND} kernels)")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_config=True):
        p.add_argument("--config", type=Path, required=needs_config,
                       help="absorber YAML file")
        p.add_argument("--out", type=Path, required=True, help="output file")
        p.add_argument("--normalized", action="store_true",
                       help="frequencies in units of omega_gf/2, times in units of "
                            "2*pi/omega_gf (grid options use the same units)")

    p = sub.add_parser("delay-scan", help="TPA probability versus delay")
    common(p)
    _add_grid(p, "delay")
    p.add_argument("--input-state", choices=("ideal", "gaussian", "product"), default="ideal")
    p.add_argument("--delta-plus", type=float, default=0.0,
                   help="gaussian: sum-frequency detuning")
    p.add_argument("--sigma-plus", type=float, default=None,
                   help="gaussian: sum-frequency bandwidth (default 1e-3 omega_gf)")
    p.add_argument("--sigma-minus", type=float, default=None,
                   help="gaussian: time-difference width (default 4 * 2*pi/omega_gf)")
    p.add_argument("--omega1", type=float, help="product: centre frequency of photon 1")
    p.add_argument("--omega2", type=float, help="product: centre frequency of photon 2")
    p.add_argument("--sigma1", type=float, help="product: bandwidth of photon 1")
    p.add_argument("--sigma2", type=float, help="product: bandwidth of photon 2")
    p.add_argument("--workers", type=int, default=None,
                   help="processes for projection integrals")

    p = sub.add_parser("spectrum", help="frequency-difference spectrum, full and truncated")
    common(p)
    _add_grid(p, "frequency-difference")

    p = sub.add_parser("gamma", help="time profile of one above-band level")
    common(p, needs_config=False)
    _add_grid(p, "time-difference")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--level", type=int, help="index of a level in --config")
    g.add_argument("--nu-ratio", type=float, help="detuning in units of omega_gf/2")
    p.add_argument("--omega-gf", type=float, default=2.0,
                   help="transition frequency when no --config is given")

    for name, text in (("fig1", "normalized profiles near and far from the band edge"),
                       ("fig2", "exact profiles against the sinc approximation")):
        p = sub.add_parser(name, help=text)
        common(p, needs_config=False)
        _add_grid(p, "time-difference")
        p.add_argument("--omega-gf", type=float, default=2.0,
                       help="transition frequency when no --config is given")
        p.add_argument("--svg", type=Path, help="SVG path (default: --out with .svg suffix)")

    p = sub.add_parser("verify", help="cross-check analytic formulas against the oracle")
    p.add_argument("--config", type=Path, help="absorber to use for the spectral checks")
    p.add_argument("--out", type=Path, help="report file (default: standard output)")
    p.add_argument("--epsilon", type=float, default=1e-3,
                   help="largest convergence factor, in units of omega_gf")
    return parser


# ---------------------------------------------------------------------------
# helpers


def _grid(args, default_span, default_n, unit):
    """Grid in absolute units; user values are in ``unit`` only with --normalized."""
    n = default_n if args.grid_n is None else args.grid_n
    if n < 2:
        raise ConfigError("--grid-n must be at least 2")
    scale_user = unit if args.normalized else 1.0
    lo = default_span[0] * unit if args.grid_min is None else args.grid_min * scale_user
    hi = default_span[1] * unit if args.grid_max is None else args.grid_max * scale_user
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi <= lo:
        raise ConfigError(f"grid range [{lo}, {hi}] must be finite and increasing")
    return np.linspace(lo, hi, n)


def _check_writable(*paths):
    for path in paths:
        if path is None:
            continue
        parent = path.resolve().parent
        if not parent.is_dir() or not os.access(parent, os.W_OK):
            raise ConfigError(f"output directory {parent} is not writable")


def _omega_gf(args):
    if getattr(args, "config", None) is not None:
        return load_absorber(args.config).omega_gf
    if not args.omega_gf > 0:
        raise DomainError("--omega-gf must be positive")
    return args.omega_gf


def _input_state(args, omega_gf):
    if args.input_state == "ideal":
        return IdealEntangled()
    if args.input_state == "gaussian":
        sp = 1e-3 * omega_gf if args.sigma_plus is None else args.sigma_plus
        sm = 8.0 * np.pi / omega_gf if args.sigma_minus is None else args.sigma_minus
        return GaussianEntangled(args.delta_plus, sp, sm)
    missing = [f"--{k}" for k in ("omega1", "omega2", "sigma1", "sigma2")
               if getattr(args, k) is None]
    if missing:
        raise ConfigError(f"product input state needs {', '.join(missing)}")
    return ProductGaussian(args.omega1, args.omega2, args.sigma1, args.sigma2)


# ---------------------------------------------------------------------------
# commands


def cmd_delay_scan(args):
    _check_writable(args.out)
    spec = load_absorber(args.config)
    T = 2.0 * np.pi / spec.omega_gf
    tau = _grid(args, DELAY_SPAN, DELAY_POINTS, T)
    state = _input_state(args, spec.omega_gf)
    scan = delay_scan(spec, state, tau, workers=args.workers)
    unit = T if args.normalized else 1.0
    comments = [
        f"etpa delay-scan config={args.config.name}",
        f"input_state={state!r}",
        f"normalization={scan.normalization}",
        f"tau_unit={'2*pi/omega_gf' if args.normalized else 'absolute'} "
        f"omega_gf={spec.omega_gf!r} sigma_tp={coupling_set(spec).sigma_tp!r}",
        f"grid_n={len(tau)}",
    ]
    write_text(args.out, csv_text(["tau", "p_tpa"], [tau / unit, scan.p_values], comments))


def _spectrum_csv(spectrum, normalized, title):
    unit = spectrum.band if normalized else 1.0
    comments = [title, f"band={spectrum.band!r} truncated={spectrum.truncated}",
                f"omega_unit={'omega_gf/2' if normalized else 'absolute'}"]
    for loc, w in spectrum.delta_terms:
        comments.append(f"delta {loc / unit!r} {w.real!r} {w.imag!r}")
    return csv_text(["omega_minus", "re_smooth", "im_smooth"],
                    [spectrum.grid / unit, spectrum.smooth.real, spectrum.smooth.imag],
                    comments)


def _sibling(path, suffix):
    return path.with_name(f"{path.stem}{suffix}{path.suffix or '.csv'}")


def cmd_spectrum(args):
    truncated_path = _sibling(args.out, "_truncated")
    _check_writable(args.out, truncated_path)
    spec = load_absorber(args.config)
    cs = coupling_set(spec)
    grid = _grid(args, SPECTRUM_SPAN, SPECTRUM_POINTS, spec.band)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", RuntimeWarning)
        full = gamma_spectrum_full(cs, grid)
    for w in caught:
        print(f"etpa: warning: {w.message}", file=sys.stderr)
    write_text(args.out, _spectrum_csv(full, args.normalized, "etpa spectrum (full)"))
    write_text(truncated_path, _spectrum_csv(truncate_physical(full), args.normalized,
                                             "etpa spectrum (truncated to the physical band)"))


def cmd_gamma(args):
    _check_writable(args.out)
    if args.level is not None:
        if args.config is None:
            raise ConfigError("--level requires --config")
        spec = load_absorber(args.config)
        if not 0 <= args.level < len(spec.levels):
            raise ConfigError(f"--level {args.level} out of range (0..{len(spec.levels) - 1})")
        omega_gf = spec.omega_gf
        nu = float(spec.detunings()[args.level])
    else:
        omega_gf = _omega_gf(args)
        nu = args.nu_ratio * 0.5 * omega_gf
    T = 2.0 * np.pi / omega_gf
    t = _grid(args, figures.DEFAULT_SPAN, figures.DEFAULT_POINTS, T)
    prof = gamma_profile(nu, omega_gf, t)
    unit = T if args.normalized else 1.0
    comments = [f"etpa gamma nu_m={nu!r} nu_m/B={nu / prof.band!r} omega_gf={omega_gf!r}",
                f"t_unit={'2*pi/omega_gf' if args.normalized else 'absolute'}"]
    approx = sinc_approx(nu, omega_gf, t)
    write_text(args.out, csv_text(["t_minus", "gamma_exact", "gamma_sinc"],
                                  [t / unit, prof.values, approx], comments))


def _fig_paths(args):
    svg = args.svg if args.svg is not None else args.out.with_suffix(".svg")
    _check_writable(args.out, svg)
    return svg


def cmd_fig1(args):
    svg = _fig_paths(args)
    omega_gf = _omega_gf(args)
    T = 2.0 * np.pi / omega_gf
    t = _grid(args, figures.DEFAULT_SPAN, figures.DEFAULT_POINTS, T)
    curves = figures.fig1_curves(omega_gf, t)
    unit = T if args.normalized else 1.0
    header = ["t_minus"] + [f"nu_{r:g}B" for r in curves]
    comments = ["etpa fig1: gamma_m(t)/gamma_m(0)", f"omega_gf={omega_gf!r}",
                f"t_unit={'2*pi/omega_gf' if args.normalized else 'absolute'}"]
    write_text(args.out, csv_text(header, [t / unit, *curves.values()], comments))
    write_text(svg, svg_line_plot(
        t / unit, [(f"nu_m = {r:g} B", y) for r, y in curves.items()],
        title="Normalized time profiles of above-band levels",
        xlabel="t_minus [2pi/omega_gf]" if args.normalized else "t_minus",
        ylabel="gamma_m(t) / gamma_m(0)"))


def cmd_fig2(args):
    svg = _fig_paths(args)
    omega_gf = _omega_gf(args)
    T = 2.0 * np.pi / omega_gf
    t = _grid(args, figures.DEFAULT_SPAN, figures.DEFAULT_POINTS, T)
    curves = figures.fig2_curves(omega_gf, t)
    unit = T if args.normalized else 1.0
    header, cols, series, styles = ["t_minus"], [t / unit], [], []
    for r, (exact, approx) in curves.items():
        header += [f"exact_{r:g}B", f"sinc_{r:g}B"]
        cols += [exact, approx]
        series += [(f"exact, nu_m = {r:g} B", exact), (f"sinc, nu_m = {r:g} B", approx)]
        styles += [None, "6 4"]
    comments = ["etpa fig2: exact and sinc profiles, both divided by gamma_m(0)",
                f"omega_gf={omega_gf!r}",
                f"t_unit={'2*pi/omega_gf' if args.normalized else 'absolute'}"]
    write_text(args.out, csv_text(header, cols, comments))
    write_text(svg, svg_line_plot(t / unit, series, styles=styles,
                                  title="Exact profile against the sinc approximation",
                                  xlabel="t_minus [2pi/omega_gf]" if args.normalized
                                  else "t_minus",
                                  ylabel="normalized profile"))


def cmd_verify(args):
    if args.out is not None:
        _check_writable(args.out)
    if not args.epsilon > 0:
        raise ConfigError("--epsilon must be positive")
    couplings = coupling_set(load_absorber(args.config)) if args.config else None
    results = run_checks(couplings, epsilon=args.epsilon)
    report = format_report(results)
    if args.out is None:
        sys.stdout.write(report)
    else:
        write_text(args.out, report)
    failed = [r.name for r in results if not r.passed]
    if failed:
        raise VerificationFailed("failed checks: " + "; ".join(failed))


COMMANDS = {
    "delay-scan": cmd_delay_scan,
    "spectrum": cmd_spectrum,
    "gamma": cmd_gamma,
    "fig1": cmd_fig1,
    "fig2": cmd_fig2,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"etpa: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DomainError as exc:
        print(f"etpa: domain error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except VerificationFailed as exc:
        print(f"etpa: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except EtpaError as exc:
        print(f"etpa: error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_OTHER
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
