"""Command-line driver: reproducible CSV/JSON experiment artifacts, with
optional figure rendering next to the delimited output."""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor

import click
import numpy as np

from . import plots, verify
from .asymptotics import gamma_tilde_sq, predicted_ratio, regime_classify_dx
from .csvio import write_csv
from .dynamics import (
    DEFAULT_SAMPLES,
    TwoLevelState,
    cyclic_experiment,
    propagate,
)
from .errors import NotApplicableError, PtBubbleError
from .model import EtaSchedule, ModelParams, SYMMETRY_TOL
from .perturbation import PerturbationSetup, perturbative_corrections
from .spectra import bubble_size_scan, spectrum_scan


def _config_callback(ctx, param, value):
    """Load a JSON config whose keys mirror the subcommand's flags; explicit
    flags still win because the config only populates defaults."""
    if value is None:
        return None
    with open(value) as fh:
        cfg = json.load(fh)
    allowed = {p.name for p in ctx.command.params}
    unknown = set(cfg) - allowed
    if unknown:
        raise click.UsageError(f"unknown config keys: {sorted(unknown)}")
    ctx.default_map = {**(ctx.default_map or {}), **cfg}
    return value


def config_option(fn):
    return click.option(
        "--config",
        type=click.Path(exists=True, dir_okay=False),
        callback=_config_callback,
        is_eager=True,
        expose_value=False,
        help="JSON file with the same keys as the flags.",
    )(fn)


def model_options(fn):
    for deco in reversed(
        [
            click.option("--gamma", type=float, default=0.0, show_default=True),
            click.option("--delta-x", type=float, default=0.0, show_default=True),
            click.option("--delta-y", type=float, default=0.0, show_default=True),
        ]
    ):
        fn = deco(fn)
    return fn


def output_options(fn):
    for deco in reversed(
        [
            click.option("--output", "-o", type=click.Path(dir_okay=False), required=True),
            click.option("--plot", type=click.Path(dir_okay=False), default=None,
                         help="Also render a figure to this path."),
            click.option("--no-meta", is_flag=True, help="Suppress the '#' comment header."),
        ]
    ):
        fn = deco(fn)
    return fn


def _angle(value, value_pi, default):
    if value_pi is not None:
        return value_pi * math.pi
    if value is not None:
        return value
    return default


def _meta(no_meta: bool, description: str, params: dict):
    if no_meta:
        return None
    return [description, json.dumps(params, sort_keys=True)]


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("PTBUBBLE_THREADS", "4")))
    except ValueError:
        return 4


@click.group()
def main():
    """Spectra, exceptional points and sweep dynamics of lossy two-level systems."""


@main.command()
@config_option
@model_options
@click.option("--eta-min", type=float, default=-1.0, show_default=True)
@click.option("--eta-max", type=float, default=1.0, show_default=True)
@click.option("--steps", type=int, default=801, show_default=True)
@output_options
def spectrum(gamma, delta_x, delta_y, eta_min, eta_max, steps, output, plot, no_meta):
    """Eigenvalue scan over eta (CSV: eta, re_e1, im_e1, re_e2, im_e2)."""
    p = ModelParams(gamma=gamma, delta_x=delta_x, delta_y=delta_y)
    etas = np.linspace(eta_min, eta_max, steps)
    rows = spectrum_scan(p, etas)
    write_csv(
        output,
        ("eta", "re_e1", "im_e1", "re_e2", "im_e2"),
        ((eta, e1.real, e1.imag, e2.real, e2.imag) for eta, e1, e2 in rows),
        meta=_meta(no_meta, "spectrum scan", {"gamma": gamma, "delta_x": delta_x,
                                             "delta_y": delta_y, "steps": steps}),
    )
    if plot:
        plots.plot_spectrum(etas, [r[1] for r in rows], [r[2] for r in rows], plot)


@main.command()
@config_option
@click.option("--delta-y", type=float, default=0.0, show_default=True)
@click.option("--gamma-min", type=float, default=0.02, show_default=True)
@click.option("--gamma-max", type=float, default=0.4, show_default=True)
@click.option("--steps", type=int, default=20, show_default=True)
@output_options
def bubble(delta_y, gamma_min, gamma_max, steps, output, plot, no_meta):
    """Broken-phase bubble diameter vs loss strength (CSV: gamma, diameter)."""
    p = ModelParams(delta_y=delta_y)
    gammas = np.linspace(gamma_min, gamma_max, steps)
    try:
        scan = bubble_size_scan(p, gammas)
    except PtBubbleError as exc:
        raise click.ClickException(str(exc))
    write_csv(
        output,
        ("gamma", "diameter"),
        scan,
        meta=_meta(no_meta, "bubble diameter scan", {"delta_y": delta_y, "steps": steps}),
    )
    if plot:
        plots.plot_bubble([g for g, _ in scan], [d for _, d in scan], plot)


def _write_trajectory(traj, output, plot, meta):
    write_csv(output, traj.CSV_COLUMNS, traj.rows(), meta=meta)
    if plot:
        plots.plot_trajectory(traj, plot)


@main.command()
@config_option
@model_options
@click.option("--alpha", type=float, required=True)
@click.option("--eta0", type=float, default=0.0, show_default=True,
              help="Sweep offset: eta(t) = eta0 + alpha*t.")
@click.option("--t-max", type=float, required=True)
@click.option("--samples", type=int, default=DEFAULT_SAMPLES, show_default=True)
@click.option("--a-re", type=float, default=1.0, show_default=True)
@click.option("--a-im", type=float, default=0.0, show_default=True)
@click.option("--b-re", type=float, default=0.0, show_default=True)
@click.option("--b-im", type=float, default=0.0, show_default=True)
@output_options
def evolve(gamma, delta_x, delta_y, alpha, eta0, t_max, samples, a_re, a_im, b_re, b_im,
           output, plot, no_meta):
    """Linear sweep trajectory from initial amplitudes (A, B) at t = 0."""
    p = ModelParams(gamma=gamma, delta_x=delta_x, delta_y=delta_y, alpha=alpha)
    init = TwoLevelState(complex(a_re, a_im), complex(b_re, b_im), 0.0)
    t_grid = np.linspace(0.0, t_max, samples)
    try:
        traj = propagate(p, EtaSchedule.linear(alpha, eta0), init, t_grid)
    except PtBubbleError as exc:
        raise click.ClickException(str(exc))
    _write_trajectory(traj, output, plot,
                      _meta(no_meta, "linear sweep trajectory",
                            {"gamma": gamma, "delta_x": delta_x, "delta_y": delta_y,
                             "alpha": alpha, "eta0": eta0, "t_max": t_max}))


@main.command()
@config_option
@model_options
@click.option("--tf", type=float, default=15.0, show_default=True)
@click.option("--theta", type=float, default=None, help="Initial-state angle in radians.")
@click.option("--theta-pi", type=float, default=None, help="Initial-state angle in units of pi.")
@click.option("--phi", type=float, default=None, help="Initial-state phase in radians.")
@click.option("--phi-pi", type=float, default=None, help="Initial-state phase in units of pi.")
@click.option("--samples", type=int, default=DEFAULT_SAMPLES, show_default=True)
@output_options
def cyclic(gamma, delta_x, delta_y, tf, theta, theta_pi, phi, phi_pi, samples,
           output, plot, no_meta):
    """Out-and-back sweep across the gap region (eta: -1 -> 1 -> -1)."""
    th = _angle(theta, theta_pi, math.pi / 3.0)
    ph = _angle(phi, phi_pi, math.pi / 6.0)
    p = ModelParams(gamma=gamma, delta_x=delta_x, delta_y=delta_y, alpha=1.0 / tf)
    try:
        traj = cyclic_experiment(p, th, ph, tf, samples)
    except PtBubbleError as exc:
        raise click.ClickException(str(exc))
    _write_trajectory(traj, output, plot,
                      _meta(no_meta, "cyclic sweep trajectory",
                            {"gamma": gamma, "delta_x": delta_x, "delta_y": delta_y,
                             "tf": tf, "theta": th, "phi": ph, "samples": samples}))


@main.command("scan-theta")
@config_option
@model_options
@click.option("--tf", type=float, default=15.0, show_default=True)
@click.option("--phi", type=float, default=None)
@click.option("--phi-pi", type=float, default=None)
@click.option("--theta-min", type=float, default=0.1, show_default=True)
@click.option("--theta-max", type=float, default=1.5, show_default=True)
@click.option("--steps", type=int, default=8, show_default=True)
@click.option("--samples", type=int, default=DEFAULT_SAMPLES, show_default=True)
@output_options
def scan_theta(gamma, delta_x, delta_y, tf, phi, phi_pi, theta_min, theta_max, steps,
               samples, output, plot, no_meta):
    """Initial-state scan: per theta, final ||C2|-|C1|| and the t_f ratio."""
    ph = _angle(phi, phi_pi, math.pi / 6.0)
    p = ModelParams(gamma=gamma, delta_x=delta_x, delta_y=delta_y, alpha=1.0 / tf)
    thetas = np.linspace(theta_min, theta_max, steps)

    def run_one(theta):
        traj = cyclic_experiment(p, float(theta), ph, tf, samples)
        i_mid = traj.sample_index(tf)
        c1_mid, c2_mid = abs(traj.c1[i_mid]), abs(traj.c2[i_mid])
        dc = abs(abs(traj.c2[-1]) - abs(traj.c1[-1]))
        ratio = c2_mid / c1_mid if c1_mid > 0 else math.inf
        return float(theta), float(dc), float(ratio), float(c1_mid), float(c2_mid)

    try:
        with ThreadPoolExecutor(max_workers=_threads()) as pool:
            results = list(pool.map(run_one, thetas))
    except PtBubbleError as exc:
        raise click.ClickException(str(exc))
    write_csv(
        output,
        ("theta", "abs_dc_end", "ratio_tf", "abs_c1_tf", "abs_c2_tf"),
        results,
        meta=_meta(no_meta, "initial-state scan",
                   {"gamma": gamma, "delta_x": delta_x, "delta_y": delta_y,
                    "tf": tf, "phi": ph, "steps": steps}),
    )
    if plot:
        plots.plot_theta_scan([r[0] for r in results], [r[1] for r in results],
                              [r[2] for r in results], plot)


@main.command()
@config_option
@model_options
@click.option("--alpha", type=float, default=0.01, show_default=True)
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None,
              help="Write the JSON report here instead of stdout.")
def ratio(gamma, delta_x, delta_y, alpha, output):
    """Predicted asymptotic amplitude/probability ratios and regime label (JSON)."""
    p = ModelParams(gamma=gamma, delta_x=delta_x, delta_y=delta_y, alpha=alpha)
    report: dict = {"gamma_tilde_sq": gamma_tilde_sq(p)}
    if abs(delta_x) < SYMMETRY_TOL:
        try:
            amp = predicted_ratio(p)
            report.update(
                amplitude_ratio=amp,
                probability_ratio=amp * amp,
                regime="ratio-converges-rp",
            )
        except NotApplicableError:
            report.update(amplitude_ratio=None, probability_ratio=None, regime="no-ep")
    else:
        label = regime_classify_dx(p)
        report.update(amplitude_ratio=None, probability_ratio=None,
                      regime=label.label, marginal=label.marginal)
    text = json.dumps(report, indent=2, sort_keys=True)
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


_PAULI = {
    "sigma-x": [[0.0, 1.0], [1.0, 0.0]],
    "sigma-y": [[0.0, -1.0j], [1.0j, 0.0]],
    "sigma-z": [[1.0, 0.0], [0.0, -1.0]],
}


@main.command()
@config_option
@click.option("--eta", type=float, default=1.0, show_default=True)
@click.option("--delta-x", type=float, default=0.0, show_default=True)
@click.option("--delta-y", type=float, default=0.0, show_default=True)
@click.option("--lam", type=float, required=True, help="Dissipative perturbation strength.")
@click.option("--vp", type=click.Choice(sorted(_PAULI)), default="sigma-x", show_default=True)
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None)
def perturb(eta, delta_x, delta_y, lam, vp, output):
    """Perturbative correction report for h0 = eta*sz + dx*sx + dy*sy + i*lam*V (JSON)."""
    h0 = np.array([[eta, delta_x - 1j * delta_y], [delta_x + 1j * delta_y, -eta]], dtype=complex)
    setup = PerturbationSetup(h0=h0, v_p=np.array(_PAULI[vp], dtype=complex), lam=lam)
    try:
        rep = perturbative_corrections(setup)
    except PtBubbleError as exc:
        raise click.ClickException(str(exc))
    payload = {
        "e0": list(rep.e0),
        "e1": [[c.real, c.imag] for c in rep.e1],
        "e2": [[c.real, c.imag] for c in rep.e2],
        "gap0": rep.gap0,
    }
    text = json.dumps(payload, indent=2, sort_keys=True)
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


@main.command("verify")
def verify_cmd():
    """Run the built-in identity and cross-validation suites."""
    results = verify.run_all()
    n_fail = 0
    for name, ok, detail in results:
        click.echo(f"{'PASS' if ok else 'FAIL'}  {name}  ({detail})")
        n_fail += 0 if ok else 1
    click.echo(f"{len(results) - n_fail}/{len(results)} checks passed")
    if n_fail:
        raise click.exceptions.Exit(1)


if __name__ == "__main__":
    main()
