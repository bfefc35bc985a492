"""Figure rendering for the CLI report path (matplotlib, file output only)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def plot_spectrum(etas, e1, e2, path) -> None:
    """Real and imaginary branches of the eigenvalues along an eta scan."""
    fig, ax = plt.subplots(figsize=(5, 3.4))
    ax.plot(etas, np.real(e1), "r-", label="Re E")
    ax.plot(etas, np.real(e2), "r-")
    ax.plot(etas, np.imag(e1), "b-.", label="Im E")
    ax.plot(etas, np.imag(e2), "b-.")
    ax.set_xlabel(r"$\eta$")
    ax.set_ylabel("E")
    ax.legend(loc="best")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_bubble(gammas, diameters, path) -> None:
    fig, ax = plt.subplots(figsize=(4.2, 3.2))
    ax.plot(gammas, diameters, "ko-", ms=3)
    ax.set_xlabel(r"$\gamma$")
    ax.set_ylabel("bubble diameter")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_trajectory(traj, path) -> None:
    """Projection probabilities over time with the instantaneous spectra inset."""
    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    p1 = np.abs(traj.c1) ** 2
    p2 = np.abs(traj.c2) ** 2
    ok = ~traj.ep_flag & np.isfinite(p1) & np.isfinite(p2)
    # gap out samples sitting essentially on a coalescence, where the
    # normalization blows up and would wreck the axis scaling
    med = np.nanmedian(np.concatenate([p1[ok], p2[ok]])) if np.any(ok) else 1.0
    ok &= (p1 < 1e4 * max(med, 1.0)) & (p2 < 1e4 * max(med, 1.0))
    ax.plot(traj.t[ok], p1[ok], "-", label=r"$|C_1|^2$")
    ax.plot(traj.t[ok], p2[ok], ":", label=r"$|C_2|^2$")
    ax.set_xlabel("t")
    ax.set_ylabel("projection probability")
    ax.legend(loc="best")
    inset = ax.inset_axes([0.08, 0.55, 0.35, 0.4])
    inset.plot(traj.eta, np.real(traj.e1), "r-", lw=0.8)
    inset.plot(traj.eta, np.real(traj.e2), "r-", lw=0.8)
    inset.plot(traj.eta, np.imag(traj.e1), "b-.", lw=0.8)
    inset.plot(traj.eta, np.imag(traj.e2), "b-.", lw=0.8)
    inset.tick_params(labelsize=6)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_theta_scan(thetas, dc_end, ratio_tf, path) -> None:
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(7, 3))
    ax1.plot(thetas, dc_end, "ko-", ms=3)
    ax1.set_xlabel(r"$\theta$")
    ax1.set_ylabel(r"$||C_2|-|C_1||$ at $2t_f$")
    ax2.plot(thetas, ratio_tf, "r-")
    ax2.set_xlabel(r"$\theta$")
    ax2.set_ylabel(r"$|C_2|/|C_1|$ at $t_f$")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
