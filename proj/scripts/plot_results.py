#!/usr/bin/env python3
"""Plot CSV files written by `fmimo`.

Usage: plot_results.py results.csv [more.csv ...] [-o outdir]

One figure per (scenario, file). The scenario column decides the x axis.
"""
import argparse
import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd

X_AXIS = {
    "spacing-curve": ("aperture", "spacing d (wavelengths)"),
    "sweep-snr": ("gamma_db", "SNR (dB)"),
    "sweep-aperture": ("aperture", "aperture (wavelengths)"),
    "sweep-n": ("N", "antennas per side"),
    "optimize": (None, None),
    "convergence": ("iteration", "outer iteration"),
}


def plot_lines(ax, df, x, facet):
    for key, group in df.groupby(facet):
        label = " ".join(str(k) for k in (key if isinstance(key, tuple) else (key,)))
        g = group.sort_values(x)
        ax.errorbar(g[x], g["capacity_mean"], yerr=g["capacity_stderr"], label=label, marker=".", capsize=2)


def plot_file(path, outdir):
    df = pd.read_csv(path)
    for scenario, part in df.groupby("scenario"):
        x, xlabel = X_AXIS.get(scenario, ("gamma_db", "SNR (dB)"))
        fig, ax = plt.subplots(figsize=(6.4, 4.2))
        if scenario == "optimize":
            part = part.groupby("scheme", sort=False).mean(numeric_only=True).reset_index()
            ax.bar(part["scheme"], part["capacity_mean"], yerr=part["capacity_stderr"], capsize=3)
            ax.set_xlabel("scheme")
        elif scenario == "convergence":
            part = part.copy()
            part["iteration"] = part["scheme"].str.split("@").str[1].astype(float)
            part["scheme"] = part["scheme"].str.split("@").str[0]
            plot_lines(ax, part.dropna(subset=["iteration"]), "iteration", ["scheme", "gamma_db"])
            ax.set_xlabel(xlabel)
            ax.legend(fontsize="small")
        else:
            facet = ["scheme"] + [c for c in ("gamma_db", "N") if c != x and part[c].nunique() > 1]
            plot_lines(ax, part, x, facet)
            ax.set_xlabel(xlabel)
            ax.legend(fontsize="small")
        ax.set_ylabel("ergodic capacity (bps/Hz)")
        ax.set_title(f"{scenario} ({path.name})")
        ax.grid(alpha=0.3)
        fig.tight_layout()
        target = outdir / f"{path.stem}_{scenario}.png"
        fig.savefig(target, dpi=150)
        plt.close(fig)
        print(target)


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("csv", nargs="+", type=pathlib.Path)
    parser.add_argument("-o", "--outdir", type=pathlib.Path, default=pathlib.Path("."))
    args = parser.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    for path in args.csv:
        plot_file(path, args.outdir)


if __name__ == "__main__":
    main()
