#!/usr/bin/env python3
"""Render the CSV plot data written by the tailrisk CLI.

Usage: plot.py OUT_DIR [--save DIR]
Every recognised CSV in OUT_DIR becomes one PNG (or an interactive window).
"""
import argparse
import pathlib

import matplotlib
import pandas as pd


def band(ax, df, x, y, label):
    ax.plot(df[x], df[y], label=label)
    if {"lower", "upper"} <= set(df.columns) and df["lower"].notna().any():
        ax.fill_between(df[x], df["lower"], df["upper"], alpha=0.25)
    ax.set_xlabel(x)
    ax.set_ylabel(label)


def tail_trace(ax, df):
    band(ax, df, "k", "alpha", "alpha")


def theta_trace(ax, df):
    band(ax, df, "b", "theta", "theta")
    ax.set_ylim(0, 1.05)


def chi_trace(ax, df):
    band(ax, df, "k", "chi", "chi")
    ax.set_ylim(0, 1.05)


def tail_qq(ax, df):
    ax.scatter(df["u"], df["v"], s=6)
    ax.set_xlabel("-log(i/(k+1))")
    ax.set_ylabel("log X")


def acf(ax, df):
    for col in ("acf", "acf_abs", "acf_squared"):
        ax.plot(df["lag"], df[col], marker=".", label=col)
    ax.axhline(0, color="grey", lw=0.5)
    ax.legend()


def garch_filtered(ax, df):
    d = pd.to_datetime(df["date"])
    ax.plot(d, df["value"], lw=0.4, label="loss")
    ax.plot(d, df["sigma"], lw=0.8, label="sigma")
    ax.legend()


def backtest_cond_daily(ax, df):
    d = pd.to_datetime(df["date"])
    ax.plot(d, df["realized"], lw=0.3, color="grey", label="loss")
    for col in [c for c in df.columns if c.startswith("forecast_")]:
        ax.plot(d, df[col], lw=0.6, label=col.removeprefix("forecast_"))
    ax.legend()


def backtest_uncond_windows(ax, df):
    for method, g in df.groupby("method"):
        ax.step(g["window_start"], g["forecast"], where="post", label=method)
    ax.legend()


RENDERERS = {
    "tail_trace.csv": tail_trace,
    "theta_trace.csv": theta_trace,
    "chi_trace.csv": chi_trace,
    "tail_qq.csv": tail_qq,
    "acf.csv": acf,
    "garch_filtered.csv": garch_filtered,
    "backtest_cond_daily.csv": backtest_cond_daily,
    "backtest_uncond_windows.csv": backtest_uncond_windows,
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("out_dir", type=pathlib.Path)
    ap.add_argument("--save", type=pathlib.Path, help="write PNGs here instead of showing")
    args = ap.parse_args()
    if args.save:
        matplotlib.use("Agg")
        args.save.mkdir(parents=True, exist_ok=True)
    import matplotlib.pyplot as plt

    found = False
    for name, render in RENDERERS.items():
        path = args.out_dir / name
        if not path.exists():
            continue
        found = True
        fig, ax = plt.subplots(figsize=(8, 4.5))
        render(ax, pd.read_csv(path))
        ax.set_title(path.stem)
        fig.tight_layout()
        if args.save:
            fig.savefig(args.save / f"{path.stem}.png", dpi=120)
            plt.close(fig)
    if not found:
        raise SystemExit(f"no plot data in {args.out_dir}")
    if not args.save:
        plt.show()


if __name__ == "__main__":
    main()
