"""Matplotlib figure rendering for the CLI report path.

Figures are written to files next to the delimited output when a command
is given ``--plot``; all values are converted to float for drawing only,
the emitted CSV/JSON stays the authoritative high-precision artifact.
"""

from __future__ import annotations

from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .hankel import RecurrenceTable
from .painleve import freud_limit
from .zeros import DensityLaw, ZeroSet, density


def density_figure(
    law: DensityLaw,
    samples: Sequence[tuple],
    scaled_zeros: Optional[Sequence] = None,
    path: str = "density.png",
) -> str:
    """Density curve over its support, optionally with a zero rug under it."""
    xs = [float(x) for x, _ in samples]
    ys = [float(y) for _, y in samples]
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.plot(xs, ys, color="tab:blue", lw=1.5, label=f"limit density, m={law.m}")
    c = float(law.c)
    ax.plot([-c, c], [0, 0], "o", color="tab:green", ms=5, label="support endpoints")
    if scaled_zeros is not None:
        zs = [float(z) for z in scaled_zeros]
        ax.plot(zs, [0.0] * len(zs), "o", color="tab:red", ms=3, label="scaled zeros")
    ax.set_xlabel("x")
    ax.set_ylabel("density")
    ax.set_title(f"asymptotic zero density, m={law.m}, ell={float(law.ell):g}")
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def beta_figure(table: RecurrenceTable, path: str = "beta.png") -> str:
    """beta_n / n^(1/m) against n with the Freud limit line."""
    m = table.params.m
    ns = list(range(1, table.N + 1))
    vals = [float(table.beta(n)) / n ** (1.0 / m) for n in ns]
    lim = float(freud_limit(m, table.precision_bits))
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.plot(ns, vals, "o-", color="tab:blue", ms=3, lw=0.8, label=r"$\beta_n / n^{1/m}$")
    ax.axhline(lim, color="tab:red", lw=1.0, ls="--", label=f"limit {lim:.6f}")
    ax.set_xlabel("n")
    ax.set_ylabel("scaled recurrence coefficient")
    ax.set_title(f"recurrence coefficients, m={m}, method={table.method}")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def zeros_figure(zset: ZeroSet, path: str = "zeros.png", law: Optional[DensityLaw] = None) -> str:
    """Zero rug of P_n, optionally with the density law overlaid."""
    zs = [float(z) for z in zset.zeros]
    fig, ax = plt.subplots(figsize=(6.4, 3.2))
    ax.plot(zs, [0.0] * len(zs), "o", color="tab:red", ms=4, label=f"zeros of P_{zset.n}")
    if law is not None:
        c = float(law.c)
        xs = [c * (i / 200.0) for i in range(-199, 200)]
        ax.plot(xs, [float(density(law, x)) for x in xs], color="tab:blue", lw=1.2,
                label="limit density")
    ax.set_xlabel("x")
    ax.set_yticks([])
    ax.set_title(f"zeros of P_{zset.n}, m={zset.context.m}")
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
