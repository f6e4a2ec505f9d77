"""Datasets and plotting scripts behind the fidelity and efficiency figures.

Each emitter writes a CSV dataset, a gnuplot script that renders it, and a
manifest recording every grid parameter, so a figure can be regenerated or
re-plotted without the tool. Nothing here renders; plotting is delegated to
the emitted scripts.
"""

from __future__ import annotations

import math
from pathlib import Path

from .chi import InteractionKind, ProtocolParams
from .conditioning import f_param_baseline, initial_fidelity
from .errors import ConfigError
from .sweep import (
    evaluate_point,
    find_optimal_time,
    format_value,
    grid_range,
    make_manifest,
)

FIGURES = ("fig2", "fig3", "fig4a", "fig4b", "fig5", "fig6")

_TWO_PI = 2.0 * math.pi

DEFAULT_P_MIN = 1e-6


def fig2_rows(tau_grid=None, lam: float = 0.5, n_th: float = 0.0, p_min=DEFAULT_P_MIN):
    """Parametric conditional fidelities against interaction time."""
    tau_grid = grid_range(0.01, 2.0, 0.01) if tau_grid is None else tau_grid
    rows = []
    for tau in tau_grid:
        point = evaluate_point(InteractionKind.PARAMETRIC, False, lam, n_th, tau, p_min)
        rows.append((tau, point.f00, point.f01, point.f11, point.f_init))
    return ("tau", "f00", "f01", "f11", "f_init"), rows


def fig3_rows(lambda_grid=None, nth_values=(0.0, 0.01, 0.05, 0.1), p_min=DEFAULT_P_MIN):
    """Beam-splitter fidelities against squeezing at the per-point optimal time.

    The optimum is searched around the atom-light re-swap time (the regime
    the figure reports); at very small squeezing with no thermal noise the
    unrestricted supremum would instead sit at the short-time heralding edge
    of the admissible window, with vanishing success probability.
    """
    lambda_grid = grid_range(0.05, 0.95, 0.01) if lambda_grid is None else lambda_grid
    window = (math.pi - 1.0, math.pi + 1.0)
    rows = []
    for n_th in nth_values:
        for lam in lambda_grid:
            best = find_optimal_time(
                InteractionKind.BEAM_SPLITTER, False, lam, n_th, window, p_min=p_min
            )
            point = evaluate_point(
                InteractionKind.BEAM_SPLITTER, False, lam, n_th, best.tau_star, p_min
            )
            rows.append(
                (
                    n_th,
                    lam,
                    best.tau_star,
                    point.p11,
                    point.f00,
                    point.f01,
                    point.f11,
                    point.f_init,
                )
            )
    return ("n_th", "lambda", "tau_star", "p11", "f00", "f01", "f11", "f_init"), rows


def fig4_rows(n_th: float, lambda_grid=None, tau_grid=None, p_min=DEFAULT_P_MIN):
    """Efficiency of the beam-splitter protocol over the (tau, lambda) plane."""
    lambda_grid = grid_range(0.0, 0.95, 0.01) if lambda_grid is None else lambda_grid
    tau_grid = grid_range(0.01, _TWO_PI - 0.01, 0.01) if tau_grid is None else tau_grid
    rows = []
    for lam in lambda_grid:
        for tau in tau_grid:
            point = evaluate_point(
                InteractionKind.BEAM_SPLITTER, False, lam, n_th, tau, p_min
            )
            rows.append((tau, lam, point.p11, point.f11, point.f_init, point.efficiency))
    return ("tau", "lambda", "p11", "f11", "f_init", "efficiency"), rows


def fig5_rows(
    lam_values=(0.1, 0.3, 0.5),
    nth_values=(0.0, 0.05),
    tau_grid=None,
    p_min=DEFAULT_P_MIN,
):
    """Swap-variant parametric fidelities against interaction time."""
    tau_grid = grid_range(0.01, 1.5, 0.01) if tau_grid is None else tau_grid
    rows = []
    for lam in lam_values:
        for n_th in nth_values:
            for tau in tau_grid:
                point = evaluate_point(
                    InteractionKind.PARAMETRIC, True, lam, n_th, tau, p_min
                )
                rows.append(
                    (lam, n_th, tau, point.f00, point.f01, point.f11, point.f_init)
                )
    return ("lambda", "n_th", "tau", "f00", "f01", "f11", "f_init"), rows


def fig6_rows(lam_values=(0.05, 0.1, 0.2), tau_grid=None, p_min=DEFAULT_P_MIN):
    """Swap-variant F11 against the pure two-mode-squeezer baseline."""
    tau_grid = grid_range(0.01, 1.5, 0.01) if tau_grid is None else tau_grid
    rows = []
    for lam in lam_values:
        f_init = initial_fidelity(ProtocolParams(lam=lam))
        for tau in tau_grid:
            point = evaluate_point(InteractionKind.PARAMETRIC, True, lam, 0.0, tau, p_min)
            rows.append((lam, tau, point.p11, point.f11, f_param_baseline(tau), f_init))
    return ("lambda", "tau", "p11", "f11", "f_param", "f_init"), rows


_GNUPLOT = {
    "fig2": """\
set datafile separator ","
set key top right
set xlabel "interaction time (coupling * t)"
set ylabel "teleportation fidelity"
set yrange [0.4:0.8]
plot "fig2.csv" skip 1 using 1:2 with lines title "F00", \\
     "fig2.csv" skip 1 using 1:3 with lines title "F01=F10", \\
     "fig2.csv" skip 1 using 1:4 with lines title "F11", \\
     "fig2.csv" skip 1 using 1:5 with lines dashtype 3 title "F_init"
""",
    "fig3": """\
set datafile separator ","
set key top left
set xlabel "squeezing parameter"
set ylabel "teleportation fidelity at optimal time"
plot "fig3.csv" skip 1 using ($1==0.0?$2:1/0):7 with lines title "F11, n_th=0", \\
     "fig3.csv" skip 1 using ($1==0.05?$2:1/0):7 with lines title "F11, n_th=0.05", \\
     "fig3.csv" skip 1 using ($1==0.0?$2:1/0):8 with lines dashtype 3 title "F_init, n_th=0"
""",
    "fig4a": """\
set datafile separator ","
set xlabel "interaction time (coupling * t)"
set ylabel "squeezing parameter"
set cblabel "efficiency"
plot "fig4a.csv" skip 1 using 1:2:6 with points pt 5 ps 0.4 palette notitle
""",
    "fig4b": """\
set datafile separator ","
set xlabel "interaction time (coupling * t)"
set ylabel "squeezing parameter"
set cblabel "efficiency"
plot "fig4b.csv" skip 1 using 1:2:6 with points pt 5 ps 0.4 palette notitle
""",
    "fig5": """\
set datafile separator ","
set key bottom right
set xlabel "interaction time (coupling * t)"
set ylabel "teleportation fidelity"
plot "fig5.csv" skip 1 using ($1==0.1&&$2==0.0?$3:1/0):6 with lines title "F11, l=0.1", \\
     "fig5.csv" skip 1 using ($1==0.3&&$2==0.0?$3:1/0):6 with lines title "F11, l=0.3", \\
     "fig5.csv" skip 1 using ($1==0.5&&$2==0.0?$3:1/0):6 with lines title "F11, l=0.5", \\
     "fig5.csv" skip 1 using ($1==0.1&&$2==0.0?$3:1/0):7 with lines dashtype 3 title "F_init, l=0.1"
""",
    "fig6": """\
set datafile separator ","
set key top left
set xlabel "interaction time (coupling * t)"
set ylabel "teleportation fidelity"
plot "fig6.csv" skip 1 using ($1==0.05?$2:1/0):4 with lines title "F11, l=0.05", \\
     "fig6.csv" skip 1 using ($1==0.1?$2:1/0):4 with lines title "F11, l=0.1", \\
     "fig6.csv" skip 1 using ($1==0.2?$2:1/0):4 with lines title "F11, l=0.2", \\
     "fig6.csv" skip 1 using ($1==0.05?$2:1/0):5 with lines dashtype 2 title "baseline (1+t)/2"
""",
}


def emit_figure_data(figure: str, output_dir: str | Path, **grid_overrides) -> list[Path]:
    """Write <figure>.csv, <figure>.gnuplot and <figure>.manifest.json.

    Grid overrides are passed through to the row generator (test and
    exploration hook); everything used is recorded in the manifest.
    """
    if figure not in FIGURES:
        raise ConfigError(f"unknown figure {figure!r}; expected one of {FIGURES}")
    generators = {
        "fig2": fig2_rows,
        "fig3": fig3_rows,
        "fig4a": lambda **kw: fig4_rows(n_th=0.0, **kw),
        "fig4b": lambda **kw: fig4_rows(n_th=0.05, **kw),
        "fig5": fig5_rows,
        "fig6": fig6_rows,
    }
    header, rows = generators[figure](**grid_overrides)

    out_dir = Path(output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{figure}.csv"
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_value(v) for v in row))
    csv_path.write_bytes(("\n".join(lines) + "\n").encode())

    script_path = out_dir / f"{figure}.gnuplot"
    script_path.write_text(_GNUPLOT[figure])

    manifest_path = out_dir / f"{figure}.manifest.json"
    manifest_path.write_text(
        make_manifest(
            figure=figure,
            columns=list(header),
            rows=len(rows),
            grid_overrides={k: _json_safe(v) for k, v in grid_overrides.items()},
            defaults_used=not grid_overrides,
        )
    )
    return [csv_path, script_path, manifest_path]


def _json_safe(value):
    if isinstance(value, tuple):
        return list(value)
    return value
