"""Figure builders over the simulator's CSV schemas.

The renderer never recomputes physics: every plotted array is read straight
from a CSV produced by the simulator CLI. Sweep rows whose error column is
non-empty carry no values and are skipped. The only derived quantities are
presentation-level: the field phase arg(alpha) for the trajectory panel and
the sign flip -theta used as the x axis of the comparison figure.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

__all__ = ["FigureSpec", "RenderError", "SchemaError", "render", "REQUIRED_COLUMNS"]

TRAJECTORY_COLUMNS = ["t_ns", "rho_ee", "alpha_re", "alpha_im", "S_t"]
SWEEP_COLUMNS = ["swept_name", "swept_value", "theta", "F", "error"]
PHASE_MATCH_COLUMNS = ["theta_target", "r", "F"]

REQUIRED_COLUMNS = {
    2: TRAJECTORY_COLUMNS,
    3: SWEEP_COLUMNS,
    4: SWEEP_COLUMNS,
    5: SWEEP_COLUMNS,
    6: SWEEP_COLUMNS,
    7: SWEEP_COLUMNS,
    8: PHASE_MATCH_COLUMNS,
}

_LOG_X_FIGURES = {3, 7}

_STYLE = {
    "figure.dpi": 150,
    "savefig.dpi": 150,
    "font.size": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "lines.linewidth": 1.4,
}


class RenderError(Exception):
    """Any failure that should abort rendering with a message."""


class SchemaError(RenderError):
    """Input CSV does not match the documented schema; names the column."""


@dataclass(frozen=True)
class FigureSpec:
    figure_id: int
    inputs: tuple[Path, ...]
    output: Path

    def __post_init__(self) -> None:
        if self.figure_id not in REQUIRED_COLUMNS:
            raise RenderError(f"no renderer for figure {self.figure_id}")
        if not self.inputs:
            raise RenderError("at least one --input CSV is required")


def _read_columns(path: Path, required: list[str]) -> dict[str, np.ndarray]:
    try:
        with path.open("r", newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise SchemaError(f"{path}: empty file, no header row") from None
            rows = list(reader)
    except OSError as exc:
        raise RenderError(f"cannot read {path}: {exc}") from exc

    for col in required:
        if col not in header:
            raise SchemaError(f"{path}: missing column '{col}'")
    idx = {col: header.index(col) for col in required}

    if "error" in idx:
        rows = [r for r in rows if r[idx["error"]] == ""]

    out: dict[str, np.ndarray] = {}
    for col in required:
        if col in ("swept_name", "error"):
            out[col] = np.array([r[idx[col]] for r in rows], dtype=object)
            continue
        try:
            out[col] = np.array([float(r[idx[col]]) for r in rows], dtype=float)
        except ValueError as exc:
            raise SchemaError(f"{path}: column '{col}' is not numeric: {exc}") from exc
    return out


def _render_trajectory(data: dict[str, np.ndarray], output: Path) -> None:
    t = data["t_ns"]
    fig, axes = plt.subplots(3, 1, figsize=(6.0, 7.2), sharex=True)
    axes[0].plot(t, data["rho_ee"], color="tab:red")
    axes[0].set_ylabel(r"$\rho^{ee}$")
    phase = (
        np.arctan2(data["alpha_im"], data["alpha_re"]) if t.size else np.array([])
    )
    axes[1].plot(t, phase, color="tab:blue")
    axes[1].set_ylabel(r"arg $\tilde\alpha$  (rad)")
    axes[2].plot(t, data["S_t"], color="tab:green")
    axes[2].set_ylabel(r"$S(t)$  (ns$^{-1/2}$)")
    axes[2].set_xlabel("t (ns)")
    fig.align_ylabels(axes)
    fig.tight_layout()
    fig.savefig(output)
    plt.close(fig)


def _render_sweep(figure_id: int, data: dict[str, np.ndarray], output: Path) -> None:
    x = data["swept_value"]
    name = str(data["swept_name"][0]) if x.size else "swept value"
    fig, ax_theta = plt.subplots(figsize=(6.0, 4.2))
    ax_f = ax_theta.twinx()
    ax_theta.plot(x, data["theta"], color="tab:blue", marker="o", ms=3, label=r"$\theta$")
    ax_f.plot(x, data["F"], color="tab:red", marker="s", ms=3, label="F")
    if figure_id in _LOG_X_FIGURES and x.size:
        ax_theta.set_xscale("log")
    ax_theta.set_xlabel(name)
    ax_theta.set_ylabel(r"phase shift $\theta$ (rad)", color="tab:blue")
    ax_f.set_ylabel("fidelity F", color="tab:red")
    ax_f.grid(False)
    fig.tight_layout()
    fig.savefig(output)
    plt.close(fig)


def _render_comparison(data: dict[str, np.ndarray], output: Path) -> None:
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    for r in sorted(set(data["r"].tolist()), reverse=True):
        sel = data["r"] == r
        x = -data["theta_target"][sel]
        order = np.argsort(x)
        label = f"$F_s$ (squeezed, r={r:g})" if r > 0 else "$F_c$ (coherent)"
        ax.plot(x[order], data["F"][sel][order], marker="o", ms=3, label=label)
    ax.set_xlabel(r"$-\theta$ (rad)")
    ax.set_ylabel("fidelity")
    if data["r"].size:
        ax.legend()
    fig.tight_layout()
    fig.savefig(output)
    plt.close(fig)


def render(spec: FigureSpec) -> Path:
    """Render one figure analogue; returns the written image path."""
    required = REQUIRED_COLUMNS[spec.figure_id]
    parts = [_read_columns(Path(p), required) for p in spec.inputs]
    data = {
        col: np.concatenate([p[col] for p in parts]) if len(parts) > 1 else parts[0][col]
        for col in required
    }
    spec.output.parent.mkdir(parents=True, exist_ok=True)
    with plt.rc_context(_STYLE):
        if spec.figure_id == 2:
            _render_trajectory(data, spec.output)
        elif spec.figure_id == 8:
            _render_comparison(data, spec.output)
        else:
            _render_sweep(spec.figure_id, data, spec.output)
    return spec.output
