"""Parametric noise sweeps over waiting time, transition finding, CSV and SVG output."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .causality import CausalityReport, classify
from .channels import NoiseModel, channel_at_time, state_from_bloch
from .errors import UsageError
from .linalg import PSD_ATOL
from .schedule import build_pdm, two_event_schedule
from .serialize import _require, noise_model_from_dict

CSV_HEADER = "t,lambda1,lambda2,lambda3,lambda4,f_tr,classification"


@dataclass(frozen=True)
class SweepConfig:
    """Two-event single-qubit sweep: PDM of {event, wait under noise, event} vs time."""

    bloch: tuple
    noise: NoiseModel
    t_min: float
    t_max: float
    points: int
    grid: str = "linear"
    csv_path: str | None = None
    svg_path: str | None = None

    def __post_init__(self):
        if self.t_min < 0:
            raise UsageError("t_min must be >= 0")
        if not self.t_min < self.t_max:
            raise UsageError("t_min must be strictly less than t_max")
        if self.points < 2:
            raise UsageError("points must be >= 2")
        if self.grid not in ("linear", "log"):
            raise UsageError(f"grid must be 'linear' or 'log', got {self.grid!r}")
        if self.grid == "log" and self.t_min <= 0:
            raise UsageError("log grid requires t_min > 0")


@dataclass(frozen=True)
class SweepRow:
    t: float
    eigenvalues: tuple
    f_tr: float
    classification: str


def sweep_config_from_dict(doc: dict) -> SweepConfig:
    state_doc = _require(doc, "initial_state", "sweep config")
    if not isinstance(state_doc, dict) or "bloch" not in state_doc:
        raise UsageError("sweep config initial_state must carry a bloch vector")
    bloch = tuple(float(x) for x in state_doc["bloch"])
    if len(bloch) != 3:
        raise UsageError("bloch vector must have 3 components")
    noise, _ = noise_model_from_dict(_require(doc, "noise", "sweep config"))
    return SweepConfig(
        bloch=bloch,
        noise=noise,
        t_min=float(_require(doc, "t_min", "sweep config")),
        t_max=float(_require(doc, "t_max", "sweep config")),
        points=int(_require(doc, "points", "sweep config")),
        grid=doc.get("grid", "linear"),
        csv_path=doc.get("csv"),
        svg_path=doc.get("svg"),
    )


def time_grid(cfg: SweepConfig) -> np.ndarray:
    if cfg.grid == "log":
        return np.geomspace(cfg.t_min, cfg.t_max, cfg.points)
    return np.linspace(cfg.t_min, cfg.t_max, cfg.points)


def report_at_time(cfg: SweepConfig, t: float) -> CausalityReport:
    ch = channel_at_time(cfg.noise, t)
    s = two_event_schedule(state_from_bloch(cfg.bloch), ch)
    return classify(build_pdm(s))


def run_sweep(cfg: SweepConfig) -> list[SweepRow]:
    rows = []
    for t in time_grid(cfg):
        rep = report_at_time(cfg, float(t))
        rows.append(SweepRow(float(t), rep.eigenvalues, rep.f_tr, rep.classification))
    return rows


def find_transition(cfg: SweepConfig, scan_points: int = 256) -> float | None:
    """Waiting time where the minimum PDM eigenvalue crosses the causal threshold.

    Bisects the signed distance of the minimum eigenvalue from the
    classification threshold; returns None when no sign change exists on
    [t_min, t_max] (checked on a coarse scan grid).
    """

    def h(t: float) -> float:
        return report_at_time(cfg, t).min_eigenvalue + PSD_ATOL

    ts = np.linspace(cfg.t_min, cfg.t_max, scan_points)
    vals = [h(float(t)) for t in ts]
    lo = hi = None
    for i in range(len(ts) - 1):
        if vals[i] == 0.0 or np.sign(vals[i]) != np.sign(vals[i + 1]):
            lo, hi = float(ts[i]), float(ts[i + 1])
            flo = vals[i]
            break
    if lo is None:
        return None
    tol = 1e-9 * (cfg.t_max - cfg.t_min)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        fm = h(mid)
        if fm == 0.0:
            return mid
        if np.sign(fm) == np.sign(flo):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo + hi) / 2


def rows_to_csv(rows) -> str:
    """CSV with shortest round-trip float formatting; eigenvalues ascending."""
    lines = [CSV_HEADER]
    for r in rows:
        if len(r.eigenvalues) != 4:
            raise UsageError("CSV output expects two-event (4-eigenvalue) rows")
        vals = [r.t, *r.eigenvalues, r.f_tr]
        lines.append(",".join([*(repr(float(v)) for v in vals), r.classification]))
    return "\n".join(lines) + "\n"


def rows_from_csv(text: str) -> list[SweepRow]:
    lines = [ln for ln in text.strip().splitlines() if ln]
    if not lines or lines[0] != CSV_HEADER:
        raise UsageError("unexpected CSV header")
    rows = []
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != 7:
            raise UsageError(f"malformed CSV row: {ln!r}")
        rows.append(
            SweepRow(
                float(parts[0]),
                tuple(float(p) for p in parts[1:5]),
                float(parts[5]),
                parts[6],
            )
        )
    return rows


# SVG layout constants.
_W, _PANEL_H, _MARGIN, _GAP = 640, 210, 46, 28


def _fmt(x: float) -> str:
    return f"{x:.3f}".rstrip("0").rstrip(".")


def _panel(rows, series, colors, y0, title, causal_spans, t_span):
    t_lo, t_hi = t_span
    all_vals = [v for ys in series for v in ys]
    v_lo, v_hi = min(all_vals), max(all_vals)
    if v_hi - v_lo < 1e-12:
        v_lo, v_hi = v_lo - 0.5, v_hi + 0.5
    pad = 0.05 * (v_hi - v_lo)
    v_lo, v_hi = v_lo - pad, v_hi + pad
    x_px = lambda t: _MARGIN + (t - t_lo) / (t_hi - t_lo) * (_W - 2 * _MARGIN)
    y_px = lambda v: y0 + _PANEL_H - (v - v_lo) / (v_hi - v_lo) * _PANEL_H
    out = []
    for a, b in causal_spans:
        out.append(
            f'<rect x="{_fmt(x_px(a))}" y="{_fmt(y0)}" width="{_fmt(x_px(b) - x_px(a))}" '
            f'height="{_fmt(_PANEL_H)}" fill="#fdd" stroke="none"/>'
        )
    out.append(
        f'<rect x="{_fmt(_MARGIN)}" y="{_fmt(y0)}" width="{_fmt(_W - 2 * _MARGIN)}" '
        f'height="{_fmt(_PANEL_H)}" fill="none" stroke="#333" stroke-width="1"/>'
    )
    for ys, color in zip(series, colors):
        pts = " ".join(f"{_fmt(x_px(r.t))},{_fmt(y_px(v))}" for r, v in zip(rows, ys))
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>')
    out.append(
        f'<text x="{_fmt(_MARGIN)}" y="{_fmt(y0 - 8)}" font-family="sans-serif" '
        f'font-size="13" fill="#000">{title}</text>'
    )
    return out


def emit_svg(rows) -> str:
    """Two stacked panels: eigenvalues vs t and f_tr vs t, causal region shaded."""
    rows = list(rows)
    if len(rows) < 2:
        raise UsageError("SVG output requires at least 2 rows")
    t_span = (rows[0].t, rows[-1].t)
    spans, start = [], None
    for r in rows:
        if r.classification == "causal" and start is None:
            start = r.t
        elif r.classification != "causal" and start is not None:
            spans.append((start, r.t))
            start = None
    if start is not None:
        spans.append((start, rows[-1].t))
    k = len(rows[0].eigenvalues)
    eig_series = [[r.eigenvalues[i] for r in rows] for i in range(k)]
    colors = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"][:k]
    height = 2 * (_PANEL_H + _GAP) + 2 * _MARGIN
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{height}" '
        f'viewBox="0 0 {_W} {height}">',
        f'<rect x="0" y="0" width="{_W}" height="{height}" fill="#fff"/>',
    ]
    y1 = _MARGIN
    parts += _panel(rows, eig_series, colors, y1, "eigenvalues vs t", spans, t_span)
    y2 = _MARGIN + _PANEL_H + 2 * _GAP
    parts += _panel(rows, [[r.f_tr for r in rows]], ["#000"], y2, "f_tr vs t", spans, t_span)
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
