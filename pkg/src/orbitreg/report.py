"""Benchmark output: CSV tables and self-contained SVG risk plots.

Files are UTF-8 with LF line endings and fully determined by the report
contents, so identical runs produce byte-identical output.
"""

from __future__ import annotations

import os
from typing import Iterable

import numpy as np

from .bench import BASELINE, BEST_SYMMETRIC, RiskReport

ROWS_HEADER = "scenario,n,trial,estimator,risk"
AGGREGATES_HEADER = "scenario,n,estimator,mean_risk,ci_halfwidth"

_SERIES_COLOR = {BASELINE: "#1f77b4", BEST_SYMMETRIC: "#ff7f0e"}


def rows_csv(report: RiskReport) -> str:
    lines = [ROWS_HEADER]
    for row in report.rows:
        lines.append(f"{row.scenario},{row.n},{row.trial},{row.estimator},{row.risk!r}")
    return "\n".join(lines) + "\n"


def aggregates_csv(report: RiskReport) -> str:
    lines = [AGGREGATES_HEADER]
    for (scenario, n, estimator), (mean, half) in report.aggregates.items():
        lines.append(f"{scenario},{n},{estimator},{mean!r},{half!r}")
    return "\n".join(lines) + "\n"


def emit_report(report: RiskReport, out_dir: str) -> list[str]:
    """Write rows.csv, aggregates.csv, and one SVG per scenario present."""
    try:
        os.makedirs(out_dir, exist_ok=True)
        written = []
        for name, text in (("rows.csv", rows_csv(report)),
                           ("aggregates.csv", aggregates_csv(report))):
            path = os.path.join(out_dir, name)
            _write_text(path, text)
            written.append(path)
        for scenario in sorted({row.scenario for row in report.rows}):
            path = os.path.join(out_dir, f"risk_{scenario}.svg")
            _write_text(path, risk_plot_svg(report, scenario))
            written.append(path)
        return written
    except OSError as exc:
        raise OSError(f"failed writing report to {out_dir!r}: {exc}") from exc


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def risk_plot_svg(report: RiskReport, scenario: str) -> str:
    """Log-log mean risk against sample size with Wald whiskers per series."""
    series: dict[str, list[tuple[int, float, float]]] = {}
    for (scen, n, estimator), (mean, half) in report.aggregates.items():
        if scen == scenario:
            series.setdefault(estimator, []).append((n, mean, half))
    width, height = 640.0, 480.0
    left, right, top, bottom = 70.0, 20.0, 40.0, 55.0
    xs, ys = [], []
    for pts in series.values():
        for n, mean, half in pts:
            xs.append(np.log10(n))
            lo = max(mean - half, mean * 1e-3, 1e-300)
            ys.extend([np.log10(lo), np.log10(max(mean + half, 1e-300))])
    if not xs:
        return _svg_document(width, height, ["<text x='320' y='240'>no data</text>"])
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    x_pad = 0.04 * max(x_hi - x_lo, 1e-9)
    y_pad = 0.08 * max(y_hi - y_lo, 1e-9)
    x_lo, x_hi = x_lo - x_pad, x_hi + x_pad
    y_lo, y_hi = y_lo - y_pad, y_hi + y_pad

    def sx(v: float) -> float:
        return left + (v - x_lo) / (x_hi - x_lo) * (width - left - right)

    def sy(v: float) -> float:
        return height - bottom - (v - y_lo) / (y_hi - y_lo) * (height - top - bottom)

    body = [
        f"<rect x='{left:.2f}' y='{top:.2f}' width='{width - left - right:.2f}' "
        f"height='{height - top - bottom:.2f}' fill='none' stroke='black'/>",
        f"<text x='{width / 2:.2f}' y='{height - 12:.2f}' text-anchor='middle'>"
        f"log10 n</text>",
        f"<text x='16' y='{height / 2:.2f}' text-anchor='middle' "
        f"transform='rotate(-90 16 {height / 2:.2f})'>log10 mean risk</text>",
        f"<text x='{width / 2:.2f}' y='24' text-anchor='middle'>{scenario}</text>",
    ]
    for tick in _ticks(x_lo, x_hi):
        body.append(f"<line x1='{sx(tick):.2f}' y1='{height - bottom:.2f}' "
                    f"x2='{sx(tick):.2f}' y2='{height - bottom + 5:.2f}' stroke='black'/>")
        body.append(f"<text x='{sx(tick):.2f}' y='{height - bottom + 20:.2f}' "
                    f"text-anchor='middle' font-size='12'>{tick:.2f}</text>")
    for tick in _ticks(y_lo, y_hi):
        body.append(f"<line x1='{left - 5:.2f}' y1='{sy(tick):.2f}' "
                    f"x2='{left:.2f}' y2='{sy(tick):.2f}' stroke='black'/>")
        body.append(f"<text x='{left - 8:.2f}' y='{sy(tick) + 4:.2f}' "
                    f"text-anchor='end' font-size='12'>{tick:.2f}</text>")
    legend_y = top + 16
    for estimator in sorted(series):
        color = _SERIES_COLOR.get(estimator, "#2ca02c")
        pts = sorted(series[estimator])
        path = " ".join(
            f"{'M' if i == 0 else 'L'}{sx(np.log10(n)):.2f},{sy(np.log10(max(m, 1e-300))):.2f}"
            for i, (n, m, _) in enumerate(pts)
        )
        body.append(f"<path d='{path}' fill='none' stroke='{color}' stroke-width='1.5'/>")
        for n, mean, half in pts:
            x = sx(np.log10(n))
            lo = max(mean - half, mean * 1e-3, 1e-300)
            hi = max(mean + half, 1e-300)
            body.append(f"<line x1='{x:.2f}' y1='{sy(np.log10(lo)):.2f}' "
                        f"x2='{x:.2f}' y2='{sy(np.log10(hi)):.2f}' stroke='{color}'/>")
            body.append(f"<circle cx='{x:.2f}' cy='{sy(np.log10(max(mean, 1e-300))):.2f}' "
                        f"r='2.5' fill='{color}'/>")
        slope = report.slopes.get((scenario, estimator))
        label = estimator if slope is None else f"{estimator} (slope {slope:.3f})"
        body.append(f"<rect x='{width - right - 235:.2f}' y='{legend_y - 9:.2f}' width='10' "
                    f"height='10' fill='{color}'/>")
        body.append(f"<text x='{width - right - 220:.2f}' y='{legend_y:.2f}' "
                    f"font-size='12'>{label}</text>")
        legend_y += 16
    return _svg_document(width, height, body)


def _ticks(lo: float, hi: float, target: int = 5) -> list[float]:
    span = hi - lo
    if span <= 0:
        return [lo]
    raw = span / target
    mag = 10.0 ** np.floor(np.log10(raw))
    step = min((m for m in (mag, 2 * mag, 5 * mag, 10 * mag) if m >= raw), default=mag)
    first = np.ceil(lo / step) * step
    ticks = []
    value = first
    while value <= hi + 1e-12:
        ticks.append(round(value, 10))
        value += step
    return ticks


def _svg_document(width: float, height: float, body: Iterable[str]) -> str:
    head = (
        "<svg xmlns='http://www.w3.org/2000/svg' "
        f"viewBox='0 0 {width:.0f} {height:.0f}' width='{width:.0f}' height='{height:.0f}' "
        "font-family='sans-serif' font-size='14'>"
    )
    return "\n".join([head, *body, "</svg>"]) + "\n"
