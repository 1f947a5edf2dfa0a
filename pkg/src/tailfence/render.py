"""Plain-text rendering of profiles, box-plots, estimates and reports."""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from .diagnose import ONE_SIDED, DiagnosisReport
from .empirical import OutlierCounts
from .errors import EstimatorUndefined
from .estimators import EstimateResult, Method
from .measures import ASPECTS, SHORT_KEYS, BoxPlotSummary, CatalogEntry, TailProfile
from .montecarlo import StudyReport

SIG = 6


def fmt_prob(p: float) -> str:
    """Six significant digits; positional down to 1e-7, scientific below."""
    if p == 0:
        return "0"
    if abs(p) < 1e-7:
        return f"{p:.{SIG - 1}e}"
    decimals = max(0, SIG - 1 - math.floor(math.log10(abs(p))))
    return f"{p:.{decimals}f}"


def fmt_num(x: float | None) -> str:
    if x is None:
        return "-"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.{SIG}g}"


def table(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    rows = [list(map(str, r)) for r in rows]
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
    line = lambda cells: "  ".join(c.rjust(w) if i else c.ljust(w) for i, (c, w) in enumerate(zip(cells, widths)))  # noqa: E731
    out = [line(header), "  ".join("-" * w for w in widths)]
    out.extend(line(r) for r in rows)
    return "\n".join(out)


def render_catalog(entries: Sequence[CatalogEntry]) -> str:
    header = ["distribution"] + [SHORT_KEYS[a] for a in ASPECTS]
    rows = [[e.label] + [fmt_prob(e.profile.get(a)) for a in ASPECTS] for e in entries]
    return table(header, rows)


def render_profile(label: str, profile: TailProfile, box: BoxPlotSummary) -> str:
    lines = [f"distribution: {label}", "", render_boxplot(box), ""]
    lines.extend(f"{SHORT_KEYS[a]:>5} = {fmt_prob(profile.get(a))}" for a in ASPECTS)
    return "\n".join(lines)


def _sketch(box: BoxPlotSummary, width: int = 61) -> str:
    lo, hi = box.outer_left, box.outer_right
    if not hi > lo:
        return "|"
    canvas = [" "] * width
    pos = lambda x: int(round((x - lo) / (hi - lo) * (width - 1)))  # noqa: E731
    for i in range(pos(box.inner_left), pos(box.inner_right) + 1):
        canvas[i] = "-"
    for i in range(pos(box.q1), pos(box.q3) + 1):
        canvas[i] = "="
    for x, ch in ((box.outer_left, "|"), (box.inner_left, ":"), (box.q1, "["), (box.q2, "#"),
                  (box.q3, "]"), (box.inner_right, ":"), (box.outer_right, "|")):
        canvas[pos(x)] = ch
    return "".join(canvas)


def render_boxplot(box: BoxPlotSummary) -> str:
    rows = [(k, fmt_num(v)) for k, v in box.as_dict().items()]
    return table(["statistic", "value"], rows) + "\n\n" + _sketch(box)


def render_counts(counts: OutlierCounts) -> str:
    rows = [
        (side, str(getattr(counts, side)), fmt_prob(getattr(counts, side) / counts.n))
        for side in ONE_SIDED
    ]
    return f"n = {counts.n}\n" + table(["outliers", "count", "frequency"], rows)


def render_estimates(results: dict[Method, EstimateResult | EstimatorUndefined]) -> str:
    rows = []
    for m, r in results.items():
        if isinstance(r, EstimateResult):
            rows.append((m.value, fmt_num(r.alpha_hat), ""))
        else:
            rows.append((m.value, "-", r.reason))
    return table(["method", "alpha_hat", "note"], rows)


def render_study(report: StudyReport) -> str:
    methods = report.config.methods
    header = ["distribution", "n"]
    for m in methods:
        header += [f"{m.value} mean", "sd", "valid"]
    header.append("best")
    rows = []
    for c, d in zip(report.cells, report.to_dict()["cells"]):
        row = [c.dist, str(c.n)]
        for m in methods:
            s = c.methods[m]
            row += [fmt_num(s.mean), fmt_num(s.sd), str(s.valid_count)]
        row.append(d["best"] or "-")
        rows.append(row)
    cfg = report.config
    return f"replications = {cfg.replications}, seed = {cfg.seed}\n" + table(header, rows)


def render_diagnosis(report: DiagnosisReport) -> str:
    out = ["1. empirical box-plot", render_boxplot(report.boxplot), ""]
    out += ["2. outlier frequencies", render_counts(report.counts), ""]
    ci_rows = [
        (a, fmt_prob(ci.point), fmt_prob(ci.lower), fmt_prob(ci.upper)) for a, ci in report.intervals.items()
    ]
    conf = next(iter(report.intervals.values())).confidence
    out += [f"3-4. Wilson intervals (confidence {conf:g})", table(["measure", "freq", "lower", "upper"], ci_rows), ""]
    sl_rows = []
    for c in report.shortlist:
        flags = "".join("+" if c.compatible[a] else "." for a in ONE_SIDED)
        qd = c.quartile_discrepancy
        sl_rows.append((c.entry.label, flags, fmt_num(c.deviation),
                        "-" if qd is None else f"{qd[0]:+.3f}/{qd[1]:+.3f}"))
    out.append("   shortlist (flags: mL eL mR eR)")
    out.append(table(["candidate", "flags", "deviation", "dQ1/dQ3"], sl_rows) if sl_rows else "   (empty)")
    out.append("")
    out.append("5. tail-index estimates")
    if report.estimates is None:
        out.append("   not run: no shortlisted candidate with a heavy right tail")
    else:
        out.append(render_estimates(report.estimates))
    return "\n".join(out)
