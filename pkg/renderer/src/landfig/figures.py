"""Static figures from the solver's CSV artifacts.

Three kinds. A derivative-versus-fruit-share curve reads a sweep table
and, when the derivative changes sign between two grid points, marks
the interpolated crossing. A next-versus-current share map pairs
successive phi values from a path table and draws them against the 45
degree line, circling the pair that meets the diagonal. A time-path
plot draws one line per branch when the table carries a branch column.

The renderer computes nothing: every number on a figure comes from the
input file. Input tables are opened read-only and never modified.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")
# stable SVG element ids, so reruns are byte-identical
matplotlib.rcParams["svg.hashsalt"] = "landfig"

import matplotlib.pyplot as plt  # noqa: E402  backend must be fixed first

KINDS = ("map45", "derivative_curve", "path_plot")

# a successive pair counts as "on the diagonal" under this relative gap
_DIAGONAL_TOL = 1e-6


class SchemaMismatch(ValueError):
    """The input CSV does not carry what the figure kind needs."""


@dataclass(frozen=True)
class FigureSpec:
    """One figure request: which table, which kind, where to write."""

    input_csv: str
    kind: str
    output: str
    title: str = ""


@dataclass(frozen=True)
class RenderReport:
    """What the figure ended up showing.

    crossing is the interpolated sign-flip abscissa (derivative curves
    only), fixed_point the circled pair (share maps only), branches the
    legend entries (path plots only). Fields that do not apply to the
    kind stay None or empty.
    """

    output: str
    points: int
    crossing: Optional[float] = None
    fixed_point: Optional[tuple[float, float]] = None
    branches: tuple[str, ...] = ()


def _read_table(path: str) -> tuple[list[str], list[dict]]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise SchemaMismatch("empty file, no header row")
        rows = list(reader)
    if not rows:
        raise SchemaMismatch("no data rows under the header")
    return list(reader.fieldnames), rows


def _require(fields: Sequence[str], needed: Sequence[str], kind: str) -> None:
    missing = [c for c in needed if c not in fields]
    if missing:
        raise SchemaMismatch(
            f"{kind} needs columns {list(needed)}; "
            f"missing {missing} in header {list(fields)}"
        )


def _floats(rows: Sequence[dict], column: str) -> list[float]:
    out = []
    for i, row in enumerate(rows, start=2):
        text = row[column]
        try:
            out.append(float(text))
        except (TypeError, ValueError):
            raise SchemaMismatch(
                f"line {i}: {column}={text!r} is not a number"
            ) from None
    return out


def _first_sign_change(
    xs: Sequence[float], ys: Sequence[float]
) -> Optional[float]:
    """Abscissa where ys crosses zero, linearly interpolated."""
    for x0, x1, y0, y1 in zip(xs, xs[1:], ys, ys[1:]):
        if not (math.isfinite(y0) and math.isfinite(y1)):
            continue
        if y0 == 0.0:
            return x0
        if y0 * y1 < 0.0:
            return x0 - y0 * (x1 - x0) / (y1 - y0)
    return None


def _derivative_curve(ax, fields, rows) -> tuple[int, Optional[float]]:
    _require(fields, ("epsilon", "derivative", "feasible"), "derivative_curve")
    kept = [row for row in rows if row["feasible"] == "true"]
    if not kept:
        raise SchemaMismatch("no feasible rows to plot")
    eps = _floats(kept, "epsilon")
    der = _floats(kept, "derivative")
    ax.plot(eps, der, marker=".", ms=4, lw=1.2, color="tab:blue")
    ax.axhline(0.0, color="0.6", lw=0.8)
    crossing = _first_sign_change(eps, der)
    if crossing is not None:
        ax.axvline(crossing, color="tab:red", ls="--", lw=1.0)
        ax.annotate(
            f"sign flip at {crossing:.4g}",
            xy=(crossing, 0.0),
            xytext=(6, 12),
            textcoords="offset points",
            color="tab:red",
            fontsize=9,
        )
    ax.set_xlabel("epsilon")
    ax.set_ylabel("derivative of gross growth")
    return len(kept), crossing


def _map45(ax, fields, rows) -> tuple[int, Optional[tuple[float, float]]]:
    _require(fields, ("phi",), "map45")
    phi = _floats(rows, "phi")
    if len(phi) < 2:
        raise SchemaMismatch("need at least two rows to pair successive shares")
    cur, nxt = phi[:-1], phi[1:]
    ax.plot(cur, nxt, marker="o", ms=3, lw=1.0, color="tab:blue")
    lo = min(min(cur), min(nxt))
    hi = max(max(cur), max(nxt))
    pad = 0.05 * (hi - lo)
    if pad == 0.0:
        pad = max(0.05 * abs(hi), 0.05)
    lo, hi = lo - pad, hi + pad
    ax.plot([lo, hi], [lo, hi], color="0.6", lw=0.8)
    gaps = [abs(b - a) for a, b in zip(cur, nxt)]
    k = gaps.index(min(gaps))
    fixed = None
    if gaps[k] <= _DIAGONAL_TOL * max(abs(cur[k]), abs(nxt[k]), 1.0):
        fixed = (cur[k], nxt[k])
        ax.plot([cur[k]], [nxt[k]], marker="o", ms=10,
                mfc="none", mec="tab:red", mew=1.4)
        ax.annotate(
            f"fixed point near {cur[k]:.4g}",
            xy=fixed,
            xytext=(8, -14),
            textcoords="offset points",
            color="tab:red",
            fontsize=9,
        )
    ax.set_xlim(lo, hi)
    ax.set_ylim(lo, hi)
    ax.set_aspect("equal")
    ax.set_xlabel("phi(t)")
    ax.set_ylabel("phi(t+1)")
    return len(cur), fixed


def _path_plot(ax, fields, rows) -> tuple[int, tuple[str, ...]]:
    _require(fields, ("t",), "path_plot")
    y_col = next((c for c in ("K", "phi") if c in fields), None)
    if y_col is None:
        raise SchemaMismatch("path_plot needs a K or phi column")
    branches: tuple[str, ...] = ()
    if "branch" in fields:
        names = list(dict.fromkeys(row["branch"] for row in rows))
        for name in names:
            sub = [row for row in rows if row["branch"] == name]
            ax.plot(_floats(sub, "t"), _floats(sub, y_col),
                    label=name, lw=1.2)
        ax.legend()
        branches = tuple(names)
    else:
        ax.plot(_floats(rows, "t"), _floats(rows, y_col),
                lw=1.2, color="tab:blue")
    if y_col == "K":
        ax.set_yscale("log")
    ax.set_xlabel("t")
    ax.set_ylabel(y_col)
    return len(rows), branches


def render(spec: FigureSpec) -> RenderReport:
    """Draw one figure from one CSV and write it to spec.output.

    The image format follows the output extension (anything
    matplotlib's Agg canvas can save; .png and .svg are the intended
    ones). Raises SchemaMismatch when the table lacks the needed
    columns, has no data rows, or holds non-numeric cells; OSError when
    the input cannot be read or the output cannot be written.
    """
    if spec.kind not in KINDS:
        raise ValueError(f"unknown kind {spec.kind!r}; expected one of {KINDS}")
    fields, rows = _read_table(spec.input_csv)
    crossing: Optional[float] = None
    fixed: Optional[tuple[float, float]] = None
    branches: tuple[str, ...] = ()
    fig, ax = plt.subplots(figsize=(6.4, 4.2), dpi=120)
    try:
        if spec.kind == "derivative_curve":
            points, crossing = _derivative_curve(ax, fields, rows)
        elif spec.kind == "map45":
            points, fixed = _map45(ax, fields, rows)
        else:
            points, branches = _path_plot(ax, fields, rows)
        if spec.title:
            ax.set_title(spec.title)
        ax.grid(True, alpha=0.3)
        fig.tight_layout()
        save_kwargs = {}
        if spec.output.lower().endswith(".svg"):
            # strip the embedded date so reruns are byte-identical
            save_kwargs["metadata"] = {"Date": None}
        fig.savefig(spec.output, **save_kwargs)
    finally:
        plt.close(fig)
    return RenderReport(
        output=spec.output,
        points=points,
        crossing=crossing,
        fixed_point=fixed,
        branches=branches,
    )
