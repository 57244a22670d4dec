"""Grids of approximate utilitarian/Negishi price ratios.

Each table is a list of :class:`Cell` records that can be written as CSV or
laid out as panels. Values are rounded half away from zero to two decimals.
"""

from __future__ import annotations

import csv
import io
from dataclasses import asdict, dataclass
from decimal import ROUND_HALF_UP, Decimal

from .dynamic import ratio_approx_dynamic
from .static import ratio_approx_static

L_RATIO_SN = 3.7
W_RATIO_NS = 3.2
ETAS = (1.0, 1.5)
HORIZON_YEARS = 50.0


@dataclass(frozen=True)
class Cell:
    table: str
    eta: float
    panel: str
    row_label: str
    row_value: float
    col_label: str
    col_value: float
    value: float

    @property
    def rounded(self) -> float:
        return round_half_away(self.value)


def round_half_away(x: float, places: int = 2) -> float:
    q = Decimal(1).scaleb(-places)
    d = Decimal(repr(x)).quantize(q, rounding=ROUND_HALF_UP)
    return float(d)


def table1_cells(l_ratio=L_RATIO_SN, w_ratio_ns=W_RATIO_NS, etas=ETAS) -> list[Cell]:
    """Static ratios.

    Panel A varies the cost curvature ratio ``c''_N / c''_S`` at the default
    endowment gap; panel B varies ``w_N / w_S`` at equal cost curvature.
    Columns are the damage ratio ``d'_S / d'_N``.
    """
    cells = []
    d_ratios = (0.5, 1.0, 2.0)
    for eta in etas:
        for c in (0.5, 1.0, 2.0):
            for d in d_ratios:
                v = ratio_approx_static(l_ratio, 1.0 / w_ratio_ns, d, c, eta)
                cells.append(Cell("table1", eta, "A", "c_ratio_ns", c, "d_ratio_sn", d, v))
        for w in (1.0, w_ratio_ns, 2.0 * w_ratio_ns):
            for d in d_ratios:
                v = ratio_approx_static(l_ratio, 1.0 / w, d, 1.0, eta)
                cells.append(Cell("table1", eta, "B", "w_ratio_ns", w, "d_ratio_sn", d, v))
    return cells


def table2_cells(l_ratio=L_RATIO_SN, w_ratio_ns=W_RATIO_NS, years=HORIZON_YEARS, etas=ETAS) -> list[Cell]:
    """Dynamic ratios over a ``years`` horizon.

    Panel A varies South's annual population growth with North's at zero and
    equal per-capita growth; panel B fixes South population growth at 2% and
    North per-capita growth at 2% and varies South per-capita growth.
    Columns are the period-2 damage ratio ``d'_S2 / d'_N2``.
    """
    cells = []
    d_ratios = (1.0, 2.0)
    w = 1.0 / w_ratio_ns
    for eta in etas:
        for gls in (0.0, 0.01, 0.02):
            for d in d_ratios:
                v = ratio_approx_dynamic(l_ratio, w, d, 1.0, gls, 0.0, 0.02, 0.02, years, eta)
                cells.append(Cell("table2", eta, "A", "gL_s", gls, "d_ratio_sn", d, v))
        for gws in (0.02, 0.03, 0.04):
            for d in d_ratios:
                v = ratio_approx_dynamic(l_ratio, w, d, 1.0, 0.02, 0.0, gws, 0.02, years, eta)
                cells.append(Cell("table2", eta, "B", "gw_s", gws, "d_ratio_sn", d, v))
    return cells


CSV_COLUMNS = ["table", "eta", "panel", "row_label", "row_value", "col_label", "col_value", "value", "rounded"]


def cells_to_csv(cells) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for c in cells:
        row = asdict(c)
        row["value"] = f"{c.value:.6f}"
        row["rounded"] = f"{c.rounded:.2f}"
        writer.writerow(row)
    return buf.getvalue()


def format_panels(cells) -> str:
    """Human-readable layout: one block per (eta, panel)."""
    lines = []
    blocks = {}
    for c in cells:
        blocks.setdefault((c.eta, c.panel), []).append(c)
    for (eta, panel), group in blocks.items():
        cols = sorted({c.col_value for c in group})
        rows = list(dict.fromkeys(c.row_value for c in group))
        head = group[0]
        lines.append(f"eta={eta:g}  panel {panel}  rows: {head.row_label}  columns: {head.col_label}")
        lines.append("          " + "".join(f"{v:>8g}" for v in cols))
        for r in rows:
            vals = {c.col_value: c.rounded for c in group if c.row_value == r}
            lines.append(f"{r:>10g}" + "".join(f"{vals[v]:>8.2f}" for v in cols))
        lines.append("")
    return "\n".join(lines)
