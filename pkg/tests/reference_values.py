"""Published carbon price ratios, transcribed by hand.

Keys are ``(eta, panel, row_value, col_value)``. Static rows are the cost
ratio (panel A) or endowment ratio (panel B); dynamic rows are the South's
annual population growth (panel A) or per-capita growth (panel B). Columns
are the South/North marginal damage ratio.
"""

_T1_A = {0.5: (1.00, 1.21, 1.40, 1.00, 1.29, 1.57), 1.0: (0.83, 1.00, 1.16, 0.77, 1.00, 1.22),
         2.0: (0.71, 0.86, 1.00, 0.64, 0.82, 1.00)}
_T1_B = {1.0: (1.00, 1.00, 1.00, 1.00, 1.00, 1.00), 3.2: (0.83, 1.00, 1.16, 0.77, 1.00, 1.22),
         6.4: (0.74, 1.00, 1.31, 0.67, 1.00, 1.39)}
_T2_A = {0.00: (1.00, 1.16, 1.00, 1.22), 0.01: (1.12, 1.26, 1.16, 1.34), 0.02: (1.22, 1.33, 1.29, 1.44)}
_T2_B = {0.02: (1.22, 1.33, 1.29, 1.44), 0.03: (1.22, 1.27, 1.23, 1.30), 0.04: (1.22, 1.23, 1.16, 1.18)}


def _expand(panels, cols):
    out = {}
    for panel, rows in panels.items():
        for row, values in rows.items():
            for (eta, col), v in zip(cols, values):
                out[(eta, panel, row, col)] = v
    return out


TABLE1 = _expand({"A": _T1_A, "B": _T1_B}, [(e, d) for e in (1.0, 1.5) for d in (0.5, 1.0, 2.0)])
TABLE2 = _expand({"A": _T2_A, "B": _T2_B}, [(e, d) for e in (1.0, 1.5) for d in (1.0, 2.0)])
