"""Row-oriented result reporting: JSON-lines (canonical), CSV, figures.

Every evaluation row echoes its inputs next to the value, the tail bound,
and truncation metadata so that output files are self-describing and
re-runs are bit-identical.
"""

from __future__ import annotations

import csv
import io
import json
import math

#: fixed CSV column order (JSON is the canonical format)
CSV_COLUMNS = ["op", "s", "t", "n", "m", "y", "z", "sign", "value_re",
               "value_im", "tail_bound", "n_cutoff", "norm_cutoff", "detail"]


def _fmt_complex(v) -> str:
    v = complex(v)
    if v.imag == 0:
        return "%.17g" % v.real
    return "%.17g%+.17gi" % (v.real, v.imag)


def make_row(op: str, value=None, tail_bound=None, truncation=None,
             detail=None, **params) -> dict:
    """One result row: op name, echoed params, value, and metadata."""
    row = {"op": op, "params": {}}
    for key, val in sorted(params.items()):
        if val is None:
            continue
        row["params"][key] = _fmt_complex(val) if isinstance(
            val, (complex, float, int)) and not isinstance(val, bool) else val
    if value is not None:
        value = complex(value)
        row["value"] = {"re": value.real, "im": value.imag}
    if tail_bound is not None:
        row["tail_bound"] = float(tail_bound)
    if truncation is not None:
        row["truncation"] = truncation
    if detail is not None:
        row["detail"] = detail
    return row


def rows_to_json(rows) -> str:
    return "\n".join(json.dumps(r, sort_keys=True, allow_nan=True)
                     for r in rows) + "\n"


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, extrasaction="ignore",
                            lineterminator="\n")
    writer.writeheader()
    for r in rows:
        flat = {"op": r.get("op", "")}
        for key in ("s", "t", "n", "m", "y", "z", "sign"):
            flat[key] = r.get("params", {}).get(key, "")
        value = r.get("value")
        if value is not None:
            flat["value_re"] = "%.17g" % value["re"]
            flat["value_im"] = "%.17g" % value["im"]
        flat["tail_bound"] = ("%.6g" % r["tail_bound"]
                              if "tail_bound" in r else "")
        trunc = r.get("truncation", {})
        flat["n_cutoff"] = trunc.get("n_cutoff", "")
        flat["norm_cutoff"] = trunc.get("norm_cutoff", "")
        detail = r.get("detail")
        flat["detail"] = (json.dumps(detail, sort_keys=True)
                          if isinstance(detail, (dict, list)) else (detail or ""))
        writer.writerow(flat)
    return buf.getvalue()


def write_rows(rows, fmt: str, out_path=None) -> str:
    text = rows_to_json(rows) if fmt == "json" else rows_to_csv(rows)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    return text


def render_residual_figure(names, residuals, tolerances, path, title):
    """Log-scale bar chart of residuals against their tolerances."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(max(6, 0.45 * len(names)), 4.5))
    xs = range(len(names))
    floor = 1e-17
    ax.bar(xs, [max(r, floor) for r in residuals], color="steelblue",
           label="residual")
    ax.plot(xs, [max(t, floor) for t in tolerances], "r_", markersize=14,
            label="tolerance")
    ax.set_yscale("log")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(names, rotation=60, ha="right", fontsize=7)
    ax.set_ylabel("absolute residual")
    ax.set_title(title)
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_curve_figure(x, ys_by_label, path, title, xlabel, ylabel,
                        logy=False):
    """Simple labelled curves to a file (headless backend)."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    for label, ys in ys_by_label.items():
        ax.plot(x, ys, marker=".", label=label)
    if logy:
        ax.set_yscale("log")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
