"""CSV trace files with a JSON summary alongside."""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path

CSV_HEADER = ("iter", "residual_norm", "monitor_w", "restarted", "elapsed_ms")


def _g17(x):
    return "" if x is None else format(float(x), ".17g")


def trace_rows(trace, timing=True):
    for rec in trace.records:
        yield (str(rec.iter), _g17(rec.residual_norm), _g17(rec.monitor_w),
               "1" if rec.restarted else "0",
               format(rec.elapsed * 1e3, ".3f") if timing else "")


def trace_summary(trace, tol, config=None, extra=None):
    """Convergence verdict plus a config echo, ready for ``json.dump``."""
    r = trace.residual_norms
    rel = float(r[-1] / r[0]) if len(r) and r[0] > 0 else 0.0
    its = trace.iterations_to(tol)
    out = {
        "status": trace.status,
        "converged": bool(trace.converged),
        "iterations": its if its is not None else "F",
        "records": len(trace.records),
        "final_relative_residual": rel if math.isfinite(rel) else str(rel),
        "restarts": trace.restarts,
        "message": trace.message,
    }
    if extra:
        out.update(extra)
    if config is not None:
        out["config"] = config
    return out


def emit_trace(trace, path, tol=None, config=None, timing=True, extra=None):
    """Write ``path`` (CSV) and ``path`` with a ``.json`` suffix.

    ``elapsed_ms`` is left empty when ``timing`` is False, which makes the
    output byte-identical across runs.  Returns the two paths.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        writer.writerows(trace_rows(trace, timing))
    json_path = path.with_suffix(".json")
    summary = trace_summary(trace, 1e-8 if tol is None else tol, config, extra)
    with open(json_path, "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path, json_path


def read_trace_csv(path):
    """Parse a trace CSV back into a list of dicts (missing values are None)."""
    rows = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            rows.append({
                "iter": int(row["iter"]),
                "residual_norm": float(row["residual_norm"]),
                "monitor_w": float(row["monitor_w"]) if row["monitor_w"] else None,
                "restarted": row["restarted"] == "1",
                "elapsed_ms": float(row["elapsed_ms"]) if row["elapsed_ms"] else None,
            })
    return rows
