# components/report_export.py
"""Report serialization and catalog summaries."""

import json
import logging
import os
from pathlib import Path

import pandas as pd
import sympy as sp

from utils.scalars import format_scalar, is_zero

logger = logging.getLogger(__name__)

SUMMARY_COLUMNS = [
    "entry",
    "params",
    "structure",
    "field",
    "expected",
    "actual",
    "matched",
    "provenance",
]


def format_vector(v, labels):
    """Coordinate vector as a sum of labels, e.g. "e1 - 2*e3"."""
    parts = []
    for c, label in zip(v, labels):
        if is_zero(c):
            continue
        text = format_scalar(c)
        negative = text.startswith("-") and not any(ch in text[1:] for ch in "+-")
        if negative:
            text = text[1:]
        if text == "1":
            body = label
        elif any(ch in text for ch in "+-"):
            body = f"({text})*{label}"
        else:
            body = f"{text}*{label}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(parts) if parts else "0"


def format_matrix(m):
    m = sp.ImmutableMatrix(m)
    return [[format_scalar(x) for x in m.row(r)] for r in range(m.rows)]


def dumps_report(report):
    """Deterministic JSON text: fixed key order as built, two-space indent."""
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def summarize_catalog(results):
    """One row per compared expectation.

    Args:
        results (list): CatalogResult objects from catalog.run_entry

    Returns:
        DataFrame: Columns SUMMARY_COLUMNS, rows in run order
    """
    rows = []
    for result in results:
        params = ", ".join(f"{k}={v}" for k, v in result.params.items())
        if result.error:
            rows.append({
                "entry": result.name,
                "params": params,
                "structure": "",
                "field": "build",
                "expected": "",
                "actual": result.error,
                "matched": False,
                "provenance": "",
            })
            continue
        for check in result.checks:
            rows.append({
                "entry": result.name,
                "params": params,
                "structure": check.structure,
                "field": check.field,
                "expected": check.expected,
                "actual": check.actual,
                "matched": check.matched,
                "provenance": check.provenance,
            })
    df = pd.DataFrame(rows, columns=SUMMARY_COLUMNS)
    logger.info(f"Catalog summary: {len(df)} checks, {int((~df['matched']).sum()) if len(df) else 0} mismatches")
    return df


def export_summary_csv(df, path):
    """Write the summary table as CSV.

    Returns:
        str: Path written, or None if writing failed
    """
    try:
        file_path = os.path.abspath(path)
        Path(file_path).parent.mkdir(parents=True, exist_ok=True)
        df.to_csv(file_path, index=False)
        logger.info(f"Catalog summary exported: {file_path} ({os.path.getsize(file_path)} bytes)")
        return file_path
    except OSError as e:
        logger.error(f"Could not export catalog summary: {e}")
        return None
