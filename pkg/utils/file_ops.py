# utils/file_ops.py
"""Reading input documents and storing JSON reports."""

import json
import logging
import os
import shutil
import traceback
from pathlib import Path

import sympy as sp

from utils.complex_structures import check_almost_complex, complex_structure
from utils.exceptions import CkitError, ScalarError, ValidationError
from utils.hypercomplex import HypercomplexTriple
from utils.lattices import certificate_from_json
from utils.lie_algebra import algebra_from_json
from utils.scalars import parse_scalar

logger = logging.getLogger(__name__)


def save_report(report_data, path):
    """Write a report as JSON, keeping the previous version as <file>.backup.

    The file is read back and compared with report_data before success is reported.

    Args:
        report_data (dict): Report document
        path (str): Output path; missing parent directories are created

    Returns:
        str: Path written, or None if saving failed
    """
    target = Path(os.path.abspath(path))
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        if target.exists():
            try:
                shutil.copyfile(target, f"{target}.backup")
            except OSError as e:
                logger.warning(f"No backup of {target}: {e}")

        text = json.dumps(report_data, indent=2, ensure_ascii=False) + "\n"
        target.write_text(text, encoding="utf-8")
        if json.loads(target.read_text(encoding="utf-8")) != report_data:
            logger.error(f"Read-back of {target} differs from the report")
            return None

        logger.info(f"Report written to {target} ({target.stat().st_size} bytes)")
        return str(target)

    except PermissionError as e:
        logger.error(f"No permission to write {target}: {e}")
        return None
    except OSError as e:
        logger.error(f"Could not write {target}: {e}")
        return None
    except (TypeError, ValueError) as e:
        logger.error(f"Report for {target} is not JSON serializable: {e}")
        logger.error(traceback.format_exc())
        return None


def read_text(path):
    """Read an input file.

    Raises:
        ValidationError: If the file is missing or unreadable
    """
    if not os.path.exists(path):
        raise ValidationError(f"File not found: {path}")
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return f.read()
    except OSError as e:
        raise ValidationError(f"Cannot read {path}: {e}") from e


def load_json_document(path):
    """Load a JSON file.

    Raises:
        ValidationError: On a missing file or invalid JSON
    """
    text = read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"Invalid JSON in {path}: {e}") from e


def is_json_path(path):
    return str(path).lower().endswith(".json")


def load_algebra_document(path, params=None):
    """Algebra from the JSON bracket format."""
    return algebra_from_json(load_json_document(path), params)


def _matrix(rows, params):
    try:
        return sp.ImmutableMatrix([[parse_scalar(str(x), params) for x in row] for row in rows])
    except (TypeError, ScalarError) as e:
        raise ValidationError(f"Invalid matrix entries: {e}") from e


def structure_from_json(data, dim, params=None):
    """J from {"J": [[...]]} (matrix, columns J e_j) or {"images": {"1": {"2": "1"}}} (1-based).

    Raises:
        ValidationError: If the document does not describe J
    """
    if "J" in data:
        J = _matrix(data["J"], params)
        if J.shape != (dim, dim):
            raise ValidationError(f"J has shape {J.shape}, expected {(dim, dim)}")
        return check_almost_complex(J)
    if "images" in data:
        try:
            images = {
                int(j) - 1: {int(k) - 1: parse_scalar(str(c), params) for k, c in image.items()}
                for j, image in data["images"].items()
            }
        except (TypeError, ValueError, AttributeError, ScalarError) as e:
            raise ValidationError(f"Invalid J images: {e}") from e
        return complex_structure(dim, images)
    raise ValidationError("Complex structure document needs 'J' or 'images'")


def load_structure_file(path, dim, params=None):
    return structure_from_json(load_json_document(path), dim, params)


def load_triple_file(path, dim, params=None):
    """Triple document {"J1": [[...]], "J2": ..., "J3": ...}."""
    data = load_json_document(path)
    try:
        return HypercomplexTriple(*(_matrix(data[f"J{idx}"], params) for idx in (1, 2, 3)))
    except KeyError as e:
        raise ValidationError(f"Triple document is missing {e}") from e


def load_certificate_file(path):
    data = load_json_document(path)
    try:
        return certificate_from_json(data)
    except CkitError:
        raise
    except Exception as e:
        logger.error(traceback.format_exc())
        raise ValidationError(f"Invalid certificate in {path}: {e}") from e
