"""
Report Persistence
------------------
Deterministic JSON and CSV output. Data files never carry timestamps;
the version and generation time live in a separate metadata field.
"""

import csv
import json
import logging
import os
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any, Dict, Iterable, Optional, Sequence

from pydantic import BaseModel

from . import __version__
from .cyclotomic import CycNum, embed

logger = logging.getLogger(__name__)


def encode_rational(q: Fraction) -> Dict[str, str]:
    return {"num": str(q.numerator), "den": str(q.denominator)}


def encode_cycnum(x: CycNum, digits: int = 30) -> Dict[str, Any]:
    z = embed(x, digits)
    return {
        "order": x.order,
        "basis": [encode_rational(c) for c in x.coeffs],
        "approx": [z.real, z.imag],
    }


def to_jsonable(value: Any) -> Any:
    """Recursively convert models, rationals and cyclotomic values to JSON types."""
    if isinstance(value, BaseModel):
        # field by field, so Fraction and CycNum values reach the encoders below
        return {
            (field.alias or name): to_jsonable(getattr(value, name))
            for name, field in type(value).model_fields.items()
        }
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return encode_rational(value)
    if isinstance(value, CycNum):
        return encode_cycnum(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, int) and abs(value) >= 2 ** 53:
        return str(value)
    return value


class ReportWriter:
    """
    Writes report files under one output directory.
    """

    def __init__(self, output_dir: str = "./reports"):
        """
        Initialize report writer.

        Args:
            output_dir: Directory for relative file names, created on first write
        """
        self.output_dir = output_dir

    def _path(self, filename: str) -> str:
        return filename if os.path.isabs(filename) else os.path.join(self.output_dir, filename)

    def _target(self, filename: str) -> str:
        path = self._path(filename)
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        return path

    @staticmethod
    def metadata(command: Optional[str] = None) -> Dict[str, str]:
        meta = {"version": __version__, "generatedAt": datetime.now(timezone.utc).isoformat()}
        if command:
            meta["command"] = command
        return meta

    def save_json(self, filename: str, data: Any, command: Optional[str] = None) -> str:
        """
        Save data as {"data": ..., "metadata": ...} with sorted keys.

        Returns:
            Path written
        """
        path = self._target(filename)
        payload = {"data": to_jsonable(data), "metadata": self.metadata(command)}
        with open(path, "w", encoding="utf-8") as f:
            json.dump(payload, f, indent=2, sort_keys=True)
            f.write("\n")
        logger.info("wrote %s", path)
        return path

    def load_json(self, filename: str) -> Optional[Dict]:
        """Load a saved report, or None when it does not exist or is unreadable."""
        path = self._path(filename)
        if not os.path.exists(path):
            return None
        try:
            with open(path, "r", encoding="utf-8") as f:
                return json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            logger.error("error loading %s: %s", path, e)
            return None

    def save_csv(self, filename: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
        path = self._target(filename)
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([str(v) for v in row])
        logger.info("wrote %s", path)
        return path
