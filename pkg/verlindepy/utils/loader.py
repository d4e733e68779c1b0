# verlindepy/utils/loader.py
"""
Readers for saved output records.
"""

import csv
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Mapping, Union

from ..core.cyclotomic import CycloElem
from .saver import OutputRecord


def load_record(path: Union[str, Path]) -> OutputRecord:
    """
    Load an OutputRecord from a JSON file.

    Args:
        path: Path to the .json file (can omit extension).
    """
    path = Path(path)
    if path.suffix == "":
        path = path.with_suffix(".json")
    if not path.exists():
        raise FileNotFoundError(f"No JSON file found at {path}")
    with open(path, "r", encoding="utf-8") as f:
        data = json.load(f)
    return record_from_dict(data)


def record_from_dict(data: Mapping[str, Any]) -> OutputRecord:
    fields = OutputRecord.__dataclass_fields__.keys()
    missing = {"command", "inputs"} - set(data)
    if missing:
        raise ValueError(f"Record is missing {sorted(missing)}")
    return OutputRecord(**{key: val for key, val in data.items() if key in fields})


def parse_exact(text: str) -> Fraction:
    """Parse an exact value written as 'p' or 'p/q'."""
    return Fraction(str(text))


def parse_cyclo(data: Mapping[str, Any]) -> CycloElem:
    return CycloElem.from_dict(data)


def load_table_csv(path: Union[str, Path]) -> List[Dict[str, str]]:
    with open(Path(path), "r", encoding="utf-8", newline="") as f:
        return list(csv.DictReader(f))
