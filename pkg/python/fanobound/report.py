"""
Canonical serialization of engine results.

Reports are JSON with sorted keys and two-space indentation; every
rational is written as a "p/q" (or integer) string so nothing passes
through a float. Text output is a flat key: value rendering of the same
tree.
"""
# this_file: python/fanobound/report.py

from __future__ import annotations

import dataclasses
import json
import os
import tempfile
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

from .exact import MultiPoly, TruncSeries
from .quadric import GaussianRational

REPORT_VERSION = "1"


def to_jsonable(value: Any) -> Any:
    """Exact, JSON-ready copy of an engine value."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, GaussianRational):
        return str(value)
    if isinstance(value, TruncSeries):
        return {"order": value.order, "coeffs": [str(c) for c in value.coeffs], "text": str(value)}
    if isinstance(value, MultiPoly):
        return {
            "nvars": value.nvars,
            "terms": [[list(mono), str(coeff)] for mono, coeff in value.items()],
            "text": str(value),
        }
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: to_jsonable(getattr(value, f.name)) for f in dataclasses.fields(value) if f.repr}
    if isinstance(value, dict) or hasattr(value, "items"):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [to_jsonable(v) for v in value]
        return sorted(items, key=str) if isinstance(value, (set, frozenset)) else items
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps_json(payload: Dict) -> str:
    return json.dumps(to_jsonable(payload), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _text_lines(value: Any, prefix: str, out: List[str]) -> None:
    if isinstance(value, dict):
        for key in sorted(value):
            _text_lines(value[key], f"{prefix}.{key}" if prefix else key, out)
    elif isinstance(value, list) and value and any(isinstance(v, (dict, list)) for v in value):
        for i, item in enumerate(value):
            _text_lines(item, f"{prefix}[{i}]", out)
    elif isinstance(value, list):
        out.append(f"{prefix}: {', '.join(str(v) for v in value)}")
    else:
        out.append(f"{prefix}: {value}")


def dumps_text(payload: Dict) -> str:
    lines: List[str] = []
    _text_lines(to_jsonable(payload), "", lines)
    return "\n".join(lines) + "\n"


def render(payload: Dict, fmt: str = "json") -> str:
    if fmt == "json":
        return dumps_json(payload)
    if fmt == "text":
        return dumps_text(payload)
    raise ValueError(f"unknown report format {fmt!r}")


def write_atomic(path: Path, text: str) -> None:
    """Replace `path` with `text` in one step; readers never see a partial file."""
    path = Path(path)
    directory = path.parent if str(path.parent) else Path(".")
    directory.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise


def emit(payload: Dict, fmt: str = "json", output: Optional[Path] = None) -> str:
    """Render the payload and write it to `output`, returning the text either way."""
    text = render(payload, fmt)
    if output is not None:
        write_atomic(output, text)
    return text
