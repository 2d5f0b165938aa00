"""Instance files: a JSON object with integer ticks only.

    {
      "top": 10,
      "matrix": [[4, 4, 4, 5], [2, 2, 7, 2], [3, 8, 3, 3], [7, 3, 3, 3]],
      "lower": [2, 3, 2, 4],
      "upper": [7, 9, 6, 5],
      "vector": [5, 6, 6, 5],
      "b": [5, 6, 6, 5]
    }

Only ``top`` and ``matrix`` are required. A missing ``lower`` defaults to
all zeros and a missing ``upper`` to all ``top``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .errors import InstanceError
from .semiring import Box, Matrix, Vector

KNOWN_KEYS = ("top", "matrix", "lower", "upper", "vector", "b")


@dataclass(frozen=True)
class InstanceFile:
    top: int
    matrix: tuple[tuple[int, ...], ...]
    lower: tuple[int, ...] | None = None
    upper: tuple[int, ...] | None = None
    vector: tuple[int, ...] | None = None
    b: tuple[int, ...] | None = None
    source: str = "<memory>"

    @property
    def n(self) -> int:
        return len(self.matrix)

    @property
    def A(self) -> Matrix:
        return Matrix.from_rows(self.matrix, self.top)

    @property
    def has_box(self) -> bool:
        return self.lower is not None or self.upper is not None

    @property
    def box(self) -> Box:
        lo = self.lower if self.lower is not None else (0,) * self.n
        up = self.upper if self.upper is not None else (self.top,) * self.n
        return Box(Vector(lo, self.top), Vector(up, self.top))

    def vec(self, name: str) -> Vector | None:
        v = getattr(self, name)
        return None if v is None else Vector(v, self.top)

    def to_dict(self) -> dict:
        d: dict[str, Any] = {"top": self.top, "matrix": [list(r) for r in self.matrix]}
        for k in ("lower", "upper", "vector", "b"):
            v = getattr(self, k)
            if v is not None:
                d[k] = list(v)
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_dict())


def _line_of(text: str, key: str) -> int | None:
    m = re.search(r'"%s"\s*:' % re.escape(key), text)
    return None if m is None else text.count("\n", 0, m.start()) + 1


def _where(source: str, text: str, key: str) -> str:
    line = _line_of(text, key)
    return f"{source}:{line}" if line else source


def _tick(value: Any, top: int, field: str, fail) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        fail(f"{field}: expected an integer, got {value!r}")
    if not 0 <= value <= top:
        fail(f"{field}: tick {value} out of range [0, {top}]")
    return value


def from_dict(data: Any, text: str = "", source: str = "<memory>") -> InstanceFile:
    def fail_at(key: str):
        def fail(msg: str):
            raise InstanceError(f"{_where(source, text, key)}: {msg}")

        return fail

    if not isinstance(data, dict):
        raise InstanceError(f"{source}: top level must be an object")
    unknown = sorted(set(data) - set(KNOWN_KEYS))
    if unknown:
        fail_at(unknown[0])(f"unknown field {unknown[0]!r}")

    if "top" not in data:
        raise InstanceError(f"{source}: missing field 'top'")
    top = data["top"]
    if isinstance(top, bool) or not isinstance(top, int) or top < 1:
        fail_at("top")(f"top: expected a positive integer, got {top!r}")

    if "matrix" not in data:
        raise InstanceError(f"{source}: missing field 'matrix'")
    fail = fail_at("matrix")
    rows = data["matrix"]
    if not isinstance(rows, list) or not rows:
        fail("matrix: expected a non-empty list of rows")
    n = len(rows)
    matrix = []
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            fail(f"matrix[{i}]: expected a list")
        if len(row) != n:
            fail(f"matrix is not square: row {i} has {len(row)} entries, expected {n}")
        matrix.append(tuple(_tick(v, top, f"matrix[{i}][{j}]", fail) for j, v in enumerate(row)))

    vectors: dict[str, tuple[int, ...] | None] = {}
    for key in ("lower", "upper", "vector", "b"):
        if key not in data or data[key] is None:
            vectors[key] = None
            continue
        fail = fail_at(key)
        v = data[key]
        if not isinstance(v, list):
            fail(f"{key}: expected a list")
        if len(v) != n:
            fail(f"{key}: length {len(v)} does not match matrix size {n}")
        vectors[key] = tuple(_tick(x, top, f"{key}[{j}]", fail) for j, x in enumerate(v))

    lo = vectors["lower"] or (0,) * n
    up = vectors["upper"] or (top,) * n
    for j in range(n):
        if lo[j] > up[j]:
            fail_at("lower")(f"lower[{j}]={lo[j]} exceeds upper[{j}]={up[j]}")
    return InstanceFile(top, tuple(matrix), source=source, **vectors)


def loads(text: str, source: str = "<string>") -> InstanceFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    return from_dict(data, text, source)


def parse_instance(path: str | Path) -> InstanceFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InstanceError(f"{path}: {exc.strerror}") from None
    return loads(text, str(path))
