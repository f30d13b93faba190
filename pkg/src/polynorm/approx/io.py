# Copyright 2026 The polynorm Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#   http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""CSV point clouds: samples with a target value in the last column, and emitted level-set points."""

from __future__ import annotations

import csv
import math
from collections.abc import Sequence
from pathlib import Path
from typing import Optional, Union

import numpy as np

from polynorm.errors import InputFormatError


def read_samples(path: Union[str, Path]) -> tuple[np.ndarray, np.ndarray]:
    """Reads ``x_1, ..., x_n, value`` rows; blank lines and lines starting with ``#`` are skipped."""
    rows: list[list[float]] = []
    width: Optional[int] = None
    try:
        with open(path, newline="") as f:
            for lineno, record in enumerate(csv.reader(f), start=1):
                if not record or not "".join(record).strip() or record[0].lstrip().startswith("#"):
                    continue
                if width is None:
                    width = len(record)
                    if width < 2:
                        raise InputFormatError(str(path), "need at least one coordinate and a value", line=lineno)
                if len(record) != width:
                    raise InputFormatError(str(path), f"expected {width} columns, got {len(record)}", line=lineno)
                values = []
                for column, cell in enumerate(record, start=1):
                    try:
                        value = float(cell)
                    except ValueError as e:
                        message = f"not a number: {cell.strip()!r}"
                        raise InputFormatError(str(path), message, line=lineno, field=f"column {column}") from e
                    if not math.isfinite(value):
                        raise InputFormatError(str(path), "value is not finite", line=lineno, field=f"column {column}")
                    values.append(value)
                rows.append(values)
    except OSError as e:
        raise InputFormatError(str(path), f"cannot read file: {e.strerror}") from e
    if not rows:
        raise InputFormatError(str(path), "no samples")
    data = np.array(rows)
    return data[:, :-1], data[:, -1]


def write_points(path: Union[str, Path], points: np.ndarray, header: Optional[Sequence[str]] = None) -> None:
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", newline="") as f:
        writer = csv.writer(f)
        if header is not None:
            writer.writerow(header)
        for row in np.atleast_2d(points):
            writer.writerow([repr(float(v)) for v in row])
