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
"""
Collects the values of a run report and writes them once as JSON.

Typical use:

    collector = ReportCollector(output_path=Path("report.json"))
    collector.record("verdict", "certified")
    with collector.timed("solve"):
        ...
    collector.finalize()

Values are written with sorted keys; everything time-dependent lives under the single
``timings`` key so that identical runs produce identical reports apart from that key.
"""

__all__ = [
    "ReportCollector",
    "TIMINGS_KEY",
]


import json
import logging
import math
import os
import tempfile
import time
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from threading import Lock
from typing import Any, Callable, Optional

from pydantic import BaseModel

logger = logging.getLogger(__name__)

TIMINGS_KEY = "timings"


def _jsonable(value: Any) -> Any:
    if isinstance(value, BaseModel):
        return _jsonable(value.model_dump(mode="json"))
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if hasattr(value, "tolist"):
        return _jsonable(value.tolist())
    return value


class ReportCollector:
    """
    Collects report values by name and writes them once.

    - Atomic file write (temp file + replace).
    - Optional filtering subset on finalize.
    - Timings are kept apart from the other values.

    Thread-safety: record() and timed() are lock-protected.
    """

    def __init__(self, output_path: Optional[Path] = None, atomic: bool = True):
        """
        :param output_path: Path to write the report; ``None`` writes to stdout.
        :param atomic: Use atomic file write (temp file + replace).
        """
        self._values: dict[str, Any] = {}
        self._timings: dict[str, float] = {}
        self._lock = Lock()
        self.output_path = Path(output_path) if output_path is not None else None
        self.atomic = atomic
        self._finalized = False

    def record(self, name: str, value: Any) -> Any:
        with self._lock:
            self._values[name] = _jsonable(value)
        return value

    def update(self, values: dict[str, Any]) -> None:
        for name, value in values.items():
            self.record(name, value)

    @contextmanager
    def timed(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            with self._lock:
                self._timings[name] = self._timings.get(name, 0.0) + time.perf_counter() - start

    @property
    def values(self) -> dict[str, Any]:
        with self._lock:
            return dict(self._values)

    def render(self, subset: Optional[list[str]] = None) -> str:
        with self._lock:
            data = dict(self._values)
            if subset:
                data = {k: v for k, v in data.items() if k in set(subset)}
            data[TIMINGS_KEY] = {k: round(v, 6) for k, v in self._timings.items()}
        return json.dumps(data, indent=2, sort_keys=True, default=str) + "\n"

    def finalize(
        self,
        subset: Optional[list[str]] = None,
        on_written: Optional[Callable[[Path], None]] = None,
    ) -> str:
        """
        Write the collected values once and return the rendered JSON.
        subset: only write these keys (timings are always written).
        on_written: callback invoked with final path after write.
        """
        text = self.render(subset)
        if self._finalized:
            return text
        self._finalized = True
        if self.output_path is None:
            return text
        self._write(text)
        if on_written:
            on_written(self.output_path)
        return text

    def _write(self, text: str) -> None:
        assert self.output_path is not None
        self.output_path.parent.mkdir(parents=True, exist_ok=True)
        if not self.atomic:
            self.output_path.write_text(text, encoding="utf-8")
            return
        fd, tmp_name = tempfile.mkstemp(prefix="polynorm_report_", suffix=".json", dir=str(self.output_path.parent))
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as f:
                f.write(text)
            Path(tmp_name).replace(self.output_path)
        except Exception:
            # Best effort cleanup; ignore secondary errors.
            try:
                if Path(tmp_name).exists():
                    Path(tmp_name).unlink()
            finally:
                raise
        logger.info("report written to %s", self.output_path)
