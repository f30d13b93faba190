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
from __future__ import annotations

import csv
from pathlib import Path
from typing import Union

import numpy as np

from polynorm.approx.level_set import emit_level_set
from polynorm.jsr.certify import JsrCertificate
from polynorm.jsr.family import MatrixFamily
from polynorm.schema.base import Schema


class ContractionFigure(Schema):
    """The unit level set of ``V = f^(1/d)`` and its image under each matrix."""

    level_set: np.ndarray
    images: list[np.ndarray]
    margin: float

    @property
    def contained(self) -> bool:
        return self.margin > 0.0


def emit_contraction_figure(cert: JsrCertificate, family: MatrixFamily, resolution: int = 360) -> ContractionFigure:
    """Points ``p`` with ``V(p) = 1`` and their images ``A_i p``; ``margin = min (1 - V(A_i p))``."""
    f = cert.f
    points = emit_level_set(f, 1.0, resolution)
    images = [points @ a.T for a in family]
    margin = min(float(np.min(1.0 - np.maximum(np.atleast_1d(f(img)), 0.0) ** (1.0 / f.degree))) for img in images)
    return ContractionFigure(level_set=points, images=images, margin=margin)


def write_contraction_figure(figure: ContractionFigure, path: Union[str, Path]) -> None:
    """One row per point: ``curve, x1, x2`` with curve ``level`` or ``A1``, ``A2``, ..."""
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["curve", "x1", "x2"])
        curves = [("level", figure.level_set)] + [(f"A{k + 1}", img) for k, img in enumerate(figure.images)]
        for name, pts in curves:
            for x1, x2 in pts:
                writer.writerow([name, repr(float(x1)), repr(float(x2))])
