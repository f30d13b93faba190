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
"""Norms to approximate: p-norms, gauge norms of symmetric polytopes, and black-box evaluators."""

from __future__ import annotations

import itertools
import json
import logging
import math
from pathlib import Path
from typing import Callable, Optional, Union

import numpy as np
from numpy.typing import ArrayLike
from pydantic import ValidationError
from scipy.spatial import ConvexHull, QhullError

from polynorm.errors import GeometryError, InputFormatError
from polynorm.schema.base import StrEnum
from polynorm.schema.forms import PolytopeFile

logger = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-9

NormEvaluator = Callable[[np.ndarray], np.ndarray]


class TargetKind(StrEnum):
    P_NORM = "p_norm"
    POLYTOPE = "polytope"
    CUSTOM = "custom"


def _dedupe(points: np.ndarray, decimals: int = 9) -> np.ndarray:
    _, idx = np.unique(np.round(points, decimals), axis=0, return_index=True)
    return points[np.sort(idx)]


def polar_polytope(vertices: ArrayLike) -> np.ndarray:
    """Vertices of ``B° = {y : <x, y> <= 1 for x in B}`` for the polytope ``B = conv(vertices)``.

    Every facet ``a.x <= b`` of ``B`` (``b > 0`` since the origin is interior) gives the polar vertex ``a / b``.
    """
    pts = np.asarray(vertices, dtype=float)
    if pts.ndim != 2 or pts.shape[0] <= pts.shape[1]:
        raise GeometryError(f"{pts.shape[0] if pts.ndim == 2 else 0} points cannot span a full-dimensional polytope")
    try:
        hull = ConvexHull(pts)
    except QhullError as e:
        raise GeometryError(f"degenerate polytope: {str(e).splitlines()[0]}") from e
    normals, offsets = hull.equations[:, :-1], -hull.equations[:, -1]
    if np.any(offsets <= SYMMETRY_TOL):
        raise GeometryError("the origin is not in the interior of the polytope")
    return _dedupe(normals / offsets[:, None])


def _check_symmetric(vertices: np.ndarray) -> None:
    for v in vertices:
        if np.min(np.linalg.norm(vertices + v, axis=1)) > SYMMETRY_TOL * max(1.0, float(np.linalg.norm(v))):
            raise GeometryError(f"vertex {v.tolist()} has no opposite vertex; the polytope must be origin-symmetric")


class TargetNorm:
    """A norm on R^n that can be evaluated in batches of shape ``(N, n)``."""

    def __init__(
        self,
        kind: TargetKind,
        n: int,
        p: Optional[float] = None,
        vertices: Optional[np.ndarray] = None,
        evaluator: Optional[NormEvaluator] = None,
        name: str = "",
    ):
        self.kind = kind
        self.n = n
        self.p = p
        self.vertices = vertices
        self.evaluator = evaluator
        self.name = name or str(kind)
        self.polar_vertices: Optional[np.ndarray] = None
        if kind == TargetKind.POLYTOPE:
            assert vertices is not None
            self.polar_vertices = polar_polytope(vertices)

    @classmethod
    def p_norm(cls, n: int, p: float) -> TargetNorm:
        if not p >= 1.0:
            raise ValueError(f"p must be >= 1, got {p}")
        return cls(TargetKind.P_NORM, n, p=p, name=f"p={p:g}")

    @classmethod
    def polytope(cls, vertices: ArrayLike, name: str = "") -> TargetNorm:
        """The gauge norm whose unit ball is ``conv(vertices)``."""
        pts = np.asarray(vertices, dtype=float)
        _check_symmetric(pts)
        return cls(TargetKind.POLYTOPE, pts.shape[1], vertices=pts, name=name or "polytope")

    @classmethod
    def custom(cls, n: int, evaluator: NormEvaluator, name: str = "custom") -> TargetNorm:
        return cls(TargetKind.CUSTOM, n, evaluator=evaluator, name=name)

    @classmethod
    def parse(cls, text: str, n: Optional[int] = None) -> TargetNorm:
        """Parses ``p:<p>`` (needs ``n``), ``polytope:<vertices.json>`` or ``octagon:<seed>``."""
        kind, _, arg = text.partition(":")
        if kind == "p":
            if n is None:
                raise ValueError("a p-norm target needs the dimension")
            try:
                p = math.inf if arg in ("inf", "infinity") else float(arg)
            except ValueError as e:
                raise ValueError(f"invalid p in target {text!r}") from e
            return cls.p_norm(n, p)
        if kind == "polytope":
            return read_polytope(Path(arg))
        if kind == "octagon":
            return random_octagon(int(arg or 0))
        raise ValueError(f"unknown target {text!r}; expected p:<p>, polytope:<file> or octagon:<seed>")

    def __call__(self, x: ArrayLike) -> Union[float, np.ndarray]:
        pts = np.asarray(x, dtype=float)
        batch = np.atleast_2d(pts)
        if self.kind == TargetKind.P_NORM:
            assert self.p is not None
            values = np.linalg.norm(batch, ord=self.p, axis=1)
        elif self.kind == TargetKind.POLYTOPE:
            assert self.polar_vertices is not None
            values = np.max(batch @ self.polar_vertices.T, axis=1)
        else:
            assert self.evaluator is not None
            values = np.asarray(self.evaluator(batch), dtype=float)
        return float(values[0]) if pts.ndim == 1 else values

    def as_polytope(self) -> Optional[TargetNorm]:
        """The 1- and infinity-norms as polytope gauges; ``None`` for every other target."""
        if self.kind == TargetKind.POLYTOPE:
            return self
        if self.kind != TargetKind.P_NORM:
            return None
        if self.p == 1.0:
            eye = np.eye(self.n)
            return TargetNorm.polytope(np.concatenate([eye, -eye]), name=self.name)
        if self.p == math.inf:
            cube = np.array(list(itertools.product((-1.0, 1.0), repeat=self.n)))
            return TargetNorm.polytope(cube, name=self.name)
        return None

    def __repr__(self) -> str:
        return f"TargetNorm({self.name}, n={self.n})"


def read_polytope(path: Path) -> TargetNorm:
    try:
        data = json.loads(path.read_text())
    except OSError as e:
        raise InputFormatError(str(path), f"cannot read file: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise InputFormatError(str(path), f"invalid JSON ({e.msg})", line=e.lineno) from e
    try:
        record = PolytopeFile.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        raise InputFormatError(str(path), first["msg"], field=".".join(str(p) for p in first["loc"])) from e
    return TargetNorm.polytope(record.vertices, name=record.name or path.stem)


def random_octagon(seed: int = 0) -> TargetNorm:
    """A random origin-symmetric octagon: four angles on the upper half circle, radii in ``[0.6, 1.4]``, mirrored."""
    rng = np.random.default_rng(seed)
    angles = np.sort(rng.uniform(0.0, math.pi, size=4))
    radii = rng.uniform(0.6, 1.4, size=4)
    half = np.stack([radii * np.cos(angles), radii * np.sin(angles)], axis=1)
    hull_pts = np.concatenate([half, -half])
    try:
        hull = ConvexHull(hull_pts)
    except QhullError as e:
        raise GeometryError("degenerate octagon") from e
    return TargetNorm.polytope(hull_pts[hull.vertices], name=f"octagon:{seed}")
