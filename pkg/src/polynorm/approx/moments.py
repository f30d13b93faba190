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
"""Moments ``m(alpha) = (1 / vol B°) int_{B°} y^alpha dy`` over the polar body of a target norm, and the moment form.

Polytopes are integrated exactly: the polar polytope is split into simplices from its centroid
and each simplex is integrated with a Grundmann-Moller rule of degree ``d + 1``. The Euclidean
ball uses closed-form sphere moments. Every other target falls back to Monte Carlo by rejection
sampling from the bounding box of the polar body.
"""

from __future__ import annotations

import logging
import math
from functools import lru_cache
from typing import Any, Optional

import numpy as np
from pydantic import field_serializer
from scipy.spatial import ConvexHull

from polynorm.approx.target import TargetKind, TargetNorm
from polynorm.common.sampling import sample_sphere
from polynorm.errors import FormError
from polynorm.forms import Form, MultiIndex, ball_moment, monomials, multinomial
from polynorm.schema.base import Schema, StrEnum

logger = logging.getLogger(__name__)

MONTE_CARLO_SAMPLES = 1_000_000
_CHUNK = 100_000
_DUAL_DIRECTIONS = 512


class MomentMethod(StrEnum):
    EXACT_POLYTOPE = "exact_polytope"
    EXACT_BALL = "exact_ball"
    MONTE_CARLO = "monte_carlo"


class MomentTable(Schema):
    n: int
    d: int
    method: MomentMethod
    moments: dict[tuple[int, ...], float]
    std_error: Optional[float] = None
    samples: Optional[int] = None

    @field_serializer("moments")
    def _serialize_moments(self, value: dict[tuple[int, ...], float]) -> Any:
        return {",".join(str(a) for a in alpha): m for alpha, m in value.items()}


def _check_degree(d: int) -> None:
    if d < 2 or d % 2:
        raise FormError(f"the moment form needs an even degree >= 2, got {d}")


@lru_cache(maxsize=None)
def grundmann_moller(dim: int, s: int) -> tuple[np.ndarray, np.ndarray]:
    """Barycentric points and weights (summing to 1) of the degree ``2s + 1`` Grundmann-Moller simplex rule."""
    degree = 2 * s + 1
    points: list[list[float]] = []
    weights: list[float] = []
    for i in range(s + 1):
        denom = degree + dim - 2 * i
        w = (-1) ** i * denom**degree / (math.factorial(i) * math.factorial(degree + dim - i))
        for beta in monomials(dim + 1, s - i):
            points.append([(2 * b + 1) / denom for b in beta])
            weights.append(w)
    wts = np.array(weights)
    return np.array(points), wts / wts.sum()


def _powers(points: np.ndarray, exps: np.ndarray) -> np.ndarray:
    return np.prod(points[:, None, :] ** exps[None, :, :], axis=-1)


def polytope_moments(polar_vertices: np.ndarray, d: int) -> MomentTable:
    """Exact degree-``d`` moments of the uniform measure on ``conv(polar_vertices)``."""
    _check_degree(d)
    verts = np.asarray(polar_vertices, dtype=float)
    n = verts.shape[1]
    hull = ConvexHull(verts)
    center = verts[hull.vertices].mean(axis=0)
    basis = monomials(n, d)
    exps = np.array(basis)
    bary, weights = grundmann_moller(n, d // 2)
    total = np.zeros(len(basis))
    volume = 0.0
    for simplex in hull.simplices:
        corners = np.vstack([verts[simplex], center])
        vol = abs(np.linalg.det(corners[:-1] - corners[-1])) / math.factorial(n)
        if vol == 0.0:
            continue
        pts = bary @ corners
        total += vol * (weights @ _powers(pts, exps))
        volume += vol
    moments = dict(zip(basis, (total / volume).tolist()))
    return MomentTable(n=n, d=d, method=MomentMethod.EXACT_POLYTOPE, moments=moments)


def ball_moments(n: int, d: int) -> MomentTable:
    _check_degree(d)
    moments = {alpha: ball_moment(alpha) for alpha in monomials(n, d)}
    return MomentTable(n=n, d=d, method=MomentMethod.EXACT_BALL, moments=moments)


def _dual_norm(target: TargetNorm, y: np.ndarray, directions: np.ndarray) -> np.ndarray:
    if target.kind == TargetKind.P_NORM and target.p is not None:
        q = math.inf if target.p == 1.0 else (1.0 if math.isinf(target.p) else target.p / (target.p - 1.0))
        return np.linalg.norm(y, ord=q, axis=1)
    # sup of <x, y> over sampled boundary points x / |x|; underestimates the dual norm
    return np.max(y @ directions.T, axis=1)


def monte_carlo_moments(target: TargetNorm, d: int, samples: int = MONTE_CARLO_SAMPLES, seed: int = 0) -> MomentTable:
    """Moments from ``samples`` uniform points of the polar body, with the largest standard error over alpha."""
    _check_degree(d)
    n = target.n
    rng = np.random.default_rng(seed)
    half_widths = np.atleast_1d(target(np.eye(n)))
    sphere = sample_sphere(n, _DUAL_DIRECTIONS, seed)
    directions = sphere / np.atleast_1d(target(sphere))[:, None]
    basis = monomials(n, d)
    exps = np.array(basis)
    sums = np.zeros(len(basis))
    sq_sums = np.zeros(len(basis))
    accepted = 0
    while accepted < samples:
        y = rng.uniform(-half_widths, half_widths, size=(_CHUNK, n))
        y = y[_dual_norm(target, y, directions) <= 1.0][: samples - accepted]
        vals = _powers(y, exps)
        sums += vals.sum(axis=0)
        sq_sums += (vals**2).sum(axis=0)
        accepted += y.shape[0]
    mean = sums / accepted
    var = np.maximum(sq_sums / accepted - mean**2, 0.0)
    std_error = float(np.max(np.sqrt(var / accepted)))
    logger.info("Monte Carlo moments: %d samples, max standard error %.2e", accepted, std_error)
    return MomentTable(
        n=n,
        d=d,
        method=MomentMethod.MONTE_CARLO,
        moments=dict(zip(basis, mean.tolist())),
        std_error=std_error,
        samples=accepted,
    )


def moment_table(target: TargetNorm, d: int, samples: int = MONTE_CARLO_SAMPLES, seed: int = 0) -> MomentTable:
    polytope = target.as_polytope()
    if polytope is not None:
        assert polytope.polar_vertices is not None
        return polytope_moments(polytope.polar_vertices, d)
    if target.kind == TargetKind.P_NORM and target.p == 2.0:
        return ball_moments(target.n, d)
    return monte_carlo_moments(target, d, samples, seed)


def form_from_moments(table: MomentTable) -> Form:
    """``f_d(x) = sum_alpha (d choose alpha) m(alpha) x^alpha``, the average of ``<x, y>^d`` over the polar body."""
    terms: dict[MultiIndex, float] = {alpha: multinomial(alpha) * m for alpha, m in table.moments.items()}
    return Form(table.n, table.d, terms)


def moment_form(target: TargetNorm, d: int, samples: int = MONTE_CARLO_SAMPLES, seed: int = 0) -> Form:
    return form_from_moments(moment_table(target, d, samples, seed))


def approx_factor(n: int, d: int) -> float:
    """Lower sandwich constant: ``(d / (n + d)) (n / (n + d))^(n / d) |x| <= f_d(x)^(1/d) <= |x|``."""
    return d / (n + d) * (n / (n + d)) ** (n / d)
