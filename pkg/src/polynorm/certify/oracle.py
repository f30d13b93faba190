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
"""Sampling refutations: points where a form fails positivity, midpoint convexity or Hessian definiteness."""

from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from polynorm.certify.extrema import DEFAULT_STEPS, refine
from polynorm.common.sampling import axis_points, sobol_bisphere, sobol_sphere
from polynorm.forms import Form, hessian_biform
from polynorm.schema.norms import Witness, WitnessKind

logger = logging.getLogger(__name__)

ORACLE_SAMPLES = 10_000
WITNESS_TOL = 1e-10
_REFINED = 64
_SEGMENT_STEPS = (0.5, 0.1, 0.01, 1e-3)


def sample_positivity(
    f: Form, samples: int = ORACLE_SAMPLES, seed: int = 0, steps: int = DEFAULT_STEPS
) -> Optional[Witness]:
    """A unit ``x`` with ``f(x) <= 1e-10``, searched over axis points, Sobol points and refined minimizers."""
    points = np.concatenate([axis_points(f.n_vars), sobol_sphere(f.n_vars, samples, seed)])
    values = np.atleast_1d(f(points))
    best = np.argsort(values, kind="stable")[:_REFINED]
    refined, refined_values = refine(f, points[best], [slice(0, f.n_vars)], steps)
    candidates = np.concatenate([points, refined])
    all_values = np.concatenate([values, refined_values])
    k = int(np.argmin(all_values))
    if all_values[k] > WITNESS_TOL:
        return None
    witness = Witness(kind=WitnessKind.POSITIVITY, x=candidates[k].tolist(), value=float(all_values[k]))
    logger.warning("positivity fails at x=%s (f = %.3e)", np.round(candidates[k], 6).tolist(), witness.value)
    return witness


def _midpoint_gap(f: Form, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.atleast_1d(f(0.5 * (a + b))) - 0.5 * (np.atleast_1d(f(a)) + np.atleast_1d(f(b)))


def sample_hessian(
    f: Form, samples: int = ORACLE_SAMPLES, seed: int = 0, steps: int = DEFAULT_STEPS
) -> Optional[Witness]:
    """Unit ``x, y`` with ``y^T H_f(x) y <= 1e-10``. Axis pairs ``(e_i, e_j)`` are tried first."""
    n = f.n_vars
    stacked = hessian_biform(f).stack()
    axis_pairs = np.array([np.concatenate([ex, ey]) for ex in np.eye(n) for ey in np.eye(n)])
    values = np.atleast_1d(stacked(axis_pairs))
    k = int(np.argmin(values))
    if values[k] > WITNESS_TOL:
        xs, ys = sobol_bisphere(n, n, samples, seed)
        points = np.hstack([xs, ys])
        values = np.atleast_1d(stacked(points))
        best = np.argsort(values, kind="stable")[:_REFINED]
        refined, refined_values = refine(stacked, points[best], [slice(0, n), slice(n, 2 * n)], steps)
        points = np.concatenate([points, refined])
        values = np.concatenate([values, refined_values])
        k = int(np.argmin(values))
        if values[k] > WITNESS_TOL:
            return None
    else:
        points = axis_pairs
    witness = Witness(
        kind=WitnessKind.HESSIAN, x=points[k, :n].tolist(), y=points[k, n:].tolist(), value=float(values[k])
    )
    logger.warning("Hessian is not positive definite at x=%s, y=%s", witness.x, witness.y)
    return witness


def sample_convexity(
    f: Form, samples: int = ORACLE_SAMPLES, seed: int = 0, steps: int = DEFAULT_STEPS
) -> Optional[Witness]:
    """Points ``a, b`` with ``f((a + b) / 2) > (f(a) + f(b)) / 2 + 1e-10``.

    Random segments between Sobol sphere points are checked first, then short segments
    ``x +- t y`` along the most negative Hessian direction found on the bisphere.
    """
    n = f.n_vars
    xs, ys = sobol_bisphere(n, n, samples, seed)
    gaps = _midpoint_gap(f, xs, ys)
    k = int(np.argmax(gaps))
    if gaps[k] > WITNESS_TOL:
        return _midpoint_witness(xs[k], ys[k], float(gaps[k]))

    if f.degree < 2:
        return None
    stacked = hessian_biform(f).stack()
    points = np.hstack([xs, ys])
    values = np.atleast_1d(stacked(points))
    best = np.argsort(values, kind="stable")[:_REFINED]
    refined, refined_values = refine(stacked, points[best], [slice(0, n), slice(n, 2 * n)], steps)
    for idx in np.argsort(refined_values, kind="stable"):
        if refined_values[idx] >= 0.0:
            break
        x, y = refined[idx, :n], refined[idx, n:]
        for t in _SEGMENT_STEPS:
            gap = float(_midpoint_gap(f, (x + t * y)[None, :], (x - t * y)[None, :])[0])
            if gap > WITNESS_TOL:
                return _midpoint_witness(x + t * y, x - t * y, gap)
    return None


def _midpoint_witness(a: np.ndarray, b: np.ndarray, gap: float) -> Witness:
    witness = Witness(kind=WitnessKind.MIDPOINT, x=a.tolist(), y=b.tolist(), value=gap)
    logger.warning("midpoint convexity fails between %s and %s (gap %.3e)", witness.x, witness.y, gap)
    return witness
