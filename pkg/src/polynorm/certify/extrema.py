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
"""Heuristic extrema of forms on the unit sphere and of biforms on the bisphere.

Quasi-random starts are refined by monotone projected-gradient steps. Every reported value is
attained at a reported unit vector, so ``min_val`` overestimates the true minimum and
``max_val`` underestimates the true maximum.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np

from polynorm.common.sampling import axis_points, sobol_bisphere, sobol_sphere
from polynorm.forms import Biform, Form, gradient
from polynorm.schema.norms import SphereExtrema

logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = 4096
DEFAULT_STEPS = 50


def _project(points: np.ndarray, groups: Sequence[slice]) -> np.ndarray:
    out = points.copy()
    for g in groups:
        out[:, g] /= np.linalg.norm(out[:, g], axis=1, keepdims=True)
    return out


def refine(
    f: Form, points: np.ndarray, groups: Sequence[slice], steps: int, sign: float = 1.0
) -> tuple[np.ndarray, np.ndarray]:
    """Decreases ``sign * f`` from each row of ``points`` by projected-gradient steps on a product of spheres.

    A step is kept only when it improves the value, otherwise the step size is halved; the
    result is never worse than the start.
    """
    grads = gradient(f) if f.degree else []
    x = _project(np.asarray(points, dtype=float), groups)
    vals = sign * np.atleast_1d(f(x))
    if not grads or steps <= 0:
        return x, sign * vals
    step = np.full(x.shape[0], 1.0 / (f.degree * max(f.max_abs_coeff(), 1e-300) * len(f.terms)))
    for _ in range(steps):
        g = sign * np.stack([np.atleast_1d(gi(x)) for gi in grads], axis=1)
        for grp in groups:
            xs = x[:, grp]
            g[:, grp] -= np.sum(g[:, grp] * xs, axis=1, keepdims=True) * xs
        trial = _project(x - step[:, None] * g, groups)
        trial_vals = sign * np.atleast_1d(f(trial))
        better = trial_vals < vals
        x[better] = trial[better]
        vals[better] = trial_vals[better]
        step = np.where(better, 1.5 * step, 0.5 * step)
    return x, sign * vals


def _extrema(
    f: Form, starts: np.ndarray, groups: Sequence[slice], steps: int
) -> tuple[int, int, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    x_min, v_min = refine(f, starts, groups, steps, sign=1.0)
    x_max, v_max = refine(f, starts, groups, steps, sign=-1.0)
    return int(np.argmin(v_min)), int(np.argmax(v_max)), x_min, v_min, x_max, v_max


def _ratio(lo: float, hi: float) -> float:
    if hi <= 0.0:
        return 0.0
    return max(lo, 0.0) / hi


def sphere_extrema(f: Form, samples: int = DEFAULT_SAMPLES, steps: int = DEFAULT_STEPS, seed: int = 0) -> SphereExtrema:
    starts = np.concatenate([sobol_sphere(f.n_vars, samples, seed), axis_points(f.n_vars)])
    groups = [slice(0, f.n_vars)]
    i, j, x_min, v_min, x_max, v_max = _extrema(f, starts, groups, steps)
    out = SphereExtrema(
        min_val=float(v_min[i]),
        max_val=float(v_max[j]),
        argmin=x_min[i].tolist(),
        argmax=x_max[j].tolist(),
        ratio=_ratio(float(v_min[i]), float(v_max[j])),
    )
    logger.debug("sphere extrema: min %.6g max %.6g", out.min_val, out.max_val)
    return out


def bisphere_extrema(
    biform: Biform, samples: int = DEFAULT_SAMPLES, steps: int = DEFAULT_STEPS, seed: int = 0
) -> SphereExtrema:
    n_x, n_y = biform.n_x, biform.n_y
    xs, ys = sobol_bisphere(n_x, n_y, samples, seed)
    axis_pairs = np.array(
        [np.concatenate([ex, ey]) for ex in np.eye(n_x) for ey in np.eye(n_y)],
        dtype=float,
    )
    starts = np.concatenate([np.hstack([xs, ys]), axis_pairs])
    stacked = biform.stack()
    groups = [slice(0, n_x), slice(n_x, n_x + n_y)]
    i, j, z_min, v_min, z_max, v_max = _extrema(stacked, starts, groups, steps)
    out = SphereExtrema(
        min_val=float(v_min[i]),
        max_val=float(v_max[j]),
        argmin=z_min[i, :n_x].tolist(),
        argmax=z_max[j, :n_x].tolist(),
        argmin_y=z_min[i, n_x:].tolist(),
        argmax_y=z_max[j, n_x:].tolist(),
        ratio=_ratio(float(v_min[i]), float(v_max[j])),
    )
    logger.debug("bisphere extrema: min %.6g max %.6g", out.min_val, out.max_val)
    return out
