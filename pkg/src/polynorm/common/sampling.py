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
"""Deterministic point sets on the unit sphere and the bisphere ``S^{n-1} x S^{n-1}``."""

from __future__ import annotations

import math

import numpy as np
from scipy.stats import norm, qmc


def _normalize(points: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(points, axis=-1, keepdims=True)
    # a Gaussian draw of exactly zero has probability zero; keep the axis direction if it happens
    norms[norms == 0.0] = 1.0
    return points / norms


def sample_sphere(n: int, count: int, seed: int = 0) -> np.ndarray:
    """``count`` independent uniform points on the unit sphere in ``n`` dimensions, as rows.

    Gaussian vectors normalized to unit length; identical ``seed`` gives identical points.
    """
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    rng = np.random.default_rng(seed)
    return _normalize(rng.standard_normal((count, n)))


def _gaussian_sobol(dim: int, count: int, seed: int) -> np.ndarray:
    sampler = qmc.Sobol(d=dim, scramble=True, seed=seed)
    u = sampler.random_base2(m=max(0, math.ceil(math.log2(count))))[:count]
    eps = np.finfo(float).eps
    return np.asarray(norm.ppf(np.clip(u, eps, 1.0 - eps)))


def sobol_sphere(n: int, count: int, seed: int = 0) -> np.ndarray:
    """Quasi-random sphere points: a scrambled Sobol sequence pushed through the Gaussian quantile."""
    return _normalize(_gaussian_sobol(n, count, seed))


def sobol_bisphere(n_x: int, n_y: int, count: int, seed: int = 0) -> tuple[np.ndarray, np.ndarray]:
    z = _gaussian_sobol(n_x + n_y, count, seed)
    return _normalize(z[:, :n_x]), _normalize(z[:, n_x:])


def axis_points(n: int) -> np.ndarray:
    """The ``2n`` points ``+-e_i``."""
    eye = np.eye(n)
    return np.concatenate([eye, -eye])
