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

import logging
import math

import numpy as np
import scipy.linalg as la
from numpy.typing import ArrayLike

from polynorm.errors import SolverError
from polynorm.jsr.family import MatrixFamily

logger = logging.getLogger(__name__)


def spectral_radius(a: ArrayLike) -> float:
    """Largest eigenvalue modulus, from LAPACK's Hessenberg QR."""
    mat = np.asarray(a, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"spectral radius needs a square matrix, got shape {mat.shape}")
    try:
        eigvals = la.eigvals(mat)
    except la.LinAlgError as e:
        raise SolverError(f"eigenvalue iteration did not converge: {e}") from e
    return float(np.max(np.abs(eigvals)))


def jsr_lower_bound(family: MatrixFamily, max_len: int) -> float:
    """``max rho(A_{s_k} ... A_{s_1})^(1/k)`` over every product of length ``k <= max_len``.

    Products are built depth first and renormalized at each step; the scale is carried as a logarithm.
    """
    if max_len < 1:
        raise ValueError(f"max_len must be at least 1, got {max_len}")
    best = 0.0

    def visit(product: np.ndarray, log_scale: float, length: int) -> None:
        nonlocal best
        rho = spectral_radius(product)
        if rho > 0.0:
            best = max(best, math.exp((math.log(rho) + log_scale) / length))
        if length == max_len:
            return
        for a in family:
            nxt = a @ product
            size = float(np.linalg.norm(nxt))
            if size == 0.0:
                continue
            visit(nxt / size, log_scale + math.log(size), length + 1)

    for a in family:
        size = float(np.linalg.norm(a))
        if size > 0.0:
            visit(a / size, math.log(size), 1)
    logger.debug("JSR lower bound over products of length <= %d: %.12g", max_len, best)
    return best
