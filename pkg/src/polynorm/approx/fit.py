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
"""Least-squares fit of an sos-convex form to samples of a norm.

``min sum_i (|x_i|^d - f(x_i))^2  s.t.  f sos-convex``. With the thin QR factorization
``Phi = Q R`` of the monomial design matrix, the objective is ``|R theta - Q^T y|^2`` plus a
constant, and ``tau >= |R theta - Q^T y|`` is the PSD arrow block ``[[tau, r^T], [r, tau I]]``.
Writing the residual over the samples directly would need an arrow of size ``N + 1`` for ``N``
samples. After the reduction it has size ``#monomials + 1``, which does not grow with ``N``.
"""

from __future__ import annotations

import logging
from typing import Any, Optional

import numpy as np
import scipy.linalg as la
from numpy.typing import ArrayLike
from pydantic import field_serializer

from polynorm.certify.norms import NormConstraintMode, build_norm_constraints
from polynorm.conic import SolverStatus
from polynorm.errors import FormError
from polynorm.forms import Form, form_to_dict, monomials
from polynorm.schema.base import Field, Schema
from polynorm.schema.config import DEFAULT_TOLERANCES, Tolerances
from polynorm.sos import SosProgram, is_sos
from polynorm.sos.program import ScalarRef

logger = logging.getLogger(__name__)


class FitResult(Schema):
    form: Optional[Form] = None
    degree: int
    status: SolverStatus
    objective: Optional[float] = None
    positive_definite: Optional[bool] = None
    gram_min_eig: Optional[float] = None
    norm_error: Optional[float] = None
    norm_error_bound: Optional[float] = None
    samples: int
    note: str = ""
    solver: dict[str, Any] = Field(default_factory=dict)

    @property
    def bound_holds(self) -> bool:
        if self.norm_error is None or self.norm_error_bound is None:
            return False
        return self.norm_error <= self.norm_error_bound * (1.0 + 1e-9) + 1e-12

    @field_serializer("form")
    def _serialize_form(self, value: Optional[Form]) -> Any:
        return None if value is None else form_to_dict(value)


def design_matrix(points: np.ndarray, d: int) -> np.ndarray:
    """Values of every degree-``d`` monomial (graded-lex order) at each point, one row per point."""
    exps = np.array(monomials(points.shape[1], d))
    return np.prod(points[:, None, :] ** exps[None, :, :], axis=-1)


def fit_polynomial_norm(
    points: ArrayLike,
    values: ArrayLike,
    d: int,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> FitResult:
    """Fits a degree-``d`` sos-convex form ``f`` so that ``f(x_i)`` is close to ``values_i^d``.

    The report carries the training objective, whether ``f`` is numerically positive definite
    (smallest Gram eigenvalue of its SOS certificate), and the error of ``f^(1/d)`` against the
    sample values together with the bound ``N (objective / N)^(1/d)``.
    """
    x = np.atleast_2d(np.asarray(points, dtype=float))
    norms = np.asarray(values, dtype=float).ravel()
    if d < 2 or d % 2:
        raise FormError(f"the fitted form needs an even degree >= 2, got {d}")
    if x.shape[0] == 0 or x.shape[0] != norms.size:
        raise ValueError(f"need one value per sample point, got {x.shape[0]} points and {norms.size} values")
    n_samples, n = x.shape
    y = norms**d
    phi = design_matrix(x, d)
    q, r = la.qr(phi, mode="economic")
    qty = q.T @ y
    offset = float(np.sum((y - q @ qty) ** 2))

    program = SosProgram(name=f"fit(d={d})")
    norm = build_norm_constraints(program, n, d, r=0, mode=NormConstraintMode.NONNEGATIVE)
    size = r.shape[0] + 1
    arrow = program.new_psd_block(size)
    tau = program.entry(arrow, 0, 0)
    for i in range(1, size):
        program.add_equality({program.entry(arrow, i, i): 1.0, tau: -1.0}, 0.0)
        for j in range(i + 1, size):
            program.add_equality({program.entry(arrow, i, j): 1.0}, 0.0)
        row: dict[Any, float] = {program.entry(arrow, 0, i): 1.0}
        for k, var in enumerate(norm.coefficient_vars):
            if r[i - 1, k]:
                row[ScalarRef(var)] = -float(r[i - 1, k])
        program.add_equality(row, -float(qty[i - 1]))
    program.minimize({tau: 1.0})

    solution = program.solve(tolerances)
    diagnostics = solution.solution.diagnostics()
    if solution.status != SolverStatus.OPTIMAL:
        logger.warning("fit(d=%d): solver returned %s", d, solution.status)
        return FitResult(
            degree=d, status=solution.status, samples=n_samples, note=solution.solution.message, solver=diagnostics
        )

    f = solution.form(norm.f)
    fitted = np.atleast_1d(f(x))
    objective = float(np.sum((y - fitted) ** 2))
    logger.info("fit(d=%d): objective %.6e (arrow bound %.6e)", d, objective, solution.solution.objective**2 + offset)

    sos = is_sos(f, tolerances)
    gram_min_eig = sos.certificate.min_eig if sos.certificate is not None else None
    roots = np.maximum(fitted, 0.0) ** (1.0 / d)
    note = ""
    if n >= 3:
        note = "sos-convex forms are a strict subset of convex forms for n >= 3"
    return FitResult(
        form=f,
        degree=d,
        status=solution.status,
        objective=objective,
        positive_definite=gram_min_eig is not None and gram_min_eig > 0.0,
        gram_min_eig=gram_min_eig,
        norm_error=float(np.sum((norms - roots) ** 2)),
        norm_error_bound=n_samples * (objective / n_samples) ** (1.0 / d),
        samples=n_samples,
        note=note,
        solver=diagnostics,
    )
