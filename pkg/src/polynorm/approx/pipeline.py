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
"""End-to-end approximation of a target norm: sample, fit or integrate, then measure on held-out points."""

from __future__ import annotations

import logging
from typing import Any, Optional

import numpy as np
from pydantic import field_serializer

from polynorm.approx.fit import FitResult, fit_polynomial_norm
from polynorm.approx.moments import MONTE_CARLO_SAMPLES, MomentMethod, approx_factor, form_from_moments, moment_table
from polynorm.approx.target import TargetNorm
from polynorm.common.sampling import sample_sphere
from polynorm.forms import Form, form_to_dict
from polynorm.schema.base import Schema, StrEnum
from polynorm.schema.config import DEFAULT_TOLERANCES, Tolerances

logger = logging.getLogger(__name__)

HOLDOUT_FRACTION = 0.2
CHECK_POINTS = 1000
EXACT_SANDWICH_TOL = 1e-6
MONTE_CARLO_SANDWICH_TOL = 1e-2


class ApproxMethod(StrEnum):
    FIT = "fit"
    MOMENT = "moment"


class ApproximationReport(Schema):
    target: str
    n: int
    degree: int
    method: ApproxMethod
    form: Optional[Form] = None
    approx_factor: float
    sup_relative_error: Optional[float] = None
    holdout_sup_relative_error: Optional[float] = None
    ratio_min: Optional[float] = None
    ratio_max: Optional[float] = None
    sandwich_holds: Optional[bool] = None
    moment_method: Optional[MomentMethod] = None
    moment_std_error: Optional[float] = None
    fit: Optional[FitResult] = None

    @field_serializer("form")
    def _serialize_form(self, value: Optional[Form]) -> Any:
        return None if value is None else form_to_dict(value)


def relative_errors(f: Form, target: TargetNorm, points: np.ndarray) -> np.ndarray:
    """``|f(x)^(1/d) - |x|| / |x|`` at every row of ``points``."""
    exact = np.atleast_1d(target(points))
    approx = np.maximum(np.atleast_1d(f(points)), 0.0) ** (1.0 / f.degree)
    return np.abs(approx - exact) / exact


def _ratios(f: Form, target: TargetNorm, points: np.ndarray) -> np.ndarray:
    return np.maximum(np.atleast_1d(f(points)), 0.0) ** (1.0 / f.degree) / np.atleast_1d(target(points))


def approximate_target(
    target: TargetNorm,
    d: int,
    method: ApproxMethod = ApproxMethod.FIT,
    n_samples: int = 200,
    seed: int = 0,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    mc_samples: int = MONTE_CARLO_SAMPLES,
) -> ApproximationReport:
    """Approximates ``target`` by ``f^(1/d)``.

    FIT draws ``n_samples`` sphere points from ``seed``, fits on 80% of them and reports the sup
    relative error on the remaining 20%. MOMENT integrates over the polar body and checks the
    sandwich bounds. Both report the sup relative error on ``1000`` fresh sphere points.
    """
    n = target.n
    factor = approx_factor(n, d)
    check = sample_sphere(n, CHECK_POINTS, seed + 1)
    report: dict[str, Any] = dict(target=target.name, n=n, degree=d, method=method, approx_factor=factor)

    if method == ApproxMethod.FIT:
        points = sample_sphere(n, n_samples, seed)
        values = np.atleast_1d(target(points))
        order = np.random.default_rng(seed).permutation(n_samples)
        n_hold = int(round(HOLDOUT_FRACTION * n_samples)) if n_samples >= 5 else 0
        hold, train = order[:n_hold], order[n_hold:]
        fit = fit_polynomial_norm(points[train], values[train], d, tolerances)
        report["fit"] = fit
        f = fit.form
        if f is not None and n_hold:
            report["holdout_sup_relative_error"] = float(np.max(relative_errors(f, target, points[hold])))
    else:
        table = moment_table(target, d, mc_samples, seed)
        f = form_from_moments(table)
        report["moment_method"] = table.method
        report["moment_std_error"] = table.std_error
        ratios = _ratios(f, target, check)
        tol = MONTE_CARLO_SANDWICH_TOL if table.method == MomentMethod.MONTE_CARLO else EXACT_SANDWICH_TOL
        report["ratio_min"] = float(np.min(ratios))
        report["ratio_max"] = float(np.max(ratios))
        report["sandwich_holds"] = bool(np.min(ratios) >= factor * (1 - tol) and np.max(ratios) <= 1 + tol)

    if f is not None:
        report["form"] = f
        report["sup_relative_error"] = float(np.max(relative_errors(f, target, check)))
        logger.info("%s, d=%d (%s): sup relative error %.4f", target.name, d, method, report["sup_relative_error"])
    return ApproximationReport(**report)
