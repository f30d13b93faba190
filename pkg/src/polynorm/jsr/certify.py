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
"""Contracting polynomial norms for switched linear systems ``x_{k+1} = A_{s_k} x_k``.

For each degree the feasibility system is: ``f - |x|^d`` (r-)sos-convex and, for every matrix,
``f(x) - f(A_i x) - |x|^d`` SOS. A solution makes ``V = f^(1/d)`` a norm with
``V(A_i x) < V(x)`` for ``x != 0``, so the joint spectral radius is below one.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from typing import Any, Optional

import numpy as np
from pydantic import field_serializer

from polynorm.certify.norms import NormConstraintMode, build_norm_constraints
from polynorm.common.parallel import first_success
from polynorm.common.sampling import sample_sphere
from polynorm.conic import SolverStatus
from polynorm.errors import FormError
from polynorm.forms import Form, compose_linear, form_to_dict, hessian_biform, quadratic_power
from polynorm.jsr.bounds import jsr_lower_bound
from polynorm.jsr.family import MatrixFamily
from polynorm.schema.base import Field, Schema, StrEnum
from polynorm.schema.certificates import GramCertificate
from polynorm.schema.config import DEFAULT_TOLERANCES, Tolerances
from polynorm.sos import SosProgram, build_certificate, monomial_basis

logger = logging.getLogger(__name__)

DEFAULT_DEGREES = (2, 4, 6, 8)
SPOT_CHECK_POINTS = 1000
LOWER_BOUND_LENGTH = 4


class JsrVerdict(StrEnum):
    CERTIFIED = "certified"
    NOT_CERTIFIED = "not_certified"


class JsrCertificate(Schema):
    d: int
    r: int = 0
    f: Form
    gram_conv: GramCertificate
    gram_contract: list[GramCertificate]
    contraction_margin: float

    @field_serializer("f")
    def _serialize_f(self, value: Form) -> Any:
        return form_to_dict(value)


class DegreeReport(Schema):
    d: int
    outcome: str
    status: SolverStatus
    margin: Optional[float] = None
    note: str = ""
    solver: dict[str, Any] = Field(default_factory=dict)


class JsrResult(Schema):
    verdict: JsrVerdict
    certificate: Optional[JsrCertificate] = None
    degrees: list[DegreeReport] = Field(default_factory=list)

    def outcomes(self) -> dict[int, str]:
        return {report.d: report.outcome for report in self.degrees}


class JsrUpperBound(Schema):
    value: float
    certified: bool
    lower: float
    d: int
    steps: int


def _contraction_margin(f: Form, family: MatrixFamily, points: np.ndarray) -> float:
    """``min (1 - V(A_i x) / V(x))`` over the points, with ``V = f^(1/d)``; ``-inf`` if ``f`` is not positive."""
    base = np.atleast_1d(f(points))
    if np.any(base <= 0.0):
        return -np.inf
    worst = np.inf
    for a in family:
        image = np.maximum(np.atleast_1d(f(points @ a.T)), 0.0)
        worst = min(worst, float(np.min(1.0 - (image / base) ** (1.0 / f.degree))))
    return worst


def _certify_degree(
    family: MatrixFamily, d: int, r: int, tolerances: Tolerances, points: np.ndarray
) -> tuple[DegreeReport, Optional[JsrCertificate]]:
    n = family.n
    program = SosProgram(name=f"jsr(d={d})")
    norm = build_norm_constraints(program, n, d, r=r, mode=NormConstraintMode.FIXED_UNIT)
    offset = quadratic_power(n, d // 2)
    basis = monomial_basis(n, d // 2)
    contract_blocks = []
    for k, a in enumerate(family):
        target = norm.f.map(lambda g, a=a: g - compose_linear(g, a)) - offset
        contract_blocks.append(program.add_sos(target, basis, label=f"contract[{k}]"))
    solution = program.solve(tolerances)
    status = solution.status
    report: dict[str, Any] = dict(d=d, status=status, margin=solution.margin, solver=solution.solution.diagnostics())
    if status != SolverStatus.OPTIMAL:
        outcome = "infeasible" if status == SolverStatus.INFEASIBLE else str(status)
        return DegreeReport(outcome=outcome, **report), None

    f = solution.form(norm.f)
    gram_conv = build_certificate(
        hessian_biform(f - offset), r, norm.block.basis.entries, solution.block(norm.block.block), tolerances
    )
    gram_contract = [
        build_certificate(f - compose_linear(f, a) - offset, 0, basis.entries, solution.block(b.block), tolerances)
        for a, b in zip(family, contract_blocks)
    ]
    invalid = [c for c in [gram_conv, *gram_contract] if not c.valid]
    if invalid:
        note = f"{len(invalid)} certificate(s) failed independent validation"
        logger.warning("jsr(d=%d): %s", d, note)
        return DegreeReport(outcome="undecided", note=note, **report), None
    margin = _contraction_margin(f, family, points)
    if not margin > 0.0:
        note = f"contraction spot-check failed (margin {margin:.3e})"
        logger.warning("jsr(d=%d): %s", d, note)
        return DegreeReport(outcome="undecided", note=note, **report), None
    cert = JsrCertificate(d=d, r=r, f=f, gram_conv=gram_conv, gram_contract=gram_contract, contraction_margin=margin)
    return DegreeReport(outcome="certified", **report), cert


def jsr_certify(
    family: MatrixFamily,
    degrees: Sequence[int] = DEFAULT_DEGREES,
    r: int = 0,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    seed: int = 0,
) -> JsrResult:
    """Searches the degrees in order for a contracting polynomial norm; the first certified degree wins.

    A degree without a certificate proves nothing about the spectral radius, so the verdict is
    never a refutation.
    """
    for d in degrees:
        if d < 2 or d % 2:
            raise FormError(f"degrees must be even and >= 2, got {d}")
    points = sample_sphere(family.n, SPOT_CHECK_POINTS, seed)
    index, outcomes = first_success(
        lambda d: _certify_degree(family, d, r, tolerances, points),
        list(degrees),
        accept=lambda out: out[1] is not None,
    )
    reports = [report for report, _ in outcomes]
    for report in reports:
        logger.info("jsr degree %d: %s", report.d, report.outcome)
    if index is None:
        return JsrResult(verdict=JsrVerdict.NOT_CERTIFIED, degrees=reports)
    return JsrResult(verdict=JsrVerdict.CERTIFIED, certificate=outcomes[index][1], degrees=reports)


def jsr_upper_bound(
    family: MatrixFamily,
    d: int,
    tol: float,
    r: int = 0,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    seed: int = 0,
) -> JsrUpperBound:
    """Bisects on ``gamma``: a certificate for ``{A_i / gamma}`` at degree ``d`` proves ``rho < gamma``.

    Starts from ``[jsr_lower_bound, (1 + tol) max_i |A_i|_2]``. The upper end sits strictly above the
    spectral norm, so ``{A_i / gamma}`` contracts in the Euclidean norm there and a quadratic
    certificate exists. When the degree-``d`` search still fails at that end, the seed is returned
    with ``certified=False``.
    """
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    if d < 2 or d % 2:
        raise FormError(f"d must be even and >= 2, got {d}")
    points = sample_sphere(family.n, SPOT_CHECK_POINTS, seed)
    lower = jsr_lower_bound(family, LOWER_BOUND_LENGTH)
    lo = lower
    hi = family.max_norm() * (1.0 + tol)

    def certified(gamma: float) -> bool:
        if gamma <= 0.0:
            return False
        return _certify_degree(family.scaled(1.0 / gamma), d, r, tolerances, points)[1] is not None

    if not certified(hi):
        logger.info("no degree-%d certificate above the norm bound, at %.6g", d, hi)
        return JsrUpperBound(value=hi, certified=False, lower=lower, d=d, steps=1)
    steps = 1
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        steps += 1
        if certified(mid):
            hi = mid
        else:
            lo = mid
        logger.debug("bisection: [%.6g, %.6g]", lo, hi)
    return JsrUpperBound(value=hi, certified=True, lower=lower, d=d, steps=steps)
