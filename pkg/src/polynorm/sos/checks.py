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
"""SOS, r-SOS, sos-convexity and r-sos-convexity checks with a tri-state verdict."""

from __future__ import annotations

import logging
from typing import Any, Optional, Union

from polynorm.conic import SolverStatus
from polynorm.errors import FormError
from polynorm.forms import Biform, Form, hessian_biform, quadratic_power
from polynorm.schema.base import Field, Schema, StrEnum
from polynorm.schema.certificates import GramCertificate
from polynorm.schema.config import DEFAULT_TOLERANCES, Tolerances
from polynorm.sos.basis import MonomialBasis, biform_basis, monomial_basis
from polynorm.sos.program import SosBlock, SosProgram
from polynorm.sos.validate import build_certificate

logger = logging.getLogger(__name__)


class SosVerdict(StrEnum):
    SOS = "sos"
    NOT_SOS = "not_sos"
    UNDECIDED = "undecided"


class SosResult(Schema):
    verdict: SosVerdict
    r: int = 0
    convex: bool = False
    certificate: Optional[GramCertificate] = None
    margin: Optional[float] = None
    status: SolverStatus
    note: str = ""
    solver: dict[str, Any] = Field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.verdict == SosVerdict.SOS


def _target(f: Form, r: int, convex: bool) -> tuple[Union[Form, Biform], Form, MonomialBasis]:
    if f.degree % 2:
        raise FormError(f"SOS questions need an even degree, got {f.degree}")
    if r < 0:
        raise FormError(f"r must be nonnegative, got {r}")
    if not convex:
        multiplied = f * quadratic_power(f.n_vars, r) if r else f
        return f, multiplied, monomial_basis(f.n_vars, multiplied.degree // 2)
    if f.degree < 2:
        raise FormError("sos-convexity needs degree >= 2")
    biform = hessian_biform(f)
    stacked = biform.multiply_x(quadratic_power(f.n_vars, r)).stack()
    return biform, stacked, biform_basis(f.n_vars, f.n_vars, (f.degree - 2) // 2 + r)


def _kind(r: int, convex: bool) -> str:
    base = "sos-convex" if convex else "sos"
    return base if r == 0 else f"{r}-{base}"


def _build(f: Form, r: int, convex: bool) -> tuple[Union[Form, Biform], SosProgram, SosBlock]:
    target, stacked, basis = _target(f, r, convex)
    program = SosProgram(name=_kind(r, convex))
    block = program.add_sos(stacked, basis, label=program.name)
    return target, program, block


def sos_program(f: Form, r: int = 0, convex: bool = False) -> SosProgram:
    """The single-block program behind the SOS checks, e.g. for export to SDPA."""
    return _build(f, r, convex)[1]


def _check(f: Form, r: int, convex: bool, tolerances: Tolerances) -> SosResult:
    kind = _kind(r, convex)
    target, program, block = _build(f, r, convex)
    basis = block.basis
    solution = program.solve(tolerances)
    status = solution.status
    common: dict[str, Any] = dict(r=r, convex=convex, margin=solution.margin, status=status)
    common["solver"] = solution.solution.diagnostics()

    if status == SolverStatus.OPTIMAL:
        cert = build_certificate(target, r, basis.entries, solution.block(block.block), tolerances)
        if cert.valid:
            logger.info("%s: certified (residual %.2e, min_eig %.2e)", kind, cert.residual, cert.min_eig)
            return SosResult(verdict=SosVerdict.SOS, certificate=cert, **common)
        note = f"solver point failed independent validation (residual {cert.residual:.2e}, min_eig {cert.min_eig:.2e})"
        logger.warning("%s: %s", kind, note)
        return SosResult(verdict=SosVerdict.UNDECIDED, certificate=cert, note=note, **common)
    if status == SolverStatus.INFEASIBLE:
        logger.info("%s: numerically not SOS (margin %s)", kind, solution.margin)
        return SosResult(verdict=SosVerdict.NOT_SOS, note="numerically not SOS", **common)
    if status == SolverStatus.ITER_LIMIT:
        note = f"solver stopped at the iteration limit ({tolerances.max_iters})"
    else:
        note = solution.solution.message or "margin between the feasibility and infeasibility thresholds"
    logger.warning("%s: undecided: %s", kind, note)
    return SosResult(verdict=SosVerdict.UNDECIDED, note=note, **common)


def is_sos(f: Form, tolerances: Tolerances = DEFAULT_TOLERANCES) -> SosResult:
    return _check(f, 0, False, tolerances)


def is_r_sos(f: Form, r: int, tolerances: Tolerances = DEFAULT_TOLERANCES) -> SosResult:
    """Whether ``(sum x_i^2)^r * f`` is a sum of squares."""
    return _check(f, r, False, tolerances)


def is_sos_convex(f: Form, tolerances: Tolerances = DEFAULT_TOLERANCES) -> SosResult:
    return _check(f, 0, True, tolerances)


def is_r_sos_convex(f: Form, r: int, tolerances: Tolerances = DEFAULT_TOLERANCES) -> SosResult:
    """Whether ``(sum x_i^2)^r * y^T H_f(x) y`` is a sum of squares, the multiplier acting on x only."""
    return _check(f, r, True, tolerances)
