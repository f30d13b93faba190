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
"""Certification hierarchies for polynomial norms.

``certify_polynomial_norm`` searches for ``gamma > 0``, ``r`` and an SOS form ``q`` with
``q(x) y^T H_f(x) y`` SOS and ``(gamma f - |x|^d) |x|^(2r)`` SOS; then ``f^(1/d)`` is a norm with
``c = 1 / gamma``. ``certify_pd_hessian`` searches for ``gamma > 0`` and ``r`` with
``gamma f - |x|^d`` r-sos-convex, which proves ``H_f(x)`` positive definite off the origin.
Writing ``c = 1 / gamma`` keeps ``c`` strictly positive without relying on the solver
returning an interior point: ``gamma = 0`` would make ``-|x|^(d + 2r)`` SOS.
"""

from __future__ import annotations

import logging
from typing import NamedTuple, Optional

import numpy as np

from polynorm.certify.bounds import eta_bound, reznick_bound
from polynorm.certify.extrema import bisphere_extrema, sphere_extrema
from polynorm.certify.oracle import ORACLE_SAMPLES, sample_convexity, sample_hessian, sample_positivity
from polynorm.common.parallel import first_success
from polynorm.conic import SolverStatus
from polynorm.errors import FormError
from polynorm.forms import Form, hessian_biform, monomials, quadratic_power, sphere_moment
from polynorm.schema.base import StrEnum
from polynorm.schema.certificates import GramCertificate
from polynorm.schema.config import DEFAULT_TOLERANCES, Tolerances
from polynorm.schema.norms import (
    HessianCertificate,
    HessianResult,
    NormCertificate,
    NormResult,
    NormVerdict,
    RungReport,
    TheoryBounds,
    Witness,
    WitnessKind,
)
from polynorm.sos import AffineForm, SosBlock, SosProgram, biform_basis, build_certificate, monomial_basis
from polynorm.sos.program import ProgramSolution, ScalarRef

logger = logging.getLogger(__name__)

MULTIPLIER_DEGREES = (2, 4)


class NormConstraintMode(StrEnum):
    FIXED_UNIT = "fixed_unit"  # c = 1
    AT_LEAST_ONE = "at_least_one"  # c >= 1
    NONNEGATIVE = "nonnegative"  # c >= 0, i.e. plain r-sos-convexity of f


class NormConstraints(NamedTuple):
    f: AffineForm
    coefficient_vars: list[int]
    c_var: Optional[int]
    block: SosBlock


def _check_even(f: Form) -> None:
    if f.degree < 2 or f.degree % 2:
        raise FormError(f"a polynomial norm needs an even degree >= 2, got {f.degree}")


def _hessian_target(g: Form, r: int) -> Form:
    return hessian_biform(g).multiply_x(quadratic_power(g.n_vars, r)).stack()


def build_norm_constraints(
    program: SosProgram,
    n: int,
    d: int,
    r: int = 0,
    mode: NormConstraintMode = NormConstraintMode.AT_LEAST_ONE,
) -> NormConstraints:
    """Declares a degree-``d`` form ``f`` with free coefficients and imposes ``f - c |x|^d`` r-sos-convex.

    The returned :class:`AffineForm` can be used in further conditions and objectives on the same program.
    """
    if d < 2 or d % 2:
        raise FormError(f"d must be even and >= 2, got {d}")
    coefficient_vars = program.new_free(len(monomials(n, d)))
    f = AffineForm.generic(n, d, coefficient_vars)
    target = f.map(lambda g: _hessian_target(g, r))
    offset = _hessian_target(quadratic_power(n, d // 2), r)
    c_var: Optional[int] = None
    if mode == NormConstraintMode.FIXED_UNIT:
        target = target - offset
    else:
        c_var = program.new_nonneg(1)[0]
        target = target + AffineForm(Form.zero(2 * n, d), {c_var: -offset})
        if mode == NormConstraintMode.AT_LEAST_ONE:
            target = target - offset
    block = program.add_sos(target, biform_basis(n, n, (d - 2) // 2 + r), label=f"{r}-sos-convex")
    return NormConstraints(f, coefficient_vars, c_var, block)


def _quadratic_matrix(f: Form) -> np.ndarray:
    n = f.n_vars
    q = np.zeros((n, n))
    for alpha, coeff in f.terms.items():
        idx = [i for i, a in enumerate(alpha) for _ in range(a)]
        i, j = idx
        if i == j:
            q[i, i] = coeff
        else:
            q[i, j] = q[j, i] = coeff / 2.0
    return q


def _theory_bounds(f: Form, seed: int) -> TheoryBounds:
    eps = sphere_extrema(f, seed=seed).ratio
    eta = bisphere_extrema(hessian_biform(f), seed=seed).ratio if f.degree > 2 else 1.0
    n, d = f.n_vars, f.degree
    return TheoryBounds(epsilon=eps, eta=eta, reznick_r=reznick_bound(eps, n, d), eta_r=eta_bound(eta, n, d))


def _rung_report(r: int, deg_q: int, solution: ProgramSolution, note: str = "") -> RungReport:
    diagnostics = solution.solution.diagnostics()
    return RungReport(
        r=r, deg_q=deg_q, status=str(solution.status), margin=solution.margin, note=note, solver=diagnostics
    )


def _quadratic_bounds(eigvals: np.ndarray, n: int) -> TheoryBounds:
    eps = float(eigvals[0] / eigvals[-1])
    return TheoryBounds(epsilon=eps, eta=1.0, reznick_r=reznick_bound(eps, n, 2), eta_r=eta_bound(1.0, n, 2))


def _quadratic_norm(f: Form, tolerances: Tolerances) -> NormResult:
    q = _quadratic_matrix(f)
    eigvals, eigvecs = np.linalg.eigh(q)
    n = f.n_vars
    if eigvals[0] <= 1e-10:
        x = eigvecs[:, 0]
        witness = Witness(kind=WitnessKind.POSITIVITY, x=x.tolist(), value=float(f(x)))
        note = "coefficient matrix is not positive definite"
        return NormResult(verdict=NormVerdict.REFUTED, witness=witness, note=note)
    c = float(eigvals[0])
    one = Form.constant(n, 1.0)
    cert = NormCertificate(
        c=c,
        r=0,
        deg_q=0,
        q=one,
        gram_q=build_certificate(one, 0, [(0,) * n], [[1.0]], tolerances),
        gram_conv=build_certificate(hessian_biform(f), 0, biform_basis(n, n, 0).entries, 2.0 * q, tolerances),
        gram_pd=build_certificate(
            f - quadratic_power(n, 1).scale(c), 0, monomial_basis(n, 1).entries, q - c * np.eye(n), tolerances
        ),
    )
    return NormResult(
        verdict=NormVerdict.CERTIFIED,
        certificate=cert,
        bounds=_quadratic_bounds(eigvals, n),
        note="eigenvalue test on the coefficient matrix",
    )


def _norm_rung(f: Form, r: int, deg_q: int, tolerances: Tolerances) -> tuple[RungReport, Optional[NormCertificate]]:
    n, d = f.n_vars, f.degree
    program = SosProgram(name=f"norm(r={r}, deg_q={deg_q})")
    q_vars = program.new_free(len(monomials(n, deg_q)))
    q = AffineForm.generic(n, deg_q, q_vars)
    program.add_equality({ScalarRef(v): sphere_moment(alpha) for v, alpha in zip(q_vars, monomials(n, deg_q))}, 1.0)
    q_block = program.add_sos(q, label="q") if deg_q else None

    hess = hessian_biform(f).stack()
    conv = q.map(lambda g: g.embed(2 * n) * hess)
    conv_block = program.add_sos(conv, biform_basis(n, n, (d - 2 + deg_q) // 2), label="q-convexity")

    gamma = program.new_nonneg(1)[0]
    pd = AffineForm(-quadratic_power(n, d // 2 + r), {gamma: f * quadratic_power(n, r)})
    pd_block = program.add_sos(pd, monomial_basis(n, d // 2 + r), label="positivity")

    solution = program.solve(tolerances)
    if solution.status != SolverStatus.OPTIMAL:
        return _rung_report(r, deg_q, solution), None

    g = solution.scalar(gamma)
    if g <= 0.0:
        return _rung_report(r, deg_q, solution, note=f"gamma = {g:.3e} is not positive"), None
    c = 1.0 / g
    q_form = solution.form(q)
    if deg_q:
        assert q_block is not None
        gram_q = build_certificate(q_form, 0, q_block.basis.entries, solution.block(q_block.block), tolerances)
    else:
        gram_q = build_certificate(q_form, 0, [(0,) * n], [[q_form.coefficient((0,) * n)]], tolerances)
    gram_conv = build_certificate(
        hessian_biform(f).multiply_x(q_form), 0, conv_block.basis.entries, solution.block(conv_block.block), tolerances
    )
    gram_pd = build_certificate(
        f - quadratic_power(n, d // 2).scale(c),
        r,
        pd_block.basis.entries,
        solution.block(pd_block.block) / g,
        tolerances,
    )
    named = (("q", gram_q), ("convexity", gram_conv), ("positivity", gram_pd))
    invalid = [name for name, cert in named if not cert.valid]
    if invalid:
        note = "independent validation failed for " + ", ".join(invalid)
        logger.warning("%s: %s", program.name, note)
        return _rung_report(r, deg_q, solution, note=note), None
    cert = NormCertificate(c=c, r=r, deg_q=deg_q, q=q_form, gram_q=gram_q, gram_conv=gram_conv, gram_pd=gram_pd)
    return _rung_report(r, deg_q, solution), cert


def multiplier_ladder(deg_q: int, max_deg_q: int) -> list[int]:
    """Multiplier degrees tried at each ``r``: the requested one, then the larger of 2 and 4 up to ``max_deg_q``."""
    if deg_q % 2:
        raise FormError(f"deg_q must be even, got {deg_q}")
    return sorted({deg_q} | {v for v in MULTIPLIER_DEGREES if deg_q < v <= max_deg_q})


def certify_polynomial_norm(
    f: Form,
    r_max: int = 3,
    deg_q: int = 0,
    max_deg_q: int = 4,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    samples: int = ORACLE_SAMPLES,
    seed: int = 0,
) -> NormResult:
    """Decides whether ``f^(1/d)`` is a norm: CERTIFIED with a certificate, REFUTED with a witness, or NOT_CERTIFIED.

    Rungs are tried in the order ``(r, deg_q)`` for ``r = 0 .. r_max`` and every multiplier degree
    of :func:`multiplier_ladder`; the first validated rung wins.
    """
    _check_even(f)
    if f.degree == 2:
        return _quadratic_norm(f, tolerances)

    witness = sample_positivity(f, samples, seed) or sample_convexity(f, samples, seed)
    if witness is not None:
        return NormResult(verdict=NormVerdict.REFUTED, witness=witness)

    rungs = [(r, dq) for r in range(r_max + 1) for dq in multiplier_ladder(deg_q, max_deg_q)]
    index, outcomes = first_success(
        lambda rung: _norm_rung(f, rung[0], rung[1], tolerances), rungs, accept=lambda out: out[1] is not None
    )
    reports = [report for report, _ in outcomes]
    for report in reports:
        logger.info("rung r=%d deg_q=%d: %s", report.r, report.deg_q, report.status)
    bounds = _theory_bounds(f, seed)
    if index is None:
        return NormResult(
            verdict=NormVerdict.NOT_CERTIFIED,
            rungs=reports,
            bounds=bounds,
            note=f"no certificate up to r={r_max}",
        )
    return NormResult(verdict=NormVerdict.CERTIFIED, certificate=outcomes[index][1], rungs=reports, bounds=bounds)


def _quadratic_hessian(f: Form, tolerances: Tolerances) -> HessianResult:
    q = _quadratic_matrix(f)
    eigvals, eigvecs = np.linalg.eigh(q)
    n = f.n_vars
    if eigvals[0] <= 1e-10:
        witness = Witness(
            kind=WitnessKind.HESSIAN, x=np.eye(n)[0].tolist(), y=eigvecs[:, 0].tolist(), value=float(2.0 * eigvals[0])
        )
        return HessianResult(verdict=NormVerdict.REFUTED, witness=witness)
    c = float(eigvals[0])
    gram = build_certificate(
        hessian_biform(f - quadratic_power(n, 1).scale(c)),
        0,
        biform_basis(n, n, 0).entries,
        2.0 * (q - c * np.eye(n)),
        tolerances,
    )
    return HessianResult(
        verdict=NormVerdict.CERTIFIED,
        certificate=HessianCertificate(c=c, r=0, gram=gram),
        bounds=_quadratic_bounds(eigvals, n),
        note="eigenvalue test on the coefficient matrix",
    )


def _hessian_rung(f: Form, r: int, tolerances: Tolerances) -> tuple[RungReport, Optional[HessianCertificate]]:
    n, d = f.n_vars, f.degree
    program = SosProgram(name=f"pd-hessian(r={r})")
    gamma = program.new_nonneg(1)[0]
    target = AffineForm(
        -_hessian_target(quadratic_power(n, d // 2), r),
        {gamma: _hessian_target(f, r)},
    )
    block = program.add_sos(target, biform_basis(n, n, (d - 2) // 2 + r), label=f"{r}-sos-convex")
    solution = program.solve(tolerances)
    if solution.status != SolverStatus.OPTIMAL:
        return _rung_report(r, 0, solution), None
    g = solution.scalar(gamma)
    if g <= 0.0:
        return _rung_report(r, 0, solution, note=f"gamma = {g:.3e} is not positive"), None
    c = 1.0 / g
    gram: GramCertificate = build_certificate(
        hessian_biform(f - quadratic_power(n, d // 2).scale(c)),
        r,
        block.basis.entries,
        solution.block(block.block) / g,
        tolerances,
    )
    if not gram.valid:
        note = f"independent validation failed (residual {gram.residual:.2e}, min_eig {gram.min_eig:.2e})"
        logger.warning("%s: %s", program.name, note)
        return _rung_report(r, 0, solution, note=note), None
    return _rung_report(r, 0, solution), HessianCertificate(c=c, r=r, gram=gram)


def certify_pd_hessian(
    f: Form,
    r_max: int = 3,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    samples: int = ORACLE_SAMPLES,
    seed: int = 0,
) -> HessianResult:
    """Proves ``H_f(x)`` positive definite for ``x != 0`` by making ``gamma f - |x|^d`` r-sos-convex for some r."""
    _check_even(f)
    if f.degree == 2:
        return _quadratic_hessian(f, tolerances)

    witness = sample_hessian(f, samples, seed)
    if witness is not None:
        return HessianResult(verdict=NormVerdict.REFUTED, witness=witness)

    index, outcomes = first_success(
        lambda r: _hessian_rung(f, r, tolerances), range(r_max + 1), accept=lambda out: out[1] is not None
    )
    reports = [report for report, _ in outcomes]
    bounds = _theory_bounds(f, seed)
    if index is None:
        return HessianResult(
            verdict=NormVerdict.NOT_CERTIFIED, rungs=reports, bounds=bounds, note=f"no certificate up to r={r_max}"
        )
    return HessianResult(verdict=NormVerdict.CERTIFIED, certificate=outcomes[index][1], rungs=reports, bounds=bounds)
