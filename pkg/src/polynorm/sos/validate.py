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
"""Independent recomputation of Gram certificates; solver output is never trusted as-is."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from typing import Optional, Union

import numpy as np
from numpy.typing import ArrayLike

from polynorm.errors import CertificateError
from polynorm.forms import Biform, Form, MultiIndex, quadratic_power
from polynorm.schema.certificates import GramCertificate, ValidationReport
from polynorm.schema.config import DEFAULT_TOLERANCES, Tolerances

logger = logging.getLogger(__name__)


def multiplied_target(target: Union[Form, Biform], multiplier_r: int) -> Form:
    """``(sum x_i^2)^r * target`` as a form; for biforms the multiplier acts on x only and the result is stacked."""
    if isinstance(target, Biform):
        return target.multiply_x(quadratic_power(target.n_x, multiplier_r)).stack()
    if multiplier_r == 0:
        return target
    return target * quadratic_power(target.n_vars, multiplier_r)


def gram_form(basis: Sequence[MultiIndex], gram: np.ndarray) -> dict[MultiIndex, float]:
    """Coefficients of ``z^T G z`` for the monomial vector ``z`` given by ``basis``."""
    out: dict[MultiIndex, float] = {}
    k = len(basis)
    for p in range(k):
        for q in range(k):
            value = float(gram[p, q])
            if value:
                alpha = tuple(a + b for a, b in zip(basis[p], basis[q]))
                out[alpha] = out.get(alpha, 0.0) + value
    return out


def _check_basis(target: Form, basis: Sequence[MultiIndex], gram: np.ndarray) -> None:
    if gram.shape != (len(basis), len(basis)):
        raise CertificateError(f"Gram matrix of shape {gram.shape} does not fit a basis of {len(basis)} monomials")
    for entry in basis:
        if len(entry) != target.n_vars or 2 * sum(entry) != target.degree:
            raise CertificateError(
                f"basis monomial {list(entry)} cannot appear in a degree-{target.degree} "
                f"form in {target.n_vars} variables"
            )
    if len(set(map(tuple, basis))) != len(basis):
        raise CertificateError("basis monomials must be distinct")


def validate_certificate(
    target: Union[Form, Biform],
    multiplier_r: int,
    cert: Optional[GramCertificate] = None,
    *,
    basis: Optional[Sequence[MultiIndex]] = None,
    gram: Optional[ArrayLike] = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> ValidationReport:
    """Checks ``z^T G z == (sum x_i^2)^r * target`` coefficient-wise and ``G >= 0``.

    The residual is the largest coefficient mismatch. It is compared with ``res_tol``, and the
    smallest eigenvalue of ``G`` with ``-eig_tol``, both scaled by the largest coefficient of the
    multiplied target. Asymmetry in ``G`` counts toward the residual.
    """
    if cert is not None:
        basis, gram = cert.basis, cert.gram
    if basis is None or gram is None:
        raise CertificateError("either a certificate or a basis and a Gram matrix are required")
    basis = [tuple(int(a) for a in b) for b in basis]
    g = np.asarray(gram, dtype=float)
    expected = multiplied_target(target, multiplier_r)
    _check_basis(expected, basis, g)

    sym = 0.5 * (g + g.T)
    asymmetry = float(np.max(np.abs(g - g.T))) if g.size else 0.0
    produced = gram_form(basis, sym)
    keys = set(produced) | set(expected.terms)
    residual = max((abs(produced.get(a, 0.0) - expected.coefficient(a)) for a in keys), default=0.0)
    residual = max(residual, asymmetry)
    min_eig = float(np.linalg.eigvalsh(sym)[0]) if sym.size else 0.0

    scale = expected.max_abs_coeff() or 1.0
    res_tol = tolerances.res_tol * scale
    eig_tol = tolerances.eig_tol * scale
    valid = residual <= res_tol and min_eig >= -eig_tol
    logger.debug("certificate check: residual=%.3e (tol %.3e) min_eig=%.3e valid=%s", residual, res_tol, min_eig, valid)
    return ValidationReport(
        residual=residual, min_eig=min_eig, res_tol=res_tol, eig_tol=eig_tol, valid=valid
    )


def build_certificate(
    target: Union[Form, Biform],
    multiplier_r: int,
    basis: Sequence[MultiIndex],
    gram: ArrayLike,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> GramCertificate:
    """Wraps a Gram matrix in a :class:`GramCertificate` whose figures come from :func:`validate_certificate`."""
    g = np.asarray(gram, dtype=float)
    g = 0.5 * (g + g.T)
    report = validate_certificate(target, multiplier_r, basis=basis, gram=g, tolerances=tolerances)
    return GramCertificate(
        basis=[tuple(b) for b in basis],
        gram=g,
        residual=report.residual,
        min_eig=report.min_eig,
        valid=report.valid,
        multiplier_r=multiplier_r,
        n_x=target.n_x if isinstance(target, Biform) else None,
    )
