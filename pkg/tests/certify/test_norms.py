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
import numpy as np
import pytest

from polynorm.certify import (
    NormConstraintMode,
    build_norm_constraints,
    certify_pd_hessian,
    certify_polynomial_norm,
    clique_quartic,
    multiplier_ladder,
    octic_counterexample,
    sample_convexity,
    sample_positivity,
)
from polynorm.errors import FormError
from polynorm.forms import Form, quadratic_power
from polynorm.schema.norms import NormVerdict, WitnessKind
from polynorm.sos import SosProgram, SosVerdict, is_sos_convex, validate_certificate

SEPARABLE_QUARTIC = Form(2, 4, {(4, 0): 1.0, (0, 4): 1.0})


class TestCertifyPolynomialNorm:
    def test__separable_quartic_is_certified(self):
        # WHEN certifying x1^4 + x2^4, a strictly convex norm whose Hessian is singular on the axes
        result = certify_polynomial_norm(SEPARABLE_QUARTIC)

        # THEN the first rung succeeds and every Gram matrix validates on its own
        cert = result.certificate
        assert result.verdict == NormVerdict.CERTIFIED
        assert (cert.r, cert.deg_q) == (0, 0)
        assert cert.c > 0.0
        assert cert.gram_q.valid and cert.gram_conv.valid and cert.gram_pd.valid
        assert result.rungs[0].status == "optimal"

    def test__positivity_certificate_matches_c(self):
        cert = certify_polynomial_norm(SEPARABLE_QUARTIC).certificate

        report = validate_certificate(SEPARABLE_QUARTIC - quadratic_power(2, 2).scale(cert.c), cert.r, cert.gram_pd)

        assert report.valid
        # f >= c |x|^4 can only hold for c <= 1/2
        assert cert.c <= 0.5 + 1e-6

    def test__reports_theory_bounds(self):
        bounds = certify_polynomial_norm(SEPARABLE_QUARTIC).bounds

        assert bounds.epsilon == pytest.approx(0.5, abs=1e-4)
        assert bounds.reznick_r == 15

    def test__sum_of_squares_quadratic_uses_eigenvalues(self):
        result = certify_polynomial_norm(Form(2, 2, {(2, 0): 1.0, (0, 2): 1.0}))

        assert result.verdict == NormVerdict.CERTIFIED
        assert result.certificate.c == pytest.approx(1.0)
        assert result.certificate.gram_pd.valid

    def test__indefinite_quadratic_is_refuted(self):
        result = certify_polynomial_norm(Form(2, 2, {(2, 0): 1.0, (0, 2): -1.0}))

        assert result.verdict == NormVerdict.REFUTED
        assert result.witness.kind == WitnessKind.POSITIVITY
        assert result.witness.value <= 0.0

    def test__nonconvex_quartic_is_refuted(self):
        f = Form(2, 4, {(4, 0): 1.0, (2, 2): -1.5, (0, 4): 1.0})

        result = certify_polynomial_norm(f)

        assert result.verdict == NormVerdict.REFUTED
        assert result.witness.kind == WitnessKind.MIDPOINT
        assert result.certificate is None

    def test__odd_degree_fails(self):
        with pytest.raises(FormError):
            certify_polynomial_norm(Form(2, 3, {(3, 0): 1.0}))

    def test__clique_instance_above_clique_number_is_not_certified(self):
        # an edge is a 2-clique, so k=1 breaks convexity
        f, _ = clique_quartic([(0, 1)], 1)

        result = certify_polynomial_norm(f, r_max=0, max_deg_q=0, samples=2048)

        assert result.verdict != NormVerdict.CERTIFIED

    def test__five_cycle_clique_instance(self):
        # the 5-cycle has clique number 2: convex and positive definite at k=2, not at k=1
        cycle = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]
        inside, _ = clique_quartic(cycle, 2)
        outside, _ = clique_quartic(cycle, 1)

        kept = certify_polynomial_norm(inside, r_max=0, max_deg_q=0)
        broken = certify_polynomial_norm(outside, r_max=0, max_deg_q=0)

        assert kept.verdict != NormVerdict.REFUTED
        assert sample_convexity(inside) is None
        assert sample_positivity(inside) is None
        assert broken.verdict != NormVerdict.CERTIFIED


class TestCertifyPdHessian:
    def test__separable_quartic_is_refuted(self):
        result = certify_pd_hessian(SEPARABLE_QUARTIC)

        assert result.verdict == NormVerdict.REFUTED
        assert result.witness.kind == WitnessKind.HESSIAN
        assert result.witness.value <= 1e-10

    def test__squared_euclidean_norm_is_certified(self):
        result = certify_pd_hessian(quadratic_power(2, 2))

        assert result.verdict == NormVerdict.CERTIFIED
        assert result.certificate.r == 0
        assert result.certificate.gram.valid
        assert result.bounds.eta == pytest.approx(1 / 3, abs=1e-4)

    def test__positive_definite_quadratic(self):
        result = certify_pd_hessian(Form(2, 2, {(2, 0): 2.0, (1, 1): 1.0, (0, 2): 2.0}))

        assert result.verdict == NormVerdict.CERTIFIED
        assert result.certificate.c == pytest.approx(1.5)

    def test__scaled_octic_is_not_certified_at_r_zero(self):
        g = octic_counterexample(2)

        result = certify_pd_hessian(g, r_max=0)

        # H_11 vanishes at e2, so the axis pair refutes before any rung runs
        assert result.verdict == NormVerdict.REFUTED
        assert result.witness.kind == WitnessKind.HESSIAN
        assert abs(result.witness.value) <= 1e-10
        assert is_sos_convex(g).verdict != SosVerdict.SOS


@pytest.mark.parametrize(
    "deg_q,max_deg_q,expected",
    [(0, 4, [0, 2, 4]), (0, 0, [0]), (2, 4, [2, 4]), (0, 2, [0, 2]), (6, 4, [6])],
)
def test__multiplier_ladder(deg_q, max_deg_q, expected):
    assert multiplier_ladder(deg_q, max_deg_q) == expected


def test__multiplier_ladder__odd_degree_fails():
    with pytest.raises(FormError):
        multiplier_ladder(1, 4)


@pytest.mark.parametrize(
    "mode,has_c", [(NormConstraintMode.FIXED_UNIT, False), (NormConstraintMode.AT_LEAST_ONE, True)]
)
def test__build_norm_constraints__declares_coefficients(mode, has_c):
    program = SosProgram()

    constraints = build_norm_constraints(program, 2, 4, mode=mode)

    assert len(constraints.coefficient_vars) == 5
    assert (constraints.c_var is not None) == has_c
    assert constraints.block.label == "0-sos-convex"


def test__build_norm_constraints__fixed_unit_accepts_squared_norm():
    # WHEN the free coefficients are solved for with f - |x|^4 sos-convex
    program = SosProgram()
    constraints = build_norm_constraints(program, 2, 4, mode=NormConstraintMode.FIXED_UNIT)

    solution = program.solve()

    # THEN some feasible f exists, e.g. 2 |x|^4
    assert solution.status == "optimal"
    f = solution.form(constraints.f)
    x = np.array([0.6, 0.8])
    assert f(x) > 1.0 - 1e-6


def test__build_norm_constraints__odd_degree_fails():
    with pytest.raises(FormError):
        build_norm_constraints(SosProgram(), 2, 3)


def test__quadratic_fast_path__reports_exact_bounds():
    f = Form(2, 2, {(2, 0): 2.0, (1, 1): 1.0, (0, 2): 2.0})

    for result in (certify_polynomial_norm(f), certify_pd_hessian(f)):
        assert result.bounds.epsilon == pytest.approx(0.6)
        assert result.bounds.eta == 1.0
