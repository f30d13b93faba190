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
import pytest

from polynorm.certify import octic_counterexample
from polynorm.conic import SolverStatus
from polynorm.errors import FormError
from polynorm.forms import Form, quadratic_power
from polynorm.schema.config import Tolerances
from polynorm.sos import (
    SosVerdict,
    is_r_sos,
    is_r_sos_convex,
    is_sos,
    is_sos_convex,
    motzkin_form,
    validate_certificate,
)


@pytest.fixture
def motzkin() -> Form:
    return motzkin_form()


class TestMotzkin:
    def test__is_sos__motzkin_is_not_sos(self, motzkin):
        result = is_sos(motzkin)

        assert result.verdict == SosVerdict.NOT_SOS
        assert result.status == SolverStatus.INFEASIBLE
        assert result.margin <= -1e-6
        assert result.certificate is None

    def test__is_r_sos__motzkin_is_1_sos(self, motzkin):
        result = is_r_sos(motzkin, 1)

        assert result.verdict == SosVerdict.SOS
        assert result.holds
        assert result.certificate.residual <= 1e-7
        assert result.certificate.multiplier_r == 1

    def test__is_r_sos__certificate_validates_independently(self, motzkin):
        cert = is_r_sos(motzkin, 1).certificate

        report = validate_certificate(motzkin, 1, cert)

        assert report.valid
        assert report.min_eig >= -1e-7


@pytest.mark.parametrize(
    "f",
    [
        Form(2, 2, {(2, 0): 1.0, (0, 2): 1.0}),
        Form(2, 4, {(4, 0): 1.0, (0, 4): 1.0}),
        quadratic_power(3, 2),
    ],
)
def test__is_sos__obvious_sums_of_squares(f):
    result = is_sos(f)

    assert result.verdict == SosVerdict.SOS
    assert result.certificate.valid


def test__is_sos__negative_form_is_not_sos():
    result = is_sos(Form(2, 2, {(2, 0): -1.0, (0, 2): 1.0}))

    assert result.verdict == SosVerdict.NOT_SOS


def test__is_sos__odd_degree_fails():
    with pytest.raises(FormError):
        is_sos(Form(2, 3, {(3, 0): 1.0}))


def test__is_r_sos__negative_r_fails(motzkin):
    with pytest.raises(FormError):
        is_r_sos(motzkin, -1)


@pytest.mark.parametrize("f", [Form(2, 4, {(4, 0): 1.0, (0, 4): 1.0}), quadratic_power(2, 2)])
def test__is_sos_convex__convex_quartics(f):
    result = is_sos_convex(f)

    assert result.verdict == SosVerdict.SOS
    assert result.convex
    assert result.certificate.n_x == 2


def test__is_sos_convex__nonconvex_quartic():
    # x^4 + y^4 - 3 x^2 y^2 has an indefinite Hessian at (1, 1)
    result = is_sos_convex(Form(2, 4, {(4, 0): 1.0, (2, 2): -3.0, (0, 4): 1.0}))

    assert result.verdict == SosVerdict.NOT_SOS


def test__is_r_sos_convex__multiplier_keeps_convex_forms_certified():
    result = is_r_sos_convex(quadratic_power(2, 2), 1)

    assert result.verdict == SosVerdict.SOS
    assert result.r == 1


def test__is_sos__iteration_limit_is_undecided(motzkin):
    result = is_r_sos(motzkin, 1, Tolerances(max_iters=1))

    assert result.verdict == SosVerdict.UNDECIDED
    assert result.status == SolverStatus.ITER_LIMIT
    assert "iteration limit" in result.note


@pytest.mark.parametrize("c", [1e-3, 1.0, 1e3])
class TestScaleInvariance:
    def test__motzkin_verdicts(self, motzkin, c):
        scaled = motzkin.scale(c)

        assert is_sos(scaled).verdict == SosVerdict.NOT_SOS
        assert is_r_sos(scaled, 1).verdict == SosVerdict.SOS

    def test__convex_quartic(self, c):
        result = is_sos_convex(Form(2, 4, {(4, 0): c, (0, 4): c}))

        assert result.verdict == SosVerdict.SOS
        assert result.certificate.valid


@pytest.mark.parametrize(
    "check,f,r",
    [
        (is_r_sos, motzkin_form(), 1),
        (is_r_sos, quadratic_power(3, 2), 0),
        (is_r_sos_convex, Form(2, 4, {(4, 0): 1.0, (0, 4): 1.0}), 0),
    ],
)
def test__hierarchy__passing_level_passes_one_higher(check, f, r):
    assert check(f, r).verdict == SosVerdict.SOS
    assert check(f, r + 1).verdict == SosVerdict.SOS


class TestOctic:
    def test__is_sos_convex__fails(self):
        result = is_sos_convex(octic_counterexample())

        assert result.verdict != SosVerdict.SOS
        assert result.certificate is None

    def test__is_r_sos_convex__multiplier_certifies(self):
        octic = octic_counterexample()

        result = is_r_sos_convex(octic, 1)

        assert result.verdict == SosVerdict.SOS
        assert result.certificate.valid
