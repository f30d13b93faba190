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

from polynorm.errors import CertificateError
from polynorm.forms import Form, hessian_biform
from polynorm.sos import build_certificate, gram_form, multiplied_target, validate_certificate


@pytest.fixture
def sum_squares() -> Form:
    return Form(2, 2, {(2, 0): 1.0, (0, 2): 1.0})


def test__gram_form__cross_terms_are_doubled():
    coefficients = gram_form([(1, 0), (0, 1)], np.array([[1.0, 0.5], [0.5, 2.0]]))

    assert coefficients == {(2, 0): 1.0, (1, 1): 1.0, (0, 2): 2.0}


def test__validate_certificate__identity_gram(sum_squares):
    report = validate_certificate(sum_squares, 0, basis=[(1, 0), (0, 1)], gram=np.eye(2))

    assert report.valid
    assert report.residual == 0.0
    assert report.min_eig == pytest.approx(1.0)


def test__validate_certificate__wrong_coefficients(sum_squares):
    report = validate_certificate(sum_squares, 0, basis=[(1, 0), (0, 1)], gram=np.diag([1.0, 1.5]))

    assert not report.valid
    assert report.residual == pytest.approx(0.5)


def test__validate_certificate__indefinite_gram():
    # x^2 - y^2 has a unique Gram matrix, and it is indefinite
    f = Form(2, 2, {(2, 0): 1.0, (0, 2): -1.0})

    report = validate_certificate(f, 0, basis=[(1, 0), (0, 1)], gram=np.diag([1.0, -1.0]))

    assert report.residual == 0.0
    assert not report.valid


def test__validate_certificate__asymmetry_counts_as_residual(sum_squares):
    gram = np.array([[1.0, 0.3], [-0.3, 1.0]])

    report = validate_certificate(sum_squares, 0, basis=[(1, 0), (0, 1)], gram=gram)

    assert report.residual == pytest.approx(0.6)
    assert not report.valid


def test__validate_certificate__basis_mismatch(sum_squares):
    with pytest.raises(CertificateError):
        validate_certificate(sum_squares, 0, basis=[(2, 0), (0, 2)], gram=np.eye(2))
    with pytest.raises(CertificateError):
        validate_certificate(sum_squares, 0, basis=[(1, 0)], gram=np.eye(2))
    with pytest.raises(CertificateError):
        validate_certificate(sum_squares, 0)


def test__multiplied_target__biform_multiplier_acts_on_x():
    quartic = Form(2, 4, {(4, 0): 1.0, (0, 4): 1.0})

    stacked = multiplied_target(hessian_biform(quartic), 1)

    assert stacked.n_vars == 4
    assert stacked.degree == 6
    assert stacked.coefficient((4, 0, 2, 0)) == pytest.approx(12.0)


def test__build_certificate__sets_split_for_biforms():
    quartic = Form(2, 4, {(4, 0): 1.0, (0, 4): 1.0})
    basis = [(1, 0, 1, 0), (0, 1, 1, 0), (1, 0, 0, 1), (0, 1, 0, 1)]
    gram = np.diag([12.0, 0.0, 0.0, 12.0])

    cert = build_certificate(hessian_biform(quartic), 0, basis, gram)

    assert cert.n_x == 2
    assert cert.valid
