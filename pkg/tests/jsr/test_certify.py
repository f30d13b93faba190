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
import json

import numpy as np
import pytest

from polynorm.common.sampling import sample_sphere
from polynorm.errors import FormError, InputFormatError
from polynorm.forms import compose_linear, hessian_biform, quadratic_power
from polynorm.jsr import (
    JsrVerdict,
    MatrixFamily,
    emit_contraction_figure,
    jsr_certify,
    jsr_lower_bound,
    jsr_upper_bound,
    read_matrices,
    write_contraction_figure,
)
from polynorm.sos import validate_certificate

SCALE = 3.924
SWITCHED_PAIR = MatrixFamily(
    [np.array([[-1.0, -1.0], [4.0, 0.0]]) / SCALE, np.array([[3.0, 3.0], [-2.0, 1.0]]) / SCALE]
)
# Q with Q - A_i^T Q A_i positive definite for both matrices of the pair above
SWITCHED_PAIR_QUADRATIC = np.array([[29.91, 8.67], [8.67, 25.84]])
# joint spectral radius 1 / 1.3, contracted by |x|_4 but by no quadratic norm
CORNER_PAIR = MatrixFamily([np.array([[1.0, 0.0], [1.0, 0.0]]) / 1.3, np.array([[0.0, 1.0], [0.0, -1.0]]) / 1.3])
NILPOTENT_PAIR = MatrixFamily([[[0.0, 2.0], [0.0, 0.0]], [[0.0, 0.0], [2.0, 0.0]]])
HALF_IDENTITY = MatrixFamily([0.5 * np.eye(2)])


@pytest.fixture(scope="module")
def switched_pair_result():
    return jsr_certify(SWITCHED_PAIR, [2, 4, 6])


@pytest.fixture(scope="module")
def corner_pair_result():
    return jsr_certify(CORNER_PAIR, [2, 4, 6])


def _validates(cert, family):
    offset = quadratic_power(family.n, cert.d // 2)
    conv = validate_certificate(hessian_biform(cert.f - offset), cert.r, cert.gram_conv)
    contract = [
        validate_certificate(cert.f - compose_linear(cert.f, a) - offset, 0, gram)
        for a, gram in zip(family, cert.gram_contract)
    ]
    return conv.valid and all(report.valid for report in contract)


class TestSwitchedPair:
    def test__quadratic_norm_exists(self):
        for a in SWITCHED_PAIR:
            decrease = SWITCHED_PAIR_QUADRATIC - a.T @ SWITCHED_PAIR_QUADRATIC @ a

            assert np.linalg.eigvalsh(decrease)[0] > 1.9

    def test__certified_at_degree_two(self, switched_pair_result):
        assert switched_pair_result.verdict == JsrVerdict.CERTIFIED
        assert switched_pair_result.outcomes() == {2: "certified"}
        assert switched_pair_result.certificate.d == 2

    def test__certificates_validate_independently(self, switched_pair_result):
        assert _validates(switched_pair_result.certificate, SWITCHED_PAIR)

    def test__contraction_spot_check(self, switched_pair_result):
        assert switched_pair_result.certificate.contraction_margin > 0.0

    def test__figure_images_stay_inside(self, switched_pair_result):
        figure = emit_contraction_figure(switched_pair_result.certificate, SWITCHED_PAIR, resolution=90)

        assert figure.contained
        assert len(figure.images) == 2
        assert figure.level_set.shape == (90, 2)

    def test__half_scaled_family_is_certified_at_same_degree(self):
        result = jsr_certify(SWITCHED_PAIR.scaled(0.5), [2])

        assert result.verdict == JsrVerdict.CERTIFIED


class TestCornerPair:
    def test__no_quadratic_norm_contracts(self):
        rng = np.random.default_rng(7)
        first, second = CORNER_PAIR
        for _ in range(200):
            root = rng.standard_normal((2, 2))
            q = root @ root.T + 1e-3 * np.eye(2)
            # sum of the two diagonal decreases equals (q11 + q22) (1 - 2 / 1.69)
            total = (q - first.T @ q @ first)[0, 0] + (q - second.T @ q @ second)[1, 1]

            assert total < 0.0

    def test__lower_bound(self):
        assert jsr_lower_bound(CORNER_PAIR, 4) == pytest.approx(1.0 / 1.3)

    def test__needs_degree_four(self, corner_pair_result):
        assert corner_pair_result.verdict == JsrVerdict.CERTIFIED
        assert corner_pair_result.outcomes() == {2: "infeasible", 4: "certified"}
        assert corner_pair_result.certificate.d == 4

    def test__certificates_validate_independently(self, corner_pair_result):
        assert _validates(corner_pair_result.certificate, CORNER_PAIR)

    def test__quartic_norm_contracts(self):
        x = sample_sphere(2, 500, 3)
        quartic = np.sum(x**4, axis=1)
        for a in CORNER_PAIR:
            ratio = np.sum((x @ a.T) ** 4, axis=1) / quartic

            # 2 / 1.3^4 ~ 0.70
            assert np.max(ratio) < 0.71


def test__jsr_certify__half_identity():
    result = jsr_certify(HALF_IDENTITY, [2])

    cert = result.certificate
    assert result.verdict == JsrVerdict.CERTIFIED
    # 0.75 f >= |x|^2
    assert cert.f.coefficient((2, 0)) >= 4.0 / 3.0 - 1e-6
    assert cert.contraction_margin == pytest.approx(0.5, abs=1e-6)


def test__jsr_certify__nilpotent_pair_is_not_certified():
    result = jsr_certify(NILPOTENT_PAIR, [2, 4, 6])

    assert result.verdict == JsrVerdict.NOT_CERTIFIED
    assert result.certificate is None
    assert list(result.outcomes()) == [2, 4, 6]
    assert "certified" not in result.outcomes().values()


def test__jsr_certify__rejects_odd_degree():
    with pytest.raises(FormError):
        jsr_certify(HALF_IDENTITY, [2, 3])


def test__jsr_upper_bound__half_identity_is_certified():
    bound = jsr_upper_bound(HALF_IDENTITY, 2, tol=0.05)

    # seeded at 0.5 (1 + tol), already within tol of the lower bound
    assert bound.certified
    assert 0.5 < bound.value <= 0.5 + 0.05
    assert bound.lower == pytest.approx(0.5)
    assert bound.steps == 1


def test__jsr_upper_bound__switched_pair():
    bound = jsr_upper_bound(SWITCHED_PAIR, 2, tol=1e-2)

    assert bound.certified
    assert bound.value < 1.0
    assert bound.value >= jsr_lower_bound(SWITCHED_PAIR, 4) - 1e-2


def test__jsr_upper_bound__corner_pair_by_degree():
    quadratic = jsr_upper_bound(CORNER_PAIR, 2, tol=1e-2)
    quartic = jsr_upper_bound(CORNER_PAIR, 4, tol=1e-2)

    # the best quadratic norm gives sqrt(2) / 1.3 > 1
    assert quadratic.certified
    assert np.sqrt(2.0) / 1.3 - 1e-6 <= quadratic.value <= np.sqrt(2.0) / 1.3 + 3e-2
    assert quartic.certified
    assert quartic.value < 1.0


def test__jsr_upper_bound__rejects_bad_arguments():
    with pytest.raises(ValueError, match="tol"):
        jsr_upper_bound(HALF_IDENTITY, 2, tol=0.0)
    with pytest.raises(FormError):
        jsr_upper_bound(HALF_IDENTITY, 5, tol=1e-3)


def test__contraction_figure__half_identity(tmp_path):
    cert = jsr_certify(HALF_IDENTITY, [2]).certificate
    figure = emit_contraction_figure(cert, HALF_IDENTITY, resolution=16)

    np.testing.assert_allclose(figure.images[0], 0.5 * figure.level_set)
    assert figure.margin == pytest.approx(0.5, abs=1e-9)

    path = tmp_path / "figure.csv"
    write_contraction_figure(figure, path)

    rows = path.read_text().splitlines()
    assert rows[0] == "curve,x1,x2"
    assert len(rows) == 1 + 2 * 16
    assert rows[-1].startswith("A1,")


def test__read_matrices(tmp_path):
    path = tmp_path / "family.json"
    path.write_text(json.dumps({"n": 2, "matrices": [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]}))

    family = read_matrices(path)

    assert len(family) == 2
    assert family.n == 2
    np.testing.assert_array_equal(family[1], [[0.0, 1.0], [1.0, 0.0]])


@pytest.mark.parametrize(
    "content,match",
    [
        ("[1, 2", "invalid JSON"),
        (json.dumps({"n": 2, "matrices": [[[1, 0], [0]]]}), "not 2x2"),
        (json.dumps({"n": 2, "matrices": []}), "matrices"),
        (json.dumps({"n": 0, "matrices": [[[1]]]}), "n"),
    ],
)
def test__read_matrices__malformed(tmp_path, content, match):
    path = tmp_path / "family.json"
    path.write_text(content)

    with pytest.raises(InputFormatError, match=match):
        read_matrices(path)


def test__matrix_family__rejects_mixed_shapes():
    with pytest.raises(FormError, match="shape"):
        MatrixFamily([np.eye(2), np.eye(3)])
