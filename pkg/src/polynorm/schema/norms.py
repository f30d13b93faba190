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
from __future__ import annotations

from typing import Any, Optional

from pydantic import field_serializer

from polynorm.forms import Form, form_to_dict

from .base import Field, Schema, StrEnum
from .certificates import GramCertificate


class NormVerdict(StrEnum):
    CERTIFIED = "certified"
    NOT_CERTIFIED = "not_certified"
    REFUTED = "refuted"


class WitnessKind(StrEnum):
    POSITIVITY = "positivity"
    MIDPOINT = "midpoint"
    HESSIAN = "hessian"


class Witness(Schema):
    """A point that refutes a claim and can be re-checked by direct evaluation.

    POSITIVITY: ``f(x) <= 1e-10`` with ``|x| = 1``. MIDPOINT: ``f((x + y) / 2) > (f(x) + f(y)) / 2 + 1e-10``.
    HESSIAN: ``y^T H_f(x) y <= 1e-10`` with ``|x| = |y| = 1``.
    """

    kind: WitnessKind
    x: list[float]
    y: Optional[list[float]] = None
    value: float


class SphereExtrema(Schema):
    min_val: float
    max_val: float
    argmin: list[float]
    argmax: list[float]
    ratio: float
    argmin_y: Optional[list[float]] = None
    argmax_y: Optional[list[float]] = None


class TheoryBounds(Schema):
    """Sufficient multiplier degrees from the sphere-ratio bounds; ``None`` means no finite bound."""

    epsilon: float
    eta: float
    reznick_r: Optional[int] = None
    eta_r: Optional[int] = None


class RungReport(Schema):
    r: int
    deg_q: int = 0
    status: str
    margin: Optional[float] = None
    note: str = ""
    solver: dict[str, Any] = Field(default_factory=dict)


class NormCertificate(Schema):
    c: float = Field(gt=0)
    r: int = Field(ge=0)
    deg_q: int = Field(ge=0)
    q: Form
    gram_q: GramCertificate
    gram_conv: GramCertificate
    gram_pd: GramCertificate

    @field_serializer("q")
    def _serialize_q(self, value: Form) -> Any:
        return form_to_dict(value)


class HessianCertificate(Schema):
    c: float = Field(gt=0)
    r: int = Field(ge=0)
    gram: GramCertificate


class _CertifyResult(Schema):
    verdict: NormVerdict
    witness: Optional[Witness] = None
    rungs: list[RungReport] = Field(default_factory=list)
    bounds: Optional[TheoryBounds] = None
    note: str = ""

    @property
    def solver_trouble(self) -> bool:
        """True when nothing was certified and some rung ended on solver trouble rather than a verdict."""
        if self.verdict != NormVerdict.NOT_CERTIFIED:
            return False
        return any(
            rung.status == "iter_limit" or (rung.status == "undecided" and rung.margin is None) for rung in self.rungs
        )


class NormResult(_CertifyResult):
    certificate: Optional[NormCertificate] = None


class HessianResult(_CertifyResult):
    certificate: Optional[HessianCertificate] = None
