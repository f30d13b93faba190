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
from .basis import MonomialBasis, biform_basis, monomial_basis
from .checks import SosResult, SosVerdict, is_r_sos, is_r_sos_convex, is_sos, is_sos_convex, sos_program
from .fixtures import motzkin_form
from .program import AffineForm, ProgramSolution, SosBlock, SosProgram, sos_constraint
from .validate import build_certificate, gram_form, multiplied_target, validate_certificate

__all__ = (
    "AffineForm",
    "MonomialBasis",
    "ProgramSolution",
    "SosBlock",
    "SosProgram",
    "SosResult",
    "SosVerdict",
    "biform_basis",
    "build_certificate",
    "gram_form",
    "is_r_sos",
    "is_r_sos_convex",
    "is_sos",
    "is_sos_convex",
    "monomial_basis",
    "motzkin_form",
    "multiplied_target",
    "sos_constraint",
    "sos_program",
    "validate_certificate",
)
