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
from .biform import Biform
from .calculus import (
    PolyMatrix,
    ball_moment,
    compose_linear,
    evaluate,
    gradient,
    hessian,
    hessian_biform,
    multinomial,
    quadratic_power,
    sphere_moment,
)
from .form import Form, MultiIndex, monomials, multiply
from .io import form_from_dict, form_to_dict, read_form, write_form

__all__ = (
    "Biform",
    "Form",
    "MultiIndex",
    "PolyMatrix",
    "ball_moment",
    "compose_linear",
    "evaluate",
    "form_from_dict",
    "form_to_dict",
    "gradient",
    "hessian",
    "hessian_biform",
    "monomials",
    "multinomial",
    "multiply",
    "quadratic_power",
    "read_form",
    "sphere_moment",
    "write_form",
)
