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
from polynorm.common.sampling import sample_sphere

from .fit import FitResult, design_matrix, fit_polynomial_norm
from .io import read_samples, write_points
from .level_set import emit_level_set
from .moments import (
    MomentMethod,
    MomentTable,
    approx_factor,
    ball_moments,
    form_from_moments,
    grundmann_moller,
    moment_form,
    moment_table,
    monte_carlo_moments,
    polytope_moments,
)
from .pipeline import ApproximationReport, ApproxMethod, approximate_target, relative_errors
from .target import TargetKind, TargetNorm, polar_polytope, random_octagon, read_polytope

__all__ = (
    "ApproxMethod",
    "ApproximationReport",
    "FitResult",
    "MomentMethod",
    "MomentTable",
    "TargetKind",
    "TargetNorm",
    "approx_factor",
    "approximate_target",
    "ball_moments",
    "design_matrix",
    "emit_level_set",
    "fit_polynomial_norm",
    "form_from_moments",
    "grundmann_moller",
    "moment_form",
    "moment_table",
    "monte_carlo_moments",
    "polar_polytope",
    "polytope_moments",
    "random_octagon",
    "read_polytope",
    "read_samples",
    "relative_errors",
    "sample_sphere",
    "write_points",
)
