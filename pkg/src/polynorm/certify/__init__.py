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
from .bounds import NO_FINITE_BOUND, eta_bound, reznick_bound
from .extrema import bisphere_extrema, refine, sphere_extrema
from .fixtures import clique_quartic, octic_counterexample
from .norms import (
    NormConstraintMode,
    NormConstraints,
    build_norm_constraints,
    certify_pd_hessian,
    certify_polynomial_norm,
    multiplier_ladder,
)
from .oracle import ORACLE_SAMPLES, WITNESS_TOL, sample_convexity, sample_hessian, sample_positivity

__all__ = (
    "NO_FINITE_BOUND",
    "ORACLE_SAMPLES",
    "WITNESS_TOL",
    "NormConstraintMode",
    "NormConstraints",
    "bisphere_extrema",
    "build_norm_constraints",
    "certify_pd_hessian",
    "certify_polynomial_norm",
    "clique_quartic",
    "eta_bound",
    "multiplier_ladder",
    "octic_counterexample",
    "refine",
    "reznick_bound",
    "sample_convexity",
    "sample_hessian",
    "sample_positivity",
    "sphere_extrema",
)
