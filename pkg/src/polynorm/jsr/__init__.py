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
from .bounds import jsr_lower_bound, spectral_radius
from .certify import (
    DEFAULT_DEGREES,
    DegreeReport,
    JsrCertificate,
    JsrResult,
    JsrUpperBound,
    JsrVerdict,
    jsr_certify,
    jsr_upper_bound,
)
from .family import MatrixFamily, read_matrices
from .figure import ContractionFigure, emit_contraction_figure, write_contraction_figure

__all__ = (
    "DEFAULT_DEGREES",
    "ContractionFigure",
    "DegreeReport",
    "JsrCertificate",
    "JsrResult",
    "JsrUpperBound",
    "JsrVerdict",
    "MatrixFamily",
    "emit_contraction_figure",
    "jsr_certify",
    "jsr_lower_bound",
    "jsr_upper_bound",
    "read_matrices",
    "spectral_radius",
    "write_contraction_figure",
)
