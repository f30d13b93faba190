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

from typing import Optional


class PolynormError(Exception):
    """Base class for every error raised by polynorm."""


class FormError(PolynormError, ValueError):
    """A form was used with the wrong number of variables or the wrong degree."""


class FormFormatError(PolynormError):
    """A serialized form could not be parsed."""

    def __init__(self, message: str, term_index: Optional[int] = None, exponents: Optional[list[int]] = None):
        self.term_index = term_index
        self.exponents = exponents
        where = ""
        if term_index is not None:
            where = f"terms[{term_index}]"
            if exponents is not None:
                where += f" (exponents {exponents})"
            where += ": "
        super().__init__(where + message)


class InputFormatError(PolynormError):
    """A CSV or JSON input file is malformed. Carries the location for diagnostics."""

    def __init__(self, path: str, message: str, line: Optional[int] = None, field: Optional[str] = None):
        self.path = path
        self.line = line
        self.field = field
        location = path
        if line is not None:
            location += f":{line}"
        if field is not None:
            location += f" [{field}]"
        super().__init__(f"{location}: {message}")


class CertificateError(PolynormError):
    """A Gram certificate does not match the polynomial it is checked against."""


class ConicError(PolynormError):
    """A conic problem is malformed, or an SDPA file cannot be read or written."""


class SolverError(PolynormError):
    """A dense numerical routine failed to converge."""


class GeometryError(PolynormError, ValueError):
    """A polytope is degenerate, not origin-symmetric, or does not contain the origin in its interior."""


__all__ = (
    "PolynormError",
    "FormError",
    "FormFormatError",
    "InputFormatError",
    "CertificateError",
    "ConicError",
    "SolverError",
    "GeometryError",
)
