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
"""JSON (de)serialization of forms.

The wire format is ``{"n_vars": int, "degree": int, "terms": [{"exponents": [...], "coeff": float}]}``
with terms in graded lexicographic order.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from pydantic import ValidationError

from polynorm.errors import FormFormatError
from polynorm.forms.form import Form
from polynorm.schema.forms import FormFile, TermRecord


def form_from_dict(data: Any) -> Form:
    try:
        record = FormFile.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        loc = [str(p) for p in first["loc"]]
        term_index = int(loc[1]) if len(loc) > 1 and loc[0] == "terms" and loc[1].isdigit() else None
        raise FormFormatError(f"{'.'.join(loc)}: {first['msg']}", term_index=term_index) from e

    for k, term in enumerate(record.terms):
        if len(term.exponents) != record.n_vars:
            raise FormFormatError(
                f"expected {record.n_vars} exponents, got {len(term.exponents)}",
                term_index=k,
                exponents=term.exponents,
            )
        if any(e < 0 for e in term.exponents):
            raise FormFormatError("negative exponent", term_index=k, exponents=term.exponents)
        if sum(term.exponents) != record.degree:
            raise FormFormatError(
                f"total degree {sum(term.exponents)} differs from declared degree {record.degree}",
                term_index=k,
                exponents=term.exponents,
            )
    terms: dict[tuple[int, ...], float] = {}
    for term in record.terms:
        key = tuple(term.exponents)
        terms[key] = terms.get(key, 0.0) + term.coeff
    return Form(record.n_vars, record.degree, terms)


def form_to_dict(f: Form) -> dict[str, Any]:
    record = FormFile(
        n_vars=f.n_vars,
        degree=f.degree,
        terms=[TermRecord(exponents=list(alpha), coeff=f.terms[alpha]) for alpha in f.support()],
    )
    return record.model_dump()


def read_form(path: Union[str, Path]) -> Form:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise FormFormatError(f"{path}:{e.lineno}: invalid JSON ({e.msg})") from e
    return form_from_dict(data)


def write_form(f: Form, path: Union[str, Path]) -> None:
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(form_to_dict(f), indent=2) + "\n")
