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

from polynorm.forms import Form


def motzkin_form() -> Form:
    """The homogenized Motzkin form ``x^4 y^2 + x^2 y^4 - 3 x^2 y^2 z^2 + z^6``: nonnegative, not SOS, 1-SOS."""
    return Form(
        3,
        6,
        {
            (4, 2, 0): 1.0,
            (2, 4, 0): 1.0,
            (2, 2, 2): -3.0,
            (0, 0, 6): 1.0,
        },
    )
