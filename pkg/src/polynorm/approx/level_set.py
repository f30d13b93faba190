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

import numpy as np

from polynorm.certify.oracle import sample_positivity
from polynorm.errors import FormError
from polynorm.forms import Form


def emit_level_set(f: Form, level: float = 1.0, resolution: int = 360) -> np.ndarray:
    """Points ``r(theta) (cos theta, sin theta)`` on ``{f = level}`` for a positive definite bivariate form.

    Positivity is checked on the grid directions and then with the sampling oracle, so a form that
    dips to zero between grid directions is rejected too.
    """
    if f.n_vars != 2:
        raise FormError(f"level sets are drawn for bivariate forms only, got {f.n_vars} variables")
    if f.degree < 1:
        raise FormError("a constant form has no level sets")
    if level <= 0.0:
        raise ValueError(f"level must be positive, got {level}")
    theta = 2.0 * np.pi * np.arange(resolution) / resolution
    directions = np.stack([np.cos(theta), np.sin(theta)], axis=1)
    values = np.atleast_1d(f(directions))
    bad = np.flatnonzero(values <= 0.0)
    if bad.size:
        raise FormError(f"form is not positive along theta={theta[bad[0]]:.6f} (value {values[bad[0]]:.3e})")
    witness = sample_positivity(f)
    if witness is not None:
        raise FormError(f"form is not positive at x={np.round(witness.x, 6).tolist()} (value {witness.value:.3e})")
    radius = (level / values) ** (1.0 / f.degree)
    return directions * radius[:, None]
