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
"""Multiplier degrees that are guaranteed to suffice, from the sphere ratios of a form and of its Hessian."""

from __future__ import annotations

import math
from typing import Optional

NO_FINITE_BOUND: Optional[int] = None


def _check_ratio(name: str, value: float) -> None:
    if value < 0.0:
        raise ValueError(f"{name} must be nonnegative, got {value}")
    if value > 1.0:
        raise ValueError(f"{name} must be at most 1, got {value}")


def _smallest_r(bound: float) -> int:
    return max(0, math.ceil(bound))


def reznick_bound(eps: float, n: int, d: int) -> Optional[int]:
    """Smallest ``r >= n d (d - 1) / (4 log 2 eps) - (n + d) / 2``; ``(sum x_i^2)^r f`` is then SOS."""
    _check_ratio("eps", eps)
    if eps == 0.0:
        return NO_FINITE_BOUND
    return _smallest_r(n * d * (d - 1) / (4.0 * math.log(2.0) * eps) - (n + d) / 2.0)


def eta_bound(eta: float, n: int, d: int) -> Optional[int]:
    """Smallest ``r >= n (d - 2)(d - 3) / (4 log 2 eta) - (n + d - 2) / 2 - d``; f is then r-sos-convex."""
    _check_ratio("eta", eta)
    if eta == 0.0:
        return NO_FINITE_BOUND
    return _smallest_r(n * (d - 2) * (d - 3) / (4.0 * math.log(2.0) * eta) - (n + d - 2) / 2.0 - d)
