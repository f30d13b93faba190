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
from .problem import ConicProblem, pack_block, svec_index, svec_size, unpack_block
from .sdpa import export_sdpa, import_sdpa
from .solution import ConicSolution, SolverStatus
from .solver import polish, smallest_eigenvalue, solve, solve_feasibility

__all__ = (
    "ConicProblem",
    "ConicSolution",
    "SolverStatus",
    "export_sdpa",
    "import_sdpa",
    "pack_block",
    "polish",
    "smallest_eigenvalue",
    "solve",
    "solve_feasibility",
    "svec_index",
    "svec_size",
    "unpack_block",
)
