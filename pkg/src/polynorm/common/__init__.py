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
from .config_file import load_run_file
from .parallel import THREADS_ENV, first_success, ordered_map, thread_count
from .report_collector import TIMINGS_KEY, ReportCollector
from .sampling import axis_points, sample_sphere, sobol_bisphere, sobol_sphere

__all__ = (
    "THREADS_ENV",
    "TIMINGS_KEY",
    "ReportCollector",
    "axis_points",
    "first_success",
    "load_run_file",
    "ordered_map",
    "sample_sphere",
    "sobol_bisphere",
    "sobol_sphere",
    "thread_count",
)
