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
import logging
import pathlib
from typing import Any, Iterable

import yaml

from polynorm.errors import InputFormatError

logger = logging.getLogger(__name__)

RunFileValues = dict[str, Any]


def split_known(values: RunFileValues, known: Iterable[str]) -> tuple[RunFileValues, list[str]]:
    allowed = set(known)
    unknown = sorted(k for k in values if k not in allowed)
    return {k: v for k, v in values.items() if k in allowed}, unknown


def load_run_file(yaml_path: pathlib.Path, known: Iterable[str]) -> RunFileValues:
    """
    Read run defaults from a YAML file

    Returns
    -------
    The values whose keys are in ``known``; other keys are logged and dropped.
    Dashes in keys are read as underscores, so ``r-max`` and ``r_max`` are the same key.
    """
    with open(yaml_path) as f:
        raw = yaml.safe_load(f)

    if raw is None:
        return {}
    if not isinstance(raw, dict):
        raise InputFormatError(str(yaml_path), "a run file must be a mapping of option names to values")

    values = {str(k).replace("-", "_"): v for k, v in raw.items()}
    accepted, unknown = split_known(values, known)

    for key in unknown:
        logger.warning("%s: ignoring unknown option '%s'", yaml_path, key)

    return accepted
