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

import logging
import os
from collections.abc import Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional, TypeVar

logger = logging.getLogger(__name__)

THREADS_ENV = "POLYNORM_THREADS"

T = TypeVar("T")
R = TypeVar("R")


def thread_count() -> int:
    """Worker cap from ``POLYNORM_THREADS``; unset or invalid values mean 1."""
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw == "":
        return 1
    try:
        value = int(raw)
    except ValueError:
        logger.warning("ignoring %s=%r: not an integer", THREADS_ENV, raw)
        return 1
    if value < 1:
        logger.warning("ignoring %s=%r: must be at least 1", THREADS_ENV, raw)
        return 1
    return value


def ordered_map(fn: Callable[[T], R], items: Iterable[T], threads: Optional[int] = None) -> list[R]:
    """``[fn(x) for x in items]``, evaluated on up to ``threads`` workers; output order follows input order."""
    work = list(items)
    threads = thread_count() if threads is None else threads
    if threads <= 1 or len(work) <= 1:
        return [fn(x) for x in work]
    with ThreadPoolExecutor(max_workers=min(threads, len(work))) as pool:
        return list(pool.map(fn, work))


def first_success(
    fn: Callable[[T], R],
    items: Iterable[T],
    accept: Callable[[R], bool],
    threads: Optional[int] = None,
) -> tuple[Optional[int], list[R]]:
    """Evaluates ``fn`` over ``items`` in waves of ``threads`` and stops after the first wave with an accepted result.

    Returns the index of the lowest accepted item (or ``None``) and every result computed, in input order.
    The chosen index does not depend on the thread count.
    """
    work = list(items)
    threads = thread_count() if threads is None else threads
    results: list[R] = []
    for start in range(0, len(work), max(1, threads)):
        wave = ordered_map(fn, work[start : start + max(1, threads)], threads)
        for offset, result in enumerate(wave):
            results.append(result)
            if accept(result):
                return start + offset, results
    return None, results
