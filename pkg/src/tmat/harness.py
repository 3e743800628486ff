"""Batch algorithm runner over property/size-filtered families.

test_algorithm constructs every matching family at every requested size
(default parameters), applies a user function to the lazy handle, and records
the outcomes. Errors follow the configured policy: abort (default), convert
to warnings, or ignore; when both flags are set, ignoring wins.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from time import perf_counter_ns
from typing import Callable, Optional, Sequence

from . import registry
from .core import materialize
from .errors import HarnessError
from .families import construct, feasible_size
from .linalg import determinant, entry_sum, frobenius_norm, is_symmetric

OK = "ok"
WARNING = "warning"


@dataclass(frozen=True)
class ErrorPolicy:
    errors_as_warnings: bool = False
    ignore_errors: bool = False

    @property
    def mode(self) -> str:
        # ignoring takes precedence when both flags are set
        if self.ignore_errors:
            return "ignore"
        if self.errors_as_warnings:
            return "warn"
        return "strict"


@dataclass(frozen=True)
class HarnessRecord:
    family: str
    size: int
    status: str  # "ok" | "warning"
    value: object = None
    message: str = ""


def _run_one(family_id: str, size: int, fn: Callable, materialize_first: bool):
    params = feasible_size(family_id, size)
    if params is None:
        raise HarnessError(f"size {size} is infeasible for family '{family_id}'")
    handle = construct(family_id, params)
    arg = materialize(handle) if materialize_first else handle
    return fn(arg)


def test_algorithm(
    fn: Callable,
    sizes: Sequence[int],
    *,
    props: Optional[Sequence[str]] = None,
    groups: Optional[Sequence[str]] = None,
    exclude: Sequence[str] = (),
    policy: Optional[ErrorPolicy] = None,
    errors_as_warnings: bool = False,
    ignore_errors: bool = False,
    materialize_first: bool = False,
    parallel: bool = False,
) -> list[HarnessRecord]:
    """Apply fn to every matching (family, size) pair, in registration order.

    fn receives the lazy handle (or a dense copy with materialize_first=True,
    for algorithms that need explicit storage). parallel=True runs the pairs
    on a thread pool; fn must then be safe for concurrent invocation, and the
    record order is deterministic either way.
    """
    if not sizes:
        raise HarnessError("sizes must be non-empty")
    for s in sizes:
        if s < 1:
            raise HarnessError(f"sizes must be >= 1, got {s}")
    if policy is None:
        policy = ErrorPolicy(errors_as_warnings=errors_as_warnings, ignore_errors=ignore_errors)
    mode = policy.mode

    matching = registry.list_matrices(list(groups) if groups else None, list(props) if props else None)
    excluded = set(exclude)
    matching = [f for f in matching if f not in excluded]
    tasks = [(family_id, size) for family_id in matching for size in sizes]

    def worker(task):
        family_id, size = task
        try:
            return (OK, _run_one(family_id, size, fn, materialize_first))
        except Exception as exc:  # policy decides below
            return ("error", exc)

    if parallel and tasks:
        with ThreadPoolExecutor() as pool:
            outcomes = list(pool.map(worker, tasks))
    else:
        outcomes = None

    records: list[HarnessRecord] = []
    for index, (family_id, size) in enumerate(tasks):
        status, payload = outcomes[index] if outcomes is not None else worker((family_id, size))
        if status == OK:
            records.append(HarnessRecord(family_id, size, OK, value=payload))
            continue
        exc = payload
        if mode == "ignore":
            continue
        if mode == "warn":
            message = f"{family_id} at size {size}: {exc}"
            warnings.warn(message)
            records.append(HarnessRecord(family_id, size, WARNING, message=message))
            continue
        raise HarnessError(f"{family_id} at size {size}: {exc}") from exc
    return records


def _fn_det_positive(handle):
    return determinant(handle) > 0


def _fn_sum(handle):
    return entry_sum(handle)


def _fn_issymmetric(handle):
    return is_symmetric(handle)


def _fn_timing(handle):
    start = perf_counter_ns()
    frobenius_norm(handle)
    return perf_counter_ns() - start


# Algorithms runnable from the CLI, where arbitrary closures cannot cross the
# process boundary. "timing" reports the wall-clock nanoseconds of one full
# streamed pass over the matrix.
FN_MENU: dict[str, Callable] = {
    "det-positive": _fn_det_positive,
    "sum": _fn_sum,
    "issymmetric": _fn_issymmetric,
    "timing": _fn_timing,
}

__all__ = [
    "ErrorPolicy",
    "HarnessRecord",
    "test_algorithm",
    "feasible_size",
    "FN_MENU",
    "OK",
    "WARNING",
]
