"""Domain types and the tuple/path bijection for the sock-sorting process.

A sorting run of ``n`` pairs is summarized two equivalent ways:

* a :class:`DyckPath` ``(x_1, ..., x_2n)``: the number of unmatched socks
  on the table after each draw, with ``x_0 = 0`` implicit and never stored;
* a :class:`KTuple` ``(k_1, ..., k_n)``: the table height from which each
  of the ``n`` down-steps is taken, i.e. the table count at the moment
  each pair is completed.

Indices in documentation, error messages and CLI output are 1-based to
match the usual mathematical convention; internal storage is plain
0-based tuples and never leaks.

A tuple is *valid* exactly when some Dyck path realizes it:
``k_{i+1} >= k_i - 1`` for all ``i < n`` and ``k_n = 1``.
:func:`ktuple_of_path` and :func:`path_of_ktuple` are mutually inverse
bijections between valid tuples and Dyck paths of the same order.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator

from .errors import (
    MalformedInputError,
    PathValidityError,
    ResourceLimitError,
    TupleValidityError,
)

__all__ = [
    "DEFAULT_ENUMERATION_CAP",
    "KTuple",
    "DyckPath",
    "catalan",
    "validate_ktuple",
    "ktuple_of_path",
    "path_of_ktuple",
    "down_step_indices",
    "dyck_paths",
]

# Catalan(14) = 2,674,440 paths; past this, exhaustive enumeration stops
# being an interactive operation. Overridable per call.
DEFAULT_ENUMERATION_CAP = 14


def catalan(n: int) -> int:
    """Number of Dyck paths of semilength ``n`` (and of valid tuples of order ``n``)."""
    return math.comb(2 * n, n) // (n + 1)


class KTuple(tuple):
    """Completion-height tuple ``(k_1, ..., k_n)``.

    Entry ``k_i`` is the number of socks on the table when the ``i``-th
    pair is completed. Construction only enforces well-formedness
    (non-empty, integer entries >= 1); whether a Dyck path realizes the
    tuple is a separate question answered by :func:`validate_ktuple`,
    because invalid tuples are still meaningful inputs (they carry
    probability zero).
    """

    __slots__ = ()

    def __new__(cls, entries: Iterable[int]) -> "KTuple":
        if isinstance(entries, KTuple):
            return entries
        vals = tuple(entries)
        if not vals:
            raise MalformedInputError("tuple must be non-empty")
        for i, v in enumerate(vals, 1):
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise MalformedInputError(
                    f"tuple entry k_{i} = {v!r} is not a positive integer"
                )
        return super().__new__(cls, vals)

    @classmethod
    def _trusted(cls, entries: tuple) -> "KTuple":
        # Hot-path constructor for callers that guarantee well-formedness
        # (enumeration, extraction); skips per-entry validation.
        return tuple.__new__(cls, entries)

    @property
    def n(self) -> int:
        """Number of sock pairs."""
        return len(self)

    def __repr__(self) -> str:
        return f"KTuple({super().__repr__()})"

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self) + ")"


class DyckPath(tuple):
    """Table-height sequence ``(x_1, ..., x_2n)`` of a sorting run.

    Invariants, checked at construction: ``x_1 = 1``, consecutive heights
    differ by exactly 1, all heights are >= 0, and ``x_2n = 0`` (which
    forces even length and equally many up- and down-steps). The implicit
    starting height ``x_0 = 0`` is never stored. Violations raise
    :class:`PathValidityError` naming the first offending 1-based index.
    """

    __slots__ = ()

    def __new__(cls, heights: Iterable[int]) -> "DyckPath":
        if isinstance(heights, DyckPath):
            return heights
        x = tuple(heights)
        if not x:
            raise PathValidityError("path must be non-empty", index=1)
        for i, v in enumerate(x, 1):
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise PathValidityError(
                    f"height x_{i} = {v!r} is not a non-negative integer", index=i
                )
        if x[0] != 1:
            raise PathValidityError(f"x_1 = {x[0]} but a path must start at 1", index=1)
        for i in range(1, len(x)):
            if abs(x[i] - x[i - 1]) != 1:
                raise PathValidityError(
                    f"x_{i + 1} = {x[i]} does not differ from x_{i} = {x[i - 1]} by 1",
                    index=i + 1,
                )
        if len(x) % 2:
            raise PathValidityError(
                f"path has odd length {len(x)}; draws come in completed pairs",
                index=len(x),
            )
        if x[-1] != 0:
            raise PathValidityError(
                f"x_{len(x)} = {x[-1]} but a path must end at 0", index=len(x)
            )
        return super().__new__(cls, x)

    @classmethod
    def _trusted(cls, heights: tuple) -> "DyckPath":
        # For internal construction sites that guarantee the invariants.
        return tuple.__new__(cls, heights)

    @property
    def n(self) -> int:
        """Semilength: the number of sock pairs."""
        return len(self) // 2

    @property
    def max_height(self) -> int:
        return max(self)

    def __repr__(self) -> str:
        return f"DyckPath({super().__repr__()})"

    def __str__(self) -> str:
        return " ".join(str(v) for v in self)


def _first_violation(k: tuple) -> tuple[int, str] | None:
    """First 1-based index where ``k`` breaks the realizability rule, or None."""
    n = len(k)
    for i in range(n - 1):
        if k[i + 1] < k[i] - 1:
            return (
                i + 2,
                f"k_{i + 2} >= k_{i + 1} - 1 violated: "
                f"k_{i + 2} = {k[i + 1]} < {k[i] - 1}",
            )
    if k[n - 1] != 1:
        return n, f"k_n = 1 violated: k_{n} = {k[n - 1]}"
    return None


def validate_ktuple(t: KTuple | Iterable[int]) -> bool:
    """True iff some Dyck path realizes ``t``.

    The rule: each completion can drop the table count by at most one
    (``k_{i+1} >= k_i - 1``) and the last completion empties the table
    (``k_n = 1``). Malformed input (empty, entries < 1) raises
    :class:`MalformedInputError` rather than returning False.
    """
    return _first_violation(KTuple(t)) is None


def down_step_indices(p: DyckPath | Iterable[int]) -> tuple[int, ...]:
    """1-based indices ``i`` with ``x_{i+1} = x_i - 1``, in increasing order.

    These are the positions from which the path steps down; the height at
    the ``j``-th of them is ``k_j``. Note the final index is always
    ``2n - 1``.
    """
    x = DyckPath(p)
    return tuple(i for i in range(1, len(x)) if x[i] == x[i - 1] - 1)


def ktuple_of_path(p: DyckPath | Iterable[int]) -> KTuple:
    """Extract the completion-height tuple of a Dyck path.

    Reads off the height at each position from which the path steps down.
    The result is always a valid tuple of the same order.
    """
    x = DyckPath(p)
    ks = tuple(x[i - 1] for i in down_step_indices(x))
    return KTuple._trusted(ks)


def path_of_ktuple(t: KTuple | Iterable[int]) -> DyckPath:
    """Reconstruct the unique Dyck path realizing a valid tuple.

    The path rises to ``k_1``, then for each completion takes one
    down-step and rises to the next required height. Raises
    :class:`TupleValidityError` naming the first index at which ``t``
    breaks the realizability rule.
    """
    k = KTuple(t)
    violation = _first_violation(k)
    if violation is not None:
        index, reason = violation
        raise TupleValidityError(f"no Dyck path realizes {k}: {reason}", index=index)
    n = len(k)
    x = list(range(1, k[0] + 1))
    for j in range(n):
        x.append(k[j] - 1)
        if j + 1 < n:
            x.extend(range(k[j], k[j + 1] + 1))
    assert len(x) == 2 * n
    return DyckPath._trusted(tuple(x))


def _check_cap(n: int, cap: int | None, what: str) -> None:
    limit = DEFAULT_ENUMERATION_CAP if cap is None else cap
    if n < 1:
        raise MalformedInputError(f"n must be a positive integer, got {n!r}")
    if n > limit:
        raise ResourceLimitError(
            f"{what} for n = {n} exceeds the enumeration cap {limit} "
            f"(Catalan({n}) = {catalan(n)} objects); pass a higher cap to override",
            n=n,
            cap=limit,
        )


def dyck_paths(n: int, *, cap: int | None = None) -> Iterator[DyckPath]:
    """Yield every Dyck path of semilength ``n`` exactly once.

    Paths come in lexicographic order of their height sequences; the
    total count is ``catalan(n)``. The generator keeps a single mutable
    path and steps it to its lexicographic successor: find the rightmost
    down-step that can be flipped upward and still return to 0 in the
    remaining steps, flip it, and finish with the minimal (greedy
    downward) completion.
    """
    _check_cap(n, cap, "path enumeration")
    return _dyck_paths_iter(n)


def _dyck_paths_iter(n: int) -> Iterator[DyckPath]:
    m = 2 * n
    x = [0] * m
    _min_completion(x, 0, 0)
    yield DyckPath._trusted(tuple(x))
    while True:
        i = m - 2
        while i >= 1:
            prev = x[i - 1]
            # x[i] flips from prev-1 to prev+1 if the higher value can
            # still reach 0 within the 2n-1-i steps that follow.
            if x[i] == prev - 1 and prev + 1 <= m - 1 - i:
                x[i] = prev + 1
                _min_completion(x, i + 1, prev + 1)
                yield DyckPath._trusted(tuple(x))
                break
            i -= 1
        else:
            return


def _min_completion(x: list, start: int, h: int) -> None:
    # Fill x[start:] with the lexicographically smallest continuation from
    # height h: step down whenever possible, else up. Ends at 0.
    for i in range(start, len(x)):
        h = h - 1 if h > 0 else h + 1
        x[i] = h
