"""Exact probability law of the sock-sorting process.

Every quantity here is an exact rational (:class:`fractions.Fraction`,
arbitrary precision, always in lowest terms). Floating point appears
nowhere; decimal strings are a CLI display concern.

The law: a valid completion-height tuple ``(k_1, ..., k_n)`` is realized
by exactly ``2^n * n! * prod(k_i)`` of the ``(2n)!`` equally likely
orderings of the ``2n`` distinguishable socks, so its probability is
``2^n * n! * prod(k_i) / (2n)!``. Tuples no Dyck path realizes have
probability zero.

Marginal statistics (the table count after draw ``k``, the running
maximum) are computed by full enumeration over all valid tuples; no
closed forms are assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .core import KTuple, _check_cap, path_of_ktuple, validate_ktuple
from .errors import MalformedInputError, TupleValidityError

__all__ = [
    "ExactProb",
    "DistributionTable",
    "MarginalStat",
    "tuple_probability",
    "permutation_count",
    "enumerate_ktuples",
    "full_distribution",
    "marginal_xk",
    "max_distribution",
]

# Probabilities are plain Fractions; the alias documents intent in signatures.
ExactProb = Fraction


def permutation_count(t: KTuple | Iterable[int]) -> int:
    """Number of sock orderings realizing the valid tuple ``t``.

    Counts ``2^n * n! * prod(k_i)``: each first-drawn sock of a pair may
    be left or right (``2^n``), the pair types may occupy the first-draw
    positions in any order (``n!``), and the ``i``-th completion may match
    any of the ``k_i`` socks then on the table.
    """
    k = KTuple(t)
    if not validate_ktuple(k):
        raise TupleValidityError(
            f"no ordering realizes the invalid tuple {k}", index=None
        )
    n = len(k)
    return (1 << n) * math.factorial(n) * math.prod(k)


def tuple_probability(t: KTuple | Iterable[int]) -> Fraction:
    """Exact probability that the process realizes ``t``.

    ``2^n * n! * prod(k_i) / (2n)!`` in lowest terms for valid tuples;
    exactly 0 for well-formed tuples no Dyck path realizes (that zero is
    a modeled outcome, not an error). Malformed input raises
    :class:`MalformedInputError`.
    """
    k = KTuple(t)
    if not validate_ktuple(k):
        return Fraction(0)
    n = len(k)
    num = (1 << n) * math.factorial(n) * math.prod(k)
    return Fraction(num, math.factorial(2 * n))


def enumerate_ktuples(n: int, *, cap: int | None = None) -> Iterator[KTuple]:
    """Yield every valid tuple of order ``n`` exactly once, lexicographically.

    Recursion bounds: ``k_1`` ranges over ``1..n``; given ``k_i``, the
    next entry ranges over ``max(1, k_i - 1) .. n - i`` (at most ``n - i``
    pairs are still open after the ``i``-th completion); the final entry
    is forced to 1. Implemented iteratively as an odometer: bump the
    rightmost entry below its bound, refill the suffix with minimal
    values. Count equals ``catalan(n)``.
    """
    _check_cap(n, cap, "tuple enumeration")
    return _ktuples_iter(n)


def _ktuples_iter(n: int) -> Iterator[KTuple]:
    k = [1] * n
    trusted = KTuple._trusted
    yield trusted(tuple(k))
    while True:
        i = n - 2
        while i >= 0:
            if k[i] < n - i:
                k[i] += 1
                for j in range(i + 1, n):
                    prev = k[j - 1]
                    k[j] = prev - 1 if prev > 2 else 1
                yield trusted(tuple(k))
                break
            i -= 1
        else:
            return


@dataclass(frozen=True)
class DistributionTable:
    """Exact law of the process at order ``n``: every valid tuple with its probability.

    Entries are keyed in lexicographic tuple order; they number
    ``catalan(n)`` and sum exactly to 1. Treat as immutable once built.
    """

    n: int
    entries: dict[KTuple, Fraction]

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, t: KTuple | Iterable[int]) -> Fraction:
        return self.entries[KTuple(t)]

    def __iter__(self) -> Iterator[KTuple]:
        return iter(self.entries)

    def total(self) -> Fraction:
        """Sum of all probabilities; exactly 1 for a correctly built table."""
        return sum(self.entries.values(), Fraction(0))


def full_distribution(n: int, *, cap: int | None = None) -> DistributionTable:
    """Build the complete distribution table for order ``n``.

    Factorials and the ``2^n * n!`` prefactor are computed once per call;
    there is no global cache.
    """
    _check_cap(n, cap, "distribution table")
    denominator = math.factorial(2 * n)
    prefactor = (1 << n) * math.factorial(n)
    prod = math.prod
    entries = {
        t: Fraction(prefactor * prod(t), denominator)
        for t in _ktuples_iter(n)
    }
    return DistributionTable(n=n, entries=entries)


@dataclass(frozen=True)
class MarginalStat:
    """Exact law and moments of the table count after one fixed draw.

    ``law`` maps each reachable height to its probability; reachable
    heights share the parity of ``k`` and lie in ``[0, min(k, 2n - k)]``.
    """

    n: int
    k: int
    law: dict[int, Fraction]
    mean: Fraction
    variance: Fraction


def _law_moments(law: dict[int, Fraction]) -> tuple[Fraction, Fraction]:
    mean = sum((h * p for h, p in law.items()), Fraction(0))
    second = sum((h * h * p for h, p in law.items()), Fraction(0))
    return mean, second - mean * mean


def marginal_xk(n: int, k: int, *, cap: int | None = None) -> MarginalStat:
    """Exact law of the table count after draw ``k``, with mean and variance.

    Obtained by enumeration: sum each valid tuple's probability at the
    height its path has at position ``k``.
    """
    _check_cap(n, cap, "marginal law")
    if not isinstance(k, int) or isinstance(k, bool) or not 1 <= k <= 2 * n:
        raise MalformedInputError(
            f"draw index k = {k!r} out of range 1..{2 * n} for n = {n}"
        )
    law: dict[int, Fraction] = {}
    for t in _ktuples_iter(n):
        h = path_of_ktuple(t)[k - 1]
        law[h] = law.get(h, Fraction(0)) + tuple_probability(t)
    law = dict(sorted(law.items()))
    mean, variance = _law_moments(law)
    return MarginalStat(n=n, k=k, law=law, mean=mean, variance=variance)


def max_distribution(n: int, *, cap: int | None = None) -> dict[int, Fraction]:
    """Exact law of the highest table count over a whole run.

    The running maximum of a path equals the largest height a down-step
    is taken from, i.e. the largest tuple entry, so the law is summed
    directly over valid tuples. Keys ascend; masses sum to 1.
    """
    _check_cap(n, cap, "maximum law")
    law: dict[int, Fraction] = {}
    for t in _ktuples_iter(n):
        h = max(t)
        law[h] = law.get(h, Fraction(0)) + tuple_probability(t)
    return dict(sorted(law.items()))
