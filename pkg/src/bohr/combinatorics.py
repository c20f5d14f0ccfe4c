"""Exact multi-index arithmetic.

Everything here works on plain tuples of non-negative ints and returns
Python ints, so values such as ``25!`` or ``3**60`` never overflow.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterator, Sequence, Tuple

MultiIndex = Tuple[int, ...]


def check_index(alpha: Sequence[int]) -> MultiIndex:
    """Return ``alpha`` as a tuple, rejecting empty or negative parts."""
    alpha = tuple(int(a) for a in alpha)
    if not alpha:
        raise ValueError("multi-index must have at least one part")
    if any(a < 0 for a in alpha):
        raise ValueError(f"multi-index parts must be non-negative: {alpha}")
    return alpha


def weight(alpha: Sequence[int]) -> int:
    return sum(alpha)


def _compositions(n: int, k: int) -> Iterator[MultiIndex]:
    if n == 1:
        yield (k,)
        return
    for first in range(k + 1):
        for rest in _compositions(n - 1, k - first):
            yield (first,) + rest


@lru_cache(maxsize=512)
def _enumerate_cached(n: int, k: int) -> Tuple[MultiIndex, ...]:
    return tuple(_compositions(n, k))


def enumerate_weight(n: int, k: int) -> list[MultiIndex]:
    """All multi-indices of dimension ``n`` and weight ``k``.

    The order is lexicographic, so ``enumerate_weight(2, 2)`` gives
    ``[(0, 2), (1, 1), (2, 0)]``.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if k < 0:
        raise ValueError(f"weight must be >= 0, got {k}")
    return list(_enumerate_cached(n, k))


def enumerate_upto(n: int, K: int) -> Iterator[MultiIndex]:
    """Multi-indices of weight 0, 1, ..., K, layer by layer."""
    for k in range(K + 1):
        yield from enumerate_weight(n, k)


def simplex_count(n: int, k: int) -> int:
    """Number of weight-``k`` indices in ``n`` variables, C(n+k-1, k)."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if k < 0:
        raise ValueError(f"weight must be >= 0, got {k}")
    return math.comb(n + k - 1, k)


@lru_cache(maxsize=None)
def multinomial(alpha: MultiIndex) -> int:
    """``|alpha|! / prod(alpha_j!)`` as an exact integer."""
    result = 1
    running = 0
    # Product of binomials keeps intermediates small.
    for a in alpha:
        running += a
        result *= math.comb(running, a)
    return result


@lru_cache(maxsize=None)
def self_power(alpha: MultiIndex) -> int:
    """``prod(alpha_j ** alpha_j)`` with ``0 ** 0 == 1``."""
    result = 1
    for a in alpha:
        result *= a**a  # Python already has 0**0 == 1
    return result


def factorial_product(alpha: Sequence[int]) -> int:
    """``alpha! = prod(alpha_j!)``."""
    result = 1
    for a in alpha:
        result *= math.factorial(a)
    return result
