#!/usr/bin/env python3
"""
Partitions of the cone lambda_1 >= ... >= lambda_n >= 0 and the dominance order
"""

from collections import Counter
from functools import lru_cache
from itertools import accumulate
from math import factorial
from typing import Iterable, List, Tuple

from .errors import InvalidParameterError


class Partition(tuple):
    """Weakly decreasing vector of nonnegative integers of fixed length n"""

    def __new__(cls, parts: Iterable[int]):
        parts = tuple(int(p) for p in parts)
        if not parts:
            raise InvalidParameterError("a partition needs at least one part")
        if any(p < 0 for p in parts):
            raise InvalidParameterError(f"negative part in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise InvalidParameterError(f"{parts} is not weakly decreasing")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str, n: int = None) -> 'Partition':
        """Parse "2,1" (padded with zeros up to n)"""
        try:
            parts = [int(p) for p in str(text).replace(' ', '').split(',') if p != '']
        except ValueError as e:
            raise InvalidParameterError(f"cannot parse partition {text!r}: {e}")
        if n is not None:
            if len(parts) > n:
                raise InvalidParameterError(f"partition {text!r} has more than n={n} parts")
            parts += [0] * (n - len(parts))
        return cls(parts)

    @property
    def n(self) -> int:
        return len(self)

    @property
    def weight(self) -> int:
        return sum(self)

    def partial_sums(self) -> Tuple[int, ...]:
        return tuple(accumulate(self))

    def shifted(self, plus: Iterable[int] = (), minus: Iterable[int] = ()) -> Tuple[int, ...]:
        """lambda + e_J+ - e_J- as a raw tuple (may leave the cone)"""
        parts = list(self)
        for j in plus:
            parts[j] += 1
        for j in minus:
            parts[j] -= 1
        return tuple(parts)

    def orbit_size(self) -> int:
        """Number of distinct permutations of the parts"""
        size = factorial(len(self))
        for count in Counter(self).values():
            size //= factorial(count)
        return size

    def to_json(self) -> List[int]:
        return list(self)


def is_partition(parts: Iterable[int]) -> bool:
    parts = tuple(parts)
    return all(p >= 0 for p in parts) and all(parts[i] >= parts[i + 1] for i in range(len(parts) - 1))


def dominance_leq(lam: Tuple[int, ...], mu: Tuple[int, ...]) -> bool:
    """lam <= mu iff every partial sum of lam is at most the matching one of mu"""
    if len(lam) != len(mu):
        raise InvalidParameterError(f"length mismatch: {tuple(lam)} vs {tuple(mu)}")
    return all(a <= b for a, b in zip(accumulate(lam), accumulate(mu)))


def dominance_lt(lam: Tuple[int, ...], mu: Tuple[int, ...]) -> bool:
    return tuple(lam) != tuple(mu) and dominance_leq(lam, mu)


@lru_cache(maxsize=None)
def _partitions(weight: int, n: int, largest: int) -> Tuple[Tuple[int, ...], ...]:
    if n == 0:
        return ((),) if weight == 0 else ()
    found = []
    for first in range(min(weight, largest), -1, -1):
        if first * n < weight:
            break
        for rest in _partitions(weight - first, n - 1, first):
            found.append((first,) + rest)
    return tuple(found)


def partitions_of(weight: int, n: int) -> List[Partition]:
    """All partitions of weight with n parts (zeros allowed), lexicographically descending"""
    if weight < 0:
        return []
    return [Partition(p) for p in _partitions(weight, n, weight)]


def partitions_up_to(max_weight: int, n: int) -> List[Partition]:
    """All partitions with weight <= max_weight, by weight and then lexicographically descending"""
    result = []
    for weight in range(max_weight + 1):
        result.extend(partitions_of(weight, n))
    return result


def partitions_below(lam: Partition) -> List[Partition]:
    """Every mu < lam in dominance order, lower weights included"""
    return [mu for mu in partitions_up_to(lam.weight, lam.n) if dominance_lt(mu, lam)]


def count_partitions(weight: int, n: int) -> int:
    """Number of partitions of weight into at most n parts"""
    if weight < 0:
        return 0
    return len(_partitions(weight, n, weight))
