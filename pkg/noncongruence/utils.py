"""
Small numeric and combinatorial helpers shared across the package.
"""

import math
from functools import reduce

import numpy as np

__all__ = ['UnionFind', 'divisor_sigma', 'lcm', 'inverse_mod',
           'two_part']


class UnionFind:
    """
    Disjoint-set forest over the points ``0, ..., n - 1``.

    Parameters
    ----------
    n : int
        Number of points.
    """

    def __init__(self, n):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        # path compression
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x
        return True

    def blocks(self):
        """
        Partition induced by the forest.

        Returns
        -------
        blocks : list of tuple of int
            Sorted blocks, ordered by their smallest element.
        """
        groups = {}
        for x in range(len(self.parent)):
            groups.setdefault(self.find(x), []).append(x)
        return sorted(tuple(b) for b in groups.values())


def divisor_sigma(k, n_max):
    """
    Compute the divisor sums sigma_k(n) for all n up to `n_max`.

    Parameters
    ----------
    k : int
        Power of the divisors.
    n_max : int
        Largest argument.

    Returns
    -------
    sigma : (n_max + 1, ) ndarray
        ``sigma[n]`` is the sum of ``d ** k`` over the divisors of ``n``;
        ``sigma[0]`` is zero. Object dtype, so the values are exact.

    Examples
    --------
    >>> divisor_sigma(1, 6)[1:].tolist()
    [1, 3, 4, 7, 6, 12]
    """
    sigma = np.zeros(n_max + 1, dtype=object)
    for d in range(1, n_max + 1):
        sigma[d::d] += d ** k
    return sigma


def lcm(values):
    """ Least common multiple of an iterable of positive integers. """
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


def inverse_mod(a, n):
    """ Inverse of `a` modulo `n` (``0`` when ``n == 1``). """
    if n == 1:
        return 0
    return pow(a, -1, n)


def two_part(n):
    """
    Split a positive integer into its 2-power and odd parts.

    Returns
    -------
    e, m : int
        ``n == e * m`` with ``e`` a power of two and ``m`` odd.
    """
    e = 1
    while n % 2 == 0:
        n //= 2
        e *= 2
    return e, n
