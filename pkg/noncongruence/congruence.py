"""
Congruence subgroups and the congruence test for permutation pairs.
"""

import logging
from collections import deque
from functools import lru_cache
from math import gcd

from sympy import factorint

from .matrix import matrix_generators
from .pairs import PermutationPair
from .perm import Permutation, compose
from .utils import inverse_mod, lcm, two_part

__all__ = ['gamma0_pair', 'gamma1_pair', 'gamma_pair', 'level',
           'psl2_order', 'contains_principal_congruence', 'hsu_congruence',
           'is_congruence', 'DIRECT_CHECK_LIMIT']

logger = logging.getLogger(__name__)

#: largest |PSL2(Z/N)| for which containment of Gamma(N) is checked directly
DIRECT_CHECK_LIMIT = 2000

_S = ((0, -1), (1, 0))
_R = ((0, -1), (1, 1))


def _orbit_pair(start, act, normalize):
    """
    Permutation pair of the right action on the orbit of `start`.

    `act(x, m)` applies the 2x2 matrix `m`, `normalize` picks the
    representative of a point. Points are labelled in breadth-first order
    with `start` as point 1.
    """
    start = normalize(start)
    labels = {start: 0}
    points = [start]
    images = {_S: [], _R: []}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for m in (_S, _R):
            y = normalize(act(x, m))
            if y not in labels:
                labels[y] = len(points)
                points.append(y)
                queue.append(y)
    for x in points:
        for m in (_S, _R):
            images[m].append(labels[normalize(act(x, m))] + 1)
    return PermutationPair(Permutation(images[_S]), Permutation(images[_R]))


def _act_row(n):
    def act(v, m):
        x, y = v
        return ((x * m[0][0] + y * m[1][0]) % n, (x * m[0][1] + y * m[1][1]) % n)
    return act


def gamma0_pair(n):
    """
    Pair of Gamma_0(N), acting on the projective line over Z/N.

    Examples
    --------
    >>> gamma0_pair(11).degree
    12
    """
    if n == 1:
        return PermutationPair.from_cycles('()', '()')
    units = [u for u in range(1, n) if gcd(u, n) == 1]

    def normalize(v):
        return min(((u * v[0]) % n, (u * v[1]) % n) for u in units)

    return _orbit_pair((0, 1), _act_row(n), normalize)


def gamma1_pair(n):
    """ Pair of the image of Gamma_1(N), acting on vectors modulo sign. """
    if n == 1:
        return PermutationPair.from_cycles('()', '()')

    def normalize(v):
        return min(v, ((-v[0]) % n, (-v[1]) % n))

    return _orbit_pair((0, 1), _act_row(n), normalize)


def gamma_pair(n):
    """
    Pair of the principal congruence subgroup Gamma(N).

    The points are the elements of PSL2(Z/N), acted on by right
    multiplication.
    """
    if n == 1:
        return PermutationPair.from_cycles('()', '()')

    def act(x, m):
        a, b, c, d = x
        return ((a * m[0][0] + b * m[1][0]) % n, (a * m[0][1] + b * m[1][1]) % n,
                (c * m[0][0] + d * m[1][0]) % n, (c * m[0][1] + d * m[1][1]) % n)

    def normalize(x):
        return min(x, tuple((-v) % n for v in x))

    return _orbit_pair((1, 0, 0, 1), act, normalize)


def psl2_order(n):
    """ Order of PSL2(Z/N). """
    if n == 1:
        return 1
    order = n ** 3
    for p in factorint(n):
        order = order * (p * p - 1) // (p * p)
    return order if n <= 2 else order // 2


def level(pair):
    """ Generalised level: lcm of the cusp widths. """
    return lcm(len(c) for c in pair.sigma_T.cycles(singletons=True))


@lru_cache(maxsize=None)
def _principal_generators(n):
    return tuple(matrix_generators(gamma_pair(n)))


def contains_principal_congruence(pair, n):
    """
    Check whether the subgroup of `pair` contains Gamma(N).

    Gamma(N) is normal, so it lies in the subgroup exactly when every one
    of its generators acts trivially on all cosets.
    """
    return all(g.action(pair).is_identity() for g in _principal_generators(n))


def _word(*factors):
    """ Left-first product of ``(perm, exponent)`` factors. """
    return compose(*(p ** k for p, k in factors))


def hsu_congruence(pair):
    """
    Hsu's relations for the congruence property.

    Parameters
    ----------
    pair : PermutationPair
        Transitive pair.

    Returns
    -------
    congruence : bool
        Whether the subgroup is a congruence subgroup, decided by relations
        in the images of ``L = [[1, 1], [0, 1]]`` and ``R = [[1, 0], [1, 1]]``
        depending on the 2-power and odd parts of the level.
    """
    n = level(pair)
    if n == 1:
        return True
    L = pair.sigma_T
    R = compose(pair.sigma_S, L ** -1, pair.sigma_S)
    e, m = two_part(n)

    def is_one(*factors):
        return _word(*factors).is_identity()

    if e == 1:
        half = inverse_mod(2, n)
        return is_one((compose(R, R, L ** -half), 3))

    if m == 1:
        fifth = inverse_mod(5, n)
        s = _word((L, 20), (R, fifth), (L, -4), (R, -1))
        return (is_one((L, -1), (R, 1), (L, -1), (s, 1), (L, 1), (R, -1),
                       (L, 1), (s, 1))
                and is_one((s, -1), (R, 1), (s, 1), (R, -25))
                and is_one((compose(s, R ** 5, L, R ** -1, L), 3)))

    half = inverse_mod(2, m)
    fifth = inverse_mod(5, e)
    # c = 0 mod e, 1 mod m and d = 1 mod e, 0 mod m
    c = e * inverse_mod(e, m) % n
    d = m * inverse_mod(m, e) % n
    a, b = L ** c, R ** c
    l, r = L ** d, R ** d
    s = _word((l, 20), (r, fifth), (l, -4), (r, -1))
    aba = compose(a, b ** -1, a)
    lrl = compose(l, r ** -1, l)
    relations = [
        _word((a, -1), (r, -1), (a, 1), (r, 1)),
        aba ** 4,
        compose(aba ** 2, _word((a, -1), (b, 1)) ** 3),
        compose(aba ** 2, _word((b, 2), (a, -half)) ** -3),
        compose(_word((l, -1), (r, 1), (l, -1)), s, lrl, s),
        _word((s, -1), (r, 1), (s, 1), (r, -25)),
        compose(lrl ** 2, compose(s, r ** 5, lrl) ** -3),
    ]
    return all(x.is_identity() for x in relations)


def is_congruence(pair, direct_limit=DIRECT_CHECK_LIMIT):
    """
    Decide whether the subgroup of `pair` is a congruence subgroup.

    Parameters
    ----------
    pair : PermutationPair
        Transitive pair.
    direct_limit : int, optional
        Use the direct containment test for Gamma(level) while
        |PSL2(Z/level)| does not exceed this, Hsu's relations beyond.

    Examples
    --------
    >>> is_congruence(gamma0_pair(11))
    True
    """
    n = level(pair)
    if n == 1:
        return True
    if psl2_order(n) <= direct_limit:
        return contains_principal_congruence(pair, n)
    logger.debug("level %d: using Hsu's relations", n)
    return hsu_congruence(pair)
