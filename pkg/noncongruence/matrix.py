"""
Integer matrices of the modular group and their action on cosets.

A pair (sigma_S, sigma_R) defines a right action of PSL2(Z) on the points
``1, ..., mu``: S acts by sigma_S, R by sigma_R and T = S R by sigma_T.
With the left-first products of :mod:`noncongruence.perm` the map
``M -> M.action(pair)`` is a homomorphism, and the subgroup described by
the pair is the stabilizer of point 1.
"""

import logging
from collections import deque
from dataclasses import dataclass

import mpmath

from .errors import InvariantViolation
from .perm import Permutation, compose, parse_cycles

__all__ = ['MatrixPSL2', 'S', 'T', 'R', 'IDENTITY', 'check_conventions',
           'coset_representatives', 'matrix_generators']

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MatrixPSL2:
    """
    Element of PSL2(Z).

    Parameters
    ----------
    a, b, c, d : int
        Entries of ``[[a, b], [c, d]]`` with ``ad - bc == 1``. The matrix is
        identified with its negative and stored with ``c > 0``, or ``c == 0``
        and ``d > 0``.

    Examples
    --------
    >>> MatrixPSL2(-1, 0, -1, -1)
    MatrixPSL2(a=1, b=0, c=1, d=1)
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        a, b, c, d = (int(x) for x in (self.a, self.b, self.c, self.d))
        if a * d - b * c != 1:
            msg = "[[{}, {}], [{}, {}]] does not have determinant 1"
            raise ValueError(msg.format(a, b, c, d))
        if c < 0 or (c == 0 and d < 0):
            a, b, c, d = -a, -b, -c, -d
        for name, value in zip('abcd', (a, b, c, d)):
            object.__setattr__(self, name, value)

    @classmethod
    def from_entries(cls, entries):
        """ Matrix from a flat ``[a, b, c, d]`` or nested 2x2 sequence. """
        flat = [x for row in entries for x in row] \
            if len(entries) == 2 else list(entries)
        if len(flat) != 4:
            raise ValueError("expected four entries, got {}".format(entries))
        return cls(*flat)

    @property
    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, other):
        if not isinstance(other, MatrixPSL2):
            return NotImplemented
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return MatrixPSL2(a * e + b * g, a * f + b * h,
                          c * e + d * g, c * f + d * h)

    def __pow__(self, k):
        result, base = IDENTITY, self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            result = result @ base
        return result

    def inverse(self):
        return MatrixPSL2(self.d, -self.b, -self.c, self.a)

    @property
    def trace(self):
        """ Absolute trace, well defined on PSL2(Z). """
        return abs(self.a + self.d)

    def is_identity(self):
        return self.entries == (1, 0, 0, 1)

    def apply(self, tau):
        """ Moebius action ``(a tau + b) / (c tau + d)``. """
        tau = mpmath.mpmathify(tau)
        return (self.a * tau + self.b) / (self.c * tau + self.d)

    def word(self):
        """
        Decomposition into powers of T and S.

        Returns
        -------
        word : tuple of (str, int)
            Factors ``('T', k)`` and ``('S', 1)`` whose product, read from
            left to right, is the matrix.

        Examples
        --------
        >>> R.word()
        (('S', 1), ('T', 1))
        """
        a, b, c, d = self.entries
        word = []
        while c != 0:
            q = a // c
            if q:
                word.append(('T', q))
            word.append(('S', 1))
            a, b, c, d = c, d, -(a - q * c), -(b - q * d)
        # a == d == +-1 here
        if b * a:
            word.append(('T', b * a))
        return tuple(word)

    def action(self, pair):
        """ Permutation by which the matrix acts on the cosets of `pair`. """
        sigma_T = pair.sigma_T
        result = Permutation.identity(pair.degree)
        for letter, k in self.word():
            factor = pair.sigma_S if letter == 'S' else sigma_T ** k
            result = compose(result, factor)
        return result

    def __str__(self):
        return "[[{}, {}], [{}, {}]]".format(*self.entries)


IDENTITY = MatrixPSL2(1, 0, 0, 1)
S = MatrixPSL2(0, -1, 1, 0)
T = MatrixPSL2(1, 1, 0, 1)
R = MatrixPSL2(0, -1, 1, 1)

_REFERENCE = ('(1 15)(2 12)(3 7)(4 9)(5 13)(6 10)(8 14)',
              '(1 11 12)(2 13 6)(3 8 15)(4 10 7)(5 14 9)',
              '(1 3 4 5 6 7 8 9 10 2)(11 12 13 14 15)')


def check_conventions():
    """
    Check the matrix to permutation convention on a reference triple.

    Raises
    ------
    InvariantViolation
        If S, R or T does not act by the expected permutation or the
        action is not multiplicative.
    """
    from .pairs import PermutationPair

    sigma_S, sigma_R, sigma_T = (parse_cycles(x, 15) for x in _REFERENCE)
    pair = PermutationPair(sigma_S, sigma_R)
    expected = {'S': (S, sigma_S), 'R': (R, sigma_R), 'T': (T, sigma_T)}
    for name, (m, sigma) in expected.items():
        if m.action(pair) != sigma:
            msg = "{} acts by {}, expected {}"
            raise InvariantViolation(msg.format(name, m.action(pair), sigma))
    if pair.sigma_T != sigma_T or S @ R != T:
        raise InvariantViolation("T is not the product S R")
    product = R @ S @ T.inverse() @ R
    if product.action(pair) != compose(sigma_R, sigma_S, sigma_T ** -1,
                                       sigma_R):
        raise InvariantViolation("the coset action is not multiplicative")
    logger.debug("matrix conventions verified")


def coset_representatives(pair):
    """
    Coset representatives along a breadth-first spanning tree.

    Parameters
    ----------
    pair : PermutationPair
        Transitive pair.

    Returns
    -------
    reps : dict
        Point ``p`` to a matrix ``t_p`` that sends point 1 to ``p``;
        ``reps[1]`` is the identity. Points appear in discovery order.
    """
    actions = ((S, pair.sigma_S), (R, pair.sigma_R))
    reps = {1: IDENTITY}
    queue = deque([1])
    while queue:
        p = queue.popleft()
        for m, sigma in actions:
            q = sigma(p)
            if q not in reps:
                reps[q] = reps[p] @ m
                queue.append(q)
    if len(reps) != pair.degree:
        msg = "pair of degree {} is not transitive"
        raise ValueError(msg.format(pair.degree))
    return reps


def matrix_generators(pair, reps=None):
    """
    Schreier generators of the subgroup described by `pair`.

    Returns
    -------
    gens : list of MatrixPSL2
        The non-trivial products ``t_p X t_{pX}^-1`` for X in (S, R),
        without repetitions. Each one fixes point 1.

    Examples
    --------
    >>> from noncongruence.pairs import PermutationPair
    >>> matrix_generators(PermutationPair.from_cycles('()', '()')) == [S, R]
    True
    """
    if reps is None:
        reps = coset_representatives(pair)
    gens, seen = [], set()
    for p, t in reps.items():
        for m, sigma in ((S, pair.sigma_S), (R, pair.sigma_R)):
            g = t @ m @ reps[sigma(p)].inverse()
            if not g.is_identity() and g not in seen:
                seen.add(g)
                gens.append(g)
    return gens
