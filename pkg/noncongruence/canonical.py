"""
Canonical representatives of permutation pairs up to conjugation in S_n.

A pair (sigma_S, sigma_R) is first relabelled so that sigma_R becomes
``(1 2 3)(4 5 6)...`` with its fixed points last. The remaining freedom is
the centralizer of that permutation; the transpositions of sigma_S are then
replaced by the lexicographically smallest set in their orbit under the
centralizer.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache

from sympy.combinatorics import Permutation as _SymPermutation
from sympy.combinatorics import PermutationGroup

from .errors import InvariantViolation, PermutationError
from .perm import Permutation, compose, conjugate
from .utils import UnionFind

__all__ = ['CanonicalShape', 'TranspositionSet', 'CanonicalPairKey',
           'StabilizerChain', 'canonical_sigma_R', 'centralizer_generators',
           'smallest_image_set', 'canonicalizing_relabeling',
           'canonical_pair']

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class CanonicalShape:
    """
    Cycle type of an order-three permutation.

    Parameters
    ----------
    c : int
        Number of 3-cycles.
    f : int
        Number of fixed points.
    """

    c: int
    f: int

    def __post_init__(self):
        if self.c < 0 or self.f < 0 or self.c + self.f == 0:
            msg = "invalid shape (c={}, f={})"
            raise PermutationError(msg.format(self.c, self.f))

    @property
    def n(self):
        return 3 * self.c + self.f

    @classmethod
    def of(cls, sigma_R):
        """ Shape of an order-three permutation. """
        lengths = [len(c) for c in sigma_R.cycles(singletons=True)]
        if any(x not in (1, 3) for x in lengths):
            msg = "{} does not have order dividing 3"
            raise PermutationError(msg.format(sigma_R))
        return cls(lengths.count(3), lengths.count(1))


@dataclass(frozen=True, order=True)
class TranspositionSet:
    """
    Set of pairwise disjoint transpositions.

    Parameters
    ----------
    pairs : iterable of pairs of int
        Unordered one-based pairs; they are normalised to ``(min, max)`` and
        sorted, which is also the order in which sets are compared.
    """

    pairs: tuple = field(default=())

    def __post_init__(self):
        pairs = tuple(sorted((min(p), max(p)) for p in self.pairs))
        points = [x for p in pairs for x in p]
        if len(set(points)) != len(points) or any(i == j for i, j in pairs):
            raise PermutationError("pairs {} are not disjoint".format(pairs))
        if any(x < 1 for x in points):
            raise PermutationError("points must be positive")
        object.__setattr__(self, 'pairs', pairs)

    @classmethod
    def from_permutation(cls, sigma):
        """ Transpositions of an involution. """
        cycles = sigma.cycles()
        if any(len(c) != 2 for c in cycles):
            msg = "{} does not have order dividing 2"
            raise PermutationError(msg.format(sigma))
        return cls(tuple(cycles))

    def to_permutation(self, n):
        """ Involution of degree `n` with these transpositions. """
        return Permutation.from_cycles(self.pairs, n)

    def image(self, g):
        """ Image of the set under a permutation. """
        return TranspositionSet(tuple((g(i), g(j)) for i, j in self.pairs))

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __str__(self):
        return "".join("({},{})".format(i, j) for i, j in self.pairs) or "{}"


@dataclass(frozen=True, order=True)
class CanonicalPairKey:
    """
    Canonical form of a pair (sigma_S, sigma_R) up to conjugation.

    Two pairs are conjugate in S_n exactly when their keys are equal.
    """

    shape: CanonicalShape
    s_min: TranspositionSet

    def pair(self):
        """
        The canonical representative.

        Returns
        -------
        sigma_S, sigma_R : Permutation
        """
        return (self.s_min.to_permutation(self.shape.n),
                canonical_sigma_R(self.shape))

    def __str__(self):
        return "{}_{}:{}".format(self.shape.c, self.shape.f, self.s_min)


def canonical_sigma_R(shape):
    """
    The permutation ``(1 2 3)(4 5 6)...(3c-2 3c-1 3c)`` of degree 3c + f.
    """
    cycles = [(3 * i + 1, 3 * i + 2, 3 * i + 3) for i in range(shape.c)]
    return Permutation.from_cycles(cycles, shape.n)


def centralizer_generators(shape):
    """
    Generators of the centralizer of :func:`canonical_sigma_R` in S_n.

    Parameters
    ----------
    shape : CanonicalShape

    Returns
    -------
    gens : list of Permutation
        The 3-cycles, the swaps of adjacent 3-cycle blocks and the adjacent
        transpositions of the fixed points. They generate a group of order
        ``3**c * c! * f!``.
    """
    c, f, n = shape.c, shape.f, shape.n
    gens = [Permutation.from_cycles([(3 * i + 1, 3 * i + 2, 3 * i + 3)], n)
            for i in range(c)]
    for i in range(c - 1):
        swap = [(3 * i + k, 3 * i + 3 + k) for k in (1, 2, 3)]
        gens.append(Permutation.from_cycles(swap, n))
    for j in range(f - 1):
        gens.append(Permutation.from_cycles([(3 * c + j + 1, 3 * c + j + 2)], n))
    return gens


class StabilizerChain:
    """
    Stabilizer chain of a permutation group with base ``0, 1, ..., n - 1``.

    Parameters
    ----------
    generators : tuple of tuple of int
        Zero-based image tuples of equal length.

    Attributes
    ----------
    orbits : list of list of int
        ``orbits[k]`` is the orbit of ``k`` under the pointwise stabilizer
        of ``0, ..., k - 1``.
    inverse_transversals : list of dict
        ``inverse_transversals[k][x]`` is the inverse of a group element that
        fixes ``0, ..., k - 1`` and maps ``k`` to ``x``.
    orbit_minima : list of list of int
        ``orbit_minima[k][r]`` is the smallest point in the orbit of ``r``
        under the pointwise stabilizer of ``0, ..., k``.
    """

    def __init__(self, generators):
        self.degree = n = len(generators[0])
        group = PermutationGroup([_SymPermutation(list(g)) for g in generators])
        base, strong = group.schreier_sims_incremental(base=list(range(n)))
        if list(base[:n]) != list(range(n)):
            raise InvariantViolation("unexpected base {}".format(base))
        strong = [tuple(s.array_form) for s in strong]
        strong = [s for s in strong if s != tuple(range(n))]

        self.orbits, self.inverse_transversals = [], []
        level_gens = strong
        for k in range(n):
            level_gens = [g for g in level_gens if g[k - 1] == k - 1] if k else strong
            orbit, inverse = self._transversal(k, level_gens)
            self.orbits.append(orbit)
            self.inverse_transversals.append(inverse)

        self.orbit_minima = []
        for k in range(n):
            fixing = [g for g in strong if all(g[i] == i for i in range(k + 1))]
            uf = UnionFind(n)
            for g in fixing:
                for x, y in enumerate(g):
                    uf.union(x, y)
            minima = list(range(n))
            for block in uf.blocks():
                for x in block:
                    minima[x] = block[0]
            self.orbit_minima.append(minima)

    def _transversal(self, k, gens):
        n = self.degree
        transversal = {k: tuple(range(n))}
        orbit = [k]
        for y in orbit:
            t = transversal[y]
            for g in gens:
                z = g[y]
                if z not in transversal:
                    transversal[z] = tuple(g[t[i]] for i in range(n))
                    orbit.append(z)

        inverse = {}
        for x, t in transversal.items():
            inv = [0] * n
            for i, ti in enumerate(t):
                inv[ti] = i
            inverse[x] = tuple(inv)
        return sorted(orbit), inverse

    def order(self):
        result = 1
        for orbit in self.orbits:
            result *= len(orbit)
        return result


@lru_cache(maxsize=256)
def _chain(generators):
    return StabilizerChain(generators)


def _prefix_key(partner, k, minima):
    """
    Lexicographic key of the decided positions ``0..k``.

    A position paired with an undecided point stops the key with the best
    value that point can still reach; the flag reports that truncation.
    """
    n = len(partner)
    key = []
    for q in range(k + 1):
        r = partner[q]
        if r < 0:
            key.append(n)
        elif r <= k:
            key.append(r if q < r else n)
        else:
            key.append(minima[r])
            return tuple(key)
    return tuple(key)


def smallest_image_set(s, gens):
    """
    Lexicographically smallest image of a transposition set under a group.

    Parameters
    ----------
    s : TranspositionSet
        The set to minimise.
    gens : list of Permutation
        Generators of the acting group (may be empty).

    Returns
    -------
    s_min : TranspositionSet
        ``min(s^g for g in <gens>)`` where sets are compared as sorted
        sequences of ``(min, max)`` pairs.

    Notes
    -----
    Breadth-first search over a stabilizer chain with base ``1, ..., n``:
    level ``k`` decides which point is mapped onto ``k``. Nodes whose images
    coincide are merged and nodes whose decided prefix is beaten by another
    node are dropped, so the frontier stays small for the groups occurring
    in the enumeration.

    Examples
    --------
    >>> smallest_image_set(TranspositionSet([(2, 3)]),
    ...                    [Permutation.from_cycles('(1 2 3)')])
    TranspositionSet(pairs=((1, 2),))
    """
    if not s.pairs:
        return s
    generators = tuple(tuple(g.array.tolist()) for g in gens
                       if not g.is_identity())
    if not generators:
        return s

    chain = _chain(generators)
    n = chain.degree
    partner = [-1] * n
    for i, j in s.pairs:
        partner[i - 1], partner[j - 1] = j - 1, i - 1
    frontier = [tuple(partner)]

    for k in range(n):
        orbit = chain.orbits[k]
        inverse = chain.inverse_transversals[k]
        minima = chain.orbit_minima[k]
        children = {}
        for node in frontier:
            for x in orbit:
                u = inverse[x]
                child = [-1] * n
                for p, r in enumerate(node):
                    if r >= 0:
                        child[u[p]] = u[r]
                child = tuple(child)
                if child not in children:
                    children[child] = _prefix_key(child, k, minima)

        best = min(children.values())
        frontier = [child for child, key in children.items()
                    if key[:len(best)] == best]

    if len(frontier) != 1:
        msg = "minimal image search ended with {} candidates"
        raise InvariantViolation(msg.format(len(frontier)))

    result = frontier[0]
    return TranspositionSet(tuple((p + 1, r + 1) for p, r in enumerate(result)
                                  if p < r))


def canonicalizing_relabeling(sigma_R):
    """
    Relabelling that turns an order-three permutation into canonical form.

    Returns
    -------
    g : Permutation
        ``conjugate(sigma_R, g) == canonical_sigma_R(CanonicalShape.of(sigma_R))``.
        3-cycles are numbered in the order of their smallest points and start
        at that point; fixed points follow in increasing order.
    """
    shape = CanonicalShape.of(sigma_R)
    images = [0] * sigma_R.degree
    label = 1
    for cycle in sigma_R.cycles():
        for x in cycle:
            images[x - 1] = label
            label += 1
    for x in range(1, sigma_R.degree + 1):
        if sigma_R(x) == x:
            images[x - 1] = label
            label += 1
    assert label == shape.n + 1
    return Permutation(images)


@lru_cache(maxsize=None)
def _centralizer(shape):
    return tuple(centralizer_generators(shape))


def canonical_pair(sigma_S, sigma_R):
    """
    Canonical key of a pair up to simultaneous conjugation.

    Parameters
    ----------
    sigma_S : Permutation
        Involution (or identity).
    sigma_R : Permutation
        Permutation of order dividing three.

    Returns
    -------
    key : CanonicalPairKey

    Raises
    ------
    PermutationError
        If the degrees differ or the order conditions fail.
    """
    if sigma_S.degree != sigma_R.degree:
        msg = "degree mismatch: {} and {}"
        raise PermutationError(msg.format(sigma_S.degree, sigma_R.degree))
    if not compose(sigma_S, sigma_S).is_identity():
        raise PermutationError("sigma_S = {} is not an involution".format(sigma_S))
    if not compose(sigma_R, sigma_R, sigma_R).is_identity():
        raise PermutationError("sigma_R = {} has order > 3".format(sigma_R))

    shape = CanonicalShape.of(sigma_R)
    g = canonicalizing_relabeling(sigma_R)
    s = TranspositionSet.from_permutation(conjugate(sigma_S, g))
    return CanonicalPairKey(shape, smallest_image_set(s, _centralizer(shape)))
