"""
Permutations of the points ``1, ..., n``.

Composition convention
----------------------
Every product in this package applies its *left* argument first:
``compose(a, b)`` sends a point ``i`` to ``b(a(i))``. With this convention
``sigma_T = compose(sigma_S, sigma_R)`` and permutations describe a *right*
action of the modular group on cosets.
"""

import re

import numpy as np

from .errors import PermutationError
from .utils import UnionFind, lcm

__all__ = ['Permutation', 'CycleType', 'compose', 'inverse', 'conjugate',
           'cycle_type', 'fixed_points', 'orbits', 'orbits_of',
           'is_transitive', 'parse_cycles', 'format_cycles',
           'random_permutation']


class Permutation:
    """
    Immutable bijection of ``{1, ..., n}``.

    Parameters
    ----------
    images : sequence of int
        One-based images, ``images[i - 1]`` is the image of point ``i``.

    Notes
    -----
    The images are stored zero-based in a read-only numpy array,
    available through :attr:`array`. Instances are hashable and can be
    shared freely between threads and processes.

    Examples
    --------
    >>> p = Permutation([2, 3, 1])
    >>> p(1), str(p)
    (2, '(1 2 3)')
    """

    __slots__ = ('_array', '_hash')

    def __init__(self, images):
        arr = np.asarray(images, dtype=np.int64)
        if arr.ndim != 1 or arr.size == 0:
            raise PermutationError("images must be a non-empty sequence")
        n = arr.size
        if not np.array_equal(np.sort(arr), np.arange(1, n + 1)):
            msg = "images {} are not a bijection of 1..{}"
            raise PermutationError(msg.format(arr.tolist(), n))
        self._set(arr - 1)

    def _set(self, array):
        array.setflags(write=False)
        self._array = array
        self._hash = None

    @classmethod
    def _from_array(cls, array):
        """ Wrap a zero-based image array without validation. """
        obj = cls.__new__(cls)
        obj._set(np.array(array, dtype=np.int64))
        return obj

    @classmethod
    def identity(cls, n):
        """ Identity permutation on `n` points. """
        if n < 1:
            raise PermutationError("degree must be positive, got {}".format(n))
        return cls._from_array(np.arange(n))

    @classmethod
    def from_cycles(cls, cycles, n=None):
        """
        Build a permutation from cycles.

        Parameters
        ----------
        cycles : str or iterable of sequences of int
            Cycle notation such as ``"(1 2 6)(3 8 5)"``, or explicit cycles.
        n : int, optional
            Degree; defaults to the largest point mentioned.
        """
        if isinstance(cycles, str):
            return parse_cycles(cycles, n)

        cycles = [tuple(int(x) for x in c) for c in cycles]
        points = [x for c in cycles for x in c]
        if n is None:
            n = max(points, default=1)
        if len(set(points)) != len(points):
            raise PermutationError("cycles {} are not disjoint".format(cycles))
        if any(x < 1 or x > n for x in points):
            raise PermutationError("cycle point outside 1..{}".format(n))

        array = np.arange(n)
        for c in cycles:
            for x, y in zip(c, c[1:] + c[:1]):
                array[x - 1] = y - 1
        return cls._from_array(array)

    # # # accessors # # #

    @property
    def degree(self):
        return self._array.size

    @property
    def array(self):
        """ Read-only zero-based image array. """
        return self._array

    @property
    def images(self):
        """ One-based images as a tuple. """
        return tuple((self._array + 1).tolist())

    def __call__(self, point):
        return int(self._array[point - 1]) + 1

    def __len__(self):
        return self.degree

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return np.array_equal(self._array, other._array)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._array.tobytes())
        return self._hash

    def __repr__(self):
        return "Permutation('{}', n={})".format(format_cycles(self),
                                                self.degree)

    def __str__(self):
        return format_cycles(self)

    def __reduce__(self):
        return (Permutation, (self.images, ))

    # # # algebra # # #

    def __pow__(self, k):
        result = Permutation.identity(self.degree)
        base = self if k >= 0 else inverse(self)
        k = abs(k) % self.order()
        while k:
            if k & 1:
                result = compose(result, base)
            base = compose(base, base)
            k >>= 1
        return result

    def inverse(self):
        return inverse(self)

    def is_identity(self):
        return bool(np.all(self._array == np.arange(self.degree)))

    def cycles(self, singletons=False):
        """
        Disjoint cycles, each starting at its smallest point.

        Parameters
        ----------
        singletons : bool, optional
            Include fixed points as cycles of length one.

        Returns
        -------
        cycles : list of tuple of int
            Cycles ordered by their smallest point.
        """
        arr = self._array.tolist()
        seen = [False] * len(arr)
        result = []
        for start in range(len(arr)):
            if seen[start]:
                continue
            cycle = []
            x = start
            while not seen[x]:
                seen[x] = True
                cycle.append(x + 1)
                x = arr[x]
            if singletons or len(cycle) > 1:
                result.append(tuple(cycle))
        return result

    def order(self):
        return lcm(len(c) for c in self.cycles())


class CycleType(tuple):
    """
    Multiset of cycle lengths, stored in decreasing order.

    Examples
    --------
    >>> CycleType([1, 3, 3])
    CycleType(3, 3, 1)
    """

    def __new__(cls, lengths):
        lengths = sorted((int(x) for x in lengths), reverse=True)
        if any(x < 1 for x in lengths):
            raise PermutationError("cycle lengths must be positive")
        return super().__new__(cls, lengths)

    @property
    def degree(self):
        return sum(self)

    def __repr__(self):
        return "CycleType({})".format(", ".join(str(x) for x in self))


def _check_degrees(perms):
    degrees = {p.degree for p in perms}
    if len(degrees) > 1:
        msg = "degree mismatch: {}".format(sorted(degrees))
        raise PermutationError(msg)


def compose(*perms):
    """
    Product of permutations, applying the leftmost one first.

    Parameters
    ----------
    p0, p1, ..., pn : Permutation
        Factors of equal degree.

    Returns
    -------
    product : Permutation
        The map ``i -> pn(...p1(p0(i)))``.

    Examples
    --------
    >>> str(compose(Permutation.from_cycles('(1 2)', 3),
    ...             Permutation.from_cycles('(2 3)')))
    '(1 3 2)'
    """
    if not perms:
        raise PermutationError("compose needs at least one permutation")
    _check_degrees(perms)
    array = perms[0].array
    for p in perms[1:]:
        array = p.array[array]
    return Permutation._from_array(array)


def inverse(a):
    """ Inverse permutation. """
    array = np.empty_like(a.array)
    array[a.array] = np.arange(a.degree)
    return Permutation._from_array(array)


def conjugate(a, g):
    """
    Conjugate ``g^-1 a g`` (left-first), i.e. `a` relabelled by `g`.

    The result maps ``g(i)`` to ``g(a(i))``.
    """
    _check_degrees((a, g))
    return compose(inverse(g), a, g)


def cycle_type(a):
    return CycleType(len(c) for c in a.cycles(singletons=True))


def fixed_points(a):
    """ Set of points fixed by `a`. """
    return frozenset((np.flatnonzero(a.array == np.arange(a.degree))
                      + 1).tolist())


def orbits(a):
    """ Orbits of ``<a>`` as sorted tuples, ordered by smallest element. """
    return [tuple(sorted(c)) for c in a.cycles(singletons=True)]


def orbits_of(gens, degree=None):
    """
    Orbits of the group generated by `gens`.

    Parameters
    ----------
    gens : list of Permutation
        Generators of equal degree.
    degree : int, optional
        Number of points; required when `gens` is empty.

    Returns
    -------
    orbits : list of tuple of int
        One-based orbits ordered by their smallest point.
    """
    if gens:
        _check_degrees(gens)
        degree = gens[0].degree
    elif degree is None:
        raise PermutationError("degree is required without generators")

    uf = UnionFind(degree)
    for g in gens:
        for x, y in enumerate(g.array.tolist()):
            uf.union(x, y)
    return [tuple(x + 1 for x in block) for block in uf.blocks()]


def is_transitive(gens, degree=None):
    """
    Check whether `gens` generate a transitive group.

    Examples
    --------
    >>> is_transitive([Permutation.from_cycles('(1 2)(3 4)')])
    False
    """
    if not gens:
        return degree == 1
    return len(orbits_of(gens)) == 1


_TOKEN = re.compile(r'\s*(?:(\()|(\))|(\d+)|(,)|(\S))')


def parse_cycles(text, n=None):
    """
    Parse cycle notation.

    Parameters
    ----------
    text : str
        Cycles such as ``"(1 2 6)(3 8 5)(4 9 7)"``. Points are separated by
        whitespace or commas; singleton cycles may be present or omitted and
        ``"()"`` or the empty string denote the identity.
    n : int, optional
        Degree; defaults to the largest point that occurs (at least 1).

    Returns
    -------
    perm : Permutation
    """
    cycles, current = [], None
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            break
        opening, closing, number, comma, junk = match.groups()
        start = match.start(match.lastindex)
        if junk is not None:
            msg = "unexpected character {!r} at position {}"
            raise PermutationError(msg.format(junk, start))
        if opening:
            if current is not None:
                raise PermutationError("nested '(' at position {}".format(start))
            current = []
        elif closing:
            if current is None:
                raise PermutationError("unmatched ')' at position {}".format(start))
            cycles.append(current)
            current = None
        elif number is not None:
            if current is None:
                msg = "point outside a cycle at position {}"
                raise PermutationError(msg.format(start))
            current.append(int(number))
        elif current is None:
            raise PermutationError("stray ',' at position {}".format(start))
        pos = match.end()

    if current is not None:
        raise PermutationError("unterminated cycle in {!r}".format(text))
    if any(x < 1 for c in cycles for x in c):
        raise PermutationError("points must be positive in {!r}".format(text))

    if n is None:
        n = max((x for c in cycles for x in c), default=1)
    return Permutation.from_cycles([c for c in cycles if len(c) > 1], n)


def format_cycles(p, singletons=False):
    """
    Cycle notation of a permutation; the identity is written ``"()"``.
    """
    cycles = p.cycles(singletons=singletons)
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycles)


def random_permutation(n, rng=None):
    """ Uniformly random permutation of degree `n`. """
    rng = np.random.default_rng(rng)
    return Permutation._from_array(rng.permutation(n))
