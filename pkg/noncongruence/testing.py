"""
Utility functions for checking the enumeration and the numerics.

Brute-force oracles that share as little code as possible with the
algorithms they check, plus reference data for the period computations.
"""

from collections import deque

import mpmath
import networkx as nx
import numpy as np
from sympy.combinatorics import Permutation as _SymPermutation
from sympy.combinatorics import PermutationGroup

from .analysis import cusp_normalizers
from .canonical import (CanonicalShape, TranspositionSet, canonical_pair,
                        canonical_sigma_R)
from .congruence import gamma0_pair, level
from .graphs import BLACK_CAPACITY, WHITE_CAPACITY, BicoloredMultigraph
from .matrix import IDENTITY, matrix_generators
from .pairs import PermutationPair, shapes
from .perm import Permutation, compose, is_transitive
from .periods import DEFAULT_DIGITS, FourierExpansion

__all__ = ['involutions', 'bfs_canonical_form', 'brute_force_classes',
           'full_orbit_minimum', 'brute_force_graphs', 'graphs_isomorphic',
           'in_lattice', 'eta_product_coefficients', 'gamma0_11_data',
           'congruence_by_definition', 'random_pair', 'random_word']


# # # permutation pairs # # #

def involutions(n):
    """
    All permutations of degree `n` whose square is the identity.

    Yields
    ------
    s : TranspositionSet
    """
    def _matchings(points):
        if not points:
            yield ()
            return
        first, rest = points[0], points[1:]
        # first point fixed
        yield from _matchings(rest)
        for i, x in enumerate(rest):
            for m in _matchings(rest[:i] + rest[i + 1:]):
                yield ((first, x), ) + m

    for m in _matchings(tuple(range(1, n + 1))):
        yield TranspositionSet(m)


def bfs_canonical_form(sigma_S, sigma_R):
    """
    Complete conjugation invariant of a transitive pair.

    Every start point gives a labelling of the points in breadth-first
    order along (sigma_S, sigma_R); the smallest relabelled pair over all
    start points is returned.
    """
    n = sigma_S.degree
    gens = [sigma_S.images, sigma_R.images]
    best = None
    for start in range(1, n + 1):
        label = {start: 1}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = g[x - 1]
                if y not in label:
                    label[y] = len(label) + 1
                    queue.append(y)
        if len(label) != n:
            raise ValueError("pair is not transitive")
        inverse = {v: k for k, v in label.items()}
        form = tuple(tuple(label[g[inverse[i] - 1]] for i in range(1, n + 1))
                     for g in gens)
        if best is None or form < best:
            best = form
    return best


def brute_force_classes(mu):
    """
    Canonical keys of all classes of transitive pairs of degree `mu`.

    Pairs are partitioned by :func:`bfs_canonical_form` over every
    involution and every shape of sigma_R; the keys of one representative
    per part are returned.

    Raises
    ------
    AssertionError
        If two parts have the same canonical key.
    """
    reps = {}
    for shape in shapes(mu):
        sigma_R = canonical_sigma_R(shape)
        for s in involutions(mu):
            sigma_S = s.to_permutation(mu)
            if not is_transitive([sigma_S, sigma_R]):
                continue
            reps.setdefault(bfs_canonical_form(sigma_S, sigma_R),
                            (sigma_S, sigma_R))
    keys = {canonical_pair(*pair) for pair in reps.values()}
    assert len(keys) == len(reps), "canonical keys merge distinct classes"
    return keys


def full_orbit_minimum(s, gens):
    """ Smallest image of a transposition set over all elements of ``<gens>``. """
    if not gens:
        return s
    group = PermutationGroup([_SymPermutation(g.array.tolist()) for g in gens])
    best = s
    for af in group.generate(af=True):
        image = TranspositionSet(tuple((af[i - 1] + 1, af[j - 1] + 1)
                                       for i, j in s.pairs))
        best = min(best, image)
    return best


# # # graphs # # #

def _networkx(g):
    return g.to_networkx()


def graphs_isomorphic(g, h):
    """ Colour and multiplicity preserving isomorphism test via networkx. """
    return nx.is_isomorphic(
        _networkx(g), _networkx(h),
        node_match=lambda a, b: a['color'] == b['color'],
        edge_match=lambda a, b: a['mult'] == b['mult'])


def brute_force_graphs(black, white):
    """
    All connected orbit graphs with the given vertex counts, one per
    isomorphism class.
    """
    n = black + white
    caps = [BLACK_CAPACITY] * black + [WHITE_CAPACITY] * white
    slots = [(u, v) for u in range(n) for v in range(u, n)
             if not (u == v and u >= black)]
    found = []

    def _assign(i, degrees, edges):
        if i == len(slots):
            g = BicoloredMultigraph(black, white, tuple(edges))
            if g.is_connected() and not any(graphs_isomorphic(g, h)
                                            for h in found):
                found.append(g)
            return
        u, v = slots[i]
        step = 2 if u == v else 1
        m = 0
        while True:
            if u == v:
                ok = degrees[u] + step * m <= caps[u]
            else:
                ok = degrees[u] + m <= caps[u] and degrees[v] + m <= caps[v]
            if not ok:
                break
            new = list(degrees)
            new[u] += step * m if u == v else m
            if u != v:
                new[v] += m
            _assign(i + 1, new, edges + ([(u, v, m)] if m else []))
            m += 1

    _assign(0, [0] * n, [])
    return found


# # # congruence # # #

def congruence_by_definition(pair):
    """
    Check whether the coset action factors through PSL2(Z/N), N the level.

    A breadth-first search over PSL2(Z/N) attaches to every residue matrix
    the permutation of the path reaching it; the subgroup is a congruence
    subgroup exactly when these permutations are consistent.
    """
    n = level(pair)
    if n == 1:
        return True
    actions = (((0, -1, 1, 0), pair.sigma_S), ((0, -1, 1, 1), pair.sigma_R))

    def normalize(x):
        x = tuple(v % n for v in x)
        return min(x, tuple((-v) % n for v in x))

    def mul(x, m):
        a, b, c, d = x
        e, f, g, h = m
        return normalize((a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h))

    start = normalize((1, 0, 0, 1))
    seen = {start: Permutation.identity(pair.degree)}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for m, sigma in actions:
            y = mul(x, m)
            p = compose(seen[x], sigma)
            if y not in seen:
                seen[y] = p
                queue.append(y)
            elif seen[y] != p:
                return False
    return True


# # # numerics # # #

def in_lattice(z, w1, w2, tol):
    """ Whether `z` is an integer combination of `w1` and `w2` within `tol`. """
    det = w1.real * w2.imag - w1.imag * w2.real
    r = (z.real * w2.imag - z.imag * w2.real) / det
    s = (w1.real * z.imag - w1.imag * z.real) / det
    m, k = mpmath.nint(r), mpmath.nint(s)
    return abs(z - (m * w1 + k * w2)) <= tol


def _euler_product(terms):
    """ Coefficients of ``prod_n (1 - q^n)`` up to ``q^(terms - 1)``. """
    coeffs = np.zeros(terms, dtype=np.int64)
    k = 0
    while True:
        found = False
        for j in (k, -k) if k else (0, ):
            e = j * (3 * j - 1) // 2
            if e < terms:
                coeffs[e] += -1 if j % 2 else 1
                found = True
        if not found:
            break
        k += 1
    return coeffs


def eta_product_coefficients(factors, terms):
    """
    Coefficients ``a_1, ..., a_terms`` of an eta quotient of weight two.

    Parameters
    ----------
    factors : dict
        ``{m: e}`` for ``prod eta(m tau)^e`` with ``sum m e == 24``, so that
        the expansion starts at ``q``.
    terms : int
        Number of coefficients.

    Examples
    --------
    >>> eta_product_coefficients({1: 2, 11: 2}, 6).tolist()
    [1, -2, -1, 2, 1, 2]
    """
    if sum(m * e for m, e in factors.items()) != 24:
        raise ValueError("eta quotient must start at q^1")
    base = _euler_product(terms)
    result = np.zeros(terms, dtype=np.int64)
    result[0] = 1
    for m, e in factors.items():
        stretched = np.zeros(terms, dtype=np.int64)
        stretched[::m] = base[:len(stretched[::m])]
        for _ in range(e):
            result = np.convolve(result, stretched)[:terms]
    return result


def gamma0_11_data(terms=400, digits=DEFAULT_DIGITS):
    """
    Subgroup data and expansions of ``eta(tau)^2 eta(11 tau)^2``.

    Returns
    -------
    pair : PermutationPair
        Gamma_0(11).
    cusps : list of Cusp
    expansions : dict
        Cusp index to :class:`FourierExpansion`.
    generators : list of MatrixPSL2

    Notes
    -----
    At the cusp of width 11 with normalizer ``[[a, b], [c, d]]`` the form
    is ``-(1/11) sum e_n zeta^(k n) q_11^n`` where ``e_n`` are the
    coefficients at infinity, ``zeta = exp(2 pi i / 11)`` and
    ``k = d / c mod 11``.
    """
    pair = gamma0_pair(11)
    cusps = cusp_normalizers(pair)
    e = eta_product_coefficients({1: 2, 11: 2}, terms)
    expansions = {}
    with mpmath.workdps(digits + 10):
        for cusp in cusps:
            if cusp.width == 1:
                coeffs = [mpmath.mpc(int(x)) for x in e]
            else:
                a = cusp.normalizer
                k = a.d * pow(a.c, -1, 11) % 11
                coeffs = [-mpmath.mpf(int(x)) / 11 * mpmath.expjpi(2 * k * n / mpmath.mpf(11))
                          for n, x in enumerate(e, start=1)]
            expansions[cusp.index] = FourierExpansion(cusp.index, cusp.width,
                                                      tuple(coeffs), digits)
    return pair, cusps, expansions, matrix_generators(pair)


# # # random data # # #

def random_pair(n, rng=None, transitive=True):
    """
    Random admissible pair of degree `n`.

    Parameters
    ----------
    n : int
    rng : Generator or int, optional
    transitive : bool, optional
        Redraw until the pair is transitive.
    """
    rng = np.random.default_rng(rng)
    while True:
        c = int(rng.integers(0, n // 3 + 1))
        shape = CanonicalShape(c, n - 3 * c)
        points = rng.permutation(n) + 1
        k = rng.integers(0, n // 2 + 1)
        pairs = [(int(points[2 * i]), int(points[2 * i + 1])) for i in range(k)]
        sigma_S = Permutation.from_cycles(pairs, n)
        sigma_R = canonical_sigma_R(shape)
        g = Permutation(rng.permutation(n) + 1)
        pair = PermutationPair(sigma_S, sigma_R).conjugate(g)
        if not transitive or pair.is_transitive():
            return pair


def random_word(gens, length, rng=None):
    """ Product of `length` random generators or their inverses. """
    rng = np.random.default_rng(rng)
    word = IDENTITY
    for _ in range(length):
        g = gens[rng.integers(len(gens))]
        word = word @ (g if rng.integers(2) else g.inverse())
    return word
