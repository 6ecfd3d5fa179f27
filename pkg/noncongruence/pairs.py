"""
Exhaustive enumeration of conjugacy classes of admissible pairs.

For every index mu the pairs (sigma_S, sigma_R) are built from the orbit
graphs of :mod:`noncongruence.graphs`: sigma_R is fixed in canonical form,
each connected graph is turned into all compatible sets of transpositions,
and candidates are deduplicated through their canonical keys.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations

from .canonical import (CanonicalPairKey, CanonicalShape, TranspositionSet,
                        canonical_pair, canonical_sigma_R,
                        centralizer_generators, smallest_image_set)
from .errors import InvariantViolation, PermutationError
from .graphs import automorphism_order, generate_graphs
from .perm import compose, conjugate, is_transitive, parse_cycles

__all__ = ['PermutationPair', 'GraphStats', 'EnumerationStats',
           'ClassEnumeration', 'MultiplicityEntry', 'MultiplicityReport',
           'shapes', 'orbit_map', 'maximal_matching', 'assign_transpositions',
           'enumerate_classes', 'multiplicity_audit']

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PermutationPair:
    """
    Pair (sigma_S, sigma_R) describing the coset action of a subgroup.

    Parameters
    ----------
    sigma_S : Permutation
        Action of S, ``sigma_S ** 2 == 1``.
    sigma_R : Permutation
        Action of R, ``sigma_R ** 3 == 1``.
    """

    sigma_S: object
    sigma_R: object

    def __post_init__(self):
        if self.sigma_S.degree != self.sigma_R.degree:
            msg = "degree mismatch: {} and {}"
            raise PermutationError(msg.format(self.sigma_S.degree,
                                              self.sigma_R.degree))
        if not compose(self.sigma_S, self.sigma_S).is_identity():
            raise PermutationError("sigma_S = {} is not an involution"
                                   .format(self.sigma_S))
        if not compose(self.sigma_R, self.sigma_R, self.sigma_R).is_identity():
            raise PermutationError("sigma_R = {} has order > 3"
                                   .format(self.sigma_R))

    @classmethod
    def from_cycles(cls, sigma_S, sigma_R, n=None):
        """ Pair from cycle notation; the degree defaults to the largest point. """
        if n is None:
            n = max(parse_cycles(sigma_S).degree, parse_cycles(sigma_R).degree)
        return cls(parse_cycles(sigma_S, n), parse_cycles(sigma_R, n))

    @property
    def degree(self):
        return self.sigma_S.degree

    @property
    def sigma_T(self):
        """ Action of T, ``compose(sigma_S, sigma_R)``. """
        return compose(self.sigma_S, self.sigma_R)

    def is_transitive(self):
        return is_transitive([self.sigma_S, self.sigma_R])

    def conjugate(self, g):
        """ The pair relabelled by `g`. """
        return PermutationPair(conjugate(self.sigma_S, g),
                               conjugate(self.sigma_R, g))

    def canonical_key(self):
        return canonical_pair(self.sigma_S, self.sigma_R)

    def __str__(self):
        return "sigma_S={} sigma_R={}".format(self.sigma_S, self.sigma_R)


@dataclass
class GraphStats:
    """ Counts for one work unit (shape, graph). """

    shape: CanonicalShape
    graph: str
    candidates: int
    classes: int


@dataclass
class EnumerationStats:
    """
    Running totals of an enumeration.

    Attributes
    ----------
    classes_emitted : int
    candidates_generated : int
    per_shape : dict
        ``(c, f) -> [candidates, classes]``.
    per_graph : list of GraphStats
    """

    classes_emitted: int = 0
    candidates_generated: int = 0
    per_shape: dict = field(default_factory=dict)
    per_graph: list = field(default_factory=list)

    def record(self, unit):
        self.per_graph.append(unit)
        totals = self.per_shape.setdefault((unit.shape.c, unit.shape.f), [0, 0])
        totals[0] += unit.candidates
        totals[1] += unit.classes
        self.candidates_generated += unit.candidates
        self.classes_emitted += unit.classes

    def as_dict(self):
        return {
            'classes_emitted': self.classes_emitted,
            'candidates_generated': self.candidates_generated,
            'per_shape': {"{}_{}".format(c, f): {'candidates': v[0],
                                                 'classes': v[1]}
                          for (c, f), v in self.per_shape.items()},
        }


def shapes(mu):
    """ Shapes ``(c, f)`` with ``3c + f == mu``, by decreasing ``c``. """
    if mu < 1:
        raise ValueError("index must be positive, got {}".format(mu))
    return [CanonicalShape(c, mu - 3 * c) for c in range(mu // 3, -1, -1)]


def orbit_map(shape):
    """
    Points of the canonical sigma_R behind each graph vertex.

    Returns
    -------
    orbits : list of tuple of int
        Black vertex ``i`` owns ``(3i+1, 3i+2, 3i+3)``, white vertex ``j``
        the fixed point ``3c + j + 1``.
    """
    black = [(3 * i + 1, 3 * i + 2, 3 * i + 3) for i in range(shape.c)]
    white = [(3 * shape.c + j + 1, ) for j in range(shape.f)]
    return black + white


def maximal_matching(g):
    """
    Greedy maximal matching with all loops taken first.

    Parameters
    ----------
    g : BicoloredMultigraph

    Returns
    -------
    matching : list of (int, int)
        Matched vertex pairs; loops appear as ``(v, v)``.
    """
    matched = set()
    matching = []
    for u, v, _ in g.edges:
        if u == v:
            matching.append((u, v))
            matched.add(u)
    for u, v, _ in g.edges:
        if u != v and u not in matched and v not in matched:
            matching.append((u, v))
            matched.update((u, v))
    return matching


def _uncovered_black(g, matching):
    covered = {x for e in matching for x in e}
    return sum(1 for v in range(g.black) if v not in covered)


def assign_transpositions(sigma_R, g, orbits=None):
    """
    All sets of transpositions realising the graph `g`.

    Parameters
    ----------
    sigma_R : Permutation
        Canonical sigma_R of the shape of `g`.
    g : BicoloredMultigraph
        Orbit graph.
    orbits : list of tuple of int, optional
        Points of every vertex, defaults to :func:`orbit_map`.

    Yields
    ------
    s : TranspositionSet
        Matched edges are pinned to the smallest unused points of their
        orbits; every other edge takes every choice of unused points.
        Parallel copies of an edge are chosen as an unordered set, so each
        set of transpositions appears once.
    """
    shape = CanonicalShape(g.black, g.white)
    if orbits is None:
        orbits = orbit_map(shape)
    if sigma_R != canonical_sigma_R(shape):
        raise PermutationError("sigma_R is not canonical for {}".format(g))

    matching = maximal_matching(g)
    used, pinned = set(), []
    for u, v in matching:
        if u == v:
            a, b = [x for x in orbits[u] if x not in used][:2]
        else:
            a = min(x for x in orbits[u] if x not in used)
            b = min(x for x in orbits[v] if x not in used)
        pinned.append((a, b))
        used.update((a, b))

    matched = set(matching)
    free = []
    for u, v, m in g.edges:
        k = m - (1 if (u, v) in matched else 0)
        if k:
            free.append((u, v, k))

    def _extend(i, used, chosen):
        if i == len(free):
            yield TranspositionSet(tuple(chosen))
            return
        u, v, k = free[i]
        avail_u = [x for x in orbits[u] if x not in used]
        if u == v:
            for a, b in combinations(avail_u, 2):
                yield from _extend(i + 1, used | {a, b}, chosen + [(a, b)])
            return
        avail_v = [x for x in orbits[v] if x not in used]
        for xs in combinations(avail_u, k):
            for ys in permutations(avail_v, k):
                pairs = list(zip(xs, ys))
                yield from _extend(i + 1, used | set(xs) | set(ys),
                                   chosen + pairs)

    yield from _extend(0, frozenset(used), pinned)


@lru_cache(maxsize=None)
def _centralizer(shape):
    return tuple(centralizer_generators(shape))


def _classes_of_graph(unit):
    """ Work unit: canonical keys (with candidate counts) of one graph. """
    shape, g = unit
    sigma_R = canonical_sigma_R(shape)
    gens = _centralizer(shape)
    counts = {}
    for s in assign_transpositions(sigma_R, g):
        key = CanonicalPairKey(shape, smallest_image_set(s, gens))
        counts[key] = counts.get(key, 0) + 1
    return list(counts.items())


def _work_units(mu):
    for shape in shapes(mu):
        for g in generate_graphs(shape.c, shape.f):
            yield shape, g


class ClassEnumeration:
    """
    Iterable over one representative pair per conjugacy class of index `mu`.

    Parameters
    ----------
    mu : int
        Index of the subgroups.
    jobs : int, optional
        Worker processes for the (shape, graph) work units.
    check : bool, optional
        Verify transitivity and the order relations of every emitted pair.
    progress : callable, optional
        Called with a :class:`GraphStats` after every work unit.

    Attributes
    ----------
    stats : EnumerationStats
        Filled while iterating.

    Notes
    -----
    Conjugate pairs have isomorphic orbit graphs, so deduplication never has
    to look across work units. Results are consumed in submission order,
    which makes the output independent of worker scheduling.
    """

    def __init__(self, mu, jobs=1, check=False, progress=None):
        if mu < 1:
            raise ValueError("index must be positive, got {}".format(mu))
        self.mu = mu
        self.jobs = jobs
        self.check = check
        self.progress = progress
        self.stats = EnumerationStats()

    def _unit_results(self, units):
        if self.jobs > 1:
            with ProcessPoolExecutor(max_workers=self.jobs) as pool:
                yield from zip(units, pool.map(_classes_of_graph, units))
        else:
            for unit in units:
                yield unit, _classes_of_graph(unit)

    def __iter__(self):
        units = list(_work_units(self.mu))
        logger.info("index %d: %d work units", self.mu, len(units))
        for (shape, g), keys in self._unit_results(units):
            unit = GraphStats(shape, str(g), sum(n for _, n in keys), len(keys))
            self.stats.record(unit)
            logger.debug("%s: %d candidates, %d classes",
                         unit.graph, unit.candidates, unit.classes)
            if self.progress is not None:
                self.progress(unit)
            for key, _ in keys:
                pair = PermutationPair(*key.pair())
                if self.check:
                    _check_pair(pair)
                yield pair


def _check_pair(pair):
    if not pair.is_transitive():
        raise InvariantViolation("emitted intransitive pair {}".format(pair))


def enumerate_classes(mu, jobs=1, check=False, progress=None):
    """
    Representatives of all conjugacy classes of index-`mu` subgroups.

    Returns
    -------
    enumeration : ClassEnumeration
        Iterating yields :class:`PermutationPair` objects in canonical form;
        ``enumeration.stats`` holds the counts.

    Examples
    --------
    >>> [str(p) for p in enumerate_classes(2)]
    ['sigma_S=(1 2) sigma_R=()']
    """
    return ClassEnumeration(mu, jobs=jobs, check=check, progress=progress)


@dataclass(frozen=True)
class MultiplicityEntry:
    """ Candidate count of one class against its bound ``|Aut| * 3**k'``. """

    key: CanonicalPairKey
    graph: str
    candidates: int
    bound: int

    @property
    def ok(self):
        return self.candidates <= self.bound


@dataclass
class MultiplicityReport:
    mu: int
    entries: list

    @property
    def passed(self):
        return all(e.ok for e in self.entries)

    def violations(self):
        return [e for e in self.entries if not e.ok]


def _parallel_edge_order(g):
    """ Number of permutations of the copies within each multi-edge. """
    return math.prod(math.factorial(m) for _, _, m in g.edges)


def multiplicity_audit(mu, raise_on_failure=False):
    """
    Compare the number of candidates per class with ``|Aut(g)| * 3**k'``.

    Here ``|Aut(g)|`` counts the automorphisms of the graph as a multigraph:
    the vertex automorphisms of :func:`automorphism_order` times the
    permutations of parallel edge copies, which a centralizer relabelling
    can exchange.

    Parameters
    ----------
    mu : int
        Index to audit.
    raise_on_failure : bool, optional
        Raise :class:`InvariantViolation` when a bound is exceeded.

    Returns
    -------
    report : MultiplicityReport
    """
    entries = []
    for unit in _work_units(mu):
        shape, g = unit
        k = _uncovered_black(g, maximal_matching(g))
        bound = (automorphism_order(g).aut_order * _parallel_edge_order(g)
                 * 3 ** k)
        for key, count in _classes_of_graph(unit):
            entries.append(MultiplicityEntry(key, str(g), count, bound))

    report = MultiplicityReport(mu, entries)
    if raise_on_failure and not report.passed:
        msg = "multiplicity bound exceeded for {} classes at index {}"
        raise InvariantViolation(msg.format(len(report.violations()), mu))
    return report
