"""
Bicoloured orbit graphs and their isomorph-free generation.

Black vertices stand for 3-cycles of sigma_R (capacity 3, a loop uses 2),
white vertices for its fixed points (capacity 1); edges are the
transpositions of sigma_S between orbits.
"""

import logging
from dataclasses import dataclass

import networkx as nx

from .errors import PermutationError

__all__ = ['BicoloredMultigraph', 'GraphAutomorphismInfo', 'CanonicalForm',
           'canonical_form', 'automorphism_order', 'generate_graphs',
           'quotient_graph', 'BLACK_CAPACITY', 'WHITE_CAPACITY']

logger = logging.getLogger(__name__)

BLACK_CAPACITY = 3
WHITE_CAPACITY = 1


@dataclass(frozen=True)
class BicoloredMultigraph:
    """
    Multigraph with `black` black and `white` white vertices.

    Parameters
    ----------
    black : int
        Number of black vertices, numbered ``0 .. black - 1``.
    white : int
        Number of white vertices, numbered ``black .. black + white - 1``.
    edges : tuple of (int, int, int)
        Sorted triples ``(u, v, multiplicity)`` with ``u <= v``.

    Notes
    -----
    A loop contributes two to the degree of its vertex. Use
    :meth:`from_edges` to build a graph from a plain list of vertex pairs.
    """

    black: int
    white: int
    edges: tuple = ()

    def __post_init__(self):
        n = self.black + self.white
        if self.black < 0 or self.white < 0 or n == 0:
            msg = "invalid vertex counts ({}, {})"
            raise ValueError(msg.format(self.black, self.white))
        edges = tuple(sorted((min(u, v), max(u, v), m) for u, v, m in self.edges))
        pairs = [(u, v) for u, v, _ in edges]
        if len(set(pairs)) != len(pairs):
            raise ValueError("repeated vertex pair in {}".format(edges))
        for u, v, m in edges:
            if not (0 <= u < n and 0 <= v < n) or m < 1:
                raise ValueError("invalid edge {}".format((u, v, m)))
            if u == v and u >= self.black:
                raise ValueError("loop on white vertex {}".format(u))
        object.__setattr__(self, 'edges', edges)
        for v in range(n):
            if self.degree(v) > self.capacity(v):
                msg = "vertex {} exceeds its capacity {}"
                raise ValueError(msg.format(v, self.capacity(v)))

    @classmethod
    def from_edges(cls, black, white, pairs):
        """ Build a graph from a list of (possibly repeated) vertex pairs. """
        counts = {}
        for u, v in pairs:
            key = (min(u, v), max(u, v))
            counts[key] = counts.get(key, 0) + 1
        return cls(black, white, tuple((u, v, m) for (u, v), m in counts.items()))

    # # # accessors # # #

    @property
    def n_vertices(self):
        return self.black + self.white

    def is_black(self, v):
        return v < self.black

    def capacity(self, v):
        return BLACK_CAPACITY if self.is_black(v) else WHITE_CAPACITY

    def degree(self, v):
        """ Degree of vertex `v`; loops count twice. """
        total = 0
        for a, b, m in self.edges:
            if a == v and b == v:
                total += 2 * m
            elif a == v or b == v:
                total += m
        return total

    def edge_count(self):
        return sum(m for _, _, m in self.edges)

    def multiplicity(self, u, v):
        key = (min(u, v), max(u, v))
        for a, b, m in self.edges:
            if (a, b) == key:
                return m
        return 0

    def adjacency(self):
        """ ``adj[v]`` maps each neighbour (including `v` for loops) to the multiplicity. """
        adj = [dict() for _ in range(self.n_vertices)]
        for u, v, m in self.edges:
            adj[u][v] = m
            adj[v][u] = m
        return adj

    def components(self):
        """ Connected components as sorted tuples. """
        adj = self.adjacency()
        seen, result = set(), []
        for start in range(self.n_vertices):
            if start in seen:
                continue
            stack, comp = [start], []
            seen.add(start)
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in adj[v]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            result.append(tuple(sorted(comp)))
        return result

    def is_connected(self):
        return len(self.components()) == 1

    def add_edge(self, u, v):
        """ Copy of the graph with one more copy of the edge ``{u, v}``. """
        pairs = [(a, b) for a, b, m in self.edges for _ in range(m)]
        return BicoloredMultigraph.from_edges(self.black, self.white,
                                              pairs + [(u, v)])

    def relabel(self, labels):
        """ Graph with vertex ``v`` renamed to ``labels[v]`` (colour classes preserved). """
        edges = tuple((labels[u], labels[v], m) for u, v, m in self.edges)
        return BicoloredMultigraph(self.black, self.white, edges)

    def to_networkx(self):
        """
        Equivalent :class:`networkx.Graph` with ``color`` node attributes and
        ``mult`` edge attributes (loops are self-loops).
        """
        graph = nx.Graph()
        for v in range(self.n_vertices):
            graph.add_node(v, color='black' if self.is_black(v) else 'white')
        for u, v, m in self.edges:
            graph.add_edge(u, v, mult=m)
        return graph

    def __str__(self):
        edges = " ".join("({},{})".format(u + 1, v + 1)
                         for u, v, m in self.edges for _ in range(m))
        return "B{} W{} ; {}".format(self.black, self.white, edges).rstrip()


@dataclass(frozen=True)
class GraphAutomorphismInfo:
    """ Order of the colour- and multiplicity-preserving automorphism group. """

    aut_order: int


@dataclass(frozen=True)
class CanonicalForm:
    """
    Result of canonical labelling.

    Attributes
    ----------
    certificate : tuple
        Identical for two graphs exactly when they are isomorphic.
    labelings : tuple of tuple of int
        Every labelling ``v -> labels[v]`` that produces the certificate; there
        is one per automorphism.
    """

    certificate: tuple
    labelings: tuple


# # # canonical labelling # # #

def _refine(cells, adj):
    """ Refine an ordered partition until it is equitable. """
    while True:
        cell_of = {}
        for i, cell in enumerate(cells):
            for v in cell:
                cell_of[v] = i

        refined, changed = [], False
        for cell in cells:
            if len(cell) == 1:
                refined.append(cell)
                continue
            signature = {}
            for v in cell:
                loop = adj[v].get(v, 0)
                nbrs = sorted((cell_of[w], m) for w, m in adj[v].items() if w != v)
                signature[v] = (loop, tuple(nbrs))
            groups = sorted(set(signature.values()))
            if len(groups) > 1:
                changed = True
            for sig in groups:
                refined.append([v for v in cell if signature[v] == sig])
        cells = refined
        if not changed:
            return cells


def _leaves(cells, adj):
    cells = _refine(cells, adj)
    for t, cell in enumerate(cells):
        if len(cell) > 1:
            break
    else:
        labels = [0] * len(cells)
        for i, (v, ) in enumerate(cells):
            labels[v] = i
        yield tuple(labels)
        return

    # individualise each vertex of the first non-singleton cell
    for v in cells[t]:
        rest = [w for w in cells[t] if w != v]
        yield from _leaves(cells[:t] + [[v], rest] + cells[t + 1:], adj)


def _certificate(g, labels):
    edges = sorted((min(labels[u], labels[v]), max(labels[u], labels[v]), m)
                   for u, v, m in g.edges)
    return (g.black, g.white, tuple(edges))


def canonical_form(g):
    """
    Canonical labelling by individualisation and refinement.

    Parameters
    ----------
    g : BicoloredMultigraph

    Returns
    -------
    form : CanonicalForm
        The smallest certificate over all leaves of the search tree, and
        all labellings that attain it.

    Notes
    -----
    The search tree is explored completely, so the number of optimal
    labellings equals the order of the automorphism group.
    """
    adj = g.adjacency()
    cells = [c for c in (list(range(g.black)),
                         list(range(g.black, g.n_vertices))) if c]
    best, labelings = None, []
    for labels in _leaves(cells, adj):
        cert = _certificate(g, labels)
        if best is None or cert < best:
            best, labelings = cert, [labels]
        elif cert == best:
            labelings.append(labels)
    return CanonicalForm(best, tuple(labelings))


def automorphism_order(g):
    """
    Order of the automorphism group of `g`.

    Examples
    --------
    >>> triangle = BicoloredMultigraph.from_edges(3, 0, [(0, 1), (1, 2), (0, 2)])
    >>> automorphism_order(triangle).aut_order
    6
    """
    return GraphAutomorphismInfo(len(canonical_form(g).labelings))


# # # generation # # #

def _addable_pairs(g):
    for u in range(g.black):
        if g.degree(u) + 2 <= BLACK_CAPACITY and g.multiplicity(u, u) == 0:
            yield (u, u)
        for v in range(u + 1, g.black):
            if (g.degree(u) < BLACK_CAPACITY
                    and g.degree(v) < BLACK_CAPACITY):
                yield (u, v)


def _has_dead_component(g):
    components = g.components()
    if len(components) == 1:
        return False
    for comp in components:
        if all(g.degree(v) == g.capacity(v) for v in comp):
            return True
    return False


def _is_canonical_extension(form, u, v):
    """ Is ``{u, v}`` equivalent to the canonical deletion edge of the child? """
    _, _, edges = form.certificate
    last = max((a, b) for a, b, _ in edges)
    for labels in form.labelings:
        if tuple(sorted((labels[u], labels[v]))) == last:
            return True
    return False


def _augment(g):
    yield g
    seen = set()
    for u, v in _addable_pairs(g):
        child = g.add_edge(u, v)
        if _has_dead_component(child):
            continue
        form = canonical_form(child)
        if form.certificate in seen:
            continue
        if _is_canonical_extension(form, u, v):
            seen.add(form.certificate)
            yield from _augment(child)


def _core_graphs(black):
    """ All black-only multigraphs up to isomorphism, connected or not. """
    yield from _augment(BicoloredMultigraph(black, 0))


def _attachments(spare, white):
    """ Vectors ``w`` with ``sum(w) == white`` and ``w[v] <= spare[v]``. """
    if not spare:
        if white == 0:
            yield ()
        return
    for k in range(min(spare[0], white) + 1):
        for rest in _attachments(spare[1:], white - k):
            yield (k, ) + rest


def generate_graphs(black, white):
    """
    Connected bicoloured multigraphs up to isomorphism.

    Parameters
    ----------
    black : int
        Number of black vertices (capacity 3, at most one loop).
    white : int
        Number of white vertices (capacity 1).

    Yields
    ------
    g : BicoloredMultigraph
        One representative per isomorphism class, in a fixed order.

    Notes
    -----
    The black part is produced by canonical augmentation, one edge at a time,
    and white vertices are then hung on black vertices with spare capacity.
    This covers everything: in a connected graph with a black vertex every
    white vertex is a leaf attached to a black one.
    """
    if black < 0 or white < 0 or black + white < 1:
        msg = "invalid vertex counts ({}, {})"
        raise ValueError(msg.format(black, white))

    if black == 0:
        if white == 1:
            yield BicoloredMultigraph(0, 1)
        elif white == 2:
            yield BicoloredMultigraph(0, 2, ((0, 1, 1), ))
        return

    # a connected black core is a tree at best, leaving c + 2 free slots
    if white > black + 2:
        return

    for core in _core_graphs(black):
        if not core.is_connected():
            continue
        spare = [BLACK_CAPACITY - core.degree(v) for v in range(black)]
        seen = set()
        for w in _attachments(spare, white):
            pairs = [(a, b) for a, b, m in core.edges for _ in range(m)]
            leaf = black
            for v, k in enumerate(w):
                for _ in range(k):
                    pairs.append((v, leaf))
                    leaf += 1
            g = BicoloredMultigraph.from_edges(black, white, pairs)
            cert = canonical_form(g).certificate
            if cert not in seen:
                seen.add(cert)
                yield g


def quotient_graph(sigma_S, sigma_R):
    """
    Orbit graph of a pair.

    Parameters
    ----------
    sigma_S, sigma_R : Permutation
        Involution and order-three permutation of equal degree.

    Returns
    -------
    g : BicoloredMultigraph
        Black vertices are the 3-cycles of `sigma_R` ordered by smallest
        point, white vertices its fixed points in increasing order; every
        transposition of `sigma_S` contributes one edge.
    """
    if sigma_S.degree != sigma_R.degree:
        raise PermutationError("degree mismatch")
    cycles = sigma_R.cycles(singletons=True)
    black = [c for c in cycles if len(c) == 3]
    white = [c for c in cycles if len(c) == 1]
    if len(black) + len(white) != len(cycles):
        raise PermutationError("{} does not have order dividing 3".format(sigma_R))

    vertex = {}
    for i, c in enumerate(black + white):
        for x in c:
            vertex[x] = i
    pairs = [(vertex[a], vertex[b]) for a, b in
             (c for c in sigma_S.cycles() if len(c) == 2)]
    if any(len(c) > 2 for c in sigma_S.cycles()):
        raise PermutationError("{} is not an involution".format(sigma_S))
    return BicoloredMultigraph.from_edges(len(black), len(white), pairs)
