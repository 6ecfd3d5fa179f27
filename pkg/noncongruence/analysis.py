"""
Invariants of the subgroup described by a permutation pair.

Signatures, cusps and their normalizers, the monodromy group, the
congruence property and the grouping of subgroups into passports.
"""

import logging
import math
from collections import deque
from dataclasses import dataclass, field, replace
from functools import lru_cache

from sympy.combinatorics import Permutation as _SymPermutation
from sympy.combinatorics import PermutationGroup

from .congruence import is_congruence, level
from .errors import InvariantViolation
from .matrix import IDENTITY, coset_representatives, matrix_generators
from .pairs import PermutationPair
from .perm import (Permutation, compose, conjugate, cycle_type, fixed_points,
                   is_transitive)

__all__ = ['Signature', 'SubgroupRecord', 'Cusp', 'MonodromyInfo',
           'Passport', 'sigma_T_of', 'signature_of', 'cusp_data',
           'cusp_normalizers', 'monodromy_group', 'monodromy_order',
           'monodromy_info', 'groups_conjugate_in_Smu',
           'group_into_passports', 'coset_representatives',
           'matrix_generators', 'best_height_conjugate', 'height_score',
           'analyze_pair', 'MAX_ENUMERATION']

logger = logging.getLogger(__name__)

#: largest group order for which conjugacy in S_mu is decided exactly
MAX_ENUMERATION = 200000


@dataclass(frozen=True, order=True)
class Signature:
    """
    Signature ``(mu, genus, n_cusps, n_e2, n_e3)`` of a subgroup.

    Examples
    --------
    >>> Signature(9, 1, 1, 1, 0).as_tuple()
    (9, 1, 1, 1, 0)
    """

    mu: int
    genus: int
    n_cusps: int
    n_e2: int
    n_e3: int

    def __post_init__(self):
        if self.genus < 0 or (self.n_e2 - self.mu) % 2 or (self.n_e3 - self.mu) % 3:
            raise InvariantViolation("inconsistent signature {}"
                                     .format(self.as_tuple()))

    def as_tuple(self):
        return (self.mu, self.genus, self.n_cusps, self.n_e2, self.n_e3)

    def __str__(self):
        return "_".join(str(x) for x in self.as_tuple())


@dataclass(frozen=True)
class SubgroupRecord:
    """
    All derived data of one conjugacy class representative.

    Attributes
    ----------
    pair : PermutationPair
    sigma_T : Permutation
    signature : Signature
    cusp_widths : tuple of int
        Decreasing.
    generalized_level : int
    is_congruence : bool
    monodromy_order : int
    passport_id, passport_size : int or None
        Filled by :func:`group_into_passports`.
    label : str or None
    """

    pair: PermutationPair
    sigma_T: Permutation
    signature: Signature
    cusp_widths: tuple
    generalized_level: int
    is_congruence: bool
    monodromy_order: int
    passport_id: int = None
    passport_size: int = None
    label: str = None

    def __post_init__(self):
        if sum(self.cusp_widths) != self.signature.mu:
            raise InvariantViolation("cusp widths {} do not sum to {}"
                                     .format(self.cusp_widths, self.signature.mu))
        if len(self.cusp_widths) != self.signature.n_cusps:
            raise InvariantViolation("{} cusp widths for {} cusps".format(
                len(self.cusp_widths), self.signature.n_cusps))


@dataclass(frozen=True)
class Cusp:
    """ A cusp: its sigma_T-cycle, width and normalizer ``A_p``. """

    index: int
    cycle: tuple
    width: int
    normalizer: object = IDENTITY


# # # elementary invariants # # #

def sigma_T_of(pair):
    """ ``compose(sigma_S, sigma_R)``, the action of T. """
    return compose(pair.sigma_S, pair.sigma_R)


def signature_of(pair):
    """
    Signature of the subgroup, the genus from Riemann-Hurwitz.

    Raises
    ------
    InvariantViolation
        If the genus formula does not give a non-negative integer.
    """
    mu = pair.degree
    n_e2 = len(fixed_points(pair.sigma_S))
    n_e3 = len(fixed_points(pair.sigma_R))
    n_cusps = len(sigma_T_of(pair).cycles(singletons=True))
    twelve_g = 12 + mu - 3 * n_e2 - 4 * n_e3 - 6 * n_cusps
    if twelve_g % 12 or twelve_g < 0:
        msg = "genus {}/12 of {} is not a non-negative integer"
        raise InvariantViolation(msg.format(twelve_g, pair))
    return Signature(mu, twelve_g // 12, n_cusps, n_e2, n_e3)


def cusp_data(pair):
    """
    Cusps as ``(cycle, width)``.

    The cycle containing point 1 (the cusp at infinity) comes first, the
    others follow by their smallest point.
    """
    cycles = sigma_T_of(pair).cycles(singletons=True)
    cycles.sort(key=lambda c: (1 not in c, min(c)))
    return [(c, len(c)) for c in cycles]


def cusp_normalizers(pair, reps=None):
    """
    Normalizers of all cusps.

    Parameters
    ----------
    pair : PermutationPair
        Transitive pair.
    reps : dict, optional
        Coset representatives, see :func:`coset_representatives`.

    Returns
    -------
    cusps : list of Cusp
        In the order of :func:`cusp_data`. The normalizer of a cusp is the
        coset representative of the smallest point of its cycle; it maps
        infinity to the cusp and conjugates the width-power of T into the
        subgroup. The cusp at infinity has the identity.
    """
    if reps is None:
        reps = coset_representatives(pair)
    cusps = []
    for i, (cycle, width) in enumerate(cusp_data(pair)):
        a = IDENTITY if 1 in cycle else reps[min(cycle)]
        cusps.append(Cusp(i, tuple(cycle), width, a))
    return cusps


# # # monodromy group # # #

def _sympy(p):
    return _SymPermutation(p.array.tolist())


@lru_cache(maxsize=1024)
def monodromy_group(pair):
    """ ``<sigma_S, sigma_R>`` as a sympy permutation group. """
    return PermutationGroup([_sympy(pair.sigma_S), _sympy(pair.sigma_R)])


def monodromy_order(pair):
    """
    Order of the monodromy group (Schreier-Sims).

    Examples
    --------
    >>> monodromy_order(PermutationPair.from_cycles('()', '(1 2 3)'))
    3
    """
    return int(monodromy_group(pair).order())


@dataclass(frozen=True)
class MonodromyInfo:
    order: int
    transitive: bool
    primitive: bool
    block_sizes: tuple
    suborbit_lengths: tuple


@lru_cache(maxsize=1024)
def monodromy_info(pair):
    """
    Conjugation invariants of the monodromy group in S_mu.

    Returns
    -------
    info : MonodromyInfo
        Order, transitivity, primitivity, the sizes of the minimal block
        systems and the orbit lengths of the stabilizer of point 1.
    """
    group = monodromy_group(pair)
    transitive = bool(group.is_transitive())
    primitive = transitive and bool(group.is_primitive())
    blocks = ()
    if transitive and not primitive:
        blocks = tuple(sorted(pair.degree // len(set(b))
                              for b in group.minimal_blocks()))
    suborbits = tuple(sorted(len(o) for o in group.stabilizer(0).orbits()))
    return MonodromyInfo(int(group.order()), transitive, primitive, blocks,
                         suborbits)


def _elements(group):
    return [Permutation._from_array(a) for a in group.generate(af=True)]


def _class_fingerprint(elements):
    counts = {}
    for g in elements:
        t = cycle_type(g)
        counts[t] = counts.get(t, 0) + 1
    return sorted(counts.items())


def _classes_of(elements, gens):
    """ Representatives of the classes of `elements` under conjugation by `gens`. """
    remaining = set(elements)
    reps = []
    for x in elements:
        if x not in remaining:
            continue
        reps.append(x)
        remaining.discard(x)
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for g in gens:
                z = conjugate(y, g)
                if z in remaining:
                    remaining.discard(z)
                    queue.append(z)
    return reps


def groups_conjugate_in_Smu(pair1, pair2, max_enumeration=MAX_ENUMERATION):
    """
    Check whether two monodromy groups are conjugate in S_mu.

    Parameters
    ----------
    pair1, pair2 : PermutationPair
        Transitive pairs of equal degree.
    max_enumeration : int, optional
        Largest group order for which both groups are listed in full and
        compared by their cycle type statistics first. Larger groups skip
        that comparison; the answer is exact either way.

    Notes
    -----
    The groups are conjugate exactly when the second group has a
    generating pair simultaneously conjugate to ``(sigma_S, sigma_R)`` of
    the first. Candidates for the image of sigma_R are taken up to
    conjugation inside the second group.
    """
    if pair1.degree != pair2.degree:
        raise ValueError("degree mismatch: {} and {}"
                         .format(pair1.degree, pair2.degree))
    if pair1 == pair2:
        return True
    info1, info2 = monodromy_info(pair1), monodromy_info(pair2)
    if info1 != info2:
        return False

    mu = pair1.degree
    if info1.order in (math.factorial(mu), math.factorial(mu) // 2):
        return True
    if info1.order <= max_enumeration:
        elements1 = _elements(monodromy_group(pair1))
        elements2 = _elements(monodromy_group(pair2))
        if _class_fingerprint(elements1) != _class_fingerprint(elements2):
            return False
    else:
        logger.info("group order %d exceeds %d, searching generating pairs "
                    "without class statistics", info1.order, max_enumeration)
        elements2 = None

    target = pair1.canonical_key()
    type_S, type_R = cycle_type(pair1.sigma_S), cycle_type(pair1.sigma_R)
    type_T = cycle_type(pair1.sigma_T)
    images_S, images_R = [], []
    if elements2 is None:
        elements2 = (Permutation._from_array(a)
                     for a in monodromy_group(pair2).generate(af=True))
    for g in elements2:
        t = cycle_type(g)
        if t == type_S:
            images_S.append(g)
        if t == type_R:
            images_R.append(g)

    for b in _classes_of(images_R, [pair2.sigma_S, pair2.sigma_R]):
        for a in images_S:
            if cycle_type(compose(a, b)) != type_T:
                continue
            if not is_transitive([a, b]):
                continue
            if PermutationPair(a, b).canonical_key() == target:
                return True
    return False


# # # passports # # #

@dataclass
class Passport:
    """ Records of one signature and cusp widths with conjugate monodromy groups. """

    signature: Signature
    passport_id: int
    records: list = field(default_factory=list)

    def __len__(self):
        return len(self.records)


def group_into_passports(records, by_cusp_widths=True,
                         max_enumeration=MAX_ENUMERATION):
    """
    Partition records into passports.

    Parameters
    ----------
    records : list of SubgroupRecord
        Pairwise non-conjugate records.
    by_cusp_widths : bool, optional
        Separate records with different cusp-width multisets, i.e. different
        cycle types of sigma_T. On by default; the cycle types of sigma_S
        and sigma_R are fixed by the signature. Off groups by signature and
        monodromy group alone.
    max_enumeration : int, optional
        Passed to :func:`groups_conjugate_in_Smu`.

    Returns
    -------
    passports : list of Passport
        Ordered by signature, then by id. Ids count from 0 within each
        signature, in the order of the smallest canonical key of the
        members. The member records carry ``passport_id`` and
        ``passport_size``.
    """
    keyed = sorted(((r.pair.canonical_key(), r) for r in records),
                   key=lambda kr: kr[0])
    buckets = {}
    for key, r in keyed:
        bucket = (r.signature, r.cusp_widths if by_cusp_widths else ())
        classes = buckets.setdefault(bucket, [])
        for members in classes:
            _, rep = members[0]
            if groups_conjugate_in_Smu(rep.pair, r.pair, max_enumeration):
                members.append((key, r))
                break
        else:
            classes.append([(key, r)])

    by_signature = {}
    for (sig, _), classes in buckets.items():
        by_signature.setdefault(sig, []).extend(classes)

    passports = []
    for sig in sorted(by_signature):
        classes = sorted(by_signature[sig], key=lambda m: m[0][0])
        for i, members in enumerate(classes):
            updated = [replace(r, passport_id=i, passport_size=len(members))
                       for _, r in members]
            passports.append(Passport(sig, i, updated))
    logger.info("%d records in %d passports", len(keyed), len(passports))
    return passports


# # # base points for the period computation # # #

def height_score(pair, reps=None):
    """
    Largest ``min_p c_p * h_p`` over the non-parabolic generators.

    Small scores mean high base points for the period integrals.
    """
    if reps is None:
        reps = coset_representatives(pair)
    cusps = cusp_normalizers(pair, reps)
    score = 0
    for g in matrix_generators(pair, reps):
        cs = []
        for cusp in cusps:
            a = cusp.normalizer
            cs.append((a.inverse() @ g @ a).c * cusp.width)
        if 0 not in cs:
            score = max(score, min(cs))
    return score


def best_height_conjugate(pair):
    """
    Conjugate by a transposition ``(1 j)`` with the best base points.

    Returns
    -------
    pair : PermutationPair
        The conjugate with the smallest :func:`height_score`; the identity
        wins ties, then the smallest ``j``.
    """
    mu = pair.degree
    best, best_score = pair, height_score(pair)
    for j in range(2, mu + 1):
        g = Permutation.from_cycles([(1, j)], mu)
        candidate = pair.conjugate(g)
        score = height_score(candidate)
        if score < best_score:
            best, best_score = candidate, score
    return best


def analyze_pair(pair, direct_limit=None):
    """
    Compute the :class:`SubgroupRecord` of a transitive pair.

    Examples
    --------
    >>> r = analyze_pair(PermutationPair.from_cycles('()', '()'))
    >>> r.signature.as_tuple(), r.is_congruence
    ((1, 0, 1, 1, 1), True)
    """
    if not pair.is_transitive():
        raise ValueError("pair {} is not transitive".format(pair))
    kwargs = {} if direct_limit is None else {'direct_limit': direct_limit}
    widths = tuple(sorted((w for _, w in cusp_data(pair)), reverse=True))
    return SubgroupRecord(
        pair=pair,
        sigma_T=sigma_T_of(pair),
        signature=signature_of(pair),
        cusp_widths=widths,
        generalized_level=level(pair),
        is_congruence=is_congruence(pair, **kwargs),
        monodromy_order=monodromy_order(pair),
    )
