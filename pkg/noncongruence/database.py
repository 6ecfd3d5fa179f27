"""
Database labels, sigma_T normalisation and JSON records.
"""

import json
import logging
import os
import re
from dataclasses import replace

from .analysis import Signature, SubgroupRecord, signature_of
from .errors import (InvariantViolation, LabelError, PermutationError,
                     RecordSchemaError)
from .pairs import PermutationPair
from .perm import Permutation, compose
from .utils import lcm

__all__ = ['render_label', 'parse_label', 'normalize_sigma_T',
           'relabel_record', 'record_to_dict', 'record_from_dict',
           'export_records', 'import_records', 'passports_to_records',
           'load_orbit_letters', 'assign_labels', 'SCHEMA_FIELDS']

logger = logging.getLogger(__name__)

SCHEMA_FIELDS = ('label', 'mu', 'genus', 'n_cusps', 'n_e2', 'n_e3',
                 'sigma_s', 'sigma_r', 'sigma_t', 'cusp_widths',
                 'generalized_level', 'is_congruence', 'monodromy_order',
                 'passport_id', 'passport_size')

_LETTER = re.compile(r'[a-z]+')
_NUMBER = re.compile(r'\d+')


# # # labels # # #

def render_label(signature, passport_id, letter=None):
    """
    Database label of a passport.

    Examples
    --------
    >>> render_label(Signature(15, 1, 2, 1, 0), 3, 'a')
    '15_1_2_1_0_3_a'
    """
    if passport_id < 0:
        raise ValueError("passport id must be non-negative")
    parts = [str(x) for x in signature.as_tuple()] + [str(passport_id)]
    if letter is not None:
        if not _LETTER.fullmatch(letter):
            raise ValueError("invalid orbit letter {!r}".format(letter))
        parts.append(letter)
    return "_".join(parts)


def parse_label(label):
    """
    Split a label into its components.

    Returns
    -------
    signature : Signature
    passport_id : int
    letter : str or None

    Raises
    ------
    LabelError
        With the offset of the first character that does not fit
        ``MU_G_NC_NE2_NE3_ID[_LETTER]``.
    """
    numbers, letter = [], None
    pos = 0
    while True:
        if len(numbers) < 6:
            match = _NUMBER.match(label, pos)
            if match is None:
                raise LabelError("expected a number", pos)
            numbers.append(int(match.group()))
        else:
            match = _LETTER.match(label, pos)
            if match is None:
                raise LabelError("expected an orbit letter", pos)
            letter = match.group()
        pos = match.end()
        if pos == len(label):
            break
        if label[pos] != '_' or letter is not None:
            raise LabelError("unexpected character {!r}".format(label[pos]), pos)
        pos += 1

    if len(numbers) < 6:
        raise LabelError("label has {} of 6 numeric fields".format(len(numbers)),
                         len(label))
    try:
        signature = Signature(*numbers[:5])
    except InvariantViolation as err:
        raise LabelError(str(err), 0) from None
    return signature, numbers[5], letter


# # # sigma_T normalisation # # #

def _cusp_order(cycles):
    """ Order of the sigma_T-cycles in the normal form. """
    ordered = sorted(cycles, key=lambda c: (-len(c), min(c)))
    counts = {}
    for c in cycles:
        counts[len(c)] = counts.get(len(c), 0) + 1
    unique = [c for c in ordered if counts[len(c)] == 1]

    first = None
    if counts.get(1) == 1:
        first = unique[-1]
    elif counts[len(ordered[0])] > 1 and unique:
        first = unique[0]
    if first is None:
        return ordered
    return [first] + [c for c in ordered if c is not first]


def _block_relabeling(pair):
    cycles = pair.sigma_T.cycles(singletons=True)
    images = [0] * pair.degree
    label = 1
    for cycle in _cusp_order(cycles):
        for x in sorted(cycle):
            images[x - 1] = label
            label += 1
    return Permutation(images)


def relabel_record(record, g):
    """
    Relabel the points of a record by the permutation `g`.

    Every point ``i`` becomes ``g(i)``; all invariants are unchanged.
    """
    pair = record.pair.conjugate(g)
    return replace(record, pair=pair, sigma_T=pair.sigma_T)


def normalize_sigma_T(record):
    """
    Relabel a record so that sigma_T is in database normal form.

    The cusps are put in decreasing order of width, ties broken by the
    smallest point, and cusp ``i`` gets the next block of labels; within a
    cycle the points keep their relative order. The cusp placed at infinity
    (first) is a unique cusp of width one if there is one, otherwise the
    largest cusp of unique width when the maximal width is shared.

    Examples
    --------
    >>> from noncongruence.analysis import analyze_pair
    >>> pair = PermutationPair.from_cycles('(1 2)', '(2 3 4)')
    >>> str(normalize_sigma_T(analyze_pair(pair)).sigma_T)
    '(1 3 4 2)'
    """
    return relabel_record(record, _block_relabeling(record.pair))


# # # JSON records # # #

def record_to_dict(record):
    """ JSON-ready dictionary with the fields of :data:`SCHEMA_FIELDS`. """
    sig = record.signature
    return {
        'label': record.label,
        'mu': sig.mu,
        'genus': sig.genus,
        'n_cusps': sig.n_cusps,
        'n_e2': sig.n_e2,
        'n_e3': sig.n_e3,
        'sigma_s': list(record.pair.sigma_S.images),
        'sigma_r': list(record.pair.sigma_R.images),
        'sigma_t': list(record.sigma_T.images),
        'cusp_widths': list(record.cusp_widths),
        'generalized_level': record.generalized_level,
        'is_congruence': record.is_congruence,
        'monodromy_order': str(record.monodromy_order),
        'passport_id': record.passport_id,
        'passport_size': record.passport_size,
    }


def _require(cond, msg, index):
    if not cond:
        raise RecordSchemaError(msg, index)


def _is_int(x):
    return isinstance(x, int) and not isinstance(x, bool)


def record_from_dict(data, index=None):
    """
    Rebuild a record and validate it against its own invariants.

    Raises
    ------
    RecordSchemaError
        Missing or mistyped fields, invalid permutations or derived fields
        that disagree with the permutations.
    """
    _require(isinstance(data, dict), "expected an object", index)
    missing = [k for k in SCHEMA_FIELDS if k not in data]
    _require(not missing, "missing fields {}".format(missing), index)

    try:
        sigma_S = Permutation(data['sigma_s'])
        sigma_R = Permutation(data['sigma_r'])
        sigma_T = Permutation(data['sigma_t'])
        pair = PermutationPair(sigma_S, sigma_R)
    except (PermutationError, TypeError) as err:
        raise RecordSchemaError(str(err), index) from None
    _require(pair.is_transitive(), "the pair is not transitive", index)
    _require(sigma_T.degree == sigma_S.degree,
             "sigma_t has degree {}".format(sigma_T.degree), index)
    _require(compose(sigma_S, sigma_R) == sigma_T,
             "sigma_t is not compose(sigma_s, sigma_r)", index)

    widths = data['cusp_widths']
    _require(isinstance(widths, list) and all(_is_int(w) and w > 0 for w in widths),
             "cusp_widths must be a list of positive integers", index)
    _require(sum(widths) == data['mu'],
             "cusp widths {} do not sum to mu = {}".format(widths, data['mu']),
             index)
    _require(sorted(widths, reverse=True)
             == sorted((len(c) for c in sigma_T.cycles(singletons=True)),
                       reverse=True),
             "cusp widths do not match sigma_t", index)
    _require(data['generalized_level'] == lcm(widths),
             "generalized_level is not the lcm of the cusp widths", index)
    _require(isinstance(data['is_congruence'], bool),
             "is_congruence must be a boolean", index)
    order = data['monodromy_order']
    _require(isinstance(order, str) and order.isdigit(),
             "monodromy_order must be a decimal string", index)
    for key in ('passport_id', 'passport_size'):
        _require(data[key] is None or _is_int(data[key]),
                 "{} must be an integer or null".format(key), index)
    _require(data['label'] is None or isinstance(data['label'], str),
             "label must be a string or null", index)

    try:
        signature = Signature(data['mu'], data['genus'], data['n_cusps'],
                              data['n_e2'], data['n_e3'])
        _require(signature == signature_of(pair),
                 "signature {} does not match the permutations".format(signature),
                 index)
        record = SubgroupRecord(
            pair=pair, sigma_T=sigma_T, signature=signature,
            cusp_widths=tuple(sorted(widths, reverse=True)),
            generalized_level=data['generalized_level'],
            is_congruence=data['is_congruence'],
            monodromy_order=int(order),
            passport_id=data['passport_id'],
            passport_size=data['passport_size'],
            label=data['label'])
    except (InvariantViolation, TypeError) as err:
        raise RecordSchemaError(str(err), index) from None
    _require(sigma_S.degree == signature.mu, "degree differs from mu", index)
    return record


def export_records(records, path):
    """
    Write records to a JSON file.

    The output is deterministic: records are written in the given order
    with a fixed field order.
    """
    payload = [record_to_dict(r) for r in records]
    with open(path, 'w') as fp:
        json.dump(payload, fp, indent=1)
        fp.write("\n")
    logger.info("wrote %d records to %s", len(payload), path)


def import_records(path):
    """
    Read records written by :func:`export_records`.

    Raises
    ------
    OSError
        If the file cannot be read.
    RecordSchemaError
        If the content is not a list of valid records.
    """
    with open(path) as fp:
        try:
            payload = json.load(fp)
        except json.JSONDecodeError as err:
            raise RecordSchemaError("invalid JSON: {}".format(err)) from None
    if not isinstance(payload, list):
        raise RecordSchemaError("expected a list of records")
    return [record_from_dict(d, i) for i, d in enumerate(payload)]


def passports_to_records(passports, letters=None):
    """ Flatten passports into labelled records, passport by passport. """
    records = [r for p in passports for r in p.records]
    return assign_labels(records, letters)


# # # Galois orbit letters # # #

def load_orbit_letters(path):
    """
    Read orbit letters keyed by the canonical key of a pair.

    The file holds a list of objects ``{"sigma_s": [...], "sigma_r": [...],
    "letter": "a"}`` with one-based image arrays.

    Returns
    -------
    letters : dict
        ``str(canonical_key) -> letter``.
    """
    if not os.path.exists(path):
        raise FileNotFoundError("orbit file not found: {}".format(path))
    with open(path) as fp:
        entries = json.load(fp)
    letters = {}
    for i, entry in enumerate(entries):
        try:
            pair = PermutationPair(Permutation(entry['sigma_s']),
                                   Permutation(entry['sigma_r']))
            letter = entry['letter']
        except (KeyError, TypeError, PermutationError) as err:
            raise RecordSchemaError("invalid orbit entry: {}".format(err),
                                    i) from None
        if not isinstance(letter, str) or not _LETTER.fullmatch(letter):
            raise RecordSchemaError("invalid orbit letter {!r}".format(letter), i)
        letters[str(pair.canonical_key())] = letter
    return letters


def assign_labels(records, letters=None):
    """
    Attach labels to records that carry a passport id.

    Parameters
    ----------
    records : list of SubgroupRecord
    letters : dict, optional
        Orbit letters from :func:`load_orbit_letters`; without them labels
        have no letter.
    """
    labelled = []
    for r in records:
        if r.passport_id is None:
            labelled.append(r)
            continue
        letter = None
        if letters:
            letter = letters.get(str(r.pair.canonical_key()))
        labelled.append(replace(r, label=render_label(r.signature,
                                                      r.passport_id, letter)))
    return labelled

