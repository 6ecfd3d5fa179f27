import logging

import numpy as np
import pytest

from noncongruence.analysis import (Signature, analyze_pair,
                                    best_height_conjugate, cusp_data,
                                    cusp_normalizers, group_into_passports,
                                    groups_conjugate_in_Smu, height_score,
                                    monodromy_info, monodromy_order,
                                    signature_of)
from noncongruence.errors import InvariantViolation
from noncongruence.matrix import IDENTITY, T
from noncongruence.pairs import PermutationPair, enumerate_classes
from noncongruence.perm import random_permutation


@pytest.fixture
def genus_one_pair():
    return PermutationPair.from_cycles('(2 5)(3 7)(4 8)(6 9)',
                                       '(1 2 6)(3 8 5)(4 9 7)')


@pytest.fixture
def two_cusp_pair():
    return PermutationPair.from_cycles(
        '(1 15)(2 12)(3 7)(4 9)(5 13)(6 10)(8 14)',
        '(1 11 12)(2 13 6)(3 8 15)(4 10 7)(5 14 9)')


def test_genus_one_record(genus_one_pair):
    record = analyze_pair(genus_one_pair)
    assert record.signature == Signature(9, 1, 1, 1, 0)
    assert str(record.signature) == '9_1_1_1_0'
    assert record.cusp_widths == (9, )
    assert record.generalized_level == 9
    assert not record.is_congruence
    assert record.monodromy_order == 504


def test_two_cusp_record(two_cusp_pair):
    record = analyze_pair(two_cusp_pair)
    assert record.signature.as_tuple() == (15, 1, 2, 1, 0)
    assert str(record.sigma_T) == '(1 3 4 5 6 7 8 9 10 2)(11 12 13 14 15)'
    assert record.cusp_widths == (10, 5)
    assert record.generalized_level == 10
    assert record.monodromy_order == 9720


def test_signature_validation():
    with pytest.raises(InvariantViolation):
        Signature(9, 1, 1, 2, 0)
    with pytest.raises(InvariantViolation):
        Signature(9, -1, 1, 1, 0)


def test_analyze_needs_transitivity():
    with pytest.raises(ValueError):
        analyze_pair(PermutationPair.from_cycles('(1 2)', '()', 3))


@pytest.mark.parametrize('mu', range(1, 9))
def test_signatures_are_consistent(mu):
    for pair in enumerate_classes(mu):
        sig = signature_of(pair)
        assert sig.mu == mu
        assert sum(w for _, w in cusp_data(pair)) == mu


def test_cusp_normalizers(two_cusp_pair):
    cusps = cusp_normalizers(two_cusp_pair)
    assert [c.width for c in cusps] == [10, 5]
    assert 1 in cusps[0].cycle and cusps[0].normalizer == IDENTITY
    for cusp in cusps:
        a = cusp.normalizer
        g = a @ T ** cusp.width @ a.inverse()
        assert g.action(two_cusp_pair)(1) == 1
        assert a.action(two_cusp_pair)(1) == min(cusp.cycle)


def test_monodromy_info(genus_one_pair, two_cusp_pair):
    info = monodromy_info(genus_one_pair)
    assert info.order == 504 and info.transitive and info.primitive
    assert info.block_sizes == ()
    assert sum(info.suborbit_lengths) == 9
    assert monodromy_order(two_cusp_pair) == 9720
    assert not monodromy_info(two_cusp_pair).primitive
    blocks = monodromy_info(two_cusp_pair).block_sizes
    assert blocks and set(blocks) <= {3, 5}


def test_conjugate_groups(genus_one_pair):
    rng = np.random.default_rng(29)
    g = random_permutation(9, rng)
    other = genus_one_pair.conjugate(g)
    assert groups_conjugate_in_Smu(genus_one_pair, other)
    assert groups_conjugate_in_Smu(genus_one_pair, genus_one_pair)


def test_non_conjugate_groups(genus_one_pair):
    # contains double transpositions, which PSL2(8) on nine points lacks
    other = PermutationPair.from_cycles('(3 4)(6 7)', '(1 2 3)(4 5 6)(7 8 9)')
    assert other.is_transitive()
    assert not groups_conjugate_in_Smu(genus_one_pair, other)
    with pytest.raises(ValueError):
        groups_conjugate_in_Smu(genus_one_pair,
                                PermutationPair.from_cycles('()', '()'))


def test_same_group_different_generators():
    # both generate the cyclic group of order 3 acting regularly
    a = PermutationPair.from_cycles('()', '(1 2 3)')
    b = PermutationPair.from_cycles('()', '(1 3 2)')
    assert groups_conjugate_in_Smu(a, b)


@pytest.mark.parametrize('mu', [6, 7, 8])
def test_passports(mu):
    records = [analyze_pair(p) for p in enumerate_classes(mu)]
    passports = group_into_passports(records)
    assert sum(len(p) for p in passports) == len(records)
    for p in passports:
        assert all(r.signature == p.signature for r in p.records)
        assert all(r.passport_id == p.passport_id for r in p.records)
        assert all(r.passport_size == len(p) for r in p.records)
        orders = {r.monodromy_order for r in p.records}
        assert len(orders) == 1
        first = p.records[0]
        assert all(groups_conjugate_in_Smu(first.pair, r.pair)
                   for r in p.records)

    by_signature = {}
    for p in passports:
        by_signature.setdefault(p.signature, []).append(p)
    for sig, group in by_signature.items():
        assert [p.passport_id for p in group] == list(range(len(group)))
        mins = [min(r.pair.canonical_key() for r in p.records) for p in group]
        assert mins == sorted(mins)
        for i, p in enumerate(group):
            for q in group[i + 1:]:
                assert not groups_conjugate_in_Smu(p.records[0].pair,
                                                   q.records[0].pair)


def test_passports_by_cusp_widths():
    records = [analyze_pair(p) for p in enumerate_classes(8)]
    coarse = group_into_passports(records, by_cusp_widths=False)
    fine = group_into_passports(records)
    assert len(fine) >= len(coarse)
    for p in fine:
        assert len({r.cusp_widths for r in p.records}) == 1


def _noncongruence_passport_counts(mu):
    records = [r for r in map(analyze_pair, enumerate_classes(mu))
               if not r.is_congruence]
    counts = {}
    for p in group_into_passports(records):
        counts[p.signature.genus] = counts.get(p.signature.genus, 0) + 1
    return counts


@pytest.mark.parametrize('mu, expected', [
    (7, {0: 3}),
    (8, {0: 1}),
    (9, {0: 9, 1: 1}),
    (10, {0: 9, 1: 1}),
    (11, {0: 6}),
    pytest.param(12, {0: 27, 1: 3}, marks=pytest.mark.slow),
])
def test_noncongruence_passport_counts(mu, expected):
    assert _noncongruence_passport_counts(mu) == expected


def test_conjugacy_above_enumeration_limit(genus_one_pair, caplog):
    rng = np.random.default_rng(31)
    other = genus_one_pair.conjugate(random_permutation(9, rng))
    with caplog.at_level(logging.INFO, logger='noncongruence.analysis'):
        assert groups_conjugate_in_Smu(genus_one_pair, other, max_enumeration=1)
    assert "exceeds" in caplog.text


@pytest.mark.parametrize('mu', [7, 8, 9])
def test_passports_without_class_statistics(mu):
    records = [analyze_pair(p) for p in enumerate_classes(mu)]
    exact = group_into_passports(records)
    streamed = group_into_passports(records, max_enumeration=1)
    assert [[str(r.pair) for r in p.records] for p in exact] == \
        [[str(r.pair) for r in p.records] for p in streamed]


def test_passports_are_order_independent():
    records = [analyze_pair(p) for p in enumerate_classes(7)]
    forward = group_into_passports(records)
    backward = group_into_passports(records[::-1])
    assert [[str(r.pair) for r in p.records] for p in forward] == \
        [[str(r.pair) for r in p.records] for p in backward]


def test_best_height_conjugate(genus_one_pair):
    best = best_height_conjugate(genus_one_pair)
    assert best.canonical_key() == genus_one_pair.canonical_key()
    assert height_score(best) <= height_score(genus_one_pair)
    assert height_score(best) > 0
