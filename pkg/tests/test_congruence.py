import pytest

from noncongruence.congruence import (contains_principal_congruence,
                                      gamma0_pair, gamma1_pair, gamma_pair,
                                      hsu_congruence, is_congruence, level,
                                      psl2_order)
from noncongruence.pairs import PermutationPair, enumerate_classes
from noncongruence.testing import congruence_by_definition


@pytest.mark.parametrize('n, index', [(2, 3), (4, 6), (6, 12), (9, 12),
                                      (11, 12), (12, 24), (16, 24)])
def test_gamma0_index(n, index):
    pair = gamma0_pair(n)
    assert pair.degree == index
    assert pair.is_transitive()
    assert level(pair) == n


@pytest.mark.parametrize('n, index', [(4, 6), (5, 12), (7, 24), (8, 24)])
def test_gamma1_index(n, index):
    assert gamma1_pair(n).degree == index


@pytest.mark.parametrize('n', [2, 3, 4, 5, 6, 12])
def test_gamma_index(n):
    pair = gamma_pair(n)
    assert pair.degree == psl2_order(n)
    assert level(pair) == n


def test_psl2_order():
    assert [psl2_order(n) for n in (1, 2, 3, 4, 5, 7, 12)] == \
        [1, 6, 12, 24, 60, 168, 576]


def test_gamma0_11_cusps():
    widths = sorted(len(c) for c in gamma0_pair(11).sigma_T.cycles(singletons=True))
    assert widths == [1, 11]


@pytest.mark.parametrize('make, n', [
    (gamma0_pair, 11), (gamma0_pair, 15), (gamma0_pair, 16), (gamma0_pair, 12),
    (gamma1_pair, 7), (gamma1_pair, 8), (gamma1_pair, 10), (gamma_pair, 6),
])
def test_known_congruence_subgroups(make, n):
    pair = make(n)
    assert is_congruence(pair)
    assert hsu_congruence(pair)
    assert contains_principal_congruence(pair, level(pair))


def test_trivial_level():
    pair = PermutationPair.from_cycles('()', '()')
    assert level(pair) == 1
    assert is_congruence(pair)


def test_noncongruence_example():
    pair = PermutationPair.from_cycles('(2 5)(3 7)(4 8)(6 9)',
                                       '(1 2 6)(3 8 5)(4 9 7)')
    assert level(pair) == 9
    assert not contains_principal_congruence(pair, 9)
    assert not hsu_congruence(pair)
    assert not is_congruence(pair)
    assert not congruence_by_definition(pair)


@pytest.mark.parametrize('mu', range(2, 10))
def test_methods_agree(mu):
    for pair in enumerate_classes(mu):
        direct = contains_principal_congruence(pair, level(pair))
        assert hsu_congruence(pair) == direct
        assert congruence_by_definition(pair) == direct
        assert is_congruence(pair) == direct


def test_index_seven_has_noncongruence():
    flags = [is_congruence(p) for p in enumerate_classes(7)]
    assert not all(flags)
    assert all(is_congruence(p) for mu in range(1, 7)
               for p in enumerate_classes(mu))


def test_direct_limit_switches_method():
    pair = PermutationPair.from_cycles('(1 15)(2 12)(3 7)(4 9)(5 13)(6 10)(8 14)',
                                       '(1 11 12)(2 13 6)(3 8 15)(4 10 7)(5 14 9)')
    assert level(pair) == 10
    assert is_congruence(pair, direct_limit=0) == is_congruence(pair)
