from fractions import Fraction

import mpmath
import numpy as np
import pytest

from noncongruence.errors import PrecisionError
from noncongruence.lattice import (AlgebraicRelation, hermite_normal_form,
                                   lll_reduce, recognize_algebraic, xgcd)


def _gram_schmidt(basis):
    bstar, mu = [], []
    for i, b in enumerate(basis):
        v = [Fraction(x) for x in b]
        row = []
        for j in range(i):
            c = sum(Fraction(x) * y for x, y in zip(b, bstar[j])) \
                / sum(y * y for y in bstar[j])
            row.append(c)
            v = [s - c * t for s, t in zip(v, bstar[j])]
        bstar.append(v)
        mu.append(row)
    return bstar, mu


def _norm2(v):
    return sum(x * x for x in v)


def test_xgcd():
    rng = np.random.default_rng(1)
    for a, b in rng.integers(-500, 500, size=(50, 2)).tolist():
        g, x, y = xgcd(a, b)
        assert g == np.gcd(a, b)
        assert a * x + b * y == g
    assert xgcd(0, 0) == (0, 1, 0)
    assert xgcd(0, -4)[0] == 4


def test_hermite_normal_form_shape():
    assert hermite_normal_form([[2, 4], [1, 2]]) == [[1, 2]]
    assert hermite_normal_form([[4, 6], [0, 10], [2, 2]]) == [[2, 0], [0, 2]]
    assert hermite_normal_form([]) == []


def test_hermite_normal_form_is_unimodular_invariant():
    rng = np.random.default_rng(2)
    for _ in range(20):
        rows = rng.integers(-20, 20, size=(3, 2)).tolist()
        mixed = [list(r) for r in rows]
        for _ in range(6):
            i, j = rng.choice(3, size=2, replace=False)
            k = int(rng.integers(-3, 4))
            mixed[i] = [a + k * b for a, b in zip(mixed[i], mixed[j])]
        mixed[0] = [-x for x in mixed[0]]
        hnf = hermite_normal_form(rows)
        assert hermite_normal_form(mixed) == hnf
        for p, row in enumerate(hnf):
            pivot = next(c for c, x in enumerate(row) if x)
            assert row[pivot] > 0
            for above in hnf[:p]:
                assert 0 <= above[pivot] < row[pivot]


def test_lll_reduce():
    basis = [[1, 1, 1], [-1, 0, 2], [3, 5, 6]]
    reduced = lll_reduce(basis)
    assert abs(round(np.linalg.det(np.array(reduced, dtype=float)))) == 3
    bstar, mu = _gram_schmidt(reduced)
    for i in range(1, len(reduced)):
        assert all(abs(c) <= Fraction(1, 2) for c in mu[i])
        assert _norm2(bstar[i]) >= (Fraction(3, 4) - mu[i][i - 1] ** 2) * _norm2(bstar[i - 1])
    assert _norm2(reduced[0]) <= 4


def test_lll_rejects_dependent_rows():
    with pytest.raises(ValueError):
        lll_reduce([[1, 2], [2, 4]])


def test_relation_str():
    assert str(AlgebraicRelation((-1, 2), 1, 1.0, True)) == '2x - 1'
    assert str(AlgebraicRelation((-1, -1, 1), 2, 1.0, True)) == 'x^2 - x - 1'
    assert str(AlgebraicRelation((3, 0, -2), 2, 1.0, True)) == '-2x^2 + 3'
    assert str(AlgebraicRelation()) == 'unrecognized'
    assert AlgebraicRelation((3, 4), 1, 1.0, True).as_fraction() == Fraction(-3, 4)
    with pytest.raises(ValueError):
        AlgebraicRelation().as_fraction()


def test_recognize_rational():
    with mpmath.workdps(50):
        x = mpmath.mpf(-122023936) / 161051
    relation = recognize_algebraic(x, max_degree=1, max_coeff_bits=40, digits=40)
    assert relation.found
    assert relation.as_fraction() == Fraction(-122023936, 161051)


def test_recognize_quadratic():
    with mpmath.workdps(40):
        phi = (1 + mpmath.sqrt(5)) / 2
        relation = recognize_algebraic(phi, max_degree=2, max_coeff_bits=16,
                                       digits=30)
    assert str(relation) == 'x^2 - x - 1'
    assert relation.margin > 1


def test_recognize_complex():
    relation = recognize_algebraic(mpmath.mpc(0, 1), max_degree=2,
                                   max_coeff_bits=8, digits=20)
    assert relation.coefficients == (1, 0, 1)


def test_transcendental_is_unrecognized():
    with mpmath.workdps(40):
        relation = recognize_algebraic(+mpmath.pi, max_degree=2,
                                       max_coeff_bits=16, digits=30)
    assert not relation.found


def test_precision_guard():
    with pytest.raises(PrecisionError):
        recognize_algebraic(mpmath.mpf(2), max_degree=4, max_coeff_bits=64,
                            digits=20)
