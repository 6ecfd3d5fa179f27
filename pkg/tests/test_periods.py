import json
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from noncongruence.errors import LatticeError
from noncongruence.lattice import recognize_algebraic
from noncongruence.matrix import T
from noncongruence.periods import (FourierExpansion, PeriodValue,
                                   _to_fraction, coefficients_to_json,
                                   eisenstein_g2_g3, eval_I_f,
                                   j_from_weierstrass, j_invariant,
                                   lattice_from_periods, load_expansions,
                                   load_generators, period_of, periods_of,
                                   reduce_to_fundamental_domain)
from noncongruence.testing import gamma0_11_data, in_lattice

DIGITS = 60


@pytest.fixture(scope='module')
def gamma0_11():
    return gamma0_11_data(terms=600, digits=DIGITS)


def test_j_at_elliptic_points():
    assert abs(j_invariant(mpmath.mpc(0, 1), 50) - 1728) < 1e-40
    with mpmath.workdps(70):
        rho = mpmath.expjpi(mpmath.mpf(2) / 3)
    assert abs(j_invariant(rho, 50)) < 1e-30


def test_j_matches_kleinj():
    rng = np.random.default_rng(41)
    with mpmath.workdps(40):
        for x, y in zip(rng.uniform(-2, 2, 5), rng.uniform(0.3, 2, 5)):
            tau = mpmath.mpc(x, y)
            expected = 1728 * mpmath.kleinj(tau)
            assert abs(j_invariant(tau, 30) - expected) < 1e-20 * max(1, abs(expected))


def test_g2_g3_at_i():
    g2, g3 = eisenstein_g2_g3(mpmath.mpc(0, 1), 40)
    assert abs(g3) < 1e-35
    assert g2.real > 0


def test_reduce_to_fundamental_domain():
    rng = np.random.default_rng(43)
    with mpmath.workdps(40):
        for x, y in zip(rng.uniform(-20, 20, 20), rng.uniform(0.01, 3, 20)):
            start = mpmath.mpc(x, y)
            tau, m = reduce_to_fundamental_domain(start, 30)
            assert abs(tau.real) <= 0.5 + 1e-25
            assert abs(tau) >= 1 - 1e-25
            assert abs(m.apply(start) - tau) < 1e-20
    with pytest.raises(ValueError):
        reduce_to_fundamental_domain(mpmath.mpc(0, -1))


def test_j_is_modular():
    with mpmath.workdps(40):
        tau = mpmath.mpc('0.1', '0.9')
        moved = T.apply(tau)
        other = -1 / tau
        assert abs(j_invariant(moved, 30) - j_invariant(tau, 30)) < 1e-20
        assert abs(j_invariant(other, 30) - j_invariant(tau, 30)) < 1e-20


def test_j_from_weierstrass():
    assert j_from_weierstrass(0, -1, 1, -10, -20) == Fraction(-122023936, 161051)
    assert j_from_weierstrass(1, -1, 1, -95, -697) == Fraction(-1159088625, 2097152)
    assert j_from_weierstrass(0, 0, 0, -1, 0) == 1728
    with pytest.raises(ValueError):
        j_from_weierstrass(0, 0, 0, 0, 0)


def test_eval_I_f_single_term():
    exp = FourierExpansion(0, 1, (mpmath.mpc(1), ), digits=30)
    value = eval_I_f(exp, mpmath.mpc(0, 1), 30)
    with mpmath.workdps(40):
        q = mpmath.exp(-2 * mpmath.pi)
        assert abs(value.value + q) < 1e-30
    assert value.warning
    assert value.error >= q ** 2


def test_eval_I_f_width_and_accuracy():
    coeffs = tuple(mpmath.mpc(n) for n in range(1, 51))
    exp = FourierExpansion(2, 3, coeffs, digits=30)
    tau0 = mpmath.mpc('0.2', '2')
    value = eval_I_f(exp, tau0, 30)
    assert not value.warning
    assert value.cusp == 2
    q = mpmath.expjpi(2 * tau0 / 3)
    expected = -3 * sum(q ** n for n in range(1, 51))
    assert abs(value.value - expected) < 1e-25
    with pytest.raises(ValueError):
        eval_I_f(exp, mpmath.mpc(0, -1))


def test_expansion_validation():
    with pytest.raises(ValueError):
        FourierExpansion(0, 0, (1, ))
    with pytest.raises(ValueError):
        FourierExpansion(0, 1, ())
    exp = FourierExpansion(0, 1, (1, 2, 3))
    assert exp.truncate(2).terms == 2


def test_parabolic_elements_have_zero_period(gamma0_11):
    _, cusps, expansions, _ = gamma0_11
    period = period_of(T, expansions, cusps, DIGITS)
    assert period.value == 0 and period.cusp is None


def test_period_lattice_of_gamma0_11(gamma0_11):
    _, cusps, expansions, generators = gamma0_11
    values = periods_of(generators, expansions, cusps, DIGITS)
    lattice = lattice_from_periods(values, DIGITS)
    for v in values:
        assert lattice.contains(v.value, lattice.tolerance)
    assert abs(lattice.tau.real) <= 0.5 + 1e-30
    assert abs(lattice.tau) >= 1 - 1e-30

    j = j_invariant(lattice.tau, DIGITS)
    relation = recognize_algebraic(j, max_degree=1, max_coeff_bits=40,
                                   digits=40)
    assert relation.as_fraction() == Fraction(-122023936, 161051)


def test_base_point_independence(gamma0_11):
    _, cusps, expansions, generators = gamma0_11
    checked = 0
    for g in generators:
        conj = [(c.normalizer.inverse() @ g @ c.normalizer).c for c in cusps]
        if 0 in conj:
            continue
        a = period_of(g, expansions, cusps, DIGITS, cusp=0)
        b = period_of(g, expansions, cusps, DIGITS, cusp=1)
        assert abs(a.value - b.value) <= a.error + b.error + mpmath.mpf(10) ** -25
        checked += 1
    assert checked


def test_period_map_is_homomorphism(gamma0_11):
    _, cusps, expansions, generators = gamma0_11
    rng = np.random.default_rng(47)
    for _ in range(4):
        i, j = rng.integers(len(generators), size=2)
        g, h = generators[i], generators[j]
        pg, ph = (period_of(x, expansions, cusps, DIGITS) for x in (g, h))
        pgh = period_of(g @ h, expansions, cusps, DIGITS)
        bound = pg.error + ph.error + pgh.error + mpmath.mpf(10) ** -25
        assert abs(pgh.value - pg.value - ph.value) <= bound


def test_lattice_from_synthetic_periods():
    with mpmath.workdps(50):
        tau0 = mpmath.mpc('0.3', '1.7')
        values = [2 + tau0, mpmath.mpc(1), 3 * tau0 - 1, mpmath.mpc(0), -tau0,
                  PeriodValue(5 * tau0 + 4, mpmath.mpf(0))]
        lattice = lattice_from_periods(values, 40)
        covolume = abs(lattice.w1.real * lattice.w2.imag
                       - lattice.w1.imag * lattice.w2.real)
        assert abs(covolume - tau0.imag) < 1e-30
        for z in values[:5]:
            assert in_lattice(z, lattice.w1, lattice.w2, 1e-30)
        assert abs(j_invariant(lattice.tau, 40) - j_invariant(tau0, 40)) < 1e-25


def test_lattice_with_fractional_coordinates():
    with mpmath.workdps(50):
        tau0 = mpmath.mpc('-0.2', '1.1')
        values = [mpmath.mpc(1), tau0, (1 + tau0) / 2]
        lattice = lattice_from_periods(values, 40)
        assert lattice.denominator == 2
        for z in values:
            assert lattice.contains(z, 1e-30)


@pytest.mark.parametrize('values, message', [
    ([], "no periods"),
    ([0, 0], "zero lattice"),
    ([1, 2, 3], "rank"),
    ([1, mpmath.mpc(0, 1), mpmath.pi], "not a lattice"),
])
def test_lattice_errors(values, message):
    with pytest.raises(LatticeError, match=message):
        lattice_from_periods(values, 30)


def test_expansion_files(tmp_path):
    coeffs = [mpmath.mpc(1, 0), mpmath.mpc('-0.5', '0.25')]
    path = tmp_path / 'expansions.json'
    path.write_text(json.dumps({'cusps': [
        {'cusp_index': 0, 'width': 1, 'digits': 30,
         'coefficients': coefficients_to_json(coeffs, 30)},
        {'cusp_index': 1, 'width': 11, 'digits': 30,
         'coefficients': coefficients_to_json(coeffs, 30),
         'normalizer': [0, -1, 1, 0]},
    ]}))
    expansions, normalizers = load_expansions(str(path))
    assert sorted(expansions) == [0, 1]
    assert expansions[1].width == 11
    assert abs(expansions[0].coefficients[1] - coeffs[1]) < 1e-25
    assert list(normalizers) == [1]
    assert normalizers[1].entries == (0, -1, 1, 0)

    gens = tmp_path / 'generators.json'
    gens.write_text(json.dumps([[1, 1, 0, 1], [[1, 0], [11, 1]]]))
    assert [g.entries for g in load_generators(str(gens))] == \
        [(1, 1, 0, 1), (1, 0, 11, 1)]


@pytest.mark.parametrize('x, expected', [
    ('-1', Fraction(-1)),
    ('-0.5', Fraction(-1, 2)),
    ('0', Fraction(0)),
    ('0.75', Fraction(3, 4)),
])
def test_to_fraction_keeps_sign(x, expected):
    assert _to_fraction(mpmath.mpf(x), 100) == expected
    with mpmath.workdps(40):
        third = -mpmath.mpf(1) / 3
    assert _to_fraction(third, 100) == Fraction(-1, 3)


def test_lattice_with_negative_coordinates():
    with mpmath.workdps(50):
        tau0 = mpmath.mpc('0.15', '1.3')
        a, b = 2 * tau0 - 1, tau0 + 3
        values = [a, b, -b, -a, a - 2 * b]
        lattice = lattice_from_periods(values, 40)
        for z in values:
            assert lattice.contains(z, 1e-30)
        covolume = abs(lattice.w1.real * lattice.w2.imag
                       - lattice.w1.imag * lattice.w2.real)
        # a, b span a sublattice of index 7 in Z + Z tau0
        assert abs(covolume - 7 * tau0.imag) < 1e-30
