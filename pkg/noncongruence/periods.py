"""
Periods of weight-2 cusp forms and the j-invariant of their lattice.

Fourier expansions at every cusp of a subgroup are integrated up to the
cusp to give the period map ``P_f(gamma) = int_tau^{gamma tau} f``. The
periods of the generators span a lattice whose j-invariant is then
recognised as an algebraic number.

All numbers are mpmath ``mpf``/``mpc`` values; every function takes the
working precision in decimal digits and leaves the global mpmath context
untouched.
"""

import json
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .errors import LatticeError, PrecisionError
from .lattice import hermite_normal_form
from .matrix import IDENTITY, MatrixPSL2, S, T
from .utils import divisor_sigma, lcm

__all__ = ['DEFAULT_DIGITS', 'FourierExpansion', 'PeriodValue',
           'PeriodLattice', 'eval_I_f', 'period_of', 'periods_of',
           'lattice_from_periods', 'reduce_to_fundamental_domain',
           'eisenstein_g2_g3', 'j_invariant', 'j_from_weierstrass',
           'load_expansions', 'load_generators', 'coefficients_to_json']

logger = logging.getLogger(__name__)

DEFAULT_DIGITS = 300


@dataclass(frozen=True)
class FourierExpansion:
    """
    Truncated expansion ``f = sum_{n >= 1} a_n q_h^n`` of a cusp form at a cusp.

    Parameters
    ----------
    cusp_index : int
        Index of the cusp, as in :func:`noncongruence.analysis.cusp_data`.
    width : int
        Cusp width ``h``; ``q_h = exp(2 pi i tau / h)``.
    coefficients : tuple of mpc
        ``a_1, ..., a_M``.
    digits : int, optional
        Precision of the coefficients.
    """

    cusp_index: int
    width: int
    coefficients: tuple
    digits: int = DEFAULT_DIGITS

    def __post_init__(self):
        if self.width < 1:
            raise ValueError("width must be positive, got {}".format(self.width))
        if not self.coefficients:
            raise ValueError("an expansion needs at least one coefficient")
        object.__setattr__(self, 'coefficients', tuple(self.coefficients))

    @property
    def terms(self):
        return len(self.coefficients)

    def truncate(self, m):
        """ Expansion with the first `m` coefficients. """
        return FourierExpansion(self.cusp_index, self.width,
                                self.coefficients[:m], self.digits)


@dataclass(frozen=True)
class PeriodValue:
    """
    A period with an a-posteriori truncation error bound.

    Attributes
    ----------
    value : mpc
    error : mpf
        Bound on the truncation error of the series involved.
    warning : bool
        The bound exceeds the requested accuracy.
    cusp : int or None
        Cusp whose expansion was used, None for exact zeros.
    """

    value: object
    error: object
    warning: bool = False
    cusp: int = None

    def __add__(self, other):
        return PeriodValue(self.value + other.value, self.error + other.error,
                           self.warning or other.warning)

    def __sub__(self, other):
        return PeriodValue(self.value - other.value, self.error + other.error,
                           self.warning or other.warning)


@dataclass(frozen=True)
class PeriodLattice:
    """
    Lattice ``Z w1 + Z w2`` with ``tau = w1 / w2`` in the fundamental domain.

    Attributes
    ----------
    w1, w2 : mpc
    tau : mpc
    reduction : MatrixPSL2
        Matrix that moved the first ``w1 / w2`` into the fundamental domain.
    tolerance : mpf
        Zero threshold used while recovering the lattice.
    denominator : int
        Least common denominator of the rational coordinates.
    """

    w1: object
    w2: object
    tau: object
    reduction: MatrixPSL2 = IDENTITY
    tolerance: object = None
    denominator: int = 1
    coordinates: list = field(default_factory=list)

    def contains(self, z, tol):
        """ Whether `z` is an integer combination of the basis within `tol`. """
        r, s = _coordinates(z, self.w1, self.w2)
        m, n = mpmath.nint(r), mpmath.nint(s)
        return abs(z - (m * self.w1 + n * self.w2)) <= tol


def _check_upper(tau):
    tau = mpmath.mpc(tau)
    if tau.imag <= 0:
        raise ValueError("tau = {} is not in the upper half plane"
                         .format(mpmath.nstr(tau, 10)))
    return tau


# # # period integrals # # #

def eval_I_f(expansion, tau0, digits=DEFAULT_DIGITS, accuracy=None):
    """
    Integral of the expansion from `tau0` to the cusp.

    Parameters
    ----------
    expansion : FourierExpansion
        Expansion at the cusp of width ``h``.
    tau0 : complex
        Base point in the upper half plane.
    digits : int, optional
        Working precision.
    accuracy : mpf, optional
        Error above which the result carries a warning, by default
        ``10 ** (-digits // 2)``.

    Returns
    -------
    value : PeriodValue
        ``-h * sum_n (a_n / n) q_h(tau0)^n``. The error bound assumes
        ``|a_n| <= 2 C n`` with ``C = max |a_n| / sqrt(n)`` over the known
        coefficients and bounds the tail by
        ``2 C h |q_h|^(M+1) / (1 - |q_h|)``.
    """
    with mpmath.workdps(digits + 10):
        tau0 = _check_upper(tau0)
        h = expansion.width
        q = mpmath.expjpi(2 * tau0 / h)
        total = mpmath.mpc(0)
        power = mpmath.mpc(1)
        growth = mpmath.mpf(0)
        for n, a in enumerate(expansion.coefficients, start=1):
            power *= q
            a = mpmath.mpmathify(a)
            total += a / n * power
            growth = max(growth, abs(a) / mpmath.sqrt(n))
        value = -h * total

        m = expansion.terms
        absq = abs(q)
        error = 2 * growth * h * absq ** (m + 1) / (1 - absq)
        if accuracy is None:
            accuracy = mpmath.mpf(10) ** (-(digits // 2))
        warning = bool(error > accuracy)
        if warning:
            logger.warning("truncation bound %s at tau0 = %s exceeds %s",
                           mpmath.nstr(error, 5), mpmath.nstr(tau0, 8),
                           mpmath.nstr(accuracy, 5))
        return PeriodValue(+value, +error, warning, expansion.cusp_index)


def _by_index(items, attr):
    if isinstance(items, dict):
        return items
    return {getattr(x, attr): x for x in items}


def period_of(gamma, expansions, cusps, digits=DEFAULT_DIGITS, cusp=None):
    """
    Value of the period map at a subgroup element.

    Parameters
    ----------
    gamma : MatrixPSL2
        Element of the subgroup.
    expansions : dict or list of FourierExpansion
        Expansions keyed by cusp index.
    cusps : list of Cusp
        Cusp normalizers, see :func:`noncongruence.analysis.cusp_normalizers`.
    digits : int, optional
        Working precision.
    cusp : int, optional
        Force the cusp used for the base point.

    Returns
    -------
    period : PeriodValue
        Exactly zero when ``gamma`` fixes a cusp. Otherwise
        ``I(tau0) - I(gamma_p tau0)`` with ``gamma_p = A_p^-1 gamma A_p``
        for the cusp minimising ``c_p h_p`` and
        ``tau0 = -d_p / c_p + i / c_p``.
    """
    expansions = _by_index(expansions, 'cusp_index')
    cusps = _by_index(cusps, 'index')
    conjugates = {}
    for index, cp in cusps.items():
        a = cp.normalizer
        conjugates[index] = a.inverse() @ gamma @ a
    if any(g.c == 0 for g in conjugates.values()):
        return PeriodValue(mpmath.mpc(0), mpmath.mpf(0))

    if cusp is None:
        cusp = min(cusps, key=lambda i: (conjugates[i].c * cusps[i].width, i))
    if cusp not in expansions:
        raise ValueError("no expansion for cusp {}".format(cusp))
    g = conjugates[cusp]
    with mpmath.workdps(digits + 10):
        tau0 = mpmath.mpc(mpmath.mpf(-g.d) / g.c, mpmath.mpf(1) / g.c)
        height = math.sqrt(3) / (2 * max(c.width for c in cusps.values()))
        if tau0.imag < height:
            logger.warning("base point height %s is below %.4f",
                           mpmath.nstr(tau0.imag, 5), height)
        exp = expansions[cusp]
        start = eval_I_f(exp, tau0, digits)
        end = eval_I_f(exp, g.apply(tau0), digits)
        result = start - end
    return PeriodValue(result.value, result.error, result.warning, cusp)


def periods_of(generators, expansions, cusps, digits=DEFAULT_DIGITS):
    """ Periods of all generators, in order. """
    return [period_of(g, expansions, cusps, digits) for g in generators]


# # # lattice recovery # # #

def _det(u, v):
    return u.real * v.imag - u.imag * v.real


def _coordinates(z, w1, w2):
    d = _det(w1, w2)
    return _det(z, w2) / d, _det(w1, z) / d


def _to_fraction(x, max_denominator):
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    value = Fraction(int(man)) * Fraction(2) ** exp
    if sign:
        value = -value
    return value.limit_denominator(max_denominator)


def lattice_from_periods(values, digits=DEFAULT_DIGITS, max_denominator=10 ** 6):
    """
    Recover the period lattice from a list of periods.

    Parameters
    ----------
    values : list of PeriodValue or complex
        Periods, e.g. of a generating set.
    digits : int, optional
        Working precision.
    max_denominator : int, optional
        Bound on the denominators of the rational coordinates.

    Returns
    -------
    lattice : PeriodLattice
        Basis with ``tau = w1 / w2`` reduced to the fundamental domain.

    Raises
    ------
    LatticeError
        If all periods vanish, if they span a space of real rank below two
        or if the coordinates are not rational within the tolerance.
    """
    with mpmath.workdps(digits + 10):
        zs, errors = [], [mpmath.mpf(0)]
        for v in values:
            if isinstance(v, PeriodValue):
                zs.append(mpmath.mpc(v.value))
                errors.append(v.error)
            else:
                zs.append(mpmath.mpc(v))
        if not zs:
            raise LatticeError("zero lattice: no periods given")
        scale = max(abs(z) for z in zs)
        tol = max(mpmath.mpf(10) ** (-(digits // 2)) * scale, 100 * max(errors))
        if scale <= tol:
            raise LatticeError("zero lattice")

        periods = []
        for z in zs:
            if abs(z) > tol and all(abs(z - u) > tol for u in periods):
                periods.append(z)

        w1 = max(periods, key=abs)
        w2 = max(periods, key=lambda z: abs(_det(w1, z)))
        if abs(_det(w1, w2)) <= tol * scale:
            raise LatticeError("periods have real rank below 2")

        coords, denominators = [], []
        for z in periods:
            r, s = _coordinates(z, w1, w2)
            fr = _to_fraction(r, max_denominator)
            fs = _to_fraction(s, max_denominator)
            approx = (mpmath.mpf(fr.numerator) / fr.denominator * w1
                      + mpmath.mpf(fs.numerator) / fs.denominator * w2)
            if abs(z - approx) > tol:
                raise LatticeError("not a lattice at this precision: residual "
                                   "{}".format(mpmath.nstr(abs(z - approx), 5)))
            coords.append((fr, fs))
            denominators += [fr.denominator, fs.denominator]

        lam = lcm(denominators)
        rows = [[int(fr * lam), int(fs * lam)] for fr, fs in coords]
        hnf = hermite_normal_form(rows)
        if len(hnf) != 2:
            raise LatticeError("periods have rank {} over Z".format(len(hnf)))
        (a, b), (c, d) = hnf
        u1 = (a * w1 + b * w2) / lam
        u2 = (c * w1 + d * w2) / lam

        if (u1 / u2).imag < 0:
            u1, u2 = u2, u1
        tau, m = reduce_to_fundamental_domain(u1 / u2, digits)
        u1, u2 = m.a * u1 + m.b * u2, m.c * u1 + m.d * u2
        logger.debug("lattice with lambda = %d, tau = %s", lam,
                     mpmath.nstr(tau, 12))
        return PeriodLattice(+u1, +u2, +(u1 / u2), m, tol, lam, coords)


def reduce_to_fundamental_domain(tau, digits=DEFAULT_DIGITS):
    """
    Move `tau` into the standard fundamental domain.

    Returns
    -------
    tau, m : mpc, MatrixPSL2
        ``|Re tau| <= 1/2``, ``|tau| >= 1`` and ``m.apply(tau_in) == tau``.

    Examples
    --------
    >>> reduce_to_fundamental_domain(mpmath.mpc(7, 1))[1]
    MatrixPSL2(a=1, b=-7, c=0, d=1)
    """
    with mpmath.workdps(digits + 10):
        tau = _check_upper(tau)
        m = IDENTITY
        one = 1 - mpmath.mpf(10) ** (-digits)
        while True:
            n = int(mpmath.nint(tau.real))
            if n:
                tau -= n
                m = T ** -n @ m
            if abs(tau) < one:
                tau = -1 / tau
                m = S @ m
            else:
                break
        return +tau, m


# # # Eisenstein series and j # # #

def _q_terms(tau, digits):
    y = tau.imag
    n = math.ceil((digits + 10) * math.log(10) / (2 * math.pi * float(y)))
    n = math.ceil(((digits + 10) * math.log(10) + 6 * math.log(n + 2))
                  / (2 * math.pi * float(y)))
    return max(n, 1)


def eisenstein_g2_g3(tau, digits=DEFAULT_DIGITS):
    """
    Weierstrass invariants of the lattice ``Z tau + Z``.

    ``g2 = (4 pi^4 / 3) E4`` and ``g3 = (8 pi^6 / 27) E6`` with the
    normalised Eisenstein series summed to a tail below ``10 ** -digits``.
    """
    with mpmath.workdps(digits + 10):
        tau = _check_upper(tau)
        n = _q_terms(tau, digits)
        q = mpmath.expjpi(2 * tau)
        powers = [mpmath.mpc(1)]
        for _ in range(n):
            powers.append(powers[-1] * q)
        sigma3 = divisor_sigma(3, n)[1:]
        sigma5 = divisor_sigma(5, n)[1:]
        e4 = 1 + 240 * mpmath.fdot(sigma3.tolist(), powers[1:])
        e6 = 1 - 504 * mpmath.fdot(sigma5.tolist(), powers[1:])
        pi = mpmath.pi
        return +(4 * pi ** 4 / 3 * e4), +(8 * pi ** 6 / 27 * e6)


def j_invariant(tau, digits=DEFAULT_DIGITS):
    """
    Klein's j-invariant ``1728 g2^3 / (g2^3 - 27 g3^2)``.

    Raises
    ------
    PrecisionError
        If the discriminant vanishes at the working precision.
    """
    with mpmath.workdps(digits + 10):
        tau, _ = reduce_to_fundamental_domain(tau, digits)
        g2, g3 = eisenstein_g2_g3(tau, digits)
        num = g2 ** 3
        den = num - 27 * g3 ** 2
        if abs(den) <= mpmath.mpf(10) ** (-(digits // 2)) * max(1, abs(num)):
            raise PrecisionError("discriminant vanishes at tau = {}"
                                 .format(mpmath.nstr(tau, 10)))
        return +(1728 * num / den)


def j_from_weierstrass(a1, a2, a3, a4, a6):
    """
    Exact j-invariant of ``y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6``.

    Examples
    --------
    >>> j_from_weierstrass(0, -1, 1, -10, -20)
    Fraction(-122023936, 161051)
    """
    a1, a2, a3, a4, a6 = (Fraction(x) for x in (a1, a2, a3, a4, a6))
    b2 = a1 ** 2 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 ** 2 + 4 * a6
    b8 = a1 ** 2 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 ** 2 - a4 ** 2
    c4 = b2 ** 2 - 24 * b4
    delta = -b2 ** 2 * b8 - 8 * b4 ** 3 - 27 * b6 ** 2 + 9 * b2 * b4 * b6
    if delta == 0:
        raise ValueError("singular curve: discriminant is zero")
    return c4 ** 3 / delta


# # # files # # #

def load_expansions(path):
    """
    Read Fourier expansions from a JSON file.

    The file holds ``{"cusps": [{"cusp_index", "width", "coefficients",
    "digits"[, "normalizer"]}, ...]}`` with coefficients as pairs of decimal
    strings.

    Returns
    -------
    expansions : dict
        Cusp index to :class:`FourierExpansion`.
    normalizers : dict
        Cusp index to :class:`MatrixPSL2` for the cusps that give one.
    """
    with open(path) as fp:
        payload = json.load(fp)
    expansions, normalizers = {}, {}
    for entry in payload['cusps']:
        digits = int(entry.get('digits', DEFAULT_DIGITS))
        with mpmath.workdps(digits):
            coeffs = tuple(mpmath.mpc(re, im) for re, im in entry['coefficients'])
        index = int(entry['cusp_index'])
        expansions[index] = FourierExpansion(index, int(entry['width']),
                                             coeffs, digits)
        if 'normalizer' in entry:
            normalizers[index] = MatrixPSL2.from_entries(entry['normalizer'])
    logger.info("read expansions at %d cusps from %s", len(expansions), path)
    return expansions, normalizers


def load_generators(path):
    """ Read subgroup generators, a JSON list of ``[a, b, c, d]``. """
    with open(path) as fp:
        payload = json.load(fp)
    return [MatrixPSL2.from_entries(m) for m in payload]


def coefficients_to_json(coefficients, digits=DEFAULT_DIGITS):
    """ Coefficients as pairs of decimal strings. """
    return [[mpmath.nstr(mpmath.mpc(c).real, digits),
             mpmath.nstr(mpmath.mpc(c).imag, digits)] for c in coefficients]

