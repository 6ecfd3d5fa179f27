"""
Exact integer lattices: Hermite normal form, LLL reduction and integer
relation detection.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import PrecisionError

__all__ = ['xgcd', 'hermite_normal_form', 'lll_reduce', 'AlgebraicRelation',
           'recognize_algebraic']

logger = logging.getLogger(__name__)


def xgcd(a, b):
    """
    Extended Euclidean algorithm.

    Returns
    -------
    g, x, y : int
        ``g = gcd(a, b) >= 0`` and ``a * x + b * y == g``.

    Examples
    --------
    >>> xgcd(240, 46)
    (2, -9, 47)
    """
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        g, x, y = -g, -x, -y
    return g, x, y


def hermite_normal_form(rows):
    """
    Row-style Hermite normal form of an integer matrix.

    Parameters
    ----------
    rows : list of sequence of int
        Generators of a lattice, one per row.

    Returns
    -------
    hnf : list of list of int
        The non-zero rows of the Hermite normal form: echelon form with
        positive pivots and the entries above each pivot reduced modulo it.
        The rows span the same lattice as the input.

    Examples
    --------
    >>> hermite_normal_form([[2, 0], [1, 1]])
    [[1, 1], [0, 2]]
    """
    a = [[int(x) for x in row] for row in rows]
    if not a:
        return []
    n_cols = len(a[0])
    p = 0
    for col in range(n_cols):
        if p == len(a):
            break
        for i in range(p + 1, len(a)):
            if a[i][col] == 0:
                continue
            u, v = a[p][col], a[i][col]
            g, x, y = xgcd(u, v)
            ug, vg = u // g, v // g
            row_p, row_i = a[p], a[i]
            a[p] = [x * s + y * t for s, t in zip(row_p, row_i)]
            a[i] = [-vg * s + ug * t for s, t in zip(row_p, row_i)]
        if a[p][col] == 0:
            continue
        if a[p][col] < 0:
            a[p] = [-x for x in a[p]]
        pivot = a[p][col]
        for r in range(p):
            q = a[r][col] // pivot
            if q:
                a[r] = [s - q * t for s, t in zip(a[r], a[p])]
        p += 1
    return [row for row in a[:p] if any(row)]


def _dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def lll_reduce(basis, delta=Fraction(3, 4)):
    """
    LLL reduction of a lattice basis in exact rational arithmetic.

    Parameters
    ----------
    basis : list of sequence of int
        Linearly independent rows.
    delta : Fraction, optional
        Lovasz constant.

    Returns
    -------
    reduced : list of list of int
        An LLL-reduced basis of the same lattice.
    """
    b = [[int(x) for x in row] for row in basis]
    n = len(b)
    if n < 2:
        return b

    # Gram-Schmidt coefficients mu and squared norms B of the b*_i
    mu = [[Fraction(0)] * n for _ in range(n)]
    B = [Fraction(0)] * n
    bstar = []
    for i in range(n):
        v = [Fraction(x) for x in b[i]]
        for j in range(i):
            mu[i][j] = _dot(b[i], bstar[j]) / B[j]
            v = [s - mu[i][j] * t for s, t in zip(v, bstar[j])]
        bstar.append(v)
        B[i] = _dot(v, v)
        if B[i] == 0:
            raise ValueError("basis vectors are linearly dependent")

    def size_reduce(k, j):
        q = round(mu[k][j])
        if q:
            b[k] = [s - q * t for s, t in zip(b[k], b[j])]
            for i in range(j):
                mu[k][i] -= q * mu[j][i]
            mu[k][j] -= q

    k = 1
    while k < n:
        size_reduce(k, k - 1)
        if B[k] >= (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            for j in range(k - 2, -1, -1):
                size_reduce(k, j)
            k += 1
            continue
        m = mu[k][k - 1]
        b_new = B[k] + m * m * B[k - 1]
        mu[k][k - 1] = m * B[k - 1] / b_new
        B[k] = B[k - 1] * B[k] / b_new
        B[k - 1] = b_new
        b[k], b[k - 1] = b[k - 1], b[k]
        for j in range(k - 1):
            mu[k][j], mu[k - 1][j] = mu[k - 1][j], mu[k][j]
        for i in range(k + 1, n):
            t = mu[i][k]
            mu[i][k] = mu[i][k - 1] - m * t
            mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k]
        k = max(k - 1, 1)
    return b


@dataclass(frozen=True)
class AlgebraicRelation:
    """
    Integer polynomial annihilating a number.

    Attributes
    ----------
    coefficients : tuple of int
        ``c_0, ..., c_d`` from the constant term up, leading term positive.
    degree : int
    margin : float
        Length of the second reduced vector over the first; large values
        mean the relation stands out clearly.
    found : bool
        False when no relation within the degree and height bounds exists.
    """

    coefficients: tuple = ()
    degree: int = 0
    margin: float = 0.0
    found: bool = False

    def as_fraction(self):
        """ The root of a degree-one relation. """
        if not self.found or self.degree != 1:
            raise ValueError("not a rational relation: {}".format(self))
        c0, c1 = self.coefficients
        return Fraction(-c0, c1)

    def __str__(self):
        if not self.found:
            return "unrecognized"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coefficients[i]
            if c == 0:
                continue
            mono = {0: "", 1: "x"}.get(i, "x^{}".format(i))
            size = abs(c)
            body = mono if size == 1 and mono else str(size) + mono
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        text = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            text += " {} {}".format(sign, body)
        return text


def _relation(x, degree, digits, max_coeff_bits):
    scale = mpmath.mpf(10) ** digits
    powers = [x ** i for i in range(degree + 1)]
    rows = []
    for i, p in enumerate(powers):
        unit = [0] * (degree + 1)
        unit[i] = 1
        p = mpmath.mpc(p)
        rows.append(unit + [int(mpmath.nint(scale * p.real)),
                            int(mpmath.nint(scale * p.imag))])
    try:
        reduced = lll_reduce(rows)
    except ValueError:
        return None

    v = reduced[0]
    coeffs = v[:degree + 1]
    if not any(coeffs) or coeffs[-1] == 0:
        return None
    g = math.gcd(*coeffs)
    coeffs = [c // g for c in coeffs]
    if coeffs[-1] < 0:
        coeffs = [-c for c in coeffs]
    if max(abs(c) for c in coeffs).bit_length() > max_coeff_bits:
        return None

    residual = abs(mpmath.fsum(c * p for c, p in zip(coeffs, powers)))
    bound = mpmath.mpf(10) ** (-(digits // 2)) * max(
        1, max(abs(c) * abs(p) for c, p in zip(coeffs, powers)))
    if residual > bound:
        return None

    margin = mpmath.sqrt(_dot(reduced[1], reduced[1])) / mpmath.sqrt(_dot(v, v))
    return AlgebraicRelation(tuple(coeffs), degree, float(margin), True)


def recognize_algebraic(x, max_degree=2, max_coeff_bits=64, digits=None):
    """
    Recognise a number as algebraic of small degree and height.

    Parameters
    ----------
    x : mpf or mpc
        Approximation correct to about `digits` decimal digits.
    max_degree : int, optional
        Largest degree tried; degrees are tried in increasing order.
    max_coeff_bits : int, optional
        Largest bit length accepted for a coefficient.
    digits : int, optional
        Decimal digits used to scale the relation lattice, by default the
        current mpmath precision.

    Returns
    -------
    relation : AlgebraicRelation
        The first relation found, or an unrecognized result.

    Raises
    ------
    PrecisionError
        If `digits` is too small for the requested degree and height.

    Examples
    --------
    >>> str(recognize_algebraic(mpmath.mpf('0.5'), max_degree=1,
    ...                         max_coeff_bits=8, digits=15))
    '2x - 1'
    """
    if digits is None:
        digits = mpmath.mp.dps
    need = (max_degree + 1) * max_coeff_bits
    if digits * math.log2(10) < need:
        msg = "{} digits cannot resolve degree {} relations with {}-bit " \
              "coefficients ({} bits needed)"
        raise PrecisionError(msg.format(digits, max_degree, max_coeff_bits,
                                        need))

    with mpmath.workdps(digits + 10):
        x = mpmath.mpmathify(x)
        for degree in range(1, max_degree + 1):
            relation = _relation(x, degree, digits, max_coeff_bits)
            if relation is not None:
                logger.debug("relation %s with margin %.3g", relation,
                             relation.margin)
                return relation
    return AlgebraicRelation()
