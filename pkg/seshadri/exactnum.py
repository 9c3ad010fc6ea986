#!/usr/bin/python3

"""Exact rational arithmetic helpers.

Every threshold in the engine has the form sqrt(L^2/(l^2+delta)).  Such
values are never evaluated: they are compared against rationals by
squaring and cross-multiplying, so no floating point appears anywhere.
"""

import decimal
import math
from fractions import Fraction

from seshadri.audit import DomainError

LT = -1
EQ = 0
GT = 1

ORDER_NAMES = {LT: 'LT', EQ: 'EQ', GT: 'GT'}


def rational(value):
    """Coerce ints, Fractions and strings to a reduced Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise DomainError('Cannot use {!r} as a rational'.format(value))


def parse_rational(text):
    """Parse 'p/q', 'p' or a decimal literal"""
    text = str(text).strip()
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise DomainError('Bad rational {!r}'.format(text))
    return value


def format_rational(value):
    """Return the canonical 'p/q' string, q omitted when 1"""
    value = rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return '{}/{}'.format(value.numerator, value.denominator)


def cmp_sq(a, r):
    """Return the ordering of a against sqrt(r)"""
    a = rational(a)
    r = rational(r)
    if r < 0:
        raise DomainError('cmp_sq needs r >= 0, got {}'.format(format_rational(r)))
    if a < 0:
        return LT
    sq = a * a
    # Fraction comparison is integer cross-multiplication.
    if sq < r:
        return LT
    if sq == r:
        return EQ
    return GT


def isqrt_floor(x):
    """Return the largest s with s*s <= x"""
    if x < 0:
        raise DomainError('isqrt_floor needs x >= 0, got {}'.format(x))
    return math.isqrt(x)


def is_square(x):
    if x < 0:
        return False
    s = math.isqrt(x)
    return s * s == x


def ceil_sqrt(r):
    """Return the smallest integer s >= 0 with s*s >= r"""
    r = rational(r)
    if r <= 0:
        return 0
    s = math.isqrt(math.ceil(r))
    # s*s >= r iff s*s >= ceil(r), as s*s is an integer.
    if s * s < math.ceil(r):
        s += 1
    return s


def floor_sqrt_below(r):
    """Return the largest integer s >= 0 with s*s < r, or -1 if none"""
    r = rational(r)
    if r <= 0:
        return -1
    if r.denominator == 1:
        return math.isqrt(r.numerator - 1)
    return math.isqrt(math.floor(r))


def _scale(r, digits, root):
    # Pick e so the scaled value has exactly `digits` digits before the point.
    size = len(str(r.numerator)) - len(str(r.denominator))
    if root:
        e = digits - 1 - size // 2
        low = Fraction(10) ** (2 * digits - 2)
        high = Fraction(10) ** (2 * digits)
        power = 2
    else:
        e = digits - 1 - size
        low = Fraction(10) ** (digits - 1)
        high = Fraction(10) ** digits
        power = 1
    while r * Fraction(10) ** (power * e) < low:
        e += 1
    while r * Fraction(10) ** (power * e) >= high:
        e -= 1
    return e


def _render(s, e, negative=False):
    text = format(decimal.Decimal(s).scaleb(-e), 'f')
    if negative:
        return '-' + text
    return text


def decimal_sqrt(r, digits=12):
    """Correctly rounded decimal rendering of sqrt(r)"""
    r = rational(r)
    if r < 0:
        raise DomainError('decimal_sqrt needs r >= 0')
    if r == 0:
        return '0'
    e = _scale(r, digits, root=True)
    scaled = r * Fraction(10) ** (2 * e)
    s = math.isqrt(math.floor(scaled))
    # Round half up: compare (s + 1/2)^2 with the scaled value.
    if Fraction((2 * s + 1) ** 2, 4) <= scaled:
        s += 1
    if s == 10 ** digits:
        s //= 10
        e -= 1
    return _render(s, e)


def decimal_str(r, digits=12):
    """Correctly rounded decimal rendering of r"""
    r = rational(r)
    if r == 0:
        return '0'
    negative = r < 0
    r = abs(r)
    e = _scale(r, digits, root=False)
    scaled = r * Fraction(10) ** e
    s = math.floor(scaled)
    if scaled - s >= Fraction(1, 2):
        s += 1
    if s == 10 ** digits:
        s //= 10
        e -= 1
    return _render(s, e, negative)
