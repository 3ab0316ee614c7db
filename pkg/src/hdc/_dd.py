"""Double-double helpers (error-free transforms) used by the log-domain type.

A double-double is a pair ``(hi, lo)`` with ``|lo| <= ulp(hi)/2`` whose exact
sum is the represented value.
"""

import math

_SPLITTER = 134217729.0  # 2**27 + 1

LN2 = (0.6931471805599453, 2.3190468138462996e-17)
LNPI = (1.1447298858494002, 1.0265951162707826e-17)


def two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def quick_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def _split(a):
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def two_prod(a, b):
    p = a * b
    if not math.isfinite(p):
        return p, 0.0
    ah, al = _split(a)
    bh, bl = _split(b)
    err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, err


def add(x, y):
    s, e = two_sum(x[0], y[0])
    t, f = two_sum(x[1], y[1])
    e += t
    s, e = quick_two_sum(s, e)
    e += f
    return quick_two_sum(s, e)


def neg(x):
    return -x[0], -x[1]


def sub(x, y):
    return add(x, neg(y))


def mul(x, y):
    p, e = two_prod(x[0], y[0])
    e += x[0] * y[1] + x[1] * y[0]
    return quick_two_sum(p, e)


def scale(x, f):
    """Multiply a double-double by a plain float."""
    p, e = two_prod(x[0], f)
    e += x[1] * f
    return quick_two_sum(p, e)


def log(x):
    """Natural log of a positive finite float as a double-double."""
    m, e = math.frexp(x)  # x = m * 2**e, 0.5 <= m < 1
    hi = math.log(m)
    y = math.exp(hi)
    # m and y are within a factor of two, so m - y is exact (Sterbenz).
    lo = (m - y) / y
    return add(quick_two_sum(hi, lo), scale(LN2, float(e)))


def exp(x):
    """Exponential of a double-double, returned as a float.

    Reduces by powers of two first so results in the subnormal or
    near-overflow range are rounded once, by ``ldexp``.
    """
    k = round(x[0] / LN2[0])
    r = sub(x, scale(LN2, float(k)))
    y = math.exp(r[0])
    y += y * r[1]
    try:
        return math.ldexp(y, k)
    except OverflowError:
        return math.inf
