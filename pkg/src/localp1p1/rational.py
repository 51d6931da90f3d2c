"""Exact rational scalars.

Every coefficient in this package is an arbitrary-precision rational.  We use
gmpy2.mpq when available (it is much faster than fractions.Fraction) and fall
back to the standard library otherwise.  Both types keep fractions reduced
with a positive denominator, which is the Scalar invariant the serializers
rely on.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as QQ

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - exercised only on gmpy2-less installs
    from fractions import Fraction as QQ

    HAVE_GMPY2 = False

Q0 = QQ(0)
Q1 = QQ(1)


def qq(value, den=None):
    """Coerce ints, "num/den" strings or rationals to the scalar type."""
    if den is not None:
        return QQ(value, den)
    if isinstance(value, str):
        if "/" in value:
            num, d = value.split("/")
            return QQ(int(num), int(d))
        return QQ(int(value))
    return QQ(value)


def qq_str(value) -> str:
    """Serialize exactly, always as num/den with den > 0."""
    num = value.numerator
    den = value.denominator
    return "%d/%d" % (num, den)


def is_square(value):
    """Return r with r*r == value and r >= 0, or None."""
    num = int(value.numerator)
    den = int(value.denominator)
    if num < 0:
        return None
    rn = _isqrt_exact(num)
    rd = _isqrt_exact(den)
    if rn is None or rd is None:
        return None
    return QQ(rn, rd)


def _isqrt_exact(n: int):
    import math

    r = math.isqrt(n)
    return r if r * r == n else None
