"""Truncated bivariate power series over exact rationals.

A BiSeries stores every coefficient of q1^d1 q2^d2 with d1+d2 <= trunc in a
dense triangular array.  All arithmetic is exact; a stored coefficient is the
true coefficient of the represented series, never an approximation.  Two
series can only be combined at a common truncation (mixing would silently
produce wrong tails), so binary operations raise TruncationMismatch instead
of guessing.

Total-degree truncation is the right shape here: every identity this package
verifies is homogeneous in total q-degree.
"""

from __future__ import annotations

import json

from .kernels import conv_dense, tri_table
from .rational import Q0, Q1, is_square, qq, qq_str

_TRI_CACHE: dict[int, list[int]] = {}


def _tri(trunc: int) -> list[int]:
    tab = _TRI_CACHE.get(trunc)
    if tab is None:
        tab = tri_table(trunc)
        _TRI_CACHE[trunc] = tab
    return tab


class TruncationMismatch(ValueError):
    pass


class NotInvertible(ValueError):
    pass


class NotASquare(ValueError):
    pass


class BiSeries:
    __slots__ = ("trunc", "c")

    def __init__(self, trunc: int, coeffs=None):
        self.trunc = trunc
        n = _tri(trunc)[trunc + 1]
        if coeffs is None:
            self.c = [Q0] * n
        else:
            if len(coeffs) != n:
                raise ValueError("coefficient block has wrong length")
            self.c = coeffs

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, trunc):
        return cls(trunc)

    @classmethod
    def const(cls, value, trunc):
        s = cls(trunc)
        s.c = list(s.c)
        s.c[0] = qq(value)
        return s

    @classmethod
    def one(cls, trunc):
        return cls.const(1, trunc)

    @classmethod
    def from_terms(cls, terms, trunc):
        """terms: iterable of (d1, d2, coefficient)."""
        s = cls(trunc)
        c = list(s.c)
        tri = _tri(trunc)
        for d1, d2, v in terms:
            if d1 + d2 <= trunc:
                c[tri[d1 + d2] + d2] += qq(v)
        s.c = c
        return s

    @classmethod
    def monomial(cls, d1, d2, trunc, value=1):
        return cls.from_terms([(d1, d2, value)], trunc)

    # -- access ------------------------------------------------------------

    def get(self, d1: int, d2: int):
        if d1 < 0 or d2 < 0 or d1 + d2 > self.trunc:
            raise IndexError("exponent outside truncation")
        return self.c[_tri(self.trunc)[d1 + d2] + d2]

    def constant_term(self):
        return self.c[0]

    def is_zero(self) -> bool:
        return not any(self.c)

    def first_nonzero(self):
        """Smallest (d1, d2) with nonzero coefficient, in (total, d2) order."""
        tri = _tri(self.trunc)
        for t in range(self.trunc + 1):
            for d2 in range(t + 1):
                if self.c[tri[t] + d2]:
                    return (t - d2, d2)
        return None

    def terms(self):
        tri = _tri(self.trunc)
        for t in range(self.trunc + 1):
            for d2 in range(t + 1):
                v = self.c[tri[t] + d2]
                if v:
                    yield (t - d2, d2, v)

    # -- ring ops ----------------------------------------------------------

    def _check(self, other: "BiSeries"):
        if self.trunc != other.trunc:
            raise TruncationMismatch(
                "truncation mismatch: %d vs %d" % (self.trunc, other.trunc)
            )

    def __add__(self, other):
        if not isinstance(other, BiSeries):
            return self + BiSeries.const(other, self.trunc)
        self._check(other)
        return BiSeries(self.trunc, [x + y for x, y in zip(self.c, other.c)])

    __radd__ = __add__

    def __neg__(self):
        return BiSeries(self.trunc, [-x for x in self.c])

    def __sub__(self, other):
        if not isinstance(other, BiSeries):
            return self - BiSeries.const(other, self.trunc)
        self._check(other)
        return BiSeries(self.trunc, [x - y for x, y in zip(self.c, other.c)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, BiSeries):
            v = qq(other)
            if not v:
                return BiSeries(self.trunc)
            return BiSeries(self.trunc, [x * v if x else Q0 for x in self.c])
        self._check(other)
        return BiSeries(
            self.trunc, conv_dense(self.c, other.c, self.trunc, _tri(self.trunc), Q0)
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, BiSeries):
            self._check(other)
            return self.c == other.c
        return self == BiSeries.const(other, self.trunc)

    def __hash__(self):
        return hash((self.trunc, tuple(self.c)))

    def __repr__(self):
        head = ["%s*q1^%d*q2^%d" % (v, d1, d2) for d1, d2, v in list(self.terms())[:6]]
        return "BiSeries(D=%d; %s%s)" % (
            self.trunc,
            " + ".join(head) or "0",
            " + ..." if sum(1 for _ in self.terms()) > 6 else "",
        )

    # -- restriction / symmetry ---------------------------------------------

    def restrict(self, trunc: int) -> "BiSeries":
        if trunc > self.trunc:
            raise TruncationMismatch("cannot extend a truncated series")
        if trunc == self.trunc:
            return self
        return BiSeries(self.trunc, self.c)._copy_to(trunc)

    def _copy_to(self, trunc):
        out = BiSeries(trunc)
        out.c = self.c[: _tri(trunc)[trunc + 1]]
        return out

    def swap(self) -> "BiSeries":
        """Exchange q1 and q2."""
        tri = _tri(self.trunc)
        out = [Q0] * len(self.c)
        for t in range(self.trunc + 1):
            base = tri[t]
            for d2 in range(t + 1):
                out[base + (t - d2)] = self.c[base + d2]
        return BiSeries(self.trunc, out)

    # -- analytic ops --------------------------------------------------------

    def invert(self) -> "BiSeries":
        """Multiplicative inverse; requires a nonzero constant term."""
        a0 = self.c[0]
        if not a0:
            raise NotInvertible("zero constant term")
        D = self.trunc
        tri = _tri(D)
        inv0 = Q1 / a0
        out = [Q0] * len(self.c)
        out[0] = inv0
        # layer-by-layer: (a * b)_t = 0 for t >= 1
        for t in range(1, D + 1):
            baset = tri[t]
            for d2 in range(t + 1):
                d1 = t - d2
                s = Q0
                # sum over nonconstant part of a times known part of b
                for t1 in range(1, t + 1):
                    base1 = tri[t1]
                    base2 = tri[t - t1]
                    for i1 in range(max(0, d2 - (t - t1)), min(t1, d2) + 1):
                        x = self.c[base1 + i1]
                        if x:
                            y = out[base2 + (d2 - i1)]
                            if y:
                                s += x * y
                out[baset + d2] = -inv0 * s
        return BiSeries(D, out)

    def sqrt(self, branch) -> "BiSeries":
        """Square root whose constant term equals branch.

        branch must satisfy branch^2 == constant term; the constant term has
        to be the square of a rational (callers pick the sign).
        """
        a0 = self.c[0]
        b = qq(branch)
        if b * b != a0:
            r = is_square(a0)
            if r is None:
                raise NotASquare("constant term %s is not a rational square" % a0)
            raise ValueError("branch %s does not square to constant term %s" % (b, a0))
        D = self.trunc
        tri = _tri(D)
        out = [Q0] * len(self.c)
        out[0] = b
        half = Q1 / (2 * b)
        for t in range(1, D + 1):
            baset = tri[t]
            for d2 in range(t + 1):
                s = Q0
                for t1 in range(1, t):
                    base1 = tri[t1]
                    base2 = tri[t - t1]
                    for i1 in range(max(0, d2 - (t - t1)), min(t1, d2) + 1):
                        x = out[base1 + i1]
                        if x:
                            y = out[base2 + (d2 - i1)]
                            if y:
                                s += x * y
                out[baset + d2] = (self.c[baset + d2] - s) * half
        return BiSeries(D, out)

    def euler(self, which: str) -> "BiSeries":
        """q1 d/dq1, q2 d/dq2 or their sum; exact and truncation-preserving."""
        tri = _tri(self.trunc)
        out = [Q0] * len(self.c)
        for t in range(self.trunc + 1):
            base = tri[t]
            for d2 in range(t + 1):
                v = self.c[base + d2]
                if not v:
                    continue
                d1 = t - d2
                if which == "q1":
                    f = d1
                elif which == "q2":
                    f = d2
                elif which == "both":
                    f = t
                else:
                    raise ValueError("which must be q1, q2 or both")
                if f:
                    out[base + d2] = v * f
        return BiSeries(self.trunc, out)

    def log_deriv(self, which: str) -> "BiSeries":
        """euler(which) / self; requires invertible constant term."""
        return self.euler(which) * self.invert()

    def ddq(self, which: str) -> "BiSeries":
        """Plain d/dq derivative.  Result is exact only to trunc-1."""
        D = self.trunc
        tri = _tri(D)
        out = BiSeries(D - 1)
        c = list(out.c)
        trn = _tri(D - 1)
        for t in range(1, D + 1):
            base = tri[t]
            for d2 in range(t + 1):
                v = self.c[base + d2]
                if not v:
                    continue
                d1 = t - d2
                if which == "q1" and d1 > 0:
                    c[trn[t - 1] + d2] = v * d1
                elif which == "q2" and d2 > 0:
                    c[trn[t - 1] + d2 - 1] = v * d2
        out.c = c
        return out

    def mul_q(self, d1: int, d2: int) -> "BiSeries":
        """Multiply by the monomial q1^d1 q2^d2 (exact: low coefficients shift up)."""
        D = self.trunc
        tri = _tri(D)
        out = [Q0] * len(self.c)
        for t in range(D + 1 - d1 - d2):
            base = tri[t]
            baseo = tri[t + d1 + d2] + d2
            for i2 in range(t + 1):
                v = self.c[base + i2]
                if v:
                    out[baseo + i2] = v
        return BiSeries(D, out)

    # -- serialization -------------------------------------------------------

    def to_json_obj(self):
        return {
            "trunc": self.trunc,
            "coeffs": [[d1, d2, qq_str(v)] for d1, d2, v in sorted(self.terms())],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj) -> "BiSeries":
        return cls.from_terms(
            [(d1, d2, qq(v)) for d1, d2, v in obj["coeffs"]], obj["trunc"]
        )

    @classmethod
    def from_json(cls, text: str) -> "BiSeries":
        return cls.from_json_obj(json.loads(text))


class HalfPowerSeries:
    """A deferred half-integer power base^(half_exponent/2) of a BiSeries.

    Only even exponents can be materialized into an honest BiSeries; the
    graph assembly uses the exponent bookkeeping as its parity audit trail.
    """

    __slots__ = ("base", "half_exponent")

    def __init__(self, base: BiSeries, half_exponent: int):
        self.base = base
        self.half_exponent = half_exponent

    def __mul__(self, other: "HalfPowerSeries") -> "HalfPowerSeries":
        if self.base is not other.base and self.base != other.base:
            raise ValueError("half powers of different radicands do not combine")
        return HalfPowerSeries(self.base, self.half_exponent + other.half_exponent)

    @property
    def is_even(self) -> bool:
        return self.half_exponent % 2 == 0

    def materialize(self) -> BiSeries:
        if not self.is_even:
            raise ValueError(
                "odd half power %d cannot be materialized" % self.half_exponent
            )
        return bis_pow(self.base, self.half_exponent // 2)


def bis_pow(a: BiSeries, n: int) -> BiSeries:
    """a**n for integer n (negative powers invert first)."""
    if n < 0:
        return bis_pow(a.invert(), -n)
    out = BiSeries.one(a.trunc)
    b = a
    while n:
        if n & 1:
            out = out * b
        n >>= 1
        if n:
            b = b * b
    return out


def geometric(ratio_d1: int, ratio_d2: int, trunc: int) -> BiSeries:
    """1/(1 - q1^a q2^b) as an explicit truncated sum (test oracle helper)."""
    step = ratio_d1 + ratio_d2
    terms = []
    k = 0
    while k * step <= trunc if step else k == 0:
        terms.append((k * ratio_d1, k * ratio_d2, 1))
        k += 1
    return BiSeries.from_terms(terms, trunc)
