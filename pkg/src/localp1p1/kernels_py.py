"""Pure-Python convolution kernel for dense truncated bivariate series.

Coefficients live in a flat list indexed by idx(d1, d2) = tri(d1+d2) + d2,
so a fixed total degree occupies a contiguous slice.  The compiled twin in
_kernels.pyx runs the identical loop with C integer bookkeeping; both must
stay bit-for-bit interchangeable (tests enforce it).
"""

from __future__ import annotations

IMPL = "python"


def tri_table(max_degree: int):
    return [t * (t + 1) // 2 for t in range(max_degree + 2)]


def conv_dense(a, b, trunc, tri, zero):
    """Cauchy product of two dense triangular arrays, truncated at trunc."""
    out = [zero] * tri[trunc + 1]
    for t1 in range(trunc + 1):
        base1 = tri[t1]
        tmax = trunc - t1
        for i1 in range(t1 + 1):
            x = a[base1 + i1]
            if not x:
                continue
            for t2 in range(tmax + 1):
                base2 = tri[t2]
                baseo = tri[t1 + t2] + i1
                for i2 in range(t2 + 1):
                    y = b[base2 + i2]
                    if y:
                        out[baseo + i2] += x * y
    return out
