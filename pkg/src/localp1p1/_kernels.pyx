# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of kernels_py.conv_dense.

Coefficients are opaque Python objects (gmpy2.mpq or Fraction); the win over
the pure loop is C integer index arithmetic and no generator overhead.  Keep
semantics identical to kernels_py.conv_dense.
"""

IMPL = "cython"


def conv_dense(list a, list b, int trunc, list tri, zero):
    cdef int t1, t2, i1, i2, base1, base2, baseo, tmax
    cdef list out = [zero] * <int> tri[trunc + 1]
    cdef object x, y, acc
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
                        acc = out[baseo + i2]
                        out[baseo + i2] = acc + x * y
    return out
