"""Cohomology-valued Laurent series in 1/z with exact validity tracking.

The fundamental-solution columns live here: a ColumnSeries is
sum_{k >= kmin} E_k z^{-k} where each E_k is a cohomology element with
BiSeries coordinates.  Layers with k > kbot are unknown (the source data was
truncated there), so every operation tracks the deepest still-exact layer and
assertions only quantify over valid layers.
"""

from __future__ import annotations

from .series import BiSeries


class ColumnSeries:
    __slots__ = ("layers", "kbot", "trunc")

    def __init__(self, layers: dict, kbot: int, trunc: int):
        self.layers = {k: v for k, v in layers.items() if k <= kbot}
        self.kbot = kbot
        self.trunc = trunc

    def layer(self, k: int):
        if k > self.kbot:
            raise IndexError("layer %d beyond validity %d" % (k, self.kbot))
        z = BiSeries.zero(self.trunc)
        return self.layers.get(k, (z, z, z, z))

    def valid_range(self):
        kmin = min(self.layers.keys(), default=0)
        return range(kmin, self.kbot + 1)

    def add(self, other: "ColumnSeries") -> "ColumnSeries":
        kbot = min(self.kbot, other.kbot)
        keys = set(self.layers) | set(other.layers)
        out = {}
        for k in keys:
            if k > kbot:
                continue
            a = self.layers.get(k)
            b = other.layers.get(k)
            if a is None:
                out[k] = b
            elif b is None:
                out[k] = a
            else:
                out[k] = tuple(x + y for x, y in zip(a, b))
        return ColumnSeries(out, kbot, self.trunc)

    def sub(self, other: "ColumnSeries") -> "ColumnSeries":
        return self.add(other.smul(-1))

    def smul(self, scalar) -> "ColumnSeries":
        """Multiply by a BiSeries or rational scalar."""
        out = {k: tuple(scalar * x for x in v) for k, v in self.layers.items()}
        return ColumnSeries(out, self.kbot, self.trunc)

    def cmul(self, coh, elem) -> "ColumnSeries":
        """Classical multiplication by a constant cohomology element."""
        lifted = coh.lift(elem, self.trunc)
        out = {k: coh.mul(lifted, v) for k, v in self.layers.items()}
        return ColumnSeries(out, self.kbot, self.trunc)

    def mul_z(self, power: int = 1) -> "ColumnSeries":
        out = {k - power: v for k, v in self.layers.items()}
        return ColumnSeries(out, self.kbot - power, self.trunc)

    def euler(self, which: str) -> "ColumnSeries":
        out = {k: tuple(x.euler(which) for x in v) for k, v in self.layers.items()}
        return ColumnSeries(out, self.kbot, self.trunc)

    def mul_q(self, d1: int, d2: int) -> "ColumnSeries":
        out = {k: tuple(x.mul_q(d1, d2) for x in v) for k, v in self.layers.items()}
        return ColumnSeries(out, self.kbot, self.trunc)

    def divisor_op(self, coh, axis: int) -> "ColumnSeries":
        """H_i + z q_i d/dq_i, the divisor-direction flat connection operator."""
        h = coh.h1() if axis == 1 else coh.h2()
        which = "q1" if axis == 1 else "q2"
        return self.cmul(coh, h).add(self.euler(which).mul_z())

    def is_zero(self) -> bool:
        return all(x.is_zero() for v in self.layers.values() for x in v)

    def first_nonzero(self):
        """(k, coord_index, (d1, d2)) of the first nonzero entry, or None."""
        for k in sorted(self.layers):
            for i, x in enumerate(self.layers[k]):
                fn = x.first_nonzero()
                if fn is not None:
                    return (k, i, fn)
        return None
