"""The 4-dimensional equivariant cohomology algebra of P1 x P1 with the
pairing twisted by the canonical bundle.

Basis order is frozen package-wide as (1, H1, H2, H1*H2); every matrix in the
pipeline (quantum connection, transition rows) is written in it.  The torus
weights are specialized to generic rationals lam, mu with the hyperplane
relations H1^2 = lam^2 and H2^2 = mu^2.

Elements are plain 4-tuples whose entries are any common coefficient ring
(rational scalars or BiSeries); the ring operations live on the context
object so the same code serves both.
"""

from __future__ import annotations

from .rational import Q0, Q1, QQ, qq

BASIS_NAMES = ("1", "H1", "H2", "H1H2")
# degree of each basis class in the (H, lam, mu) grading
BASIS_DEGREE = (0, 1, 1, 2)

SECTORS = ((0, 0), (0, 1), (1, 0), (1, 1))


def sector_signs(sector):
    a, b = sector
    return (1 if a == 0 else -1, 1 if b == 0 else -1)


class Cohomology:
    def __init__(self, lam, mu):
        self.lam = qq(lam)
        self.mu = qq(mu)
        if not self.lam or not self.mu:
            raise ValueError("lam and mu must be nonzero")
        if self.lam == self.mu or self.lam == -self.mu:
            raise ValueError("lam^2 must differ from mu^2")
        self.lam2 = self.lam * self.lam
        self.mu2 = self.mu * self.mu
        pref = Q1 / (2 * (self.lam2 - self.mu2))
        z = Q0
        self.eta = (
            (z, pref, -pref, z),
            (pref, z, z, -self.lam2 * pref),
            (-pref, z, z, self.mu2 * pref),
            (z, -self.lam2 * pref, self.mu2 * pref, z),
        )

    # -- element helpers -----------------------------------------------------

    def scalar_elem(self, c0=0, c1=0, c2=0, c3=0):
        return (qq(c0), qq(c1), qq(c2), qq(c3))

    def unit(self):
        return self.scalar_elem(1, 0, 0, 0)

    def h1(self):
        return self.scalar_elem(0, 1, 0, 0)

    def h2(self):
        return self.scalar_elem(0, 0, 1, 0)

    def h1h2(self):
        return self.scalar_elem(0, 0, 0, 1)

    @staticmethod
    def add(u, v):
        return tuple(x + y for x, y in zip(u, v))

    @staticmethod
    def sub(u, v):
        return tuple(x - y for x, y in zip(u, v))

    @staticmethod
    def smul(c, u):
        return tuple(c * x for x in u)

    def mul(self, u, v):
        """Product reduced by H1^2 = lam^2, H2^2 = mu^2."""
        l2, m2 = self.lam2, self.mu2
        u0, u1, u2, u3 = u
        v0, v1, v2, v3 = v
        return (
            u0 * v0 + l2 * (u1 * v1) + m2 * (u2 * v2) + l2 * m2 * (u3 * v3),
            u0 * v1 + u1 * v0 + m2 * (u2 * v3 + u3 * v2),
            u0 * v2 + u2 * v0 + l2 * (u1 * v3 + u3 * v1),
            u0 * v3 + u3 * v0 + u1 * v2 + u2 * v1,
        )

    def pairing(self, u, v):
        """<u, v> with respect to the twisted pairing matrix."""
        out = None
        for i in range(4):
            ui = u[i]
            if isinstance(ui, (int,)) and ui == 0:
                continue
            for j in range(4):
                e = self.eta[i][j]
                if not e:
                    continue
                term = e * ui * v[j]
                out = term if out is None else out + term
        return out

    # -- distinguished elements ----------------------------------------------

    def idempotent(self, sector):
        """Classical idempotent of the semisimple algebra for one fixed point."""
        sa, sb = sector_signs(sector)
        il = Q1 / (sa * self.lam)
        im = Q1 / (sb * self.mu)
        quarter = QQ(1, 4)
        return (quarter, quarter * il, quarter * im, quarter * il * im)

    def dual_basis(self):
        """d_i with <basis_i, d_j> = delta_ij."""
        l2, m2 = self.lam2, self.mu2
        n2 = QQ(-2)
        return (
            (Q0, n2 * m2, n2 * l2, Q0),
            (n2 * m2, Q0, Q0, n2),
            (n2 * l2, Q0, Q0, n2),
            (Q0, n2, n2, Q0),
        )

    def casimir_pairs(self):
        """(basis_i, dual_i) pairs; sum_i basis_i (x) dual_i is the eta-Casimir."""
        basis = (self.unit(), self.h1(), self.h2(), self.h1h2())
        return tuple(zip(basis, self.dual_basis()))

    # -- utilities -------------------------------------------------------------

    @staticmethod
    def lift(elem, trunc):
        """Promote scalar coordinates to constant BiSeries at a truncation."""
        from .series import BiSeries

        return tuple(
            x if isinstance(x, BiSeries) else BiSeries.const(x, trunc) for x in elem
        )

    def elem_to_json_obj(self, elem):
        from .series import BiSeries

        out = []
        for x in elem:
            if isinstance(x, BiSeries):
                out.append(x.to_json_obj())
            else:
                from .rational import qq_str

                out.append(qq_str(x))
        return out
