"""Canonical coordinates: per-sector eigenvalue series, discriminants, and
the generator bundle feeding the higher-genus structure results.

The pair (M, L) for a sector solves

    M^2 - lam^2 = 4 q1 (M + L)^2
    L^2 - mu^2  = 4 q2 (M + L)^2

with constant terms ((-1)^a lam, (-1)^b mu).  The four solutions are the
simultaneous eigenvalues of the two divisor connection matrices; everything
downstream (stationary phase, graph sums, finite generation) is a rational
expression in them over powers of N = lam^2 L + mu^2 M.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cohomology import SECTORS, Cohomology, sector_signs
from .genus_zero import ConnectionData, det4
from .rational import QQ
from .series import BiSeries


@dataclass
class CanonicalFrame:
    sector: tuple
    m: BiSeries
    l: BiSeries
    n: BiSeries  # lam^2 L + mu^2 M
    inv_n: BiSeries
    delta: BiSeries  # -8 N
    logd1: BiSeries  # q1 dlog |e|  =  -(1/2) q1 dN / N
    logd2: BiSeries

    def delta_half(self, half_exponent: int):
        from .series import HalfPowerSeries

        return HalfPowerSeries(self.delta, half_exponent)


def solve_eigenvalues(coh: Cohomology, sector, trunc: int):
    """Degree-by-degree fixed point for (M, L); exact, with residual check."""
    sa, sb = sector_signs(sector)
    m = BiSeries.const(sa * coh.lam, trunc)
    l = BiSeries.const(sb * coh.mu, trunc)
    q1 = BiSeries.monomial(1, 0, trunc)
    q2 = BiSeries.monomial(0, 1, trunc)
    lam2 = BiSeries.const(coh.lam2, trunc)
    mu2 = BiSeries.const(coh.mu2, trunc)
    for _ in range(trunc + 1):
        s2 = (m + l) * (m + l)
        m_new = (lam2 + 4 * (q1 * s2)).sqrt(sa * coh.lam)
        l_new = (mu2 + 4 * (q2 * s2)).sqrt(sb * coh.mu)
        if m_new == m and l_new == l:
            break
        m, l = m_new, l_new
    else:
        raise AssertionError("eigenvalue iteration did not stabilize")
    s2 = (m + l) * (m + l)
    assert (m * m - lam2 - 4 * (q1 * s2)).is_zero(), "first defining equation"
    assert (l * l - mu2 - 4 * (q2 * s2)).is_zero(), "second defining equation"
    return m, l


def build_frame(coh: Cohomology, sector, trunc: int) -> CanonicalFrame:
    m, l = solve_eigenvalues(coh, sector, trunc)
    n = coh.lam2 * l + coh.mu2 * m
    if not n.constant_term():
        raise ValueError("discriminant vanishes; weights are not generic")
    inv_n = n.invert()
    half = QQ(-1, 2)
    return CanonicalFrame(
        sector=sector,
        m=m,
        l=l,
        n=n,
        inv_n=inv_n,
        delta=QQ(-8) * n,
        logd1=half * (n.euler("q1") * inv_n),
        logd2=half * (n.euler("q2") * inv_n),
    )


def all_frames(coh: Cohomology, trunc: int):
    return {s: build_frame(coh, s, trunc) for s in SECTORS}


def eigen_check(conn: ConnectionData, frames) -> list:
    """det(A1 - M Id) and det(A2 - L Id) per sector; zero when M, L are the
    eigenvalue series."""
    rows = []
    for s in SECTORS:
        fr = frames[s]
        for label, mat, eig in (("divisor1", conn.a1, fr.m), ("divisor2", conn.a2, fr.l)):
            shifted = [
                [mat[i][j] - eig if i == j else mat[i][j] for j in range(4)]
                for i in range(4)
            ]
            d = det4(shifted)
            rows.append(
                {
                    "name": "eigen-%s-%d%d" % (label, s[0], s[1]),
                    "ok": d.is_zero(),
                    "required": True,
                    "detail": None if d.is_zero() else "first nonzero %s" % (d.first_nonzero(),),
                }
            )
    return rows


@dataclass
class GeneratorBundle:
    """The q-series generators. Naming:

      d1, d2    unit-column connection entries (d2 = d1 with arguments swapped)
      one_plus  1 + d1 + d2, p1 = 1/one_plus, p2 = d1 * p1
      x         (q1 d/dq1 + q2 d/dq2) log(one_plus)
      t12       e11 + e21 (the H1H2-row pivot at arguments (q1,q2))
      tsum      t12 + swap(t12); p3 = 1/tsum, p4 = t12 * p3
    """

    trunc: int
    d1: BiSeries
    d2: BiSeries
    one_plus: BiSeries
    p1: BiSeries
    p2: BiSeries
    x: BiSeries
    t12: BiSeries
    tsum: BiSeries
    p3: BiSeries
    p4: BiSeries


def generator_bundle(conn: ConnectionData) -> GeneratorBundle:
    one_plus = BiSeries.one(conn.trunc) + conn.d1 + conn.d2
    p1 = one_plus.invert()
    t12 = conn.e11 + conn.e21
    tsum = t12 + t12.swap()
    c = tsum.constant_term()
    if not c:
        raise ValueError(
            "H1H2 pivot sum has zero constant term; generator p3 undefined"
        )
    p3 = tsum.invert()
    return GeneratorBundle(
        trunc=conn.trunc,
        d1=conn.d1,
        d2=conn.d2,
        one_plus=one_plus,
        p1=p1,
        p2=conn.d1 * p1,
        x=one_plus.log_deriv("both"),
        t12=t12,
        tsum=tsum,
        p3=p3,
        p4=t12 * p3,
    )
