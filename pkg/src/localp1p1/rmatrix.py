"""R-matrix columns, their defining differential system, and the edge data
for graph sums.

The unit column comes from the stationary-phase expansion (wick module); the
H1, H2 and H1H2 columns follow from the divisor differential system by an
order-by-order recursion whose scalar inputs are the connection entries.  The
full system is then re-checked as a residual: both matrix equations, every
flat column, every z layer.  That residual is the second, independent route
to the R-matrix; the recursion never feeds back into it.

Columns are stored per sector as lists over the z-order; entry [w][k] is the
coefficient series of z^k in flat slot w (basis order 1, H1, H2, H1H2), in
the frame normalized by the square root of the discriminant.
"""

from __future__ import annotations

from dataclasses import dataclass

from .canonical import CanonicalFrame, GeneratorBundle
from .cohomology import SECTORS, Cohomology
from .genus_zero import ConnectionData
from .rational import QQ
from .series import BiSeries
from .symbolic import GRat, PolyPX

UNIT, H1, H2, H1H2 = range(4)


@dataclass
class SectorColumns:
    sector: tuple
    order: int
    cols: list  # cols[w][k], w in basis order

    def rho(self, w: int, k: int) -> BiSeries:
        return self.cols[w][k]

    def phi(self, w: int, k: int) -> BiSeries:
        """Coefficient of z^k in the inverse-matrix pairing (z -> -z flip)."""
        v = self.cols[w][k]
        return -v if k % 2 else v


def build_columns(
    frame: CanonicalFrame, gens: GeneratorBundle, r1: list, order: int
) -> SectorColumns:
    """Recursion for the H1/H2/H1H2 columns given the unit column."""
    trunc = frame.m.trunc
    one = BiSeries.one(trunc)
    m, l = frame.m, frame.l
    l1, l2 = frame.logd1, frame.logd2
    d1, d2, p1 = gens.d1, gens.d2, gens.p1
    c_h1 = p1 * ((one + d2) * m - d1 * l)
    c_h2 = p1 * ((one + d1) * l - d2 * m)
    rh1 = []
    rh2 = []
    rh12 = []
    zero = BiSeries.zero(trunc)
    for k in range(order + 1):
        prev = r1[k - 1] if k >= 1 else None
        if prev is None:
            z1 = zero
            z2 = zero
        else:
            t1 = prev.euler("q1") + l1 * prev
            t2 = prev.euler("q2") + l2 * prev
            z1 = p1 * ((one + d2) * t1 - d1 * t2)
            z2 = p1 * ((one + d1) * t2 - d2 * t1)
        rh1.append(c_h1 * r1[k] + z1)
        rh2.append(c_h2 * r1[k] + z2)
    return SectorColumns(frame.sector, order, [list(r1), rh1, rh2, rh12])


def complete_h1h2(
    coh: Cohomology,
    frame: CanonicalFrame,
    gens: GeneratorBundle,
    sc: SectorColumns,
):
    """Fill the H1H2 column from the summed quadratic layer of the system."""
    trunc = frame.m.trunc
    zero = BiSeries.zero(trunc)
    m, l = frame.m, frame.l
    lsum = frame.logd1 + frame.logd2
    p1, p3, p4, x = gens.p1, gens.p3, gens.p4, gens.x
    mix = coh.mu2 * p4 + coh.lam2 * (BiSeries.one(trunc) - p4)
    r1 = sc.cols[UNIT]
    rsum = [a + b for a, b in zip(sc.cols[H1], sc.cols[H2])]
    out = []
    for k in range(sc.order + 1):
        val = p3 * ((m + l) * rsum[k]) - mix * r1[k]
        if k >= 1:
            val = val + p3 * (lsum * rsum[k - 1]) - p3 * (x * rsum[k - 1])
            val = val + p3 * (p1 * ((m + l) * r1[k - 1]).euler("both"))
        if k >= 2:
            inner = r1[k - 2].euler("both") + lsum * r1[k - 2]
            val = val + p3 * (p1 * inner.euler("both"))
        out.append(val)
    sc.cols[H1H2] = out
    return sc


def sector_columns(
    coh: Cohomology,
    frame: CanonicalFrame,
    gens: GeneratorBundle,
    r1: list,
    order: int,
) -> SectorColumns:
    sc = build_columns(frame, gens, r1, order)
    return complete_h1h2(coh, frame, gens, sc)


# -- symbolic twin ---------------------------------------------------------------


def symbolic_logd(axis: int) -> GRat:
    n = GRat.n_poly(0)
    inv_n = GRat({(0,) * 10: QQ(-1, 2)}, (1, 0, 0, 0))
    return (n.q_deriv(axis) * inv_n).reduce()


def symbolic_columns(r1: list, order: int, coh: Cohomology) -> dict:
    """Columns as polynomials in the transcendental generators, slot-0
    eigenvalue variables.  r1: unit column from the stationary phase."""
    m = GRat.var("M")
    l = GRat.var("L")
    l1 = symbolic_logd(1)
    l2 = symbolic_logd(2)
    one = PolyPX.const(1)
    p1c = PolyPX.from_grat(GRat.const(1), (1, 0, 0, 0, 0))
    p2c = PolyPX.from_grat(GRat.const(1), (0, 1, 0, 0, 0))
    # (1+d2) p1 = p1 + p2-swap = 1 - p2 ... in generator terms:
    #   (1+d2)*p1 = 1 - p2,  d1*p1 = p2,  (1+d1)*p1 = p1 + p2,  d2*p1 = 1 - p1 - p2
    c_h1 = PolyPX.from_grat(m) - PolyPX.from_grat(m + l) * p2c
    c_h2 = PolyPX.from_grat(m + l) * (p1c + p2c) - PolyPX.from_grat(m)
    rh1 = []
    rh2 = []
    for k in range(order + 1):
        base1 = c_h1 * PolyPX.from_grat(r1[k])
        base2 = c_h2 * PolyPX.from_grat(r1[k])
        if k >= 1:
            t1 = PolyPX.from_grat((r1[k - 1].q_deriv(1) + l1 * r1[k - 1]).reduce())
            t2 = PolyPX.from_grat((r1[k - 1].q_deriv(2) + l2 * r1[k - 1]).reduce())
            base1 = base1 + (one - p2c) * t1 - p2c * t2
            base2 = base2 + (p1c + p2c) * t2 - (one - p1c - p2c) * t1
        rh1.append(base1)
        rh2.append(base2)
    lam2 = GRat.var("lam") * GRat.var("lam")
    mu2 = GRat.var("mu") * GRat.var("mu")
    p4c = PolyPX.from_grat(GRat.const(1), (0, 0, 0, 1, 0))
    mix = PolyPX.from_grat(mu2 - lam2) * p4c + PolyPX.from_grat(lam2)
    lsum = l1 + l2
    ml = m + l
    rh12 = []
    for k in range(order + 1):
        rsum_k = rh1[k] + rh2[k]
        val = (PolyPX.from_grat(ml) * rsum_k).shift_cell(dp3=1) - mix * PolyPX.from_grat(
            r1[k]
        )
        if k >= 1:
            rsum_p = rh1[k - 1] + rh2[k - 1]
            val = val + (PolyPX.from_grat(lsum) * rsum_p).shift_cell(dp3=1)
            val = val - rsum_p.shift_cell(dp3=1, dx=1)
            d_ml = ((ml * r1[k - 1]).q_deriv(1) + (ml * r1[k - 1]).q_deriv(2)).reduce()
            val = val + PolyPX.from_grat(d_ml).shift_cell(dp1=1, dp3=1)
        if k >= 2:
            inner = (
                r1[k - 2].q_deriv(1) + r1[k - 2].q_deriv(2) + lsum * r1[k - 2]
            ).reduce()
            dd = (inner.q_deriv(1) + inner.q_deriv(2)).reduce()
            val = val + PolyPX.from_grat(dd).shift_cell(dp1=1, dp3=1)
        rh12.append(val.reduce())
    return {
        UNIT: [PolyPX.from_grat(g) for g in r1],
        H1: rh1,
        H2: rh2,
        H1H2: rh12,
    }


# -- residual of the full differential system -------------------------------------


def qde_residual_report(
    conn: ConnectionData, frames: dict, columns: dict, order: int
) -> list:
    """Both matrix equations, all columns, z-layers 0..order."""
    rows = []
    for s in SECTORS:
        fr = frames[s]
        sc = columns[s]
        for axis, mat, eig, logd, which in (
            (1, conn.a1, fr.m, fr.logd1, "q1"),
            (2, conn.a2, fr.l, fr.logd2, "q2"),
        ):
            for j in range(4):
                for k in range(order + 1):
                    res = eig * sc.rho(j, k)
                    if k >= 1:
                        prev = sc.rho(j, k - 1)
                        res = res + prev.euler(which) + logd * prev
                    for i in range(4):
                        aij = mat[i][j]
                        if not aij.is_zero():
                            res = res - sc.rho(i, k) * aij
                    ok = res.is_zero()
                    rows.append(
                        {
                            "name": "qde-axis%d-%s-col%d-z%d" % (axis, "%d%d" % s, j, k),
                            "ok": ok,
                            "required": True,
                            "detail": None
                            if ok
                            else "first nonzero %s" % (res.first_nonzero(),),
                        }
                    )
    return rows


def unitarity_defect(
    coh: Cohomology, ca: SectorColumns, cb: SectorColumns, delta_a: BiSeries, total: int
):
    """sum_i rho_a(u_i; z) rho_b(u^i; -z) - delta_ab Delta_a, per z-order.

    Returns a list indexed by z-order; all entries must vanish.
    """
    trunc = delta_a.trunc
    out = []
    same = ca.sector == cb.sector
    for n in range(total + 1):
        acc = BiSeries.zero(trunc)
        for k in range(n + 1):
            sign = -1 if (n - k) % 2 else 1
            acc = acc + sign * _casimir_pair(coh, ca, cb, k, n - k)
        if n == 0 and same:
            acc = acc - delta_a
        out.append(acc)
    return out


def _casimir_pair(coh, ca, cb, k1, k2):
    """sum_i rho_a(u_i)[k1] * rho_b(u^i)[k2] with the twisted dual basis."""
    l2, m2 = coh.lam2, coh.mu2
    a = ca.cols
    b = cb.cols
    term = a[UNIT][k1] * (m2 * b[H1][k2] + l2 * b[H2][k2])
    term = term + a[H1][k1] * (b[H1H2][k2] + m2 * b[UNIT][k2])
    term = term + a[H2][k1] * (b[H1H2][k2] + l2 * b[UNIT][k2])
    term = term + a[H1H2][k1] * (b[H1][k2] + b[H2][k2])
    return QQ(-2) * term


# -- edge data ---------------------------------------------------------------------


def edge_table(
    coh: Cohomology,
    ca: SectorColumns,
    cb: SectorColumns,
    delta_a: BiSeries,
    box: int,
    check: bool = True,
):
    """Divided edge coefficients q[a][b] with (z+w) q = numerator.

    numerator n[a][b] = delta_ab Delta - sum_i phi_a(u_i)[a] phi_b(u^i)[b];
    the division consistency (the discarded pure-z row) is asserted when
    check is set; it is equivalent to the inverse-pairing identity.
    """
    trunc = delta_a.trunc
    same = ca.sector == cb.sector

    def n_entry(i, j):
        sa = -1 if i % 2 else 1
        sb = -1 if j % 2 else 1
        val = QQ(-(sa * sb)) * _casimir_pair(coh, ca, cb, i, j)
        if i == 0 and j == 0 and same:
            val = val + delta_a
        return val

    n = [[n_entry(i, j) for j in range(box + 2)] for i in range(box + 2)]
    q = {}
    for a in range(box + 1):
        for b in range(box + 1 - a):
            val = n[a][b + 1]
            if a >= 1:
                val = val - q[(a - 1, b + 1)]
            q[(a, b)] = val
    if check:
        for a in range(1, box + 2):
            prev = q.get((a - 1, 0))
            if prev is None:
                continue
            diff = n[a][0] - prev
            if not diff.is_zero():
                raise AssertionError(
                    "edge division leaves remainder at z^%d (sectors %s,%s)"
                    % (a, ca.sector, cb.sector)
                )
    return q


def tail_coefficients(r1: list, order: int):
    """Tail insertion series: coefficient of psi^(l+1) is (-1)^(l+1) (R_l)_1."""
    return [None] + [(QQ(-1) ** (l + 1)) * r1[l] for l in range(1, order + 1)]


# -- graded-ring membership fits ----------------------------------------------


def grading_fit_unit_column(k: int, trunc: int, specs) -> "FitResult":
    """Certify (R_k)_1 in the graded piece (3k, 8k) across specializations.

    Only eigenvalue frames are needed per specialization, so this stays cheap
    even when the monomial basis requires a dozen weight choices.
    """
    from .canonical import build_frame
    from .cohomology import Cohomology
    from .fitting import fit_in_g
    from .pipeline import wick_unit_column

    sym = wick_unit_column(k)
    targets = []
    for lam, mu in specs:
        coh = Cohomology(lam, mu)
        fr = build_frame(coh, (0, 0), trunc)
        series = sym[k].evaluate(coh, {0: fr, 1: fr, 2: fr, 3: fr}, trunc)
        targets.append((coh, fr, series))
    return fit_in_g(targets, 3 * k, 8 * k)


def grading_fit_tail(k: int, trunc: int, specs):
    """Tail coefficients live in the same graded piece, with flipped sign."""
    from .canonical import build_frame
    from .cohomology import Cohomology
    from .fitting import fit_in_g
    from .pipeline import wick_unit_column

    sym = wick_unit_column(k)
    sign = QQ(-1) ** (k + 1)
    targets = []
    for lam, mu in specs:
        coh = Cohomology(lam, mu)
        fr = build_frame(coh, (0, 0), trunc)
        series = sign * sym[k].evaluate(coh, {0: fr, 1: fr, 2: fr, 3: fr}, trunc)
        targets.append((coh, fr, series))
    return fit_in_g(targets, 3 * k, 8 * k)


def grading_fit_column_sum(k: int, pipelines, sector=(0, 0)):
    """(R_k)_H1 + (R_k)_H2 times (1 + both unit-column entries) sits in the
    graded piece (3k, 8k+1)."""
    from .fitting import fit_in_g

    targets = []
    for p in pipelines:
        cols = p.columns()[sector]
        combo = (cols.rho(1, k) + cols.rho(2, k)) * p.generators().one_plus
        targets.append((p.coh, p.frames()[sector], combo))
    return fit_in_g(targets, 3 * k, 8 * k + 1)
