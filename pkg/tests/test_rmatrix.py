from localp1p1 import rmatrix
from localp1p1.cohomology import SECTORS
from localp1p1.fitting import SPEC_POOL, specs_needed
from localp1p1.pipeline import symbolic_columns_cached
from localp1p1.rational import QQ
from localp1p1.series import BiSeries

UNIT, H1, H2, H1H2 = range(4)


def test_order_zero_frame_row(pipe6):
    coh = pipe6.coh
    cols = pipe6.columns()
    gens = pipe6.generators()
    for s in SECTORS:
        sa = 1 if s[0] == 0 else -1
        sb = 1 if s[1] == 0 else -1
        sc = cols[s]
        assert sc.rho(UNIT, 0) == BiSeries.one(pipe6.config.trunc)
        assert sc.rho(H1, 0).constant_term() == sa * coh.lam
        assert sc.rho(H2, 0).constant_term() == sb * coh.mu
        assert sc.rho(H1H2, 0).constant_term() == sa * sb * coh.lam * coh.mu
        # z^0 H1H2 entry matches its closed combination
        fr = pipe6.frames()[s]
        rsum0 = sc.rho(H1, 0) + sc.rho(H2, 0)
        mix = coh.mu2 * gens.p4 + coh.lam2 * (BiSeries.one(gens.trunc) - gens.p4)
        want = gens.p3 * ((fr.m + fr.l) * rsum0) - mix
        assert sc.rho(H1H2, 0) == want


def test_column_sum_closed_form(pipe6):
    """(R_k)_H1 + (R_k)_H2 collapses to the single-denominator combination."""
    gens = pipe6.generators()
    for s in SECTORS:
        fr = pipe6.frames()[s]
        sc = pipe6.columns()[s]
        r1 = sc.cols[UNIT]
        for k in range(pipe6.config.order + 1):
            combo = sc.rho(H1, k) + sc.rho(H2, k)
            want = gens.p1 * ((fr.m + fr.l) * r1[k])
            if k >= 1:
                prev = r1[k - 1]
                want = want + gens.p1 * (
                    prev.euler("both") + (fr.logd1 + fr.logd2) * prev
                )
            assert combo == want, (s, k)


def test_qde_residual_zero(pipe6):
    rows = pipe6.qde_report()
    assert len(rows) == 2 * 4 * 4 * (pipe6.config.order + 1)
    assert all(r["ok"] for r in rows)


def test_qde_fault_injection(pipe6):
    """Perturbing the order-1 unit coefficient breaks the next z layer.

    The same-layer equations are solved identically by the column recursion
    for any unit column (that freedom is the z-constant gauge), so the
    corruption surfaces where its q-derivative enters: one layer up, and only
    in the corrupted sector.
    """
    coh = pipe6.coh
    s = (0, 0)
    fr = pipe6.frames()[s]
    gens = pipe6.generators()
    r1 = list(pipe6.unit_columns()[s])
    r1[1] = r1[1] + BiSeries.monomial(1, 0, pipe6.config.trunc)
    bad = rmatrix.sector_columns(coh, fr, gens, r1, pipe6.config.order)
    rows = rmatrix.qde_residual_report(
        pipe6.connection(), pipe6.frames(), {**pipe6.columns(), s: bad}, 3
    )
    bad_rows = [r["name"] for r in rows if not r["ok"]]
    assert bad_rows
    assert all("-00-" in name for name in bad_rows)
    assert any("-z2" in name for name in bad_rows)
    assert not any("-z0" in name or "-z1" in name for name in bad_rows)


def test_qde_pins_higher_orders(pipe6):
    """Non-constant deviations at order 2 are also detected by the system."""
    s = (0, 1)
    r1 = list(pipe6.unit_columns()[s])
    r1[2] = r1[2] + BiSeries.monomial(0, 2, pipe6.config.trunc)
    bad = rmatrix.sector_columns(
        pipe6.coh, pipe6.frames()[s], pipe6.generators(), r1, pipe6.config.order
    )
    rows = rmatrix.qde_residual_report(
        pipe6.connection(), pipe6.frames(), {**pipe6.columns(), s: bad}, 3
    )
    assert any(not r["ok"] for r in rows)


def test_unitarity_all_pairs(pipe6):
    for sa in SECTORS:
        for sb in SECTORS:
            defect = rmatrix.unitarity_defect(
                pipe6.coh,
                pipe6.columns()[sa],
                pipe6.columns()[sb],
                pipe6.frames()[sa].delta,
                pipe6.config.order,
            )
            assert all(d.is_zero() for d in defect), (sa, sb)


def test_edge_division_and_symmetry(pipe6):
    coh = pipe6.coh
    cols = pipe6.columns()
    frames = pipe6.frames()
    qa = rmatrix.edge_table(coh, cols[(0, 0)], cols[(0, 1)], frames[(0, 0)].delta, 2)
    qb = rmatrix.edge_table(coh, cols[(0, 1)], cols[(0, 0)], frames[(0, 1)].delta, 2)
    for (a, b), val in qa.items():
        assert val == qb[(b, a)]
    # order-zero entry equals the first-order numerator layer (constant-term
    # limit of the divided bivector, expressible through R_1 alone)
    n01 = rmatrix._casimir_pair(coh, cols[(0, 0)], cols[(0, 1)], 0, 1)
    assert qa[(0, 0)] == n01
    assert qa[(0, 0)] == rmatrix.edge_table(
        coh, cols[(0, 0)], cols[(0, 1)], frames[(0, 0)].delta, 0
    )[(0, 0)]


def test_edge_division_detects_corruption(pipe6):
    import pytest

    coh = pipe6.coh
    s = (0, 0)
    fr = pipe6.frames()[s]
    gens = pipe6.generators()
    r1 = list(pipe6.unit_columns()[s])
    r1[1] = r1[1] + BiSeries.monomial(0, 1, pipe6.config.trunc)
    bad = rmatrix.sector_columns(coh, fr, gens, r1, pipe6.config.order)
    with pytest.raises(AssertionError):
        rmatrix.edge_table(coh, bad, bad, fr.delta, 2)


def test_columns_are_x_free_and_h1h2_x_slope(pipe6):
    """Structural derivative statement: the first three columns do not involve
    the log-derivative generator; the H1H2 column depends on it linearly with
    slope -p3 (R_H1 + R_H2) at the previous order."""
    sym = symbolic_columns_cached(pipe6.config.order)
    for w in (UNIT, H1, H2):
        assert all(p.x_degree() == 0 for p in sym[w])
    gens = pipe6.generators()
    for s in SECTORS:
        fr = pipe6.frames()[s]
        slots = {i: fr for i in range(4)}
        sc = pipe6.columns()[s]
        for k in range(pipe6.config.order + 1):
            slope = sym[H1H2][k].ddx().evaluate(pipe6.coh, slots, gens, gens.trunc)
            if k == 0:
                assert slope.is_zero()
            else:
                want = -(gens.p3 * (sc.rho(H1, k - 1) + sc.rho(H2, k - 1)))
                assert slope == want, (s, k)


def test_grading_fit_unit_column_k1():
    fit = rmatrix.grading_fit_unit_column(1, 6, SPEC_POOL[: specs_needed(3, 8, 6)])
    assert fit.ok and fit.margin >= QQ(5, 4)


def test_grading_fit_negative_control():
    from localp1p1.fitting import fit_in_g
    from localp1p1.canonical import build_frame
    from localp1p1.cohomology import Cohomology
    from localp1p1.pipeline import wick_unit_column

    sym = wick_unit_column(1)
    targets = []
    for lam, mu in SPEC_POOL[:4]:
        coh = Cohomology(lam, mu)
        fr = build_frame(coh, (0, 0), 6)
        targets.append(
            (coh, fr, sym[1].evaluate(coh, {i: fr for i in range(4)}, 6))
        )
    small = fit_in_g(targets, 1, 3)
    assert small.status == "inconsistent"
