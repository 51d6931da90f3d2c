from localp1p1.canonical import all_frames
from localp1p1.rational import QQ
from localp1p1.symbolic import GRat, PolyPX


def _slots(coh, trunc):
    frames = all_frames(coh, trunc)
    from localp1p1.cohomology import SECTORS

    return {i: frames[s] for i, s in enumerate(SECTORS)}


def test_n_polynomial_evaluates_to_frame(pipe6):
    by_slot = _slots(pipe6.coh, 4)
    assert GRat.n_poly(0).evaluate(pipe6.coh, by_slot, 4) == by_slot[0].n


def test_q_derivative_matches_euler(pipe6):
    coh = pipe6.coh
    by_slot = _slots(coh, 5)
    m = GRat.var("M")
    l = GRat.var("L", 2)
    lam = GRat.var("lam")
    expr = (m * m * l + lam * m) * GRat({(0,) * 10: QQ(1)}, (1, 0, 1, 0)) + l * l
    for axis, which in ((1, "q1"), (2, "q2")):
        got = expr.q_deriv(axis).evaluate(coh, by_slot, 5)
        want = expr.evaluate(coh, by_slot, 5).euler(which)
        assert got == want


def test_reduce_cancels_exact_factors():
    m = GRat.var("M")
    n = GRat.n_poly(0)
    g = GRat((n * n * m).num, (3, 0, 0, 0)).reduce()
    assert g.den == (1, 0, 0, 0)
    assert g == GRat(m.num, (1, 0, 0, 0))
    # non-divisible numerators are left alone
    h = GRat(m.num, (1, 0, 0, 0)).reduce()
    assert h.den == (1, 0, 0, 0)


def test_relabel_moves_slots(pipe6):
    by_slot = _slots(pipe6.coh, 4)
    m3 = GRat.var("M").relabel({0: 3})
    assert m3.evaluate(pipe6.coh, by_slot, 4) == by_slot[3].m


def test_polypx_ops(pipe6):
    coh = pipe6.coh
    trunc = pipe6.config.trunc
    by_slot = _slots(coh, trunc)
    gens = pipe6.generators()
    m = GRat.var("M")
    p = PolyPX.from_grat(m, (0, 0, 0, 0, 2)) + PolyPX.from_grat(
        GRat.const(3), (0, 1, 0, 0, 0)
    )
    val = p.evaluate(coh, by_slot, gens, trunc)
    m_series = by_slot[0].m
    assert val == m_series * (gens.x * gens.x) + 3 * gens.p2
    assert p.x_degree() == 2
    dd = p.ddx()
    assert dd.evaluate(coh, by_slot, gens, trunc) == 2 * (m_series * gens.x)
