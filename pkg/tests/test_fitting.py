from localp1p1.fitting import g_monomials, solve_exact, specs_needed
from localp1p1.rational import QQ


def test_solve_exact_unique():
    cols = [[QQ(1), QQ(0), QQ(1)], [QQ(0), QQ(1), QQ(1)]]
    rhs = [QQ(2), QQ(3), QQ(5)]
    fit = solve_exact(cols, rhs, ["a", "b"], min_margin=QQ(1))
    assert fit.ok and fit.coefficients == {"a": QQ(2), "b": QQ(3)}
    assert fit.rank == 2


def test_solve_exact_inconsistent():
    cols = [[QQ(1), QQ(1)]]
    rhs = [QQ(1), QQ(2)]
    fit = solve_exact(cols, rhs, ["a"], min_margin=QQ(1))
    assert fit.status == "inconsistent"


def test_solve_exact_underdetermined_rank():
    cols = [[QQ(1), QQ(2)], [QQ(2), QQ(4)]]  # proportional columns
    rhs = [QQ(3), QQ(6)]
    fit = solve_exact(cols, rhs, ["a", "b"], min_margin=QQ(1))
    assert fit.status == "underdetermined" and fit.rank == 1


def test_solve_exact_margin_gate():
    cols = [[QQ(1)]]
    rhs = [QQ(4)]
    fit = solve_exact(cols, rhs, ["a"], min_margin=QQ(5, 4))
    assert fit.status == "underdetermined" and "margin" in fit.detail


def test_monomial_counts():
    assert len(g_monomials(3, 8)) == 55
    assert len(g_monomials(6, 16)) == 285
    assert all(c % 2 == 0 and d % 2 == 0 for (_, _, c, d) in g_monomials(3, 8))


def test_specs_needed_scaling():
    assert specs_needed(3, 8, 6) >= 6  # pure-weight separation needs n/2+2
    assert specs_needed(6, 16, 6) >= 13  # margin-driven
