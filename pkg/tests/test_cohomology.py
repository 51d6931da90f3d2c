from itertools import product

from localp1p1.cohomology import SECTORS, Cohomology
from localp1p1.rational import Q0, Q1, QQ, qq

LAM, MU = 3, 5


def coh():
    return Cohomology(LAM, MU)


def test_pairing_matrix_entries():
    c = coh()
    l2, m2 = qq(LAM) ** 2, qq(MU) ** 2
    pref = Q1 / (2 * (l2 - m2))
    assert c.pairing(c.unit(), c.h1()) == pref
    assert c.pairing(c.unit(), c.unit()) == 0
    assert c.pairing(c.h1(), c.h1h2()) == -l2 * pref
    assert c.pairing(c.h2(), c.h1h2()) == m2 * pref
    # symmetry
    basis = [c.unit(), c.h1(), c.h2(), c.h1h2()]
    for u, v in product(basis, repeat=2):
        assert c.pairing(u, v) == c.pairing(v, u)


def test_classical_products():
    c = coh()
    l2, m2 = qq(LAM) ** 2, qq(MU) ** 2
    assert c.mul(c.h1(), c.h1()) == c.scalar_elem(l2, 0, 0, 0)
    assert c.mul(c.h1(), c.h2()) == c.h1h2()
    assert c.mul(c.h1h2(), c.h1h2()) == c.scalar_elem(l2 * m2, 0, 0, 0)
    assert c.mul(c.h1(), c.h1h2()) == c.scalar_elem(0, 0, l2, 0)


def test_idempotents_complete_orthogonal():
    c = coh()
    total = c.scalar_elem(0, 0, 0, 0)
    for s in SECTORS:
        total = c.add(total, c.idempotent(s))
    assert total == c.unit()
    for s in SECTORS:
        e = c.idempotent(s)
        assert c.mul(e, e) == e
        for t in SECTORS:
            if t != s:
                prod_ = c.mul(e, c.idempotent(t))
                assert all(x == 0 for x in prod_)


def test_hyperplane_eigenvalues_on_idempotents():
    c = coh()
    for s in SECTORS:
        e = c.idempotent(s)
        sa = 1 if s[0] == 0 else -1
        sb = 1 if s[1] == 0 else -1
        assert c.mul(c.h1(), e) == c.smul(sa * c.lam, e)
        assert c.mul(c.h2(), e) == c.smul(sb * c.mu, e)


def test_dual_basis_kronecker():
    c = coh()
    basis = [c.unit(), c.h1(), c.h2(), c.h1h2()]
    duals = c.dual_basis()
    for i, u in enumerate(basis):
        for j, d in enumerate(duals):
            expect = Q1 if i == j else Q0
            assert c.pairing(u, d) == expect


def test_frobenius_compatibility():
    c = coh()
    basis = [c.unit(), c.h1(), c.h2(), c.h1h2()]
    for u, v, w in product(basis, repeat=3):
        assert c.pairing(c.mul(u, v), w) == c.pairing(u, c.mul(v, w))


def test_idempotent_norm_matches_discriminant():
    # <e_s, e_s> = 1 / Delta_s with Delta_s = -8((+/-)lam^2 mu + (+/-)mu^2 lam)
    c = coh()
    for s in SECTORS:
        e = c.idempotent(s)
        sa = 1 if s[0] == 0 else -1
        sb = 1 if s[1] == 0 else -1
        delta0 = QQ(-8) * (c.lam2 * (sb * c.mu) + c.mu2 * (sa * c.lam))
        assert c.pairing(e, e) == Q1 / delta0


def test_degenerate_weights_rejected():
    import pytest

    with pytest.raises(ValueError):
        Cohomology(0, 5)
    with pytest.raises(ValueError):
        Cohomology(3, 3)
