import pytest

from localp1p1.psi import PsiCache
from localp1p1.rational import QQ

# frozen reference values (independent implementation output, genus 0..3)
TABLE = [
    (0, (0, 0, 0), QQ(1)),
    (0, (1, 0, 0, 0), QQ(1)),
    (0, (2, 0, 0, 0, 0), QQ(1)),
    (0, (1, 1, 0, 0, 0), QQ(2)),
    (1, (1,), QQ(1, 24)),
    (1, (2, 0), QQ(1, 24)),
    (1, (1, 1), QQ(1, 24)),
    (1, (3, 0, 0), QQ(1, 24)),
    (1, (2, 1, 0), QQ(1, 12)),
    (1, (1, 1, 1), QQ(1, 12)),
    (2, (4,), QQ(1, 1152)),
    (2, (5, 0), QQ(1, 1152)),
    (2, (4, 1), QQ(1, 384)),
    (2, (3, 2), QQ(29, 5760)),
    (2, (4, 1, 1), QQ(1, 96)),
    (2, (3, 2, 1), QQ(29, 1440)),
    (3, (7,), QQ(1, 82944)),
    (3, (7, 1), QQ(5, 82944)),
    (3, (6, 2), QQ(77, 414720)),
    (3, (5, 3), QQ(503, 1451520)),
    (3, (4, 4), QQ(607, 1451520)),
]


def test_reference_table():
    pc = PsiCache()
    for g, exps, want in TABLE:
        assert pc.integral(g, exps) == want, (g, exps)


def test_dimension_mismatch_raises():
    pc = PsiCache()
    with pytest.raises(ValueError):
        pc.integral(2, (3,))


def test_symmetry_in_arguments():
    pc = PsiCache()
    assert pc.integral(2, (1, 4)) == pc.integral(2, (4, 1))


def test_string_dilaton_consistency():
    pc = PsiCache()
    for g, exps, _ in TABLE:
        pc.integral(g, exps)
    rows = pc.consistency_report()
    assert rows and all(r["ok"] for r in rows)


def test_persistence_roundtrip(tmp_path):
    path = str(tmp_path / "psi.jsonl")
    pc = PsiCache(path)
    v = pc.integral(2, (3, 2))
    pc.persist()
    again = PsiCache(path)
    assert again.items()[(2, (3, 2))] == v
    assert again.integral(2, (3, 2)) == v


def test_dilaton_reduction_value():
    # <tau_1^n>_1 = (n-1)!/24
    pc = PsiCache()
    assert pc.integral(1, (1, 1, 1, 1)) == QQ(6, 24)
