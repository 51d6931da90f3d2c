"""Exact linear fitting with rank certificates.

The membership oracle for the graded rings used by the structure theorems:
a target q-series is matched against a finite monomial basis evaluated as
q-series, over one or several weight specializations jointly (the unknown
coefficients are plain rationals, so independent specializations stack as
extra equations).  Gaussian elimination is exact; the outcome distinguishes

  fitted          unique solution, equations exceed unknowns by the margin
  inconsistent    no solution exists (certified failure)
  underdetermined rank below unknowns: the data cannot decide (deepen the
                  truncation or add specializations before concluding)
"""

from __future__ import annotations

from dataclasses import dataclass

from .rational import Q0, Q1, QQ, qq
from .series import BiSeries


@dataclass
class FitResult:
    status: str
    coefficients: dict | None
    unknowns: int
    equations: int
    rank: int
    margin: object  # equations / unknowns as an exact rational
    detail: str | None = None

    @property
    def ok(self):
        return self.status == "fitted"

    def to_json_obj(self):
        from .rational import qq_str

        return {
            "status": self.status,
            "unknowns": self.unknowns,
            "equations": self.equations,
            "rank": self.rank,
            "margin": qq_str(self.margin),
            "coefficients": None
            if self.coefficients is None
            else {str(k): qq_str(v) for k, v in sorted(self.coefficients.items())},
            "detail": self.detail,
        }


def solve_exact(columns: list, rhs: list, keys, min_margin=QQ(5, 4)) -> FitResult:
    """Solve sum_j c_j columns[j] = rhs exactly.

    columns: list of equal-length coefficient lists (one per unknown);
    keys: identifiers for the unknowns, used in the coefficient dict.
    """
    n_unknowns = len(columns)
    n_eq = len(rhs)
    # build augmented rows, dropping all-zero equations
    rows = []
    for i in range(n_eq):
        row = [col[i] for col in columns]
        row.append(rhs[i])
        if any(row):
            rows.append(row)
    margin = QQ(n_eq, n_unknowns) if n_unknowns else QQ(0)
    pivots = []  # (row_index, col_index)
    r = 0
    for c in range(n_unknowns):
        pr = None
        best = None
        for i in range(r, len(rows)):
            v = rows[i][c]
            if v:
                size = abs(v.numerator) + v.denominator
                if best is None or size < best:
                    best = size
                    pr = i
                    if size <= 2:
                        break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        inv = Q1 / pv
        rows[r] = [x * inv if x else x for x in rows[r]]
        rr = rows[r]
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if f:
                ri = rows[i]
                rows[i] = [x - f * y if y else x for x, y in zip(ri, rr)]
        pivots.append((r, c))
        r += 1
    rank = len(pivots)
    for i in range(rank, len(rows)):
        row = rows[i]
        if row[n_unknowns] and not any(row[c] for c in range(n_unknowns)):
            return FitResult(
                "inconsistent", None, n_unknowns, n_eq, rank, margin,
                detail="contradictory equation after elimination",
            )
    if rank < n_unknowns:
        free = sorted(set(range(n_unknowns)) - {c for _, c in pivots})
        return FitResult(
            "underdetermined", None, n_unknowns, n_eq, rank, margin,
            detail="free columns %s" % free[:8],
        )
    sol = [Q0] * n_unknowns
    for rr_i, c in reversed(pivots):
        row = rows[rr_i]
        acc = row[n_unknowns]
        for _, c2 in pivots:
            if c2 > c and row[c2]:
                acc = acc - row[c2] * sol[c2]
        sol[c] = acc
    if margin < min_margin:
        return FitResult(
            "underdetermined", None, n_unknowns, n_eq, rank, margin,
            detail="margin %s below required %s" % (margin, min_margin),
        )
    coeffs = {k: v for k, v in zip(keys, sol) if v}
    return FitResult("fitted", coeffs, n_unknowns, n_eq, rank, margin)


# -- graded-ring monomial bases ---------------------------------------------------


#: generic weight pairs (nonzero, lam^2 != mu^2, pairwise independent squares)
SPEC_POOL = (
    (3, 5),
    (2, 7),
    (5, 2),
    (4, 7),
    (3, 8),
    (7, 3),
    (5, 11),
    (6, 7),
    (2, 9),
    (8, 3),
    (7, 10),
    (4, 9),
    (9, 2),
    (10, 7),
    (5, 4),
    (11, 6),
    (3, 10),
    (12, 5),
    (7, 4),
    (9, 8),
)


def specs_needed(m: int, n: int, trunc: int, min_margin=QQ(5, 4)):
    """How many weight specializations the (m, n) fit needs.

    Pure-weight monomials are proportional at a fixed specialization, so at
    least n/2 + 2 specializations; and enough equations for the margin.
    """
    unknowns = len(g_monomials(m, n))
    per_spec = (trunc + 1) * (trunc + 2) // 2
    need_eq = -(-int(unknowns * 5 // 4 + 1) // per_spec)
    return max(3, n // 2 + 2, need_eq)


def g_monomials(m: int, n: int, even_weights: bool = True):
    """Exponent tuples (a, b, c, d) for M^a L^b lam^c mu^d / N^m, a+b+c+d = n."""
    out = []
    for a in range(n + 1):
        for b in range(n + 1 - a):
            rest = n - a - b
            step = 2 if even_weights else 1
            for c in range(0, rest + 1, step):
                d = rest - c
                if even_weights and d % 2:
                    continue
                out.append((a, b, c, d))
    return out


class FramePowers:
    """Cached powers of one sector's series at one specialization."""

    def __init__(self, coh, frame):
        self.coh = coh
        self.frame = frame
        self._m = {0: BiSeries.one(frame.m.trunc)}
        self._l = {0: BiSeries.one(frame.m.trunc)}
        self._ninv = {0: BiSeries.one(frame.m.trunc)}

    def _pow(self, cache, base, k):
        if k not in cache:
            i = max(cache)
            v = cache[i]
            while i < k:
                v = v * base
                i += 1
                cache[i] = v
        return cache[k]

    def monomial(self, a, b, c, d, m):
        val = self._pow(self._m, self.frame.m, a) * self._pow(self._l, self.frame.l, b)
        scalar = self.coh.lam**c * self.coh.mu**d
        if m:
            val = val * self._pow(self._ninv, self.frame.inv_n, m)
        return scalar * val


def fit_in_g(targets, m: int, n: int, min_margin=QQ(5, 4), even_weights=True) -> FitResult:
    """Membership fit in the single-sector graded piece (m, n).

    targets: list of (coh, frame, series) triples, one per specialization;
    the same rational coefficients must reproduce every series.
    """
    basis = g_monomials(m, n, even_weights)
    columns = [[] for _ in basis]
    rhs = []
    for coh, frame, series in targets:
        fp = FramePowers(coh, frame)
        evaluated = [fp.monomial(a, b, c, d, m) for (a, b, c, d) in basis]
        for d1, d2 in _exponents(series.trunc):
            rhs.append(series.get(d1, d2))
            for j, ev in enumerate(evaluated):
                columns[j].append(ev.get(d1, d2))
    return solve_exact(columns, rhs, basis, min_margin)


def fit_series_combination(targets_columns, targets_rhs, keys, min_margin=QQ(5, 4)):
    """Fit rhs-series as a fixed rational combination of column-series.

    targets_columns: list over specializations of lists of BiSeries (basis
    evaluations); targets_rhs: list of BiSeries.
    """
    ncols = len(targets_columns[0])
    columns = [[] for _ in range(ncols)]
    rhs = []
    for cols, target in zip(targets_columns, targets_rhs):
        for d1, d2 in _exponents(target.trunc):
            rhs.append(target.get(d1, d2))
            for j in range(ncols):
                columns[j].append(cols[j].get(d1, d2))
    return solve_exact(columns, rhs, keys, min_margin)


def _exponents(trunc):
    for t in range(trunc + 1):
        for d2 in range(t + 1):
            yield (t - d2, d2)


def evaluate_g_polynomial(coeffs: dict, m: int, coh, frame) -> BiSeries:
    """Evaluate a fitted (m, n) polynomial back to a series."""
    fp = FramePowers(coh, frame)
    out = BiSeries.zero(frame.m.trunc)
    for (a, b, c, d), coeff in coeffs.items():
        out = out + coeff * fp.monomial(a, b, c, d, m)
    return out
