"""Stationary-phase expansion of the mirror superpotential.

The restricted potential on the constraint torus, in logarithmic coordinates
centered at a critical point, has an exactly computable derivative tensor:
writing x0 = M - lam, x1 = M + lam, x2 = L - mu, x3 = L + mu,
x4 = -2(M + L), the order-(a,b,c) log-derivative at the critical point is

    [b=c=0] x0 + [a=c=0] x1 + [a=b=0] x2 + (-1)^c x3 + [c=0] (1/2)^(a+b) x4

plus weight terms in the gradient only (which vanish at the critical point).
The Hessian determinant is -2N with N = lam^2 L + mu^2 M, so the formal
Gaussian measure is well defined for generic weights and every expansion
coefficient is a rational function with N-power denominators.

The unit R-matrix column is the normalized expectation of the exponential of
the cubic-and-higher tail, evaluated by recursive Wick pairing; powers of
sqrt(-z) are tracked through the formal variable t with t^2 = -z.  Odd t
layers vanish by parity (asserted).
"""

from __future__ import annotations

from math import factorial

from .rational import QQ
from .symbolic import GRat, _dict_add_term

ZKEY3 = (0, 0, 0)


def _xvals():
    m = GRat.var("M")
    l = GRat.var("L")
    lam = GRat.var("lam")
    mu = GRat.var("mu")
    return (
        m - lam,  # x0
        m + lam,  # x1
        l - mu,  # x2
        l + mu,  # x3
        QQ(-2) * (m + l),  # x4
    )


def derivative_tensor(a: int, b: int, c: int) -> GRat:
    """Log-derivative of the restricted potential at the critical point."""
    x0, x1, x2, x3, x4 = _xvals()
    out = GRat.const(0)
    if b == 0 and c == 0:
        out = out + x0
    if a == 0 and c == 0:
        out = out + x1
    if a == 0 and b == 0:
        out = out + x2
    out = out + (x3 if c % 2 == 0 else -x3)
    if c == 0:
        out = out + QQ(1, 2 ** (a + b)) * x4
    return out


def hessian() -> list:
    h = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(i, 3):
            abc = [0, 0, 0]
            abc[i] += 1
            abc[j] += 1
            h[i][j] = h[j][i] = derivative_tensor(*abc)
    return h


def hessian_det(h=None) -> GRat:
    h = h or hessian()
    return (
        h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1])
        - h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0])
        + h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0])
    )


def covariance() -> list:
    """Inverse Hessian: adjugate over the exact determinant -2N."""
    h = hessian()
    det = hessian_det(h)
    if not det == QQ(-2) * GRat.n_poly(0):
        raise AssertionError("Hessian determinant is not -2N; critical point wrong")
    inv_den = GRat({(0,) * 10: QQ(-1, 2)}, (1, 0, 0, 0))  # 1/(-2N)
    cof = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            rows = [r for r in range(3) if r != i]
            cols = [c for c in range(3) if c != j]
            minor = (
                h[rows[0]][cols[0]] * h[rows[1]][cols[1]]
                - h[rows[0]][cols[1]] * h[rows[1]][cols[0]]
            )
            cof[j][i] = minor if (i + j) % 2 == 0 else -minor
    return [[(cof[i][j] * inv_den).reduce() for j in range(3)] for i in range(3)]


class GaussianMoments:
    """E[xi0^a xi1^b xi2^c] under the centered Gaussian with the covariance
    above, by the single-variable Wick peel."""

    def __init__(self, cov):
        self.cov = cov
        self.memo = {ZKEY3: GRat.const(1)}

    def moment(self, a: int, b: int, c: int) -> GRat:
        key = (a, b, c)
        got = self.memo.get(key)
        if got is not None:
            return got
        if (a + b + c) % 2:
            val = GRat.const(0)
        elif a:
            val = GRat.const(0)
            if a >= 2:
                val = val + QQ(a - 1) * self.cov[0][0] * self.moment(a - 2, b, c)
            if b:
                val = val + QQ(b) * self.cov[0][1] * self.moment(a - 1, b - 1, c)
            if c:
                val = val + QQ(c) * self.cov[0][2] * self.moment(a - 1, b, c - 1)
        elif b:
            val = GRat.const(0)
            if b >= 2:
                val = val + QQ(b - 1) * self.cov[1][1] * self.moment(0, b - 2, c)
            if c:
                val = val + QQ(c) * self.cov[1][2] * self.moment(0, b - 1, c - 1)
        else:
            val = QQ(c - 1) * self.cov[2][2] * self.moment(0, 0, c - 2)
        val = val.reduce()
        self.memo[key] = val
        return val


def _cells_mul(u, g, tmax):
    out = {}
    for (t1, a1, b1, c1), v1 in u.items():
        for (t2, a2, b2, c2), v2 in g.items():
            t = t1 + t2
            if t > tmax:
                continue
            key = (t, a1 + a2, b1 + b2, c1 + c2)
            prod = v1 * v2
            cur = out.get(key)
            if cur is None:
                out[key] = prod
            else:
                s = cur + prod
                if s.is_zero():
                    del out[key]
                else:
                    out[key] = s
    return out


def unit_column(order: int) -> list:
    """R-matrix unit-column coefficients (R_k)_1, k = 0..order, as exact
    rational functions of (M, L, lam, mu) over powers of N."""
    tmax = 2 * order
    interaction = {}
    for m in range(3, tmax + 2 + 1):
        tpow = m - 2
        if tpow > tmax:
            break
        for a in range(m + 1):
            for b in range(m + 1 - a):
                c = m - a - b
                w = derivative_tensor(a, b, c)
                if w.is_zero():
                    continue
                coeff = QQ(-1, factorial(a) * factorial(b) * factorial(c))
                interaction[(tpow, a, b, c)] = coeff * w
    # exp(U) by Horner: 1 + U(1 + U/2 (1 + U/3 (...)))
    expu = {(0, 0, 0, 0): GRat.const(1)}
    for depth in range(tmax, 0, -1):
        scaled = {k: v * QQ(1, depth) for k, v in _cells_mul(interaction, expu, tmax).items()}
        expu = dict(scaled)
        _dict_add_term_grat(expu, (0, 0, 0, 0), GRat.const(1))
    moments = GaussianMoments(covariance())
    totals = {}
    for (tpow, a, b, c), val in expu.items():
        if (a + b + c) % 2 != tpow % 2:
            raise AssertionError("parity violation in stationary-phase cells")
        if (a + b + c) % 2:
            continue
        mom = moments.moment(a, b, c)
        if mom.is_zero():
            continue
        term = val * mom
        cur = totals.get(tpow)
        totals[tpow] = term if cur is None else cur + term
    out = []
    for k in range(order + 1):
        odd = totals.get(2 * k - 1)
        if odd is not None and not odd.is_zero():
            raise AssertionError("odd sqrt(-z) layer %d did not cancel" % (2 * k - 1))
        layer = totals.get(2 * k, GRat.const(0))
        if k % 2:
            layer = -layer
        out.append(layer.reduce())
    if not out[0] == GRat.const(1):
        raise AssertionError("stationary phase normalization: (R_0)_1 != 1")
    return out


def _dict_add_term_grat(cells, key, val):
    cur = cells.get(key)
    if cur is None:
        cells[key] = val
    else:
        s = cur + val
        if s.is_zero():
            del cells[key]
        else:
            cells[key] = s


def first_order_closed_form() -> GRat:
    """The known closed expression for (R_1)_1 (five-diagram total)."""
    m = GRat.var("M")
    l = GRat.var("L")
    lam = GRat.var("lam")
    mu = GRat.var("mu")
    lam2, mu2 = lam * lam, mu * mu
    n = GRat.n_poly(0)
    third = QQ(1, 3)
    inner = (
        third * (lam2 * lam2 * l)
        + third * (m * mu2 * mu2)
        + l * l * m * lam2
        + l * m * m * mu2
        - 2 * (l * lam2 * mu2)
        - 2 * (m * lam2 * mu2)
    )
    diff = lam2 - mu2
    numer = QQ(9) * n * inner - QQ(5) * (lam2 * mu2 * diff * diff)
    pref = GRat({(0,) * 10: QQ(1, 48)}, (3, 0, 0, 0))
    return (pref * numer).reduce()
