"""Exact symbolic calculus for the canonical-coordinate function field.

GRat: rational functions whose numerators are polynomials in the eight
sector eigenvalue symbols M_s, L_s plus the weights lam, mu, and whose
denominators are monomials in the four discriminant combinations
N_s = lam^2 L_s + mu^2 M_s.  This field is closed under the Euler
derivatives q_i d/dq_i because the eigenvalue system gives

    q1 dM = (M^2-lam^2)(M L + mu^2) / (2N)
    q1 dL = (M^2-lam^2)(L^2-mu^2)  / (2N)
    q2 dM = q1 dL
    q2 dL = (L^2-mu^2)(M L + lam^2) / (2N)

per sector.  PolyPX: polynomials in the five transcendental generators
(p1, p2, p3, p4, x) with GRat coefficients; the formal d/dX of the finite
generation theorem is the partial derivative in the x slot.

Monomial keys: (a00, b00, a01, b01, a10, b10, a11, b11, c, d) for
M_s^a L_s^b lam^c mu^d; denominators: (m00, m01, m10, m11).
"""

from __future__ import annotations

from .cohomology import SECTORS
from .rational import Q1, QQ, qq
from .series import BiSeries, bis_pow

NVARS = 10
ZKEY = (0,) * NVARS
ZDEN = (0, 0, 0, 0)
SLOT = {s: i for i, s in enumerate(SECTORS)}


def _kadd(k1, k2):
    return tuple(x + y for x, y in zip(k1, k2))


class GRat:
    __slots__ = ("num", "den")

    def __init__(self, num=None, den=ZDEN):
        self.num = num if num is not None else {}
        self.den = den

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, v):
        v = qq(v)
        return cls({ZKEY: v} if v else {})

    @classmethod
    def var(cls, name, slot=0):
        key = [0] * NVARS
        if name == "M":
            key[2 * slot] = 1
        elif name == "L":
            key[2 * slot + 1] = 1
        elif name == "lam":
            key[8] = 1
        elif name == "mu":
            key[9] = 1
        else:
            raise ValueError(name)
        return cls({tuple(key): Q1})

    @classmethod
    def n_poly(cls, slot=0):
        lam2 = [0] * NVARS
        lam2[8] = 2
        lam2[2 * slot + 1] = 1
        mu2 = [0] * NVARS
        mu2[9] = 2
        mu2[2 * slot] = 1
        return cls({tuple(lam2): Q1, tuple(mu2): Q1})

    def is_zero(self):
        return not self.num

    # -- ring ops ----------------------------------------------------------

    def _lift(self, den):
        """Re-express with the larger denominator tuple den."""
        if den == self.den:
            return self.num
        num = self.num
        for slot in range(4):
            diff = den[slot] - self.den[slot]
            if diff < 0:
                raise ValueError("cannot lower a denominator")
            npoly = GRat.n_poly(slot)
            for _ in range(diff):
                num = _dict_mul(num, npoly.num)
        return num

    def __add__(self, other):
        if not isinstance(other, GRat):
            other = GRat.const(other)
        den = tuple(max(a, b) for a, b in zip(self.den, other.den))
        num = dict(self._lift(den))
        for k, v in other._lift(den).items():
            w = num.get(k)
            if w is None:
                num[k] = v
            else:
                w = w + v
                if w:
                    num[k] = w
                else:
                    del num[k]
        return GRat(num, den)

    __radd__ = __add__

    def __neg__(self):
        return GRat({k: -v for k, v in self.num.items()}, self.den)

    def __sub__(self, other):
        if not isinstance(other, GRat):
            other = GRat.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GRat):
            v = qq(other)
            if not v:
                return GRat()
            return GRat({k: c * v for k, c in self.num.items()}, self.den)
        return GRat(
            _dict_mul(self.num, other.num),
            tuple(a + b for a, b in zip(self.den, other.den)),
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, GRat):
            other = GRat.const(other)
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("GRat is mutable-ish; not hashable")

    # -- derivatives --------------------------------------------------------

    def q_deriv(self, axis: int) -> "GRat":
        """Euler derivative q_axis d/dq_axis via the eigenvalue system."""
        out = GRat()
        for slot in range(4):
            dm = _DM_CACHE.setdefault((axis, slot, "M"), _dvar(axis, slot, "M"))
            dl = _DM_CACHE.setdefault((axis, slot, "L"), _dvar(axis, slot, "L"))
            dn = _DM_CACHE.setdefault((axis, slot, "N"), _dvar(axis, slot, "N"))
            im, il = 2 * slot, 2 * slot + 1
            # numerator part
            by_m = {}
            by_l = {}
            for k, v in self.num.items():
                if k[im]:
                    kk = list(k)
                    kk[im] -= 1
                    _dict_add_term(by_m, tuple(kk), v * k[im])
                if k[il]:
                    kk = list(k)
                    kk[il] -= 1
                    _dict_add_term(by_l, tuple(kk), v * k[il])
            if by_m:
                out = out + GRat(by_m, self.den) * dm
            if by_l:
                out = out + GRat(by_l, self.den) * dl
            # denominator part: d(N^-m) = -m dN / N^(m+1)
            if self.den[slot]:
                den2 = list(self.den)
                den2[slot] += 1
                out = out + GRat(dict(self.num), tuple(den2)) * dn * QQ(-self.den[slot])
        return out

    # -- normalization --------------------------------------------------------

    def reduce(self) -> "GRat":
        """Cancel denominator factors that divide the numerator exactly."""
        num, den = self.num, list(self.den)
        if not num:
            return GRat({}, ZDEN)
        for slot in range(4):
            while den[slot] > 0:
                q = _div_by_n(num, slot)
                if q is None:
                    break
                num = q
                den[slot] -= 1
        return GRat(num, tuple(den))

    # -- evaluation -------------------------------------------------------------

    def evaluate(self, coh, frames_by_slot, trunc) -> BiSeries:
        """Substitute eigenvalue series; frames_by_slot: slot -> CanonicalFrame."""
        out = BiSeries.zero(trunc)
        pows = _EvalPowers(coh, frames_by_slot, trunc)
        for k, v in self.num.items():
            out = out + v * pows.monomial(k)
        for slot, mexp in enumerate(self.den):
            if mexp:
                out = out * pows.ninv(slot, mexp)
        return out

    def support_size(self):
        return len(self.num)

    def relabel(self, mapping) -> "GRat":
        """Permute sector slots; mapping: old slot -> new slot."""
        perm = {}
        for k, v in self.num.items():
            kk = [0] * NVARS
            kk[8], kk[9] = k[8], k[9]
            for old, new in mapping.items():
                kk[2 * new] = k[2 * old]
                kk[2 * new + 1] = k[2 * old + 1]
            perm[tuple(kk)] = v
        den = [0, 0, 0, 0]
        for old, new in mapping.items():
            den[new] = self.den[old]
        return GRat(perm, tuple(den))


def _dict_mul(a, b):
    out = {}
    if len(a) > len(b):
        a, b = b, a
    for k1, v1 in a.items():
        for k2, v2 in b.items():
            k = _kadd(k1, k2)
            w = out.get(k)
            if w is None:
                out[k] = v1 * v2
            else:
                w = w + v1 * v2
                if w:
                    out[k] = w
                else:
                    del out[k]
    return out


def _dict_add_term(d, k, v):
    w = d.get(k)
    if w is None:
        d[k] = v
    else:
        w = w + v
        if w:
            d[k] = w
        else:
            del d[k]


_DM_CACHE: dict = {}


def _dvar(axis, slot, which):
    m = GRat.var("M", slot)
    l = GRat.var("L", slot)
    lam = GRat.var("lam")
    mu = GRat.var("mu")
    n = GRat.n_poly(slot)
    half = QQ(1, 2)
    a = m * m - lam * lam
    b = l * l - mu * mu
    den = [0, 0, 0, 0]
    den[slot] = 1
    den = tuple(den)
    if axis == 1:
        dm = a * (m * l + mu * mu) * half
        dl = a * b * half
    else:
        dm = a * b * half
        dl = b * (m * l + lam * lam) * half
    dm = GRat(dm.num, den)
    dl = GRat(dl.num, den)
    if which == "M":
        return dm
    if which == "L":
        return dl
    return lam * lam * dl + mu * mu * dm


def _div_by_n(num, slot):
    """Exact division of a numerator dict by N_slot, or None.

    Treat the dict as a polynomial in M_slot whose coefficients are
    polynomials in everything else; divide by mu^2 M + lam^2 L.
    """
    im, il = 2 * slot, 2 * slot + 1
    if not num:
        return {}
    by_m: dict[int, dict] = {}
    for k, v in num.items():
        by_m.setdefault(k[im], {})[k] = v
    maxdeg = max(by_m)
    quotient = {}
    rem = dict(num)
    # eliminate from the highest M-degree downward
    for deg in range(maxdeg, 0, -1):
        terms = [(k, v) for k, v in rem.items() if k[im] == deg]
        for k, v in terms:
            # quotient term: M-degree and mu-degree drop (N's M-part is mu^2 M)
            kq = list(k)
            kq[im] -= 1
            kq[9] -= 2
            if kq[9] < 0:
                return None
            kq = tuple(kq)
            qc = v
            _dict_add_term(quotient, kq, qc)
            # subtract qc * (mu^2 M + lam^2 L) shifted by kq
            _dict_add_term(rem, k, -qc)
            kl = list(kq)
            kl[il] += 1
            kl[8] += 2
            _dict_add_term(rem, tuple(kl), -qc)
    if rem:
        return None
    return quotient


class _EvalPowers:
    def __init__(self, coh, frames_by_slot, trunc):
        self.coh = coh
        self.frames = frames_by_slot
        self.trunc = trunc
        self.cache: dict = {}

    def _series_pow(self, tag, base, k):
        key = (tag, k)
        if key not in self.cache:
            self.cache[key] = bis_pow(base, k)
        return self.cache[key]

    def monomial(self, k):
        out = None
        for slot in range(4):
            a, b = k[2 * slot], k[2 * slot + 1]
            if a:
                p = self._series_pow(("M", slot), self.frames[slot].m, a)
                out = p if out is None else out * p
            if b:
                p = self._series_pow(("L", slot), self.frames[slot].l, b)
                out = p if out is None else out * p
        scalar = self.coh.lam ** k[8] * self.coh.mu ** k[9]
        if out is None:
            return BiSeries.const(scalar, self.trunc)
        return scalar * out

    def ninv(self, slot, m):
        return self._series_pow(("Ninv", slot), self.frames[slot].inv_n, m)


# -- polynomials in the transcendental generators --------------------------------

PX_ZERO = (0, 0, 0, 0, 0)


class PolyPX:
    """Polynomial in (p1, p2, p3, p4, x) with GRat coefficients."""

    __slots__ = ("cells",)

    def __init__(self, cells=None):
        self.cells = cells if cells is not None else {}

    @classmethod
    def from_grat(cls, g: GRat, cell=PX_ZERO):
        return cls({cell: g} if not g.is_zero() else {})

    @classmethod
    def const(cls, v):
        return cls.from_grat(GRat.const(v))

    def is_zero(self):
        return all(g.is_zero() for g in self.cells.values())

    def __add__(self, other):
        if not isinstance(other, PolyPX):
            other = PolyPX.const(other)
        cells = dict(self.cells)
        for k, g in other.cells.items():
            if k in cells:
                s = cells[k] + g
                if s.is_zero():
                    del cells[k]
                else:
                    cells[k] = s
            else:
                cells[k] = g
        return PolyPX(cells)

    __radd__ = __add__

    def __neg__(self):
        return PolyPX({k: -g for k, g in self.cells.items()})

    def __sub__(self, other):
        if not isinstance(other, PolyPX):
            other = PolyPX.const(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, PolyPX):
            out = PolyPX()
            for k1, g1 in self.cells.items():
                for k2, g2 in other.cells.items():
                    k = tuple(a + b for a, b in zip(k1, k2))
                    prod = g1 * g2
                    cur = out.cells.get(k)
                    if cur is None:
                        out.cells[k] = prod
                    else:
                        s = cur + prod
                        if s.is_zero():
                            del out.cells[k]
                        else:
                            out.cells[k] = s
            return out
        out = {}
        for k, g in self.cells.items():
            prod = g * other
            if isinstance(prod, GRat):
                if not prod.is_zero():
                    out[k] = prod
            elif prod:
                out[k] = prod
        return PolyPX(out)

    __rmul__ = __mul__

    def shift_cell(self, dp1=0, dp2=0, dp3=0, dp4=0, dx=0):
        return PolyPX(
            {
                (k[0] + dp1, k[1] + dp2, k[2] + dp3, k[3] + dp4, k[4] + dx): g
                for k, g in self.cells.items()
            }
        )

    def ddx(self) -> "PolyPX":
        out = {}
        for k, g in self.cells.items():
            if k[4]:
                kk = (k[0], k[1], k[2], k[3], k[4] - 1)
                out[kk] = g * QQ(k[4]) if kk not in out else out[kk] + g * QQ(k[4])
        return PolyPX(out)

    def x_degree(self):
        return max((k[4] for k in self.cells if not self.cells[k].is_zero()), default=0)

    def support_size(self):
        return sum(g.support_size() for g in self.cells.values())

    def reduce(self):
        return PolyPX({k: g.reduce() for k, g in self.cells.items() if not g.is_zero()})

    def evaluate(self, coh, frames_by_slot, gens, trunc) -> BiSeries:
        from .series import BiSeries

        pows = {}

        def genpow(name, base, k):
            key = (name, k)
            if key not in pows:
                pows[key] = bis_pow(base, k)
            return pows[key]

        out = BiSeries.zero(trunc)
        for (e1, e2, e3, e4, ex), g in self.cells.items():
            val = g.evaluate(coh, frames_by_slot, trunc)
            if e1:
                val = val * genpow("p1", gens.p1, e1)
            if e2:
                val = val * genpow("p2", gens.p2, e2)
            if e3:
                val = val * genpow("p3", gens.p3, e3)
            if e4:
                val = val * genpow("p4", gens.p4, e4)
            if ex:
                val = val * genpow("x", gens.x, ex)
            out = out + val
        return out
