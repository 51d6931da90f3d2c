"""Graph-sum assembly of higher-genus potentials and twisted correlators.

Every stable graph contributes a product of

  vertex:   Delta_s^((2 g_v - 2 + n_v)/2) from the rank-one trivial theory,
  edges:    the divided two-point coefficients of the R-matrix bivector,
  tails:    psi^(l+1) insertions with coefficient (-1)^(l+1) (R_l)_1,
  legs:     R(psi)-inverse twisted flat insertions (correlators only),

glued by psi-class integrals on the vertex moduli, divided by |Aut|.
Each edge/tail/leg slot carries one inverse half-power of the discriminant
relative to the raw coefficients; the assembly keeps the half-exponent audit
per sector and materializes only even totals (an odd total is a hard error).

The same enumeration drives two coefficient backends: exact q-series and the
symbolic generator-polynomial ring (the finite-generation witness).
"""

from __future__ import annotations

from itertools import product

from .cohomology import SECTORS
from .graphs import StableGraph, stable_graphs
from .psi import PsiCache
from .rational import QQ
from .series import BiSeries, HalfPowerSeries, bis_pow
from .symbolic import GRat, PolyPX


def vertex_weight(frame, g_v: int, n_v: int):
    """Trivial-theory vertex: discriminant to the half-power 2g_v - 2 + n_v,
    kept as a deferred half power (the audit trail)."""
    return HalfPowerSeries(frame.delta, 2 * g_v - 2 + n_v)


def partitions(total: int):
    """Multiset partitions of total into parts >= 1 as (part, mult) tuples."""
    if total == 0:
        yield ()
        return
    for largest in range(total, 0, -1):
        for count in range(total // largest, 0, -1):
            rest = total - largest * count
            if rest == 0:
                yield ((largest, count),)
            else:
                for sub in partitions(rest):
                    if sub and sub[0][0] >= largest:
                        continue
                    yield ((largest, count),) + sub


def _fact(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


class NumericBackend:
    """Exact q-series coefficients at one weight specialization."""

    def __init__(self, coh, frames, columns, edge_box, order, psi: PsiCache, trunc):
        self.coh = coh
        self.frames = frames
        self.columns = columns
        self.order = order
        self.trunc = trunc
        self.psi = psi
        from .rmatrix import edge_table

        self.edges = {}
        for sa in SECTORS:
            for sb in SECTORS:
                self.edges[(sa, sb)] = edge_table(
                    coh, columns[sa], columns[sb], frames[sa].delta, edge_box
                )
        self.tail_max = order
        self._delta_pows = {}

    def zero(self):
        return BiSeries.zero(self.trunc)

    def one(self):
        return BiSeries.one(self.trunc)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def scale(self, a, c):
        return c * a

    def edge_factor(self, sa, sb, k1, k2):
        return self.edges[(sa, sb)].get((k1, k2))

    def tail_factor(self, s, l):
        if l > self.tail_max:
            return None
        r1 = self.columns[s].cols[0]
        return (QQ(-1) ** (l + 1)) * r1[l]

    def leg_factor(self, s, coords, k):
        if k > self.order:
            return None
        sc = self.columns[s]
        acc = None
        for w, cw in enumerate(coords):
            if cw:
                term = cw * sc.phi(w, k)
                acc = term if acc is None else acc + term
        return acc if acc is not None else self.zero()

    def delta_power(self, s, half_exponent):
        if half_exponent % 2:
            raise AssertionError("odd discriminant half-exponent %d" % half_exponent)
        key = (s, half_exponent)
        if key not in self._delta_pows:
            self._delta_pows[key] = HalfPowerSeries(
                self.frames[s].delta, half_exponent
            ).materialize()
        return self._delta_pows[key]

    def psi_integral(self, g, exps):
        return self.psi.integral(g, exps)


def _poly_relabel(poly: PolyPX, mapping) -> PolyPX:
    return PolyPX({k: g.relabel(mapping) for k, g in poly.cells.items()})


def symbolic_edge_tables(sym_cols, box: int):
    """Divided edge coefficients for every ordered sector pair.

    Computed once for a generic same-slot pair and a generic cross-slot pair
    (slots 0 and 1), then relabeled into all sector combinations.
    """

    def phi(slot, w, k):
        p = sym_cols[w][k]
        if slot:
            p = _poly_relabel(p, {0: slot})
        return p * QQ(-1) if k % 2 else p

    l2 = GRat.var("lam") * GRat.var("lam")
    m2 = GRat.var("mu") * GRat.var("mu")

    def build(slot_b, same):
        def pair(k1, k2):
            a = {w: phi(0, w, k1) for w in range(4)}
            b = {w: phi(slot_b, w, k2) for w in range(4)}
            term = a[0] * (b[1] * m2 + b[2] * l2)
            term = term + a[1] * (b[3] + b[0] * m2)
            term = term + a[2] * (b[3] + b[0] * l2)
            term = term + a[3] * (b[1] + b[2])
            return term * QQ(-2)

        # the diagonal Casimir head only enters n(0,0), which the division
        # recurrence never reads (it starts at n(*, 1))
        q = {}
        for a in range(box + 1):
            for b in range(box + 1 - a):
                val = -pair(a, b + 1)
                if a >= 1:
                    val = val - q[(a - 1, b + 1)]
                q[(a, b)] = val.reduce()
        return q

    diag = build(0, True)
    cross = build(1, False)
    tables = {}
    for ia, sa in enumerate(SECTORS):
        for ib, sb in enumerate(SECTORS):
            if sa == sb:
                tables[(sa, sb)] = {
                    kk: _poly_relabel(p, {0: ia}) for kk, p in diag.items()
                }
            else:
                tables[(sa, sb)] = {
                    kk: _poly_relabel(p, {0: ia, 1: ib}) for kk, p in cross.items()
                }
    return tables


class SymbolicBackend:
    """Generator-polynomial coefficients; sector s lives in variable slot
    SECTORS.index(s).  Only suitable for graphs with few edges; products of
    many cross-sector factors expand combinatorially."""

    def __init__(self, coh, r1_sym, sym_cols, edge_box, order, psi: PsiCache):
        self.coh = coh
        self.order = order
        self.psi = psi
        self.slot = {s: i for i, s in enumerate(SECTORS)}
        self._r1 = {
            self.slot[s]: [g.relabel({0: self.slot[s]}) for g in r1_sym]
            for s in SECTORS
        }
        self._phi_cols = sym_cols
        self.edges = symbolic_edge_tables(sym_cols, edge_box)

    def zero(self):
        return PolyPX()

    def one(self):
        return PolyPX.const(1)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def scale(self, a, c):
        return a * c

    def edge_factor(self, sa, sb, k1, k2):
        return self.edges[(sa, sb)].get((k1, k2))

    def tail_factor(self, s, l):
        if l > self.order:
            return None
        g = self._r1[self.slot[s]][l]
        return PolyPX.from_grat(g * (QQ(-1) ** (l + 1)))

    def leg_factor(self, s, coords, k):
        if k > self.order:
            return None
        acc = PolyPX()
        slot = self.slot[s]
        for w, cw in enumerate(coords):
            if cw:
                p = _poly_relabel(self._phi_cols[w][k], {0: slot})
                if k % 2:
                    p = p * QQ(-1)
                acc = acc + p * cw
        return acc

    def delta_power(self, s, half_exponent):
        if half_exponent % 2:
            raise AssertionError("odd discriminant half-exponent %d" % half_exponent)
        j = half_exponent // 2
        i = self.slot[s]
        if j >= 0:
            num = GRat.const((-8) ** j)
            npoly = GRat.n_poly(i)
            for _ in range(j):
                num = num * npoly
            return PolyPX.from_grat(num)
        den = [0, 0, 0, 0]
        den[i] = -j
        return PolyPX.from_grat(GRat({(0,) * 10: QQ(1, (-8) ** (-j))}, tuple(den)))

    def psi_integral(self, g, exps):
        return self.psi.integral(g, exps)


class CellSeries:
    """Polynomial in the five generators with exact q-series coefficients.

    The generator exponents live in the cell key (p1, p2, p3, p4, x); the
    coefficients are evaluated elements of the graded eigenvalue ring.  This
    keeps the polynomial shape of every graph contribution (so the formal
    d/dX is available) without expanding multi-sector symbolic products.
    """

    __slots__ = ("cells", "trunc")

    def __init__(self, trunc, cells=None):
        self.trunc = trunc
        self.cells = cells if cells is not None else {}

    @classmethod
    def from_series(cls, series, cell=(0, 0, 0, 0, 0)):
        return cls(series.trunc, {cell: series} if not series.is_zero() else {})

    def is_zero(self):
        return all(v.is_zero() for v in self.cells.values())

    def prune(self):
        return CellSeries(
            self.trunc, {k: v for k, v in self.cells.items() if not v.is_zero()}
        )

    def __add__(self, other):
        cells = dict(self.cells)
        for k, v in other.cells.items():
            cells[k] = cells[k] + v if k in cells else v
        return CellSeries(self.trunc, cells)

    def __sub__(self, other):
        return self + other.scale(QQ(-1))

    def __mul__(self, other):
        if isinstance(other, CellSeries):
            out = {}
            for k1, v1 in self.cells.items():
                if v1.is_zero():
                    continue
                for k2, v2 in other.cells.items():
                    if v2.is_zero():
                        continue
                    k = tuple(a + b for a, b in zip(k1, k2))
                    p = v1 * v2
                    out[k] = out[k] + p if k in out else p
            return CellSeries(self.trunc, out)
        return CellSeries(self.trunc, {k: other * v for k, v in self.cells.items()})

    __rmul__ = __mul__

    def scale(self, c):
        return CellSeries(self.trunc, {k: c * v for k, v in self.cells.items()})

    def ddx(self):
        out = {}
        for k, v in self.cells.items():
            if k[4]:
                kk = (k[0], k[1], k[2], k[3], k[4] - 1)
                term = QQ(k[4]) * v
                out[kk] = out[kk] + term if kk in out else term
        return CellSeries(self.trunc, out)

    def x_degree(self):
        return max((k[4] for k, v in self.cells.items() if not v.is_zero()), default=0)

    def evaluate(self, gens):
        out = BiSeries.zero(self.trunc)
        pows = {}

        def gp(name, base, k):
            key = (name, k)
            if key not in pows:
                pows[key] = bis_pow(base, k)
            return pows[key]

        for (e1, e2, e3, e4, ex), v in self.cells.items():
            val = v
            if e1:
                val = val * gp("p1", gens.p1, e1)
            if e2:
                val = val * gp("p2", gens.p2, e2)
            if e3:
                val = val * gp("p3", gens.p3, e3)
            if e4:
                val = val * gp("p4", gens.p4, e4)
            if ex:
                val = val * gp("x", gens.x, ex)
            out = out + val
        return out


class CellBackend:
    """Numeric coefficients resolved by generator cells.

    The symbolic columns (one sector slot, small) are evaluated per sector
    into cell-resolved series; the cross-sector edge products and divisions
    then run on plain series, so nothing large is ever expanded symbolically.
    Tails and vertex powers are X- and P-free and sit in the unit cell.
    """

    def __init__(self, numeric: "NumericBackend", sym_cols, gens, edge_box):
        self.nb = numeric
        self.trunc = numeric.trunc
        self.gens = gens
        coh = numeric.coh
        cols = {}
        for s in SECTORS:
            fr = numeric.frames[s]
            slots = {0: fr, 1: fr, 2: fr, 3: fr}
            cols[s] = {
                w: [
                    CellSeries(
                        self.trunc,
                        {
                            cell: g.evaluate(coh, slots, self.trunc)
                            for cell, g in p.cells.items()
                        },
                    )
                    for p in sym_cols[w]
                ]
                for w in range(4)
            }
        self._cell_cols = cols
        # verify the cell columns against the plain numeric ones
        for s in SECTORS:
            for w in range(4):
                for k, cs in enumerate(cols[s][w]):
                    if not (cs.evaluate(gens) - numeric.columns[s].cols[w][k]).is_zero():
                        raise AssertionError(
                            "cell-resolved column disagrees at %s w=%d k=%d" % (s, w, k)
                        )
        self._edges = {}
        l2, m2 = coh.lam2, coh.mu2
        for sa in SECTORS:
            for sb in SECTORS:
                self._edges[(sa, sb)] = self._edge_table(
                    cols[sa], cols[sb], l2, m2, edge_box
                )

    def _edge_table(self, ca, cb, l2, m2, box):
        def phi(cols, w, k):
            v = cols[w][k]
            return v.scale(QQ(-1)) if k % 2 else v

        def n_entry(i, j):
            a = {w: phi(ca, w, i) for w in range(4)}
            b = {w: phi(cb, w, j) for w in range(4)}
            term = a[0] * (b[1].scale(m2) + b[2].scale(l2))
            term = term + a[1] * (b[3] + b[0].scale(m2))
            term = term + a[2] * (b[3] + b[0].scale(l2))
            term = term + a[3] * (b[1] + b[2])
            return term.scale(QQ(-2))

        q = {}
        for a in range(box + 1):
            for b in range(box + 1 - a):
                val = n_entry(a, b + 1).scale(QQ(-1))
                if a >= 1:
                    val = val - q[(a - 1, b + 1)]
                q[(a, b)] = val
        return q

    def zero(self):
        return CellSeries(self.trunc)

    def one(self):
        return CellSeries.from_series(BiSeries.one(self.trunc))

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def scale(self, a, c):
        return a.scale(c)

    def edge_factor(self, sa, sb, k1, k2):
        return self._edges[(sa, sb)].get((k1, k2))

    def tail_factor(self, s, l):
        v = self.nb.tail_factor(s, l)
        return None if v is None else CellSeries.from_series(v)

    def leg_factor(self, s, coords, k):
        v = self.nb.leg_factor(s, coords, k)
        return None if v is None else CellSeries.from_series(v)

    def delta_power(self, s, half_exponent):
        return CellSeries.from_series(self.nb.delta_power(s, half_exponent))

    def psi_integral(self, g, exps):
        return self.nb.psi_integral(g, exps)


def contribution(graph: StableGraph, backend, insertions=(), sector_order=None):
    """One stable graph's total over sector assignments, divided by |Aut|.

    insertions: per labeled leg, a pair (flat coordinates, extra psi power).
    """
    nv = graph.n_vertices
    edge_occ = graph.edge_list()
    legs_at = [[] for _ in range(nv)]
    for i, v in enumerate(graph.legs):
        legs_at[v].append(insertions[i])
    base_dim = [
        3 * graph.genera[v] - 3 + graph.half_edge_slots(v) + len(legs_at[v])
        for v in range(nv)
    ]
    n_slots = [graph.half_edge_slots(v) + len(legs_at[v]) for v in range(nv)]
    total = backend.zero()
    assignments = list(product(range(4), repeat=nv))
    if sector_order == "reversed":
        assignments = list(reversed(assignments))
    for sig in assignments:
        sectors = [SECTORS[i] for i in sig]
        # audit: per-sector half exponents (vertex weights minus slot halves)
        half = {}
        for v in range(nv):
            s = sectors[v]
            half[s] = half.get(s, 0) + (2 * graph.genera[v] - 2 + n_slots[v])
        #  tails subtract one half each: handled inside vertex sums as exact
        #  integers; the tail-count-independent net is (2 g_v - 2) + n_slots - slots
        val = _edge_exponent_sum(
            graph, backend, sectors, edge_occ, legs_at, base_dim
        )
        if val is None:
            continue
        for v in range(nv):
            s = sectors[v]
            half[s] = half.get(s, 0) - n_slots[v]
        for s, h in half.items():
            if h % 2:
                raise AssertionError("odd half-exponent total at sector %s" % (s,))
            val = backend.mul(val, backend.delta_power(s, h))
        total = backend.add(total, val)
    return backend.scale(total, QQ(1, graph.aut_order()))


def _edge_exponent_sum(graph, backend, sectors, edge_occ, legs_at, base_dim):
    nv = graph.n_vertices
    budget = list(base_dim)
    if any(b < 0 for b in budget):
        return None
    total = None

    def rec(idx, acc, budgets):
        nonlocal total
        if idx == len(edge_occ):
            val = acc
            for v in range(nv):
                vs = _vertex_sum(
                    graph.genera[v],
                    sectors[v],
                    backend,
                    _edge_exps_at(v),
                    legs_at[v],
                    budgets[v],
                )
                if vs is None:
                    return
                val = backend.mul(val, vs)
            total = val if total is None else backend.add(total, val)
            return
        i, j = edge_occ[idx]
        for k1 in range(budgets[i] + 1):
            rem_j = budgets[j] - (k1 if i == j else 0)
            for k2 in range(rem_j + 1):
                ef = backend.edge_factor(sectors[i], sectors[j], k1, k2)
                if ef is None:
                    continue
                nb = list(budgets)
                if i == j:
                    nb[i] -= k1 + k2
                else:
                    nb[i] -= k1
                    nb[j] -= k2
                exp_stack.append((idx, i, k1, j, k2))
                rec(idx + 1, backend.mul(acc, ef), nb)
                exp_stack.pop()

    exp_stack = []

    def _edge_exps_at(v):
        out = []
        for (_, i, k1, j, k2) in exp_stack:
            if i == v:
                out.append(k1)
            if j == v:
                out.append(k2)
        return out

    rec(0, backend.one(), budget)
    return total


_VERTEX_MEMO_SENTINEL = object()


def _vertex_sum(g_v, sector, backend, edge_exps, legs, tail_budget):
    """Sum over leg psi-exponents and tail configurations at one vertex."""
    if tail_budget < 0:
        return None
    zero = backend.zero()
    total = None

    def legs_rec(li, exps, acc, remaining):
        nonlocal total
        if li == len(legs):
            ts = _tail_sum(g_v, sector, backend, exps, acc, remaining)
            if ts is not None:
                total = ts if total is None else backend.add(total, ts)
            return
        coords, extra = legs[li]
        for k in range(remaining - extra + 1):
            lf = backend.leg_factor(sector, coords, k)
            if lf is None:
                continue
            legs_rec(
                li + 1,
                exps + (k + extra,),
                backend.mul(acc, lf),
                remaining - k - extra,
            )

    legs_rec(0, tuple(edge_exps), backend.one(), tail_budget)
    return total


def _tail_sum(g_v, sector, backend, exps, acc, budget):
    """All tail multisets filling the remaining dimension budget."""
    total = None
    for part in partitions(budget):
        t_count = sum(c for _, c in part)
        n_v = len(exps) + t_count
        if 2 * g_v - 2 + n_v <= 0:
            continue
        tau = list(exps)
        factor = acc
        denom = 1
        ok = True
        for l, count in part:
            tf = backend.tail_factor(sector, l)
            if tf is None:
                ok = False
                break
            for _ in range(count):
                factor = backend.mul(factor, tf)
                tau.append(l + 1)
            denom *= _fact(count)
        if not ok:
            continue
        integral = backend.psi_integral(g_v, tuple(tau))
        if not integral:
            continue
        term = backend.scale(factor, integral / denom)
        total = term if total is None else backend.add(total, term)
    return total


def genus_potential(backend, g: int, sector_order=None):
    total = backend.zero()
    for graph in stable_graphs(g, 0):
        total = backend.add(
            total, contribution(graph, backend, (), sector_order=sector_order)
        )
    return total


def correlator(backend, g: int, insertions, sector_order=None):
    """Twisted-insertion correlator over stable graphs with labeled legs.

    insertions: list of (flat coordinate 4-tuple, extra psi power).
    """
    n = len(insertions)
    total = backend.zero()
    for graph in stable_graphs(g, n):
        total = backend.add(
            total, contribution(graph, backend, tuple(insertions), sector_order)
        )
    return total
