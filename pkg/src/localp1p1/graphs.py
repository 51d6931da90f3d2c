"""Stable graphs: dual graphs of stable curves with labeled legs.

A graph is stored canonically as (genera, loops, edges, legs):
  genera: tuple of vertex genera,
  loops:  tuple, loops[v] = number of self-loops at v,
  edges:  tuple of multiplicities indexed by vertex pairs i < j (flattened),
  legs:   tuple, legs[i] = vertex carrying labeled leg i.

The automorphism order counts half-edge symmetries with legs fixed:
|Aut| = (#decoration-preserving vertex permutations) * prod 2^loops loops!
        * prod multiplicity!.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .rational import QQ


@dataclass(frozen=True)
class StableGraph:
    genera: tuple
    loops: tuple
    edges: tuple  # upper-triangle multiplicities, row-major over i < j
    legs: tuple

    @property
    def n_vertices(self):
        return len(self.genera)

    def edge_mult(self, i, j):
        if i == j:
            return self.loops[i]
        if i > j:
            i, j = j, i
        v = self.n_vertices
        idx = i * v - i * (i + 1) // 2 + (j - i - 1)
        return self.edges[idx]

    @property
    def n_edges(self):
        return sum(self.loops) + sum(self.edges)

    @property
    def betti(self):
        return self.n_edges - self.n_vertices + 1

    @property
    def total_genus(self):
        return sum(self.genera) + self.betti

    def valence(self, v):
        """Half-edges plus legs at vertex v."""
        val = 2 * self.loops[v] + sum(1 for x in self.legs if x == v)
        for u in range(self.n_vertices):
            if u != v:
                val += self.edge_mult(u, v)
        return val

    def half_edge_slots(self, v):
        """Half-edge count at v from edges and loops only (no legs)."""
        val = 2 * self.loops[v]
        for u in range(self.n_vertices):
            if u != v:
                val += self.edge_mult(u, v)
        return val

    def is_stable(self):
        return all(2 * g - 2 + self.valence(v) > 0 for v, g in enumerate(self.genera))

    def is_connected(self):
        v = self.n_vertices
        seen = {0}
        stack = [0]
        while stack:
            cur = stack.pop()
            for other in range(v):
                if other not in seen and other != cur and self.edge_mult(cur, other):
                    seen.add(other)
                    stack.append(other)
        return len(seen) == v

    def edge_list(self):
        """Unordered edge occurrences as (i, j) with i <= j, loops as (v, v)."""
        out = []
        for v in range(self.n_vertices):
            out.extend([(v, v)] * self.loops[v])
        for i in range(self.n_vertices):
            for j in range(i + 1, self.n_vertices):
                out.extend([(i, j)] * self.edge_mult(i, j))
        return out

    def aut_order(self) -> int:
        v = self.n_vertices
        good = 0
        for perm in permutations(range(v)):
            if any(self.genera[perm[i]] != self.genera[i] for i in range(v)):
                continue
            if any(self.loops[perm[i]] != self.loops[i] for i in range(v)):
                continue
            if any(
                self.edge_mult(perm[i], perm[j]) != self.edge_mult(i, j)
                for i in range(v)
                for j in range(i + 1, v)
            ):
                continue
            if any(perm[self.legs[i]] != self.legs[i] for i in range(len(self.legs))):
                continue
            good += 1
        half_edges = 1
        for l in self.loops:
            half_edges *= 2**l * _fact(l)
        for m in self.edges:
            half_edges *= _fact(m)
        return good * half_edges

    def to_json_obj(self):
        return {
            "genera": list(self.genera),
            "loops": list(self.loops),
            "edges": list(self.edges),
            "legs": list(self.legs),
            "aut": self.aut_order(),
        }


def _fact(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def _canonical(genera, loops, edges, legs, v):
    best = None
    for perm in permutations(range(v)):
        # perm maps old -> new slots; rebuild all decorations in new labels
        inv = [0] * v
        for old, new in enumerate(perm):
            inv[new] = old
        pg = tuple(genera[inv[i]] for i in range(v))
        pl = tuple(loops[inv[i]] for i in range(v))
        pe = []
        for i in range(v):
            for j in range(i + 1, v):
                a, b = inv[i], inv[j]
                if a > b:
                    a, b = b, a
                idx = a * v - a * (a + 1) // 2 + (b - a - 1)
                pe.append(edges[idx])
        plegs = tuple(perm[x] for x in legs)
        cand = (pg, pl, tuple(pe), plegs)
        if best is None or cand < best:
            best = cand
    return best


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def stable_graphs(g: int, n: int) -> list:
    """All isomorphism classes of connected stable graphs of genus g with n
    labeled legs, canonical representatives sorted."""
    if 2 * g - 2 + n <= 0:
        raise ValueError("unstable (g, n)")
    found = {}
    max_v = 2 * g - 2 + n if 2 * g - 2 + n > 0 else 1
    for v in range(1, max_v + 1):
        npairs = v * (v - 1) // 2
        for gsum in range(g + 1):
          for genera in _compositions(gsum, v):
            b1_budget = g - gsum
            n_edges = b1_budget + v - 1
            if n_edges < v - 1:
                continue
            for total_loops in range(n_edges + 1):
                rest = n_edges - total_loops
                if npairs:
                    edge_pool = list(_compositions(rest, npairs))
                else:
                    edge_pool = [()] if rest == 0 else []
                for loops in _compositions(total_loops, v):
                    for edges in edge_pool:
                        for legs in _leg_assignments(n, v):
                            cand = StableGraph(genera, loops, edges, legs)
                            if not cand.is_connected() or not cand.is_stable():
                                continue
                            key = _canonical(genera, loops, edges, legs, v)
                            if key not in found:
                                found[key] = StableGraph(*key)
    return [found[k] for k in sorted(found)]


def _leg_assignments(n, v):
    if n == 0:
        yield ()
        return
    total = v**n
    for code in range(total):
        out = []
        c = code
        for _ in range(n):
            out.append(c % v)
            c //= v
        yield tuple(out)


def aut_sum_bruteforce(g: int, n: int):
    """sum over classes of 1/|Aut| via labeled structures: every labeled
    (genera, loops, edges, legs) tuple contributes 1/(v! prod 2^l l! prod m!).

    Independent of the canonical-form machinery; used to cross-check it.
    """
    total = QQ(0)
    max_v = max(1, 2 * g - 2 + n)
    for v in range(1, max_v + 1):
        npairs = v * (v - 1) // 2
        for gsum in range(g + 1):
          for genera in _compositions(gsum, v):
            b1 = g - gsum
            n_edges = b1 + v - 1
            for total_loops in range(n_edges + 1):
                rest = n_edges - total_loops
                if npairs:
                    edge_pool = list(_compositions(rest, npairs))
                else:
                    edge_pool = [()] if rest == 0 else []
                for loops in _compositions(total_loops, v):
                    for edges in edge_pool:
                        for legs in _leg_assignments(n, v):
                            cand = StableGraph(genera, loops, edges, legs)
                            if not cand.is_connected() or not cand.is_stable():
                                continue
                            w = QQ(1, _fact(v))
                            for l in loops:
                                w /= 2**l * _fact(l)
                            for m in edges:
                                w /= _fact(m)
                            total += w
    return total
