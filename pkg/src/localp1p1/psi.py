"""Intersection numbers of psi classes on the moduli of curves.

<tau_{a_1} ... tau_{a_n}>_g via the KdV/Virasoro recursion on the largest
index, with the string and dilaton equations applied first as reductions.
Base cases: <tau_0^3>_0 = 1 and <tau_1>_1 = 1/24.

The cache is append-only and can be persisted as JSON lines; every cached
value is revalidated against the string and dilaton equations on demand
(the consistency report the acceptance suite runs).
"""

from __future__ import annotations

import json
import os
import threading

from .rational import QQ, qq, qq_str


def _dfact(n: int) -> int:
    """(2k+1)!! style double factorial; n odd or -1."""
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


class PsiCache:
    def __init__(self, path: str | None = None):
        self._memo = {}
        self._lock = threading.Lock()
        self._path = path
        if path and os.path.exists(path):
            with open(path) as fh:
                for line in fh:
                    if not line.strip():
                        continue
                    obj = json.loads(line)
                    self._memo[(obj["g"], tuple(obj["exps"]))] = qq(obj["value"])

    def items(self):
        return dict(self._memo)

    def persist(self):
        if not self._path:
            return
        with self._lock, open(self._path, "w") as fh:
            for (g, exps), v in sorted(self._memo.items()):
                fh.write(
                    json.dumps(
                        {"g": g, "exps": list(exps), "value": qq_str(v)},
                        sort_keys=True,
                    )
                    + "\n"
                )

    # -- the recursion -----------------------------------------------------

    def integral(self, g: int, exps) -> object:
        """Exact <tau_{a_1} ... tau_{a_n}>_g; zero outside the dimension shell."""
        exps = tuple(sorted(exps, reverse=True))
        n = len(exps)
        if g < 0 or any(a < 0 for a in exps):
            return QQ(0)
        if n == 0 or 2 * g - 2 + n <= 0:
            return QQ(0)
        if sum(exps) != 3 * g - 3 + n:
            raise ValueError(
                "dimension mismatch: sum %s != 3g-3+n for g=%d n=%d"
                % (sum(exps), g, n)
            )
        return self._eval(g, exps)

    def _eval(self, g, exps):
        key = (g, exps)
        got = self._memo.get(key)
        if got is not None:
            return got
        val = self._compute(g, exps)
        with self._lock:
            self._memo[key] = val
        return val

    def _sub(self, g, exps):
        """Inner call: drop unstable/off-shell terms silently."""
        exps = tuple(sorted(exps, reverse=True))
        n = len(exps)
        if g < 0 or any(a < 0 for a in exps) or 2 * g - 2 + n <= 0:
            return QQ(0)
        if sum(exps) != 3 * g - 3 + n:
            return QQ(0)
        return self._eval(g, exps)

    def _compute(self, g, exps):
        n = len(exps)
        if g == 0 and exps == (0, 0, 0):
            return QQ(1)
        if g == 1 and exps == (1,):
            return QQ(1, 24)
        if exps[-1] == 0:  # string equation
            rest = exps[:-1]
            return sum(
                (self._sub(g, rest[:j] + (rest[j] - 1,) + rest[j + 1 :])
                 for j in range(len(rest))),
                QQ(0),
            )
        if exps[-1] == 1:  # dilaton equation
            rest = exps[:-1]
            return QQ(2 * g - 2 + n - 1) * self._sub(g, rest)
        # KdV recursion on the largest index
        k = exps[0]
        rest = exps[1:]
        dk = QQ(_dfact(2 * k + 1))
        total = QQ(0)
        for j, aj in enumerate(rest):
            others = rest[:j] + rest[j + 1 :]
            total += (
                QQ(_dfact(2 * (k + aj) - 1), _dfact(2 * aj - 1))
                * self._sub(g, others + (k + aj - 1,))
            )
        half = QQ(1, 2)
        for b1 in range(k - 1):
            b2 = k - 2 - b1
            w = QQ(_dfact(2 * b1 + 1) * _dfact(2 * b2 + 1))
            total += half * w * self._sub(g - 1, rest + (b1, b2))
            for g1 in range(g + 1):
                g2 = g - g1
                for split in range(1 << len(rest)):
                    left = tuple(rest[i] for i in range(len(rest)) if split >> i & 1)
                    right = tuple(rest[i] for i in range(len(rest)) if not split >> i & 1)
                    total += (
                        half
                        * w
                        * self._sub(g1, left + (b1,))
                        * self._sub(g2, right + (b2,))
                    )
        return total / dk

    # -- consistency -------------------------------------------------------

    def consistency_report(self):
        """String and dilaton identities exercising every cached entry.

        For each cached <exps>_g: the dilaton instance <tau_1 exps> is
        on-shell directly; for the string equation, raising one index by one
        puts <tau_0 ...> on-shell with the cached value on the right side.
        """
        rows = []
        for (g, exps), v in sorted(self.items().items()):
            n = len(exps)
            dil_lhs = self._sub(g, exps + (1,))
            rows.append(
                {
                    "name": "dilaton-%d-%s" % (g, list(exps)),
                    "ok": dil_lhs == QQ(2 * g - 2 + n) * v,
                    "required": True,
                    "detail": None,
                }
            )
            raised = exps[:1] and tuple((exps[0] + 1,) + exps[1:]) or None
            if raised:
                lhs = self._sub(g, raised + (0,))
                rhs = sum(
                    (
                        self._sub(g, raised[:j] + (raised[j] - 1,) + raised[j + 1 :])
                        for j in range(len(raised))
                    ),
                    QQ(0),
                )
                rows.append(
                    {
                        "name": "string-%d-%s" % (g, list(exps)),
                        "ok": lhs == rhs,
                        "required": True,
                        "detail": None,
                    }
                )
        return rows
