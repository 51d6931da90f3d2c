"""End-to-end orchestration with caching.

A Pipeline lazily computes and memoizes every stage for one configuration
(weights, truncation, z-order).  The stationary-phase expansion and the
symbolic column recursion are weight-independent, so they are cached at
module level and shared across specializations; that is what makes the
multi-specialization fits affordable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

from .canonical import all_frames, eigen_check, generator_bundle
from .cohomology import SECTORS, Cohomology
from .genus_zero import (
    connection_cascade,
    picard_fuchs_residuals,
    relation_suite,
    separate_entries,
)
from .psi import PsiCache
from .rational import QQ, qq
from . import rmatrix
from .graphsum import CellBackend, NumericBackend, correlator, genus_potential
from .wick import unit_column

_WICK_CACHE: dict = {}
_SYMCOL_CACHE: dict = {}
_PIPELINES: dict = {}


def wick_unit_column(order: int):
    if order not in _WICK_CACHE:
        _WICK_CACHE[order] = unit_column(order)
    return _WICK_CACHE[order]


def symbolic_columns_cached(order: int):
    if order not in _SYMCOL_CACHE:
        # weight-independent; any valid weights produce the same symbols
        _SYMCOL_CACHE[order] = rmatrix.symbolic_columns(
            wick_unit_column(order), order, Cohomology(3, 5)
        )
    return _SYMCOL_CACHE[order]


@dataclass(frozen=True)
class RunConfig:
    lam: object = 3
    mu: object = 5
    trunc: int = 6
    order: int = 3
    genus: int = 2
    hae_include_genus0: bool = False
    unitarity_check: bool = True
    cache_dir: str | None = None

    def validate(self):
        lam, mu = qq(self.lam), qq(self.mu)
        if not lam or not mu or lam == mu or lam == -mu:
            raise ValueError("weights must be nonzero with lam^2 != mu^2")
        if self.trunc < 0 or self.order < 0:
            raise ValueError("trunc and order must be nonnegative")
        if self.genus >= 2 and self.order < 3 * self.genus - 3:
            raise ValueError("order must be at least 3*genus-3")
        return self


def get_pipeline(config: RunConfig) -> "Pipeline":
    key = (str(qq(config.lam)), str(qq(config.mu)), config.trunc, config.order)
    if key not in _PIPELINES:
        _PIPELINES[key] = Pipeline(config)
    return _PIPELINES[key]


class Pipeline:
    def __init__(self, config: RunConfig):
        self.config = config.validate()
        self.coh = Cohomology(config.lam, config.mu)
        self._cache: dict = {}
        psi_path = None
        if config.cache_dir:
            os.makedirs(config.cache_dir, exist_ok=True)
            psi_path = os.path.join(config.cache_dir, "psi_cache.jsonl")
        self.psi = PsiCache(psi_path)

    def _get(self, name, builder):
        if name not in self._cache:
            self._cache[name] = builder()
        return self._cache[name]

    # -- stages -------------------------------------------------------------

    @property
    def kbot(self):
        return max(2 * self.config.order + 4, 10)

    def connection(self):
        return self._get(
            "conn",
            lambda: connection_cascade(self.coh, self.config.trunc, self.kbot),
        )

    def frames(self):
        return self._get("frames", lambda: all_frames(self.coh, self.config.trunc))

    def generators(self):
        return self._get("gens", lambda: generator_bundle(self.connection()))

    def frames_by_slot(self):
        frames = self.frames()
        return {i: frames[s] for i, s in enumerate(SECTORS)}

    def unit_columns(self):
        """Per-sector stationary-phase unit columns as series."""

        def build():
            out = {}
            sym = wick_unit_column(self.config.order)
            for s in SECTORS:
                fr = self.frames()[s]
                slots = {i: fr for i in range(4)}
                out[s] = [
                    g.evaluate(self.coh, slots, self.config.trunc) for g in sym
                ]
            return out

        return self._get("r1", build)

    def columns(self):
        def build():
            out = {}
            for s in SECTORS:
                out[s] = rmatrix.sector_columns(
                    self.coh,
                    self.frames()[s],
                    self.generators(),
                    self.unit_columns()[s],
                    self.config.order,
                )
            return out

        return self._get("columns", build)

    def numeric_backend(self) -> NumericBackend:
        def build():
            nb = NumericBackend(
                self.coh,
                self.frames(),
                self.columns(),
                edge_box=self.config.order - 1,
                order=self.config.order,
                psi=self.psi,
                trunc=self.config.trunc,
            )
            if self.config.unitarity_check:
                for sa in SECTORS:
                    for sb in SECTORS:
                        defect = rmatrix.unitarity_defect(
                            self.coh,
                            self.columns()[sa],
                            self.columns()[sb],
                            self.frames()[sa].delta,
                            self.config.order,
                        )
                        for n, d in enumerate(defect):
                            if not d.is_zero():
                                raise AssertionError(
                                    "unitarity defect %s %s at z^%d" % (sa, sb, n)
                                )
            return nb

        return self._get("nb", build)

    def cell_backend(self) -> CellBackend:
        return self._get(
            "cb",
            lambda: CellBackend(
                self.numeric_backend(),
                symbolic_columns_cached(self.config.order),
                self.generators(),
                edge_box=self.config.order - 1,
            ),
        )

    # -- deliverables ----------------------------------------------------------

    def picard_fuchs(self):
        return self._get(
            "pf",
            lambda: picard_fuchs_residuals(self.coh, self.connection().columns[0]),
        )

    def relations(self, companion=None):
        if companion is None:
            companion = self._pick_companion()

        def build():
            other = get_pipeline(
                replace(
                    self.config, lam=companion[0], mu=companion[1], cache_dir=None
                )
            )
            return relation_suite(self.connection(), other.connection())

        return self._get(("relations", companion), build)

    def _pick_companion(self):
        """A weight pair whose squares are independent of this pipeline's."""
        from .fitting import SPEC_POOL

        for lam, mu in SPEC_POOL:
            l2, m2 = qq(lam) ** 2, qq(mu) ** 2
            if self.coh.lam2 * m2 != self.coh.mu2 * l2:
                return (lam, mu)
        raise AssertionError("no independent companion weights found")

    def eigen_report(self):
        return self._get(
            "eigen", lambda: eigen_check(self.connection(), self.frames())
        )

    def qde_report(self):
        return self._get(
            "qde",
            lambda: rmatrix.qde_residual_report(
                self.connection(), self.frames(), self.columns(), self.config.order
            ),
        )

    def genus_series(self, g: int, cells=False):
        key = ("fg", g, cells)

        def build():
            backend = self.cell_backend() if cells else self.numeric_backend()
            return genus_potential(backend, g)

        return self._get(key, build)

    def correlator_series(self, g: int, insertions):
        key = ("corr", g, tuple(insertions))
        return self._get(
            key, lambda: correlator(self.numeric_backend(), g, list(insertions))
        )

    def divisor_sum_coords(self):
        return (QQ(0), QQ(1), QQ(1), QQ(0))
