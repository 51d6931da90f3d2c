"""Exact equivariant Gromov-Witten toolkit for the canonical bundle of
P1 x P1.

Everything is computed over arbitrary-precision rationals at a total-degree
truncation in the two curve-class parameters: the genus-zero hypergeometric
family and its Picard-Fuchs checks, the divisor connection matrices with
their relation suite, canonical (eigenvalue) coordinates, the Givental
R-matrix by two independent routes (stationary phase of the mirror
superpotential, and the divisor differential system), stable-graph sums for
the genus-2 potential and twisted correlators, the finite-generation
decomposition over the five generator series, and the holomorphic anomaly
equation.

Entry points:

    from localp1p1.pipeline import RunConfig, get_pipeline
    pipe = get_pipeline(RunConfig(lam=3, mu=5, trunc=6, order=3))
    f2 = pipe.genus_series(2)

or the command line: `localp1p1 all`.
"""

from .pipeline import RunConfig, get_pipeline

__all__ = ["RunConfig", "get_pipeline"]
__version__ = "0.1.0"
