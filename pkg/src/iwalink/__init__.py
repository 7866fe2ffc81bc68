"""Iwasawa invariants and torsion growth for branched abelian covers of links.

Submodules: ``polyring`` (Laurent polynomials, resultants), ``torus``
(valuation sums over torsion points), ``iwasawa`` (mu, lambda, growth
polynomials), ``covers`` (homology of branched covers), ``families`` (shipped
links) and ``cli``.
"""

__version__ = "0.1.0"

from .covers import (CoverSpec, Infinite, LinkPresentation, homology_exponent_branched,
                     homology_growth, homology_order_full, homology_order_tln,
                     padic_limit_nonp, reduced_alexander, torres_check, vanishing_check)
from .families import catalog, catalog_names, ingest, whitehead_delta
from .iwasawa import (GrowthPolynomial, fit_growth_polynomial, lambda_by_factors,
                      mu_invariant, verify_asymptotic)
from .polyring import LaurentPoly, UniPoly, cyclotomic, resultant, shift_substitute
from .torus import TorusRegion, Vanishes, norm_det_oracle, sigma, torus_product

__all__ = [
    "CoverSpec", "GrowthPolynomial", "Infinite", "LaurentPoly", "LinkPresentation",
    "TorusRegion", "UniPoly", "Vanishes", "catalog", "catalog_names", "cyclotomic",
    "fit_growth_polynomial", "homology_exponent_branched", "homology_growth",
    "homology_order_full", "homology_order_tln", "ingest", "lambda_by_factors",
    "mu_invariant", "norm_det_oracle", "padic_limit_nonp", "reduced_alexander",
    "resultant", "shift_substitute", "sigma", "torres_check", "torus_product",
    "vanishing_check", "verify_asymptotic", "whitehead_delta",
]
