"""Faber polynomials, Green level sets and Bohr-type coefficient sums.

The package is organised around a small immutable description of a
planar continuum (segment, disc, or a custom exterior map) and builds,
on top of it:

* exact exterior-map series arithmetic (``series``),
* conformal geometry: exterior coordinates, level curves, arc length,
  distances, sup norms (``continua``),
* Faber polynomials by the series and contour routes, coefficient
  extraction, norm roots (``faber``),
* Bohr-type coefficient sums, the sufficient segment level, bounded
  function families and verification campaigns (``bohr``),
* quantitative remainder and separation estimates (``estimates``),
* a command line front end (``cli``).
"""

from .bohr import (
    KAPTANOGLU_SADIK_ECCENTRICITY,
    KAPTANOGLU_SADIK_RADIUS,
    BohrRadiusResult,
    BohrReport,
    BoundedFamily,
    CampaignReport,
    basis_norm,
    bohr_sum,
    bohr_verify,
    coeff_bound_check,
    gen_bounded,
    phi_of_R,
    segment_bohr_radius,
    to_faber_basis,
)
from .continua import (
    ContinuumSpec,
    LevelSet,
    SupNorm,
    arc_length,
    contains,
    custom,
    disc,
    dist_to_level,
    eccentricity,
    exterior_series,
    green,
    level_boundary,
    phi,
    psi,
    psi_prime,
    scaled_closure,
    segment,
    sup_norm,
)
from .errors import (
    AliasingRisk,
    CertificationFailed,
    DomainError,
    FaberBohrError,
    GridExhausted,
    InsideUnitDisc,
    LengthMismatch,
    NonConvergent,
    NotOnLevel,
    PointInsideK,
    PointInsideLevel,
    PointOutsideK,
    PointOutsideLevel,
    PreconditionViolated,
    ReconstructionMismatch,
    WrongKind,
)
from .estimates import (
    EnBound,
    EstimateContext,
    FkBound,
    FnBounds,
    Ineq11,
    Thm31Report,
    en_bound,
    fk_bound,
    fn_bounds,
    ineq11_check,
    lemma33_check,
    make_context,
    schwarz_bound,
    thm31_conditions,
)
from .faber import (
    FaberPoly,
    FaberSeries,
    contour_values,
    faber_coeffs,
    faber_contour,
    faber_poly,
    faber_polys,
    faber_remainder,
    norm_root,
    target_identity_check,
    target_identity_residual,
)
from .series import QC, GradedLaurent, LaurentTail, laurent_mul, laurent_pow

__version__ = "0.1.0"

__all__ = [
    "AliasingRisk",
    "BohrRadiusResult",
    "BohrReport",
    "BoundedFamily",
    "CampaignReport",
    "CertificationFailed",
    "ContinuumSpec",
    "DomainError",
    "EnBound",
    "EstimateContext",
    "FaberBohrError",
    "FaberPoly",
    "FaberSeries",
    "FkBound",
    "FnBounds",
    "GradedLaurent",
    "GridExhausted",
    "Ineq11",
    "InsideUnitDisc",
    "KAPTANOGLU_SADIK_ECCENTRICITY",
    "KAPTANOGLU_SADIK_RADIUS",
    "LaurentTail",
    "LengthMismatch",
    "LevelSet",
    "NonConvergent",
    "NotOnLevel",
    "PointInsideK",
    "PointInsideLevel",
    "PointOutsideK",
    "PointOutsideLevel",
    "PreconditionViolated",
    "QC",
    "ReconstructionMismatch",
    "SupNorm",
    "Thm31Report",
    "WrongKind",
    "arc_length",
    "basis_norm",
    "bohr_sum",
    "bohr_verify",
    "coeff_bound_check",
    "contains",
    "contour_values",
    "custom",
    "disc",
    "dist_to_level",
    "eccentricity",
    "en_bound",
    "exterior_series",
    "faber_coeffs",
    "faber_contour",
    "faber_poly",
    "faber_polys",
    "faber_remainder",
    "fk_bound",
    "fn_bounds",
    "gen_bounded",
    "green",
    "ineq11_check",
    "laurent_mul",
    "laurent_pow",
    "lemma33_check",
    "level_boundary",
    "make_context",
    "norm_root",
    "phi",
    "phi_of_R",
    "psi",
    "psi_prime",
    "scaled_closure",
    "schwarz_bound",
    "segment",
    "segment_bohr_radius",
    "sup_norm",
    "target_identity_check",
    "target_identity_residual",
    "thm31_conditions",
    "to_faber_basis",
]
