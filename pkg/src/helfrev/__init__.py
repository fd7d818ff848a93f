"""Minimisers of the bending-plus-weighted-area energy for clamped
symmetric surfaces of revolution, with the closed-form companions:
special constants, catenary branch geometry, the branch rate profile,
the oscillation toolkit, energy bounds, surgery repairs, and validators
for computed minimisers.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .catenoids import (CatenaryBranch, ConstantsTable, alpha_of_c,
                        catenary_area, classify_area_minimiser,
                        compute_constants, goldschmidt_area,
                        reflected_branch_gaps, solve_catenary_branches)
from .energy import (ComparisonSurface, EnergyReport, RegimeLabel, area,
                     bound_suite, build_comparison_surface, classify_regime,
                     comparison_energy_bound, helfrich, helfrich_gradient,
                     willmore, willmore_identity_check)
from .errors import (BadGrid, DegenerateCoefficients, HelfrevError,
                     NonPositiveProfile, NoSolution, OutOfDomain,
                     PhaseUndefined, PoleAtMultipleOfPi, RootNotBracketed)
from .gluing import glue_catenary, insert_cylinder
from .oscillations import (OscillationReport, endpoint_dominant_family,
                           oscillation_extrema, oscillation_h,
                           phase_advance, phase_functions,
                           phase_slowdown_crossing, sign_inequality,
                           tanh_tan_ratio)
from .profiles import (GeometrySample, Grid, ProfileCurve, build_profile,
                       catenary_profile, curvatures, cylinder_profile,
                       evaluate_geometry, mirror_consistency_check,
                       profile_from_function, profile_from_json,
                       profile_to_json, resample)
from .rate_of_change import (MonotonicityVerdict, RateCoefficients,
                             boundary_determinant, boundary_values,
                             bvp_residual, fundamental_system,
                             monotonicity_verdict, rate_closed_form,
                             rate_coefficients, rate_derivative,
                             rate_fourth_derivative, rate_profile)
from .solver import (ContinuationRung, LineSearchParams, SolveResult,
                     SolverConfig, continuation_epsilon, minimise)
from .validators import (FirstIntegralReport, QuinticRefit, el_residual,
                         first_integral)

__all__ = [
    "__version__",
    "BadGrid", "CatenaryBranch", "ComparisonSurface", "ConstantsTable",
    "ContinuationRung", "DegenerateCoefficients", "EnergyReport",
    "FirstIntegralReport", "GeometrySample", "Grid", "HelfrevError",
    "LineSearchParams", "MonotonicityVerdict", "NoSolution",
    "NonPositiveProfile", "OscillationReport", "OutOfDomain",
    "PhaseUndefined", "PoleAtMultipleOfPi", "ProfileCurve",
    "QuinticRefit", "RateCoefficients", "RegimeLabel", "RootNotBracketed",
    "SolveResult", "SolverConfig",
    "alpha_of_c", "area", "boundary_determinant", "boundary_values",
    "bound_suite", "build_comparison_surface", "build_profile",
    "bvp_residual", "catenary_area", "catenary_profile",
    "classify_area_minimiser", "classify_regime", "comparison_energy_bound",
    "compute_constants", "continuation_epsilon", "curvatures",
    "cylinder_profile", "el_residual", "endpoint_dominant_family",
    "evaluate_geometry", "first_integral", "fundamental_system",
    "glue_catenary", "goldschmidt_area", "helfrich", "helfrich_gradient",
    "insert_cylinder", "minimise", "mirror_consistency_check",
    "monotonicity_verdict", "oscillation_extrema", "oscillation_h",
    "phase_advance", "phase_functions", "phase_slowdown_crossing",
    "profile_from_function", "profile_from_json", "profile_to_json",
    "rate_closed_form", "rate_coefficients", "rate_derivative",
    "rate_fourth_derivative", "rate_profile", "reflected_branch_gaps",
    "resample", "sign_inequality",
    "solve_catenary_branches", "tanh_tan_ratio", "willmore",
    "willmore_identity_check",
]
