"""Limiting probabilities that IRV elects a weak candidate, by three routes:
exact rationals under the uniform-profile model, region sampling, and
spherical-volume integration for the uniform-ballot (equiprobable-ranking)
model."""

from .systems import (
    InequalitySystem,
    BORDA_SYSTEMS,
    BUCKLIN_SYSTEMS,
    MLP_SYSTEMS,
    SYSTEM_SETS,
)
from .iac import (
    IacResult,
    iac_closed_form,
    iac_closed_form_parts,
    iac_enumerate,
    iac_simplex_sample,
)
from .gaussian import IcResult, ic_gaussian_cone, ic_multinomial_cov_sample
from .schlafli import SphericalCone, ic_spherical_triangle, ic_schlafli_volume
from .ic import ic_probabilities, borda_branch_probabilities, bucklin_branch_probabilities

__all__ = [
    "InequalitySystem",
    "BORDA_SYSTEMS",
    "BUCKLIN_SYSTEMS",
    "MLP_SYSTEMS",
    "SYSTEM_SETS",
    "IacResult",
    "IcResult",
    "iac_closed_form",
    "iac_closed_form_parts",
    "iac_enumerate",
    "iac_simplex_sample",
    "ic_gaussian_cone",
    "ic_multinomial_cov_sample",
    "SphericalCone",
    "ic_spherical_triangle",
    "ic_schlafli_volume",
    "ic_probabilities",
    "borda_branch_probabilities",
    "bucklin_branch_probabilities",
]
