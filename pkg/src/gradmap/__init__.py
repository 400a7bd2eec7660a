"""Gradient maps of real reductive matrix group actions on P(C^n):
moment/gradient maps, norm-square flows with rate diagnostics, Kempf-Ness
functions on G/K, and convexity/polytope verification suites."""

from .convex import (
    Polytope,
    convex_hull,
    exposed_face,
    fixed_point_polytope,
    hull_membership,
    kostant_projection_probe,
    majorization_membership,
    polytope_equal_by_support,
    sharp_construction,
    support_function,
    weyl_polytope,
)
from .flow import (
    CriticalComponent,
    FlowOptions,
    StratumLabel,
    Trajectory,
    classify_stratum,
    find_critical_components,
    group_lift,
    integrate_flow,
    k_orbit_distance,
    lojasiewicz_diagnostics,
    min_stratum_openness_check,
    ness_uniqueness_experiment,
    retraction_check,
    unstable_manifold_census,
)
from .kempf_ness import (
    SymmetricSpacePoint,
    distance,
    geodesic,
    kn_first_second_derivative,
    kn_flow,
    kn_morse_bott_probe,
    kn_value,
    paired_flow_distance_monotonicity,
)
from .lie_core import (
    AbelianSubalgebra,
    AdEigenDecomposition,
    CompatibleGroup,
    ad_eigendecomposition,
    cartan_project,
    chamber_representative,
    custom_group,
    diagonal_abelian,
    full_complex,
    positive_diagonal_torus,
    real_general_linear,
    real_special_linear,
    restricted_roots,
    weyl_orbit,
)
from .projective import (
    GradientValue,
    ProjectivePoint,
    TangentVector,
    dmu_kernel_check,
    fs_inner,
    fundamental_field,
    grad_f,
    gradient_map,
    gradient_map_abelian,
    hessian_f,
    hessian_mu_beta,
    moment_map,
    norm_square_f,
)
from .scenarios import Scenario, load_scenario_config, scenario_registry
from .suites import (
    RunReport,
    abelian_from_nonabelian_checks,
    coisotropic_checks,
    run_suite,
    two_orbit_morse_analysis,
    unique_closed_orbit_checks,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
