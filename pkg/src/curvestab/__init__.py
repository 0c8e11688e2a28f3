"""Exact-arithmetic stability of polarized weighted pointed nodal curves.

The package decides slope stability, Chow-side extremality and
K-stability for nodal curves given as combinatorial data, and computes
the supporting weight machinery: Newton polygons with a lattice-count
oracle, Chow weights of one-parameter subgroups, degree class groups with
polarization twisting, and the linear bound functionals used to certify
stability on the weight cone.  Everything runs in exact rational
arithmetic.
"""

from .curve import (
    ENUMERATION_CAP,
    Component,
    CurveModel,
    Mark,
    MarkSite,
    Polarization,
    Subcurve,
    ValidationReport,
    WeightedClass,
    arithmetic_genus,
    classify_weighted,
    is_connected,
    linking_nodes,
    omega_degree,
    stabilize,
    subcurves,
    validate_curve,
)
from .slope import (
    EquivalenceReport,
    ExtremesInterval,
    StabilityVerdict,
    Witness,
    degree_bound_constants,
    equivalence_report,
    extremes,
    extremes_for_total,
    h0_regime,
    is_extremal,
    is_line_exception,
    slope_check_h0,
    slope_check_interval,
    weighted_chi,
    weighted_degree_total,
)
from .degree_class import (
    BalanceReport,
    DegreeClassGroup,
    LinkingMatrix,
    TwistResult,
    degree_class_group,
    find_twist,
    is_balanced,
    linking_matrix,
    smith_normal_form,
)
from .newton import (
    GammaSet,
    NewtonPolygon,
    PointProfile,
    lattice_count_oracle,
    point_multiplicity,
    polygon_area,
    polygon_from_points,
    total_multiplicity,
)
from .chow import (
    ChowWeights,
    OnePSDatum,
    chow_report,
    chow_weight,
    marked_weight,
    mumford_weight,
    two_weight_closed_form,
    two_weight_datum,
    validate_datum,
)
from .bounds import (
    ComponentStair,
    PrimaryIndexReport,
    ShiftedWeights,
    TrapezoidBound,
    bound_validity_threshold,
    chow_weight_lower_bound,
    component_multiplicity_bound,
    edge_vector,
    increments_from_profiles,
    is_staircase,
    primary_indices,
    shifted_weights,
    trapezoid_bound,
    verify_on_edges,
)
from .kstab import (
    DFEntry,
    DFReport,
    df_two_weight,
    is_proportional,
    k_stable,
    slope_margin,
)

__all__ = [name for name in dir() if not name.startswith("_")]
