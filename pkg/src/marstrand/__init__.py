"""Desk-scale dyadic-cover projection analysis of planar fractal sets.

Exact dyadic-square combinatorics, digit-defined self-similar sets, good
dyadic covers, projection profiles with transversality estimates, and
push-forward densities, with a CLI that demonstrates positivity of projected
measure for sets of dimension above one.
"""

from .covers import (
    DyadicCover,
    build_good_cover,
    cover_from_set,
    covers_set,
    goodness_bound,
    goodness_constant,
)
from .density import (
    PushforwardDensity,
    domination_ratio,
    l2_norm,
    mollified_density,
    mollified_l2_squared,
    pushforward_density,
)
from .dyadic import (
    MAX_LEVEL,
    BoundingBox,
    DyadicSquare,
    children,
    cover_four,
    diam_power,
    locate,
    mass,
    parent,
    validate_disjoint,
)
from .estimates import (
    CapExceeded,
    GoodAngleSets,
    ShellMass,
    SweepReport,
    ThetaGrid,
    TransversalBounds,
    energy_pair_bound,
    energy_quadrature,
    energy_transversal_bound,
    good_angle_sets,
    shell_masses,
    sweep,
)
from .fractals import (
    DiscretizedSet,
    FractalSpec,
    hausdorff_sum,
    regularity_scan,
    similarity_dimension,
    squares_at_depth,
)
from .projection import (
    Interval,
    overlap_angle_measure,
    profile_integral,
    profile_l2_squared,
    profile_l2_squared_pairwise,
    project_square,
    projection_profile,
    transversality_bound,
    union_measure,
)
from .stepfn import StepFunction

__version__ = "0.1.0"

__all__ = [
    "BoundingBox",
    "CapExceeded",
    "DiscretizedSet",
    "DyadicCover",
    "DyadicSquare",
    "FractalSpec",
    "GoodAngleSets",
    "Interval",
    "MAX_LEVEL",
    "PushforwardDensity",
    "ShellMass",
    "StepFunction",
    "SweepReport",
    "ThetaGrid",
    "TransversalBounds",
    "build_good_cover",
    "children",
    "cover_four",
    "cover_from_set",
    "covers_set",
    "diam_power",
    "domination_ratio",
    "energy_pair_bound",
    "energy_quadrature",
    "energy_transversal_bound",
    "good_angle_sets",
    "goodness_bound",
    "goodness_constant",
    "hausdorff_sum",
    "l2_norm",
    "locate",
    "mass",
    "mollified_density",
    "mollified_l2_squared",
    "overlap_angle_measure",
    "parent",
    "profile_integral",
    "profile_l2_squared",
    "profile_l2_squared_pairwise",
    "project_square",
    "projection_profile",
    "pushforward_density",
    "regularity_scan",
    "shell_masses",
    "similarity_dimension",
    "squares_at_depth",
    "sweep",
    "transversality_bound",
    "union_measure",
    "validate_disjoint",
]
