"""Exact finite free probability.

Polynomial convolutions at fixed degree d, finite free cumulants, the
genus expansion of the partition-sum formulas over annular non-crossing
permutations, and the order-1/d (infinitesimal) corrections, all in
exact rational arithmetic.  Every identity the library implements is
verified mechanically by the test suite and by the ``finfree verify``
command line.
"""

__version__ = "0.1.0"

from .errors import DimensionMismatch, DomainError, FinfreeError, SizeCapError
from .partitions import (
    PartitionType,
    SetPartition,
    enumerate_noncrossing,
    enumerate_partitions,
    is_noncrossing,
    join,
    kreweras,
    mobius_zero,
    partition_type,
)
from .permutations import (
    CycleType,
    Permutation,
    annular_kreweras,
    canonical_gamma,
    compose,
    enumerate_annular,
    enumerate_snc,
    gamma_pair,
    is_transitive_pair,
    orbit_partition,
    relative_genus,
    type_count,
)
from .ffpoly import (
    CumulantVector,
    MomentVector,
    MonicPoly,
    boxplus,
    boxtimes,
    cumulants,
    derivative_shift,
    dilate,
    from_roots,
    moments,
    poly_from_cumulants,
)
from .families import FamilySpec, compound_poisson_witness, hermite, laguerre, power
from .identities import (
    GenusLayer,
    OneOverDPoly,
    WeightSequences,
    compound_poisson_check,
    count_A,
    count_B,
    genus_layer,
    genus_lhs,
    mobius_algebra_check,
    moment_cumulant_eval,
    order_d_expansion,
    product_cumulant_rhs,
    product_moment_rhs,
)
from .series import BivariateSeries, LaurentSeries, PowerSeries
from .asymptotics import (
    InfinitesimalProfile,
    MomentProfile,
    alpha_annular,
    cauchy_from_moments,
    convolution_trend,
    derivative_flow_trend,
    fractional_identity_check,
    free_boxtimes,
    free_moments_from_cumulants,
    g_inf_from_cauchy,
    infinitesimal_from_annular,
    infinitesimal_moments,
    k_transform,
    markov_transform,
    r_inf_from_k,
    r_transform,
    second_order_functional_check,
)
