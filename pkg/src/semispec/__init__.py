"""semispec: trace inequalities on bipartite spaces and semiclassical
eigenvalue asymptotics of Schrodinger operators, verified at finite matrix
scale."""

from .linalg import (
    HermitianOperator,
    ScalarFunction,
    SpectralDecomposition,
    affine,
    apply_function,
    custom,
    eig_hermitian,
    exp_neg,
    log_gamma,
    positive_part,
    power_neg,
    square,
    trace,
)
from .bipartite import (
    BipartiteDims,
    DensityMatrix,
    compress,
    kron,
    partial_trace_1,
    partial_trace_2,
    random_density,
    random_hermitian,
    random_unit_vector,
)
from .inequalities import (
    gibbs_gap,
    gibbs_state,
    golden_thompson_gap,
    jensen_partial_trace_gap,
    jensen_scalar_gap,
    sliced_gt_gap,
    sliced_hamiltonian,
    violates,
)
from .schrodinger import (
    CoherentWindow,
    GridOperator,
    Homogeneous,
    QuadrantProfile,
    SeparatelyHomogeneous,
    build_hamiltonian,
    channel_boxes,
    coherent_frame_defect,
    coherent_lower_bound,
    coherent_partial_lower_bound,
    counting_box,
    counting_function,
    delta_window,
    effective_operator,
    flat_window,
    gaussian_window,
    heat_box,
    heat_trace,
    heat_truncation_bound,
    points_for_spacing,
    spectrum,
    zeta_trace,
)
from .asymptotics import (
    ExponentFit,
    Prediction,
    counting_constant,
    counting_law,
    divergence_classifier,
    exponent_fit,
    heat_constant,
    heat_law,
    heat_weyl_prediction,
    partial_heat_prediction,
    partial_weyl_prediction,
    phase_space_identity_check,
    weyl_prediction,
    zeta_power,
)

__version__ = "0.1.0"
