from ._bgsusy import (  # noqa: F401
    BoundState,
    ClosedFormB,
    ConvergenceError,
    CurrentDensity,
    DensityProfile,
    Family,
    Grid,
    KappaBranch,
    MagneticProfile,
    NoBranch,
    NoSuchLevel,
    OracleSpectrum,
    PotentialModel,
    RelationInconsistent,
    SampledFunction,
    SingularPoint,
    SpinorState,
    SusyTransform,
    TransformSingular,
    WavenumberRelation,
    bound_state_count,
    closed_form_B,
    continuity_residual,
    current_density,
    default_grid,
    density_profile,
    eigenvalue0,
    electron_energy,
    fd_spectrum,
    has_wavenumber_relation,
    k_to_kappa,
    kappa_to_k,
    make_grid,
    partner_profile,
    physical_vector_potential,
    potential_value,
    probability_density,
    sampled,
    spinor_state,
    standard_ordering,
    wavenumber_constancy,
)
