"""Frame bounds and perturbation audits for matrix-valued sequences over
non-uniform translation lattices."""

__version__ = "0.1.0"

from .bounds import (
    FrameBoundsReport,
    bessel_necessary_bounds,
    bessel_sufficient_bound,
    envelope_sup_norm,
    feasibility,
    frame_bounds_gamma,
)
from .errors import (
    DegenerateEnvelope,
    FormatError,
    FrequencyOutOfRange,
    MixedLattice,
    NuframeError,
    RefinementMismatch,
    RejectedParameters,
    ShapeMismatch,
    VanishingEnvelopeSpectrum,
)
from .frame import (
    CoefficientTable,
    FrameSystem,
    analysis,
    frame_operator_apply,
    frame_sum,
    frame_sum_spectral,
    frame_sum_spectral_entrywise,
    frame_sum_spectral_truncated,
    frame_system,
    synthesis,
)
from .gamma import (
    envelope_sample_vector,
    phase_vector,
    sample_gram,
    sample_matrix,
    sample_vector,
    sampling_identity_residual,
    signal_sample_stack,
    spectral_overlap,
    stacked_operator,
)
from .lattice import (
    LatticePoint,
    OmegaCell,
    SpectralLattice,
    lambda_value,
    make_lattice,
    omega_cells,
    point_for_value,
)
from .perturb import (
    PerturbationReport,
    absolute_bounds,
    check_absolute,
    check_relative,
    relative_bounds,
)
from .signal import (
    MatrixSeq,
    SpectrumStep,
    displace,
    fourier_eval,
    frobenius_norm,
    inner_step_trig,
    inner_time,
    matrix_seq,
    seq_equal,
    spectrum_step,
    spectrum_value,
    step_equal,
    step_inner,
)
from . import fixtures

__all__ = [name for name in dir() if not name.startswith("_")]
