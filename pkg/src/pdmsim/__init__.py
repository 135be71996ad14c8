"""Pseudo-density matrices over spacetime measurement schedules.

Builds Hermitian unit-trace (not necessarily positive) matrices from
expectation values of products of Pauli measurement outcomes across events
in space and time, computes the trace-norm causality monotone, and sweeps
parametric noise models to locate causal/spacelike transitions.
"""

from .causality import (
    CausalityReport,
    CheckReport,
    check_convexity,
    check_local_monotonicity,
    check_unitary_invariance,
    classify,
    f_tr,
    haar_unitary,
    random_cptp,
)
from .channels import (
    ChannelReport,
    DensityState,
    KrausChannel,
    NoiseModel,
    apply_channel,
    channel_at_time,
    choi_matrix,
    compose,
    identity_channel,
    make_channel,
    state_from_bloch,
    unitary_channel,
    validate_channel,
)
from .errors import InvariantViolation, UsageError
from .linalg import (
    PAULIS,
    hermitian_eig,
    kron,
    partial_trace,
    pauli_matrix,
    pauli_string_matrix,
    trace_norm,
)
from .schedule import (
    Event,
    PseudoDensityMatrix,
    Schedule,
    ancilla_expectation,
    build_pdm,
    expectation,
    expectation_oracle,
    pdm_expectation,
    reduce_pdm,
    two_event_schedule,
)
from .sweep import (
    SweepConfig,
    SweepRow,
    emit_svg,
    find_transition,
    rows_from_csv,
    rows_to_csv,
    run_sweep,
    sweep_config_from_dict,
)

__version__ = "0.1.0"
