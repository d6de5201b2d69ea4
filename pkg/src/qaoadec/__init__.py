"""QAOA syndrome decoding for classical linear codes and quantum stabilizer codes."""

from .bits import BitMatrix, BitVector, in_rowspace
from .codes import (
    CATALOG,
    LinearCode,
    StabilizerCode,
    coset_representative,
    generator_from_checks,
    get_code,
    load_code_file,
    normalizer_basis,
    symplectic_syndrome,
    syndrome,
)
from .decoder import (
    ChannelModel,
    DecoderConfig,
    DecodingOutcome,
    bdd_reference,
    decode_check_classical,
    decode_check_quantum,
    decode_generator_classical,
    decode_generator_quantum,
    error_rate_curve,
    judge_classical,
    judge_quantum,
    sample_bsc,
    sample_depolarizing,
    wilson_ci,
)
from .distributions import (
    CosetDistribution,
    distribution_report,
    js,
    kl,
    posterior,
    qaoa_distribution,
)
from .engine import (
    AngleSchedule,
    StateVector,
    apply_cost_layer,
    apply_mixer_layer,
    expectation,
    plus_state,
    qaoa_expectation,
    run_circuit,
    sample,
)
from .graphs import Graph, brute_force_maxcut, cut_size, load_graph, maxcut_to_decoding
from .hamiltonian import (
    DiagonalHamiltonian,
    PenaltyParams,
    ZTerm,
    classical_check_cost,
    classical_generator_cost,
    quantum_check_cost,
    quantum_generator_cost,
)
from .optimize import (
    AngleArchive,
    ArchiveEntry,
    ObjectiveHandle,
    OptimizerReport,
    basin_hopping,
    multistart,
    nelder_mead,
    nm_with_canonical_starts,
)
from .seeding import spawn_rng

__version__ = "0.1.0"
