"""Classical and quantum simplicity measures for finite unifilar HMMs.

The package computes statistical complexity, entropy rate, excess
entropy, and the quantum signal-state memory of small unifilar hidden
Markov models; instantiates the 1D Ising spin chain as a two-state
process family; and classifies process pairs as consistently or
ambiguously ordered under the classical and quantum measures.

All operations are pure functions of immutable inputs and are safe to
evaluate concurrently.
"""

from .ambiguity import (
    AmbiguityGrid,
    AmbiguityVerdict,
    CertainVerdict,
    PlainVerdict,
    ambiguity_grid,
    classify_pair,
    find_ambiguous_pair,
)
from .classical import (
    BlockExcessEntropy,
    ComplexityProfile,
    MarkovOrderError,
    compute_profile,
    excess_entropy,
    excess_entropy_block,
    excess_entropy_markov1,
    merge_iid_degenerate,
    statistical_complexity,
)
from .ising import (
    Extremum,
    IsingParams,
    SweepPoint,
    TemperatureRangeError,
    TransitionPair,
    find_extremum,
    ising_machine,
    ising_transition_probs,
    temperature_sweep,
)
from .machine import (
    ConvergenceError,
    EpsilonMachine,
    InvalidMachineError,
    MachineFormatError,
    StationaryDistribution,
    ValidationReport,
    WordDistribution,
    WordLengthError,
    block_entropy,
    entropy_bits,
    entropy_rate,
    load_machine,
    machine_from_dict,
    machine_to_dict,
    save_machine,
    stationary_distribution,
    validate_machine,
    word_distribution,
)
from .quantum import (
    CqPoint,
    SignalEnsemble,
    brute_force_cq,
    brute_force_spectrum,
    cq_convergence,
    gram_matrix,
    gram_spectrum,
    quantum_complexity,
    signal_overlaps,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguityGrid",
    "AmbiguityVerdict",
    "BlockExcessEntropy",
    "CertainVerdict",
    "ComplexityProfile",
    "ConvergenceError",
    "CqPoint",
    "EpsilonMachine",
    "Extremum",
    "InvalidMachineError",
    "IsingParams",
    "MachineFormatError",
    "MarkovOrderError",
    "PlainVerdict",
    "SignalEnsemble",
    "StationaryDistribution",
    "SweepPoint",
    "TemperatureRangeError",
    "TransitionPair",
    "ValidationReport",
    "WordDistribution",
    "WordLengthError",
    "ambiguity_grid",
    "block_entropy",
    "brute_force_cq",
    "brute_force_spectrum",
    "classify_pair",
    "compute_profile",
    "cq_convergence",
    "entropy_bits",
    "entropy_rate",
    "excess_entropy",
    "excess_entropy_block",
    "excess_entropy_markov1",
    "find_ambiguous_pair",
    "find_extremum",
    "gram_matrix",
    "gram_spectrum",
    "ising_machine",
    "ising_transition_probs",
    "load_machine",
    "machine_from_dict",
    "machine_to_dict",
    "merge_iid_degenerate",
    "quantum_complexity",
    "save_machine",
    "signal_overlaps",
    "statistical_complexity",
    "stationary_distribution",
    "temperature_sweep",
    "validate_machine",
    "word_distribution",
]
