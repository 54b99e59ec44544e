"""Quantum-like multi-sensor perception model.

Normalized sensor readings are encoded as Ry rotations of one qubit per
sensor. Basis index bit i belongs to sensor i + 1; bitstrings are printed
most significant qubit first.
"""

from ._core import (
    ConfigError,
    DEFAULT_SEED,
    DimensionError,
    DomainError,
    MAX_QUBITS,
    RangeError,
    StateVector,
    __version__,
    apply_query,
    apply_ry,
    basis_label,
    bloch_coordinates,
    derive_seed,
    euclidean_distance,
    frequencies,
    normalize,
    normalize_frame,
    probabilities,
    product_state,
    qubit_amplitudes,
    reproduce_table,
    run_sweep,
    sample,
    zero_group_probabilities,
)

__all__ = [
    "ConfigError",
    "DEFAULT_SEED",
    "DimensionError",
    "DomainError",
    "MAX_QUBITS",
    "RangeError",
    "StateVector",
    "__version__",
    "apply_query",
    "apply_ry",
    "basis_label",
    "bloch_coordinates",
    "derive_seed",
    "euclidean_distance",
    "frequencies",
    "normalize",
    "normalize_frame",
    "probabilities",
    "product_state",
    "qubit_amplitudes",
    "reproduce_table",
    "run_sweep",
    "sample",
    "zero_group_probabilities",
]
