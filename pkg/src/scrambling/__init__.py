"""Exact few-qubit simulator for OTOC scrambling, fidelity, Bures metric and concurrence."""

from .evolution import BCH, EXACT, EvolutionMethod, IsingParams, heisenberg_evolve, ising_hamiltonian
from .operators import OperatorPair, Pauli, custom_pair, embed_on_qubit, make_pair, pauli, spin_flip_operator
from .quantifiers import (QuantifierSample, balancing_points, bures_metric, compute_z,
                          compute_z_via_purification, otoc_direct, otoc_fidelity_branch,
                          sample_quantifiers, uhlmann_fidelity)
from .states import BellLabel, QuantumState, bell_state, mixed_state, partial_trace, pure_state, purify

__all__ = [
    "BCH", "EXACT", "EvolutionMethod", "IsingParams", "heisenberg_evolve", "ising_hamiltonian",
    "OperatorPair", "Pauli", "custom_pair", "embed_on_qubit", "make_pair", "pauli",
    "spin_flip_operator", "QuantifierSample", "balancing_points", "bures_metric", "compute_z",
    "compute_z_via_purification", "otoc_direct", "otoc_fidelity_branch", "sample_quantifiers",
    "uhlmann_fidelity", "BellLabel", "QuantumState", "bell_state", "mixed_state",
    "partial_trace", "pure_state", "purify",
]
