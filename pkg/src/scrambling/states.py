"""Pure and mixed qubit states, Bell states, purification and partial trace."""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .linalg import hermitian_eig

STATE_TOL = 1e-12
PSD_TOL = 1e-10


class StateError(ValueError):
    """Raised for invalid state data."""


class BellLabel(str, Enum):
    PHI_PLUS = "phi+"
    PHI_MINUS = "phi-"
    PSI_PLUS = "psi+"
    PSI_MINUS = "psi-"


def _num_qubits(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim < 2 or 1 << n != dim:
        raise StateError(f"state dimension {dim} is not a power of two >= 2")
    return n


@dataclass(frozen=True)
class QuantumState:
    """A density matrix on ``n`` qubits, with its state vector when pure."""

    n: int
    rho: np.ndarray
    vector: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return self.rho.shape[0]

    @property
    def is_pure(self) -> bool:
        return self.vector is not None

    @property
    def real_flag(self) -> bool:
        """True when every entry of rho is real (rho* == rho)."""
        return float(np.max(np.abs(self.rho.imag))) <= STATE_TOL

    def purity(self) -> float:
        return float(np.real(np.trace(self.rho @ self.rho)))


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def _from_vector(psi: np.ndarray) -> QuantumState:
    n = _num_qubits(psi.shape[0])
    rho = np.outer(psi, psi.conj())
    return QuantumState(n, _freeze(rho), _freeze(psi))


def pure_state(amplitudes, normalize: bool = False) -> QuantumState:
    """State from a vector of ``2**n`` amplitudes.

    Unless ``normalize`` is set the vector must already have unit norm.
    """
    psi = np.array(amplitudes, dtype=np.complex128).ravel()
    _num_qubits(psi.shape[0])
    norm = np.linalg.norm(psi)
    if norm == 0:
        raise StateError("zero vector is not a state")
    if normalize:
        psi = psi / norm
    elif abs(norm - 1) > STATE_TOL:
        raise StateError(f"state vector has norm {norm!r}; pass normalize=True to rescale")
    return _from_vector(psi)


def basis_state(bits: str) -> QuantumState:
    """Computational basis state, e.g. ``basis_state('01')`` is ``|01>``."""
    if not bits or set(bits) - {"0", "1"}:
        raise StateError(f"bad basis label {bits!r}")
    psi = np.zeros(1 << len(bits), dtype=np.complex128)
    psi[int(bits, 2)] = 1
    return _from_vector(psi)


def bell_state(label) -> QuantumState:
    label = BellLabel(label)
    s = 1 / np.sqrt(2)
    amps = {
        BellLabel.PHI_PLUS: (s, 0, 0, s),
        BellLabel.PHI_MINUS: (s, 0, 0, -s),
        BellLabel.PSI_PLUS: (0, s, s, 0),
        BellLabel.PSI_MINUS: (0, s, -s, 0),
    }[label]
    return _from_vector(np.array(amps, dtype=np.complex128))


def density_matrix(rho) -> QuantumState:
    """Validate and wrap a density matrix.

    The vector is recovered when rho has rank one.
    """
    rho = np.array(rho, dtype=np.complex128)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise StateError(f"density matrix must be square, got shape {rho.shape}")
    n = _num_qubits(rho.shape[0])
    w, v = hermitian_eig(rho, STATE_TOL)
    if abs(np.trace(rho) - 1) > STATE_TOL:
        raise StateError(f"trace of rho is {np.trace(rho).real!r}, expected 1")
    if w[0] < -PSD_TOL:
        raise StateError(f"rho has negative eigenvalue {w[0]:.3e}")
    vector = None
    if w[-1] >= 1 - PSD_TOL:
        psi = v[:, -1]
        # fix the global phase on the largest amplitude
        k = int(np.argmax(np.abs(psi)))
        psi = psi * (abs(psi[k]) / psi[k])
        if np.max(np.abs(np.outer(psi, psi.conj()) - rho)) <= STATE_TOL:
            vector = _freeze(psi)
    return QuantumState(n, _freeze(rho), vector)


def mixed_state(components: Iterable[tuple[float, Sequence[complex]]]) -> QuantumState:
    """``rho = sum_i p_i |psi_i><psi_i|`` from ``(p_i, psi_i)`` pairs."""
    components = list(components)
    if not components:
        raise StateError("mixed_state needs at least one component")
    weights = np.array([p for p, _ in components], dtype=float)
    if np.any(weights < 0):
        raise StateError(f"negative weight in {weights.tolist()}")
    if abs(weights.sum() - 1) > STATE_TOL:
        raise StateError(f"weights sum to {weights.sum()!r}, expected 1")
    vecs = [pure_state(psi, normalize=True).vector for _, psi in components]
    dims = {v.shape[0] for v in vecs}
    if len(dims) != 1:
        raise StateError(f"components have different dimensions {sorted(dims)}")
    rho = sum(p * np.outer(v, v.conj()) for p, v in zip(weights, vecs))
    return density_matrix(rho)


def purify(state: QuantumState) -> QuantumState:
    """Purification on ``2n`` qubits, system first and ancilla second.

    Uses the eigenbasis of rho, pairing the i-th eigenvector (ascending
    eigenvalue order) with the ancilla basis vector ``|i>``.
    """
    w, v = hermitian_eig(state.rho, STATE_TOL)
    w = np.where(w < 0, 0.0, w)
    d = state.dim
    psi = np.zeros(d * d, dtype=np.complex128)
    for i in range(d):
        if w[i] == 0:
            continue
        ancilla = np.zeros(d)
        ancilla[i] = 1
        psi += np.sqrt(w[i]) * np.kron(v[:, i], ancilla)
    return pure_state(psi, normalize=True)


def partial_trace(state, keep: Sequence[int], n: int | None = None) -> np.ndarray:
    """Reduced density matrix on the qubits listed in ``keep``.

    Args:
        state: A :class:`QuantumState` or a density matrix array.
        keep: Qubit indices to keep, 0 being the leftmost tensor factor.
        n: Qubit count, only needed for raw arrays of ambiguous size.
    """
    rho = state.rho if isinstance(state, QuantumState) else np.asarray(state, dtype=np.complex128)
    n = n or _num_qubits(rho.shape[0])
    keep = sorted(keep)
    if len(set(keep)) != len(keep) or any(not 0 <= q < n for q in keep):
        raise StateError(f"invalid subsystem {keep} for {n} qubits")
    traced = [q for q in range(n) if q not in keep]
    t = rho.reshape((2,) * (2 * n))
    # trace out from the highest index so axis numbers stay valid
    for k, q in enumerate(reversed(traced)):
        remaining = n - k
        t = np.trace(t, axis1=q, axis2=q + remaining)
    d = 1 << len(keep)
    return t.reshape(d, d)


def random_real_pure_state(rng: np.random.Generator, n: int = 2) -> QuantumState:
    psi = rng.standard_normal(1 << n)
    return pure_state(psi, normalize=True)


def random_pure_state(rng: np.random.Generator, n: int = 2) -> QuantumState:
    psi = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
    return pure_state(psi, normalize=True)


def random_mixed_state(rng: np.random.Generator, n: int = 2, rank: int | None = None) -> QuantumState:
    """Random mixed state of the given rank (full rank by default)."""
    d = 1 << n
    rank = rank or d
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = g @ g.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return density_matrix(rho / np.trace(rho).real)


def parse_state(spec: str) -> QuantumState:
    """Parse a CLI state spec.

    Accepts a Bell label (``phi+``, ``phi-``, ``psi+``, ``psi-``), a basis
    label ``basis:01``, or a JSON amplitude list. Complex amplitudes are
    written as ``[re, im]`` pairs.
    """
    text = spec.strip()
    if text.lower() in {b.value for b in BellLabel}:
        return bell_state(text.lower())
    if text.lower().startswith("basis:"):
        return basis_state(text.split(":", 1)[1].strip())
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        raise StateError(f"unrecognised state spec {spec!r}") from None
    if not isinstance(data, list) or not data:
        raise StateError(f"state amplitudes must be a non-empty JSON list, got {spec!r}")
    amps = [complex(a[0], a[1]) if isinstance(a, list) else complex(a) for a in data]
    return pure_state(amps, normalize=True)
