"""Pauli operators, single-qubit embeddings and certified scrambling pairs."""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .linalg import (CERT_TOL, DimensionError, as_matrix, hermiticity_defect,
                     kron, unitarity_defect)


class Pauli(str, Enum):
    I = "i"
    X = "x"
    Y = "y"
    Z = "z"

    @classmethod
    def parse(cls, label) -> "Pauli":
        if isinstance(label, Pauli):
            return label
        try:
            return cls(str(label).strip().lower())
        except ValueError:
            raise ValueError(f"unknown Pauli label {label!r}; expected one of i, x, y, z") from None


_PAULI = {
    Pauli.I: np.array([[1, 0], [0, 1]], dtype=np.complex128),
    Pauli.X: np.array([[0, 1], [1, 0]], dtype=np.complex128),
    Pauli.Y: np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    Pauli.Z: np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


def pauli(label) -> np.ndarray:
    return _PAULI[Pauli.parse(label)].copy()


def embed_on_qubit(label, qubit: int, n: int) -> np.ndarray:
    """Pauli ``label`` acting on ``qubit`` of an ``n``-qubit register.

    Qubit 0 is the leftmost Kronecker factor, so ``embed_on_qubit('x', 0, 2)``
    is ``X (x) I``.
    """
    if n < 1:
        raise ValueError(f"qubit count must be positive, got {n}")
    if not 0 <= qubit < n:
        raise IndexError(f"qubit index {qubit} out of range for {n} qubits")
    factors = [_PAULI[Pauli.I]] * n
    factors[qubit] = _PAULI[Pauli.parse(label)]
    return kron(*factors)


_YY = np.kron(_PAULI[Pauli.Y], _PAULI[Pauli.Y])
_YY.setflags(write=False)


def spin_flip_operator() -> np.ndarray:
    """The two-qubit spin flip ``Y (x) Y`` (read-only)."""
    return _YY


class CertificationError(ValueError):
    """Raised when a scrambling operator is not Hermitian and unitary."""


@dataclass(frozen=True)
class OperatorPair:
    """The scrambling pair ``{W(0), V}``.

    Both members are Hermitian and unitary; construction through
    :func:`make_pair` or :func:`custom_pair` guarantees it.
    """

    w0: np.ndarray
    v: np.ndarray
    labels: tuple[Pauli, Pauli, int] | None = None
    hermitian_unitary_certified: bool = False

    @property
    def dim(self) -> int:
        return self.w0.shape[0]

    @property
    def name(self) -> str:
        """CLI-style name such as ``x1/z1`` (1-based qubit), or ``custom``."""
        if self.labels is None:
            return "custom"
        i, j, q = self.labels
        return f"{i.value}{q + 1}/{j.value}{q + 1}"

    def swapped(self) -> "OperatorPair":
        labels = None if self.labels is None else (self.labels[1], self.labels[0], self.labels[2])
        return OperatorPair(self.v, self.w0, labels, self.hermitian_unitary_certified)


def _certify(op: np.ndarray, which: str, tol: float) -> None:
    h = hermiticity_defect(op)
    u = unitarity_defect(op)
    if h > tol or u > tol:
        raise CertificationError(
            f"{which} must be Hermitian and unitary: hermiticity defect {h:.3e}, "
            f"unitarity defect {u:.3e} (tol {tol:.1e})")


def custom_pair(w0, v, tol: float = CERT_TOL) -> OperatorPair:
    """Certify an arbitrary ``{W(0), V}`` pair."""
    w0, v = as_matrix(w0), as_matrix(v)
    if w0.shape != v.shape:
        raise DimensionError(f"W(0) is {w0.shape[0]}-dim but V is {v.shape[0]}-dim")
    _certify(w0, "W(0)", tol)
    _certify(v, "V", tol)
    w0.setflags(write=False)
    v.setflags(write=False)
    return OperatorPair(w0, v, None, True)


def make_pair(i, j, qubit: int = 0, n: int = 2) -> OperatorPair:
    """Pair ``{sigma_i on qubit, sigma_j on qubit}`` for an ``n``-qubit register."""
    i, j = Pauli.parse(i), Pauli.parse(j)
    pair = custom_pair(embed_on_qubit(i, qubit, n), embed_on_qubit(j, qubit, n))
    return OperatorPair(pair.w0, pair.v, (i, j, qubit), True)


#: The six unordered combinations studied for Bell states.
BELL_STUDY_PAIRS = (("x", "x"), ("x", "y"), ("x", "z"), ("y", "y"), ("y", "z"), ("z", "z"))

_OP_LABEL = re.compile(r"^\s*([ixyzIXYZ])\s*(\d*)\s*$")


def parse_operator_label(text: str, default_qubit: int = 1) -> tuple[Pauli, int]:
    """Parse a CLI label like ``x1`` into ``(Pauli.X, 0)``.

    The qubit suffix is 1-based; a bare axis (``"x"``) uses ``default_qubit``.
    """
    m = _OP_LABEL.match(text)
    if not m:
        raise ValueError(f"bad operator label {text!r}; expected e.g. 'x1', 'y2', 'z'")
    qubit = int(m.group(2)) if m.group(2) else default_qubit
    if qubit < 1:
        raise ValueError(f"qubit numbers in labels are 1-based, got {qubit}")
    return Pauli.parse(m.group(1)), qubit - 1


def parse_pair(w: str, v: str, n: int = 2, default_qubit: int = 1) -> OperatorPair:
    """Build a pair from CLI labels. Both labels must target the same qubit."""
    wi, wq = parse_operator_label(w, default_qubit)
    vi, vq = parse_operator_label(v, default_qubit)
    if wq != vq:
        pair = custom_pair(embed_on_qubit(wi, wq, n), embed_on_qubit(vi, vq, n))
        return pair
    return make_pair(wi, vi, wq, n)
