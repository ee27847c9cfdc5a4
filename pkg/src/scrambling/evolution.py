"""Ising Hamiltonian and Heisenberg-picture evolution of W(0).

Exact evolution conjugates by ``exp(iHt)`` built from the eigendecomposition
of H. The truncated nested-commutator series

    W(t) = sum_m (i t)^m / m! [H, [H, ... [H, W(0)]]]

is available for convergence studies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import (CERT_TOL, DimensionError, as_matrix, hermitian_eig, kron,
                     max_norm)
from .operators import pauli


@dataclass(frozen=True)
class IsingParams:
    """Two-qubit Ising parameters (hbar = 1).

    ``coupling_multiplier`` and ``field_multiplier`` scale the ``Z Z`` and
    field terms by 1 or 2, covering both readings of a doubled site sum.
    """

    j_z: float
    b: float
    coupling_multiplier: int = 1
    field_multiplier: int = 1

    def __post_init__(self):
        for name in ("coupling_multiplier", "field_multiplier"):
            if getattr(self, name) not in (1, 2):
                raise ValueError(f"{name} must be 1 or 2, got {getattr(self, name)!r}")


def ising_hamiltonian(params: IsingParams) -> np.ndarray:
    """``H = -c j_z Z(x)Z - f b (Z(x)I + I(x)Z)`` with multipliers ``c``, ``f``."""
    z, i = pauli("z"), pauli("i")
    coupling = params.coupling_multiplier * params.j_z
    field = params.field_multiplier * params.b
    return -coupling * kron(z, z) - field * (kron(z, i) + kron(i, z))


@dataclass(frozen=True)
class EvolutionMethod:
    """Either exact conjugation (``order is None``) or a truncated series."""

    order: int | None = None

    def __post_init__(self):
        if self.order is not None and self.order < 0:
            raise ValueError(f"series order must be non-negative, got {self.order}")

    @property
    def is_exact(self) -> bool:
        return self.order is None

    @classmethod
    def parse(cls, text: str) -> "EvolutionMethod":
        """Parse ``exact`` or ``bch:N``."""
        t = text.strip().lower()
        if t == "exact":
            return cls()
        if t.startswith("bch:"):
            try:
                return cls(int(t[4:]))
            except ValueError:
                pass
        raise ValueError(f"bad evolution method {text!r}; expected 'exact' or 'bch:N'")

    def __str__(self) -> str:
        return "exact" if self.is_exact else f"bch:{self.order}"


EXACT = EvolutionMethod()


def BCH(order: int) -> EvolutionMethod:
    return EvolutionMethod(order)


class Propagator:
    """Caches the eigendecomposition of H for repeated evolutions."""

    def __init__(self, h, tol: float = CERT_TOL):
        self.h = as_matrix(h)
        self.energies, self.basis = hermitian_eig(self.h, tol)

    def unitary(self, t: float) -> np.ndarray:
        """``exp(iHt)``."""
        return (self.basis * np.exp(1j * self.energies * t)) @ self.basis.conj().T

    def evolve(self, w0, t: float) -> np.ndarray:
        w0 = as_matrix(w0)
        if w0.shape != self.h.shape:
            raise DimensionError(f"W(0) is {w0.shape[0]}-dim but H is {self.h.shape[0]}-dim")
        # work in the energy basis: (V^dag W0 V)_{kl} picks up exp(i(E_k - E_l) t)
        w_e = self.basis.conj().T @ w0 @ self.basis
        phase = np.exp(1j * self.energies * t)
        w_e = phase[:, None] * w_e * phase.conj()[None, :]
        return self.basis @ w_e @ self.basis.conj().T


def bch_terms(w0, h, t: float, max_order: int):
    """Yield successive series terms ``(i t)^m / m! K_m`` for ``m = 0..max_order``.

    ``K_0 = W(0)`` and ``K_{m+1} = [H, K_m]``.
    """
    k = as_matrix(w0)
    h = as_matrix(h)
    if k.shape != h.shape:
        raise DimensionError(f"W(0) is {k.shape[0]}-dim but H is {h.shape[0]}-dim")
    coeff = 1.0 + 0j
    for m in range(max_order + 1):
        yield coeff * k
        k = h @ k - k @ h
        coeff *= 1j * t / (m + 1)


def bch_partial_sum(w0, h, t: float, order: int) -> np.ndarray:
    return sum(bch_terms(w0, h, t, order))


def heisenberg_evolve(w0, h, t: float, method: EvolutionMethod = EXACT) -> np.ndarray:
    """``W(t) = exp(iHt) W(0) exp(-iHt)``, exactly or as a truncated series."""
    if method.is_exact:
        return Propagator(h).evolve(w0, t)
    hermitian_eig(h)  # certify H even though the series does not need it
    return bch_partial_sum(w0, h, t, method.order)


def bch_convergence_report(w0, h, t: float, max_order: int) -> list[tuple[int, float]]:
    """Max-norm deviation of each partial sum from exact evolution.

    Returns ``[(order, deviation), ...]`` for orders ``0..max_order``.
    """
    exact = heisenberg_evolve(w0, h, t)
    report = []
    partial = np.zeros_like(exact)
    for m, term in enumerate(bch_terms(w0, h, t, max_order)):
        partial = partial + term
        report.append((m, max_norm(partial - exact)))
    return report


def bch_remainder_bound(h_norm: float, w0_norm: float, t: float, order: int) -> float:
    """A priori bound on the series truncation error after ``order`` terms.

    Each nested commutator satisfies ``||K_m|| <= (2||H||)^m ||W(0)||``, so the
    tail is bounded by the exponential-series remainder of ``x = 2||H|||t|``.
    """
    x = 2 * h_norm * abs(t)
    return x ** (order + 1) / math.factorial(order + 1) * w0_norm * math.exp(x)
