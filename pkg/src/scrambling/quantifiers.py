"""OTOC, Uhlmann fidelity, Bures metric and concurrence quantifiers.

Everything is built on the four-point trace

    Z = Tr[W(t) V W(t) V rho],

for which the OTOC ``<[W(t),V]^dag [W(t),V]>`` equals ``2 (1 - Re Z)``
and the forward/backward overlap fidelity equals ``|Z|**2``. Most quantities
here are computed by two independent routes so the links between them can
be checked numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import bisect, brentq

from .evolution import EXACT, EvolutionMethod, Propagator, heisenberg_evolve
from .linalg import DimensionError, as_matrix, commutator
from .operators import CertificationError, OperatorPair, spin_flip_operator
from .states import QuantumState, purify

#: Values this far below a square-root domain are treated as rounding noise.
CLAMP_TOL = 1e-12
BRANCH_TOL = 1e-12


class QuantifierDomainError(ValueError):
    """Raised when an argument is outside a formula's domain beyond tolerance."""


class RealStateRequired(ValueError):
    """Raised by the trace concurrence for states with complex entries."""


def _clamped_sqrt(x: float, what: str) -> float:
    if x < -CLAMP_TOL:
        raise QuantifierDomainError(f"{what} = {x!r} is negative beyond tolerance {CLAMP_TOL}")
    return math.sqrt(max(x, 0.0))


def _check_dims(pair: OperatorPair, state: QuantumState) -> None:
    if pair.dim != state.dim:
        raise DimensionError(f"operators are {pair.dim}-dim but the state is {state.dim}-dim")


def _w_t(pair: OperatorPair, h, t: float, method: EvolutionMethod) -> np.ndarray:
    return heisenberg_evolve(pair.w0, h, t, method)


# ---------------------------------------------------------------------------
# four-point trace


def compute_m(pair: OperatorPair, h, t: float, state: QuantumState,
              method: EvolutionMethod = EXACT) -> np.ndarray:
    """``M = W(t) V W(t) V rho``."""
    _check_dims(pair, state)
    w = _w_t(pair, h, t, method)
    return w @ pair.v @ w @ pair.v @ state.rho


def compute_z(pair: OperatorPair, h, t: float, state: QuantumState,
              method: EvolutionMethod = EXACT) -> complex:
    return complex(np.trace(compute_m(pair, h, t, state, method)))


def compute_z_via_purification(pair: OperatorPair, h, t: float, state: QuantumState,
                               method: EvolutionMethod = EXACT) -> complex:
    """Z as ``<Psi| (W(t) V W(t) V (x) I_B) |Psi>`` on a purification of rho."""
    _check_dims(pair, state)
    w = _w_t(pair, h, t, method)
    psi = purify(state).vector
    op = np.kron(w @ pair.v @ w @ pair.v, np.eye(state.dim))
    return complex(np.vdot(psi, op @ psi))


# ---------------------------------------------------------------------------
# OTOC


def otoc_operator(w_t, v) -> np.ndarray:
    """``C(t) = [W(t), V]^dag [W(t), V]``."""
    c = commutator(w_t, v)
    return c.conj().T @ c


def otoc_direct(pair: OperatorPair, h, t: float, state: QuantumState,
                method: EvolutionMethod = EXACT) -> float:
    """``Tr[C(t) rho]`` evaluated from the commutator itself."""
    if not pair.hermitian_unitary_certified:
        raise CertificationError("otoc_direct requires a certified Hermitian+unitary pair")
    _check_dims(pair, state)
    w = _w_t(pair, h, t, method)
    return float(np.real(np.trace(otoc_operator(w, pair.v) @ state.rho)))


def otoc_from_z(z: complex) -> float:
    return 2.0 * (1.0 - z.real)


def otoc_fidelity_branch(f: float, im_z: float) -> float:
    """``2 [1 - sqrt(f - Im(Z)^2)]``.

    This inverts ``f = Re(Z)^2 + Im(Z)^2`` taking the non-negative root, so
    it only agrees with the commutator OTOC when ``Re Z >= 0``.
    """
    return 2.0 * (1.0 - _clamped_sqrt(f - im_z * im_z, "f - Im(Z)^2"))


def otoc_from_bures(d: float, im_z: float) -> float:
    """The fidelity-branch OTOC rewritten in terms of the Bures metric."""
    root_f = 1.0 - d * d / 2.0
    return 2.0 * (1.0 - _clamped_sqrt(root_f * root_f - im_z * im_z, "(1-D^2/2)^2 - Im(Z)^2"))


# ---------------------------------------------------------------------------
# fidelity and Bures metric


def forward_backward_states(w_t, v, state: QuantumState) -> tuple[np.ndarray, np.ndarray]:
    """``|x> = W(t) V |psi>`` and ``|y> = V W(t) |psi>``.

    Mixed states are handled on their purification with both operators
    extended by the ancilla identity.
    """
    if state.is_pure:
        psi = state.vector
    else:
        psi = purify(state).vector
        ancilla = np.eye(state.dim)
        w_t, v = np.kron(w_t, ancilla), np.kron(v, ancilla)
    return w_t @ (v @ psi), v @ (w_t @ psi)


def uhlmann_fidelity(pair: OperatorPair, h, t: float, state: QuantumState,
                     method: EvolutionMethod = EXACT) -> float:
    """``|<y|x>|^2`` between the forward and backward ordered states."""
    _check_dims(pair, state)
    x, y = forward_backward_states(_w_t(pair, h, t, method), pair.v, state)
    return float(abs(np.vdot(y, x)) ** 2)


def bures_metric(f: float) -> float:
    if not -CLAMP_TOL <= f <= 1 + CLAMP_TOL:
        raise QuantifierDomainError(f"fidelity {f!r} outside [0, 1]")
    root = math.sqrt(min(max(f, 0.0), 1.0))
    return math.sqrt(2.0 * (1.0 - root))


def bures_from_states(x, y) -> float:
    """Bures metric between the rays of ``x`` and ``y``.

    Equal to ``bures_metric(|<y|x>|^2)`` but evaluated as
    ``min_phi ||x - e^{i phi} y||``, which stays accurate near ``f = 1``
    where the square-root form loses half the significant digits.
    """
    overlap = np.vdot(y, x)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    return float(np.linalg.norm(x - phase * y))


# ---------------------------------------------------------------------------
# concurrence


def concurrence_of_vector(psi) -> float:
    """``|<psi| Y(x)Y |psi*>|`` for a two-qubit vector."""
    psi = np.asarray(psi, dtype=np.complex128).ravel()
    if psi.shape != (4,):
        raise DimensionError(f"concurrence needs a two-qubit vector, got length {psi.shape[0]}")
    return float(abs(np.vdot(psi, spin_flip_operator() @ psi.conj())))


def concurrence_spinflip(state: QuantumState) -> float:
    if state.dim != 4:
        raise DimensionError(f"concurrence needs a two-qubit state, got dim {state.dim}")
    if not state.is_pure:
        raise ValueError("spin-flip concurrence is defined here for pure states only")
    return concurrence_of_vector(state.vector)


def concurrence_trace(pair: OperatorPair, h, t: float, state: QuantumState,
                      method: EvolutionMethod = EXACT) -> float:
    """``|Tr[W(t) V W(t) V rho]|``; only meaningful for real rho."""
    if not state.real_flag:
        raise RealStateRequired(
            "the trace form of the concurrence assumes rho* == rho; "
            "this state has complex entries")
    return abs(compute_z(pair, h, t, state, method))


def concurrence_from_otoc(c: float, im_z: float) -> float:
    """Concurrence recovered from an OTOC value and Im(Z)."""
    return math.sqrt((1.0 - c / 2.0) ** 2 + im_z * im_z)


# ---------------------------------------------------------------------------
# template structure of M


@dataclass(frozen=True)
class MStructureReport:
    matches_template: bool
    residual: float
    trace_m: complex
    trace_flip_m: complex


def m_template(a, b, c, d, e, f, g, h, i, j, k, l) -> np.ndarray:  # noqa: E741
    """4x4 matrix whose trace magnitude is unchanged by ``Y(x)Y``."""
    return np.array([
        [a, b, c, -a],
        [d, e, e, f],
        [g, h, h, i],
        [j, k, l, -j],
    ], dtype=np.complex128)


def check_m_structure(m, tol: float = 1e-10) -> MStructureReport:
    m = as_matrix(m)
    if m.shape != (4, 4):
        raise DimensionError(f"template check needs a 4x4 matrix, got {m.shape[0]}x{m.shape[0]}")
    residual = max(
        abs(m[0, 3] + m[0, 0]),
        abs(m[1, 1] - m[1, 2]),
        abs(m[2, 1] - m[2, 2]),
        abs(m[3, 3] + m[3, 0]),
    )
    return MStructureReport(
        matches_template=bool(residual <= tol),
        residual=float(residual),
        trace_m=complex(np.trace(m)),
        trace_flip_m=complex(np.trace(spin_flip_operator() @ m)),
    )


# ---------------------------------------------------------------------------
# full per-time record


@dataclass(frozen=True)
class QuantifierSample:
    t: float
    z: complex
    c_direct: float
    c_fidelity_branch: float
    f: float
    bures_d: float
    concurrence_trace: float
    concurrence_spinflip: float
    branch_valid: bool
    f_overlap: float = float("nan")

    @property
    def f_r(self) -> float:
        return self.z.real

    @property
    def im_z(self) -> float:
        return self.z.imag

    @property
    def signed_trace_cos(self) -> float:
        return self.z.real


def sample_from_evolved(t: float, w_t, v, state: QuantumState) -> QuantifierSample:
    """Every quantifier at one time, given the already evolved ``W(t)``.

    ``f`` is ``|Z|^2`` from the trace; ``f_overlap`` is the independent
    forward/backward overlap. ``concurrence_spinflip`` is taken on the
    forward state ``W(t) V |psi>`` for two-qubit pure states and is NaN
    otherwise; ``concurrence_trace`` is NaN for states with complex rho.
    """
    wv = w_t @ v
    z = complex(np.trace(wv @ wv @ state.rho))
    f = abs(z) ** 2
    x, y = forward_backward_states(w_t, v, state)
    f_overlap = float(abs(np.vdot(y, x)) ** 2)
    c_direct = float(np.real(np.trace(otoc_operator(w_t, v) @ state.rho)))
    if state.is_pure and state.dim == 4:
        cr_flip = concurrence_of_vector(x)
    else:
        cr_flip = float("nan")
    return QuantifierSample(
        t=float(t),
        z=z,
        c_direct=c_direct,
        c_fidelity_branch=otoc_fidelity_branch(f, z.imag),
        f=f,
        bures_d=bures_from_states(x, y),
        concurrence_trace=abs(z) if state.real_flag else float("nan"),
        concurrence_spinflip=cr_flip,
        branch_valid=z.real >= -BRANCH_TOL,
        f_overlap=f_overlap,
    )


def sample_quantifiers(pair: OperatorPair, h, t: float, state: QuantumState,
                       method: EvolutionMethod = EXACT) -> QuantifierSample:
    _check_dims(pair, state)
    return sample_from_evolved(t, _w_t(pair, h, t, method), pair.v, state)


def sample_series(pair: OperatorPair, h, times: Sequence[float], state: QuantumState,
                  method: EvolutionMethod = EXACT) -> list[QuantifierSample]:
    """Quantifiers on a time grid, reusing one eigendecomposition of H."""
    _check_dims(pair, state)
    if method.is_exact:
        prop = Propagator(h)
        return [sample_from_evolved(t, prop.evolve(pair.w0, t), pair.v, state) for t in times]
    return [sample_quantifiers(pair, h, t, state, method) for t in times]


# ---------------------------------------------------------------------------
# balancing points


def scrambling_balance_fidelity() -> tuple[float, float]:
    """Fidelity where ``2(1 - sqrt f) == sqrt f`` and the common value there.

    Solved numerically on ``f`` in ``[0, 1]``.
    """
    f_star = brentq(lambda f: 2 * (1 - math.sqrt(f)) - math.sqrt(f), 0.0, 1.0,
                    xtol=1e-15, rtol=4 * np.finfo(float).eps)
    return f_star, math.sqrt(f_star)


def balancing_points(t, curve_c, curve_cr, refine: Callable[[float], float] | None = None,
                     tol: float = 1e-9) -> list[float]:
    """Abscissae where two sampled curves cross.

    Args:
        t: Uniform, increasing grid shared by both curves.
        curve_c: Scrambling values on the grid.
        curve_cr: Concurrence values on the grid.
        refine: Optional callable returning ``c(t) - cr(t)`` at arbitrary
            ``t``. When given, each bracketed crossing is refined by
            bisection to ``tol``; otherwise crossings are linearly
            interpolated between grid points.
        tol: Bisection tolerance on the abscissa.

    Returns:
        Sorted crossing positions. Grid points where the difference is
        exactly zero count once.
    """
    t = np.asarray(t, dtype=float)
    diff = np.asarray(curve_c, dtype=float) - np.asarray(curve_cr, dtype=float)
    if t.size == 0:
        raise ValueError("balancing_points needs a non-empty grid")
    if t.shape != diff.shape:
        raise DimensionError(f"grid has {t.size} points but curves have {diff.size}")
    roots: list[float] = []
    for k in range(t.size - 1):
        d0, d1 = diff[k], diff[k + 1]
        if d0 == 0:
            roots.append(float(t[k]))
            continue
        if d0 * d1 >= 0:
            continue
        if refine is None:
            roots.append(float(t[k] - d0 * (t[k + 1] - t[k]) / (d1 - d0)))
        else:
            roots.append(float(bisect(refine, t[k], t[k + 1], xtol=tol, maxiter=200)))
    if diff[-1] == 0:
        roots.append(float(t[-1]))
    return roots
