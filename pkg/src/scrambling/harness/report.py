"""Comparison of computed Bell-state dynamics against closed-form reference curves.

The report records deviations only. It never decides which Hamiltonian
reading was intended: every coupling/field multiplier combination is
evaluated and reported side by side.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from ..evolution import IsingParams, ising_hamiltonian
from ..operators import BELL_STUDY_PAIRS, make_pair
from ..quantifiers import sample_series
from ..states import BellLabel, bell_state
from .fit import fit_frequency

#: Pairs for which oscillating closed forms are quoted.
OSCILLATING_PAIRS = (("x", "x"), ("x", "y"), ("y", "y"))
#: Pairs quoted as giving the constants {OTOC, f, D, Cr} = {0, 1, 0, 1}.
CONSTANT_PAIRS = (("x", "z"), ("y", "z"), ("z", "z"))
CONVENTIONS = tuple(itertools.product((1, 2), (1, 2)))

QUANTIFIERS = ("otoc_direct", "otoc_fidelity_branch", "fidelity", "bures",
               "concurrence_trace", "signed_trace_cos")


def closed_form_curves(times, j_z: float, b: float, family: str) -> dict[str, np.ndarray]:
    """Closed-form reference curves on ``times``.

    ``family`` is ``"oscillating"`` (angle ``4 t (b + j_z)``) or
    ``"constant"``. The reference concurrence is the signed cosine.
    """
    times = np.asarray(times, dtype=float)
    if family == "constant":
        zero, one = np.zeros_like(times), np.ones_like(times)
        return {"otoc": zero, "fidelity": one, "bures": zero, "concurrence": one}
    cos = np.cos(4 * times * (b + j_z))
    return {
        "otoc": 2 * (1 - cos),
        "fidelity": cos ** 2,
        "bures": math.sqrt(2) * np.sqrt(np.maximum(1 - cos, 0.0)),
        "concurrence": cos,
    }


def _family(i: str, j: str) -> str:
    key = tuple(sorted((i, j)))
    if key in OSCILLATING_PAIRS:
        return "oscillating"
    if key in CONSTANT_PAIRS:
        return "constant"
    raise ValueError(f"pair {i}/{j} is not one of the studied combinations")


def _maxdev(a: np.ndarray, b: np.ndarray, mask: np.ndarray | None = None) -> float | None:
    d = np.abs(a - b)
    if mask is not None:
        if not mask.any():
            return None
        d = d[mask]
    return float(np.max(d))


def _curve_fit_summary(times, y) -> dict:
    if len(times) < 64:
        return {"is_periodic": None, "omega": None, "is_pure_sinusoid": None}
    fit = fit_frequency(times, y)
    return {"is_periodic": fit.is_periodic, "omega": fit.fundamental_omega,
            "is_pure_sinusoid": fit.is_pure_sinusoid}


def comparison_report(state, pair: tuple[str, str], j_z: float, b: float, times,
                            qubit: int = 0) -> dict:
    """Computed vs closed-form quantifiers for one Bell state and Pauli pair.

    Args:
        state: Bell label (``"phi+"`` etc).
        pair: Pauli axes ``(w, v)``, e.g. ``("x", "z")``.
        j_z, b: Coupling and field as quoted in the closed forms.
        times: Uniform time grid.
        qubit: Target qubit (0-based).

    Returns:
        A JSON-serialisable dict with one entry per convention combination,
        holding max absolute deviations per quantifier, values at the first
        grid time, and fitted fidelity frequencies.
    """
    times = np.asarray(times, dtype=float)
    label = BellLabel(state)
    i, j = pair
    family = _family(i, j)
    psi = bell_state(label)
    op_pair = make_pair(i, j, qubit, 2)
    reference = closed_form_curves(times, j_z, b, family)
    conventions = []
    for cm, fm in CONVENTIONS:
        params = IsingParams(j_z, b, cm, fm)
        samples = sample_series(op_pair, ising_hamiltonian(params), times, psi)
        col = {
            "otoc_direct": np.array([s.c_direct for s in samples]),
            "otoc_fidelity_branch": np.array([s.c_fidelity_branch for s in samples]),
            "fidelity": np.array([s.f for s in samples]),
            "bures": np.array([s.bures_d for s in samples]),
            "concurrence_trace": np.array([s.concurrence_trace for s in samples]),
            "signed_trace_cos": np.array([s.signed_trace_cos for s in samples]),
        }
        im_z = np.array([s.im_z for s in samples])
        valid = np.array([s.branch_valid for s in samples])
        against = {
            "otoc_direct": reference["otoc"],
            "otoc_fidelity_branch": reference["otoc"],
            "fidelity": reference["fidelity"],
            "bures": reference["bures"],
            "concurrence_trace": reference["concurrence"],
            "signed_trace_cos": reference["concurrence"],
        }
        first = samples[0]
        conventions.append({
            "coupling_multiplier": cm,
            "field_multiplier": fm,
            "max_abs_deviation": {q: _maxdev(col[q], against[q]) for q in QUANTIFIERS},
            "max_abs_deviation_branch_valid": {
                q: _maxdev(col[q], against[q], valid) for q in QUANTIFIERS},
            "branch_valid_fraction": float(valid.mean()),
            "max_abs_im_z": float(np.max(np.abs(im_z))),
            "first_sample": {
                "t": first.t,
                "otoc_direct": first.c_direct,
                "otoc_fidelity_branch": first.c_fidelity_branch,
                "fidelity": first.f,
                "bures": first.bures_d,
                "concurrence_trace": first.concurrence_trace,
                "re_z": first.z.real,
                "im_z": first.z.imag,
                "closed_form_otoc": float(reference["otoc"][0]),
                "closed_form_fidelity": float(reference["fidelity"][0]),
                "closed_form_bures": float(reference["bures"][0]),
                "closed_form_concurrence": float(reference["concurrence"][0]),
            },
            "fidelity_fit": _curve_fit_summary(times, col["fidelity"]),
            "closed_form_fidelity_omega": 0.0 if family == "constant" else abs(8 * (b + j_z)),
        })
    return {
        "state": label.value,
        "pair": op_pair.name,
        "family": family,
        "j_z": j_z,
        "b": b,
        "grid": {"t_min": float(times[0]), "t_max": float(times[-1]), "steps": int(times.size)},
        "conventions": conventions,
    }


def full_report(j_z: float, b: float, times, states=None, pairs=None) -> dict:
    """Reports for every requested Bell state and pair (all by default)."""
    states = states or [s.value for s in BellLabel]
    pairs = pairs or list(BELL_STUDY_PAIRS)
    cases = [comparison_report(s, p, j_z, b, times) for p in pairs for s in states]
    worst = {q: max((c["max_abs_deviation"][q] for case in cases for c in case["conventions"]),
                    default=None) for q in QUANTIFIERS}
    return {"j_z": j_z, "b": b, "cases": cases, "worst_max_abs_deviation": worst}


def format_text(report: dict) -> str:
    """Fixed-width table: one row per case and convention."""
    head = (f"{'pair':<7} {'state':<5} {'cm':>2} {'fm':>2} " +
            " ".join(f"{q[:14]:>14}" for q in QUANTIFIERS) + f" {'C(t0)':>8} {'Cfb(t0)':>8}")
    rows = [f"j_z={report['j_z']} b={report['b']}", head]
    for case in report["cases"]:
        for c in case["conventions"]:
            devs = " ".join(f"{c['max_abs_deviation'][q]:>14.3e}" for q in QUANTIFIERS)
            fs = c["first_sample"]
            rows.append(f"{case['pair']:<7} {case['state']:<5} {c['coupling_multiplier']:>2} "
                        f"{c['field_multiplier']:>2} {devs} {fs['otoc_direct']:>8.4f} "
                        f"{fs['otoc_fidelity_branch']:>8.4f}")
    return "\n".join(rows)
