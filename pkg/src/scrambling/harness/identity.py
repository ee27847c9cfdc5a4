"""Randomised check of the links between OTOC, fidelity, Bures metric and concurrence."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from ..evolution import IsingParams, Propagator, ising_hamiltonian
from ..operators import BELL_STUDY_PAIRS, make_pair
from ..quantifiers import (BRANCH_TOL, concurrence_from_otoc, otoc_from_bures,
                           sample_from_evolved, uhlmann_fidelity)
from ..states import BellLabel, bell_state, random_real_pure_state

#: Identity name -> absolute tolerance.
IDENTITIES = {
    "fidelity_is_abs_z_squared": 1e-12,
    "fidelity_overlap_matches_trace": 1e-12,
    "bures_from_fidelity": 1e-12,
    "concurrence_is_root_fidelity": 1e-12,
    "otoc_is_two_one_minus_re_z": 1e-10,
    "otoc_branch_matches_direct": 1e-10,
    "concurrence_from_otoc": 1e-10,
    "bures_route_matches_fidelity_route": 1e-12,
}

RANDOM_STATES = 20


@dataclass
class IdentitySuiteResult:
    seed: int
    sample_count: int
    max_deviation: dict[str, float]
    tolerance: dict[str, float] = field(default_factory=lambda: dict(IDENTITIES))
    runtime_s: float = 0.0

    @property
    def failures(self) -> list[str]:
        return [k for k, v in self.max_deviation.items() if not v <= self.tolerance[k]]

    @property
    def passed(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        out = []
        for name, tol in self.tolerance.items():
            dev = self.max_deviation[name]
            mark = "PASS" if dev <= tol else "FAIL"
            out.append(f"{mark} {name:<36} max_dev={dev:.3e} tol={tol:.0e}")
        return out


def _state_pool(seed: int):
    rng = np.random.default_rng([seed, 0])
    pool = [bell_state(b) for b in BellLabel]
    pool += [random_real_pure_state(rng, 2) for _ in range(RANDOM_STATES)]
    return pool


def run_identity_suite(seed: int = 1, sample_count: int = 200, z_fault: complex = 0.0) -> IdentitySuiteResult:
    """Evaluate every identity on ``sample_count`` random instances.

    Each sample draws its state, Pauli pair, ``j_z``, ``b`` in ``[-2, 2]``
    and ``t`` in ``[0, 5]`` from a generator seeded by ``(seed, index)``,
    so the outcome does not depend on evaluation order.

    ``z_fault`` is a test hook: it is added to the trace ``Z`` before the
    derived quantities are formed, which must make the suite fail.
    """
    if sample_count < 1:
        raise ValueError(f"sample_count must be at least 1, got {sample_count}")
    start = time.perf_counter()
    pool = _state_pool(seed)
    worst = {name: 0.0 for name in IDENTITIES}

    def record(name, value):
        worst[name] = max(worst[name], abs(value)) if not math.isnan(value) else math.inf

    for idx in range(sample_count):
        rng = np.random.default_rng([seed, 1, idx])
        state = pool[int(rng.integers(len(pool)))]
        i, j = BELL_STUDY_PAIRS[int(rng.integers(len(BELL_STUDY_PAIRS)))]
        if rng.random() < 0.5:
            i, j = j, i
        pair = make_pair(i, j, int(rng.integers(2)), 2)
        j_z, b = rng.uniform(-2, 2, size=2)
        t = float(rng.uniform(0, 5))
        h = ising_hamiltonian(IsingParams(float(j_z), float(b)))

        w_t = Propagator(h).evolve(pair.w0, t)
        s = sample_from_evolved(t, w_t, pair.v, state)
        z = s.z + z_fault
        f = abs(z) ** 2
        c_branch = 2 * (1 - math.sqrt(max(f - z.imag ** 2, 0.0)))

        # independent routes: a fresh evolution for the overlap fidelity, the
        # commutator for the OTOC, and closed-form rewrites for the rest
        f_overlap = uhlmann_fidelity(pair, h, t, state)
        d = math.sqrt(2 * (1 - math.sqrt(min(f, 1.0))))

        record("fidelity_is_abs_z_squared", s.f - f)
        record("fidelity_overlap_matches_trace", f_overlap - f)
        # compared squared: the square root has unbounded slope at f = 1
        record("bures_from_fidelity", s.bures_d ** 2 - 2 * (1 - math.sqrt(min(f, 1.0))))
        record("concurrence_is_root_fidelity", s.concurrence_trace - math.sqrt(f_overlap))
        record("otoc_is_two_one_minus_re_z", s.c_direct - 2 * (1 - z.real))
        if z.real >= -BRANCH_TOL:
            record("otoc_branch_matches_direct", s.c_direct - c_branch)
        record("concurrence_from_otoc", abs(z) - concurrence_from_otoc(c_branch, z.imag))
        record("bures_route_matches_fidelity_route", otoc_from_bures(d, z.imag) - c_branch)
    return IdentitySuiteResult(seed, sample_count, worst, runtime_s=time.perf_counter() - start)
