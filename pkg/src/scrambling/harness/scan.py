"""Time scans over a uniform grid."""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..evolution import EvolutionMethod, IsingParams, ising_hamiltonian
from ..operators import OperatorPair, parse_pair
from ..quantifiers import QuantifierSample, balancing_points, sample_quantifiers, sample_series
from ..states import QuantumState, parse_state


class ConfigError(ValueError):
    """Invalid scan configuration."""


@dataclass(frozen=True)
class ScanConfig:
    state: str = "phi+"
    w: str = "x1"
    v: str = "x1"
    qubit: int = 1
    params: IsingParams = field(default_factory=lambda: IsingParams(0.5, 0.5))
    method: str = "exact"
    t_min: float = 0.0
    t_max: float = 10.0
    steps: int = 1001
    out: str | None = None
    seed: int = 0

    def __post_init__(self):
        if not self.t_max > self.t_min:
            raise ConfigError(f"t_max ({self.t_max}) must exceed t_min ({self.t_min})")
        if self.steps < 2:
            raise ConfigError(f"steps must be at least 2, got {self.steps}")
        if self.seed < 0:
            raise ConfigError(f"seed must be non-negative, got {self.seed}")

    def times(self) -> np.ndarray:
        return np.linspace(self.t_min, self.t_max, self.steps)

    def build_state(self) -> QuantumState:
        try:
            return parse_state(self.state)
        except ValueError as exc:
            raise ConfigError(f"bad state spec: {exc}") from None

    def build_pair(self, n: int) -> OperatorPair:
        try:
            return parse_pair(self.w, self.v, n=n, default_qubit=self.qubit)
        except (ValueError, IndexError) as exc:
            raise ConfigError(f"bad operator pair {self.w}/{self.v}: {exc}") from None

    def build_method(self) -> EvolutionMethod:
        try:
            return EvolutionMethod.parse(self.method)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "ScanConfig":
        data = dict(data)
        params = data.pop("params", {}) or {}
        for key in ("j_z", "b", "coupling_multiplier", "field_multiplier"):
            if key in data:
                params[key] = data.pop(key)
        unknown = set(data) - {f.name for f in dataclasses.fields(cls)}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        try:
            ising = IsingParams(**{"j_z": 0.5, "b": 0.5, **params})
            return cls(params=ising, **data)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    @classmethod
    def from_json(cls, path) -> "ScanConfig":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


def _setup(config: ScanConfig):
    state = config.build_state()
    pair = config.build_pair(state.n)
    if state.n != 2:
        raise ConfigError(f"the Ising Hamiltonian is two-qubit; state has {state.n} qubits")
    h = ising_hamiltonian(config.params)
    return state, pair, h, config.build_method()


def run_scan(config: ScanConfig) -> list[QuantifierSample]:
    """One :class:`QuantifierSample` per grid point, ordered by time."""
    state, pair, h, method = _setup(config)
    return sample_series(pair, h, config.times(), state, method)


def scan_balancing_points(config: ScanConfig, tol: float = 1e-9) -> list[float]:
    """Crossings of the commutator OTOC and the trace concurrence in a scan.

    Crossings are bracketed on the scan grid and refined by bisection on a
    fresh evaluation of the quantifiers.
    """
    state, pair, h, method = _setup(config)
    samples = sample_series(pair, h, config.times(), state, method)

    def gap(t: float) -> float:
        s = sample_quantifiers(pair, h, t, state, method)
        return s.c_direct - abs(s.z)

    return balancing_points(
        config.times(),
        [s.c_direct for s in samples],
        [abs(s.z) for s in samples],
        refine=gap,
        tol=tol,
    )
