"""Experiment configuration: flat key-value files with typed, validated fields."""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path

from .errors import ConfigError

_MISSING = object()

MODELS = ("free_fermion", "spin")
METHODS = ("mps_tebd", "mpdo_tebd", "rtebd")
SCHEMES = ("bosonic", "fermionic", "xy")
INITIAL_STATES = ("fock_pattern", "spin_tilt", "ghz")

# canonical CSV column order; requested observables are emitted in this order
OBSERVABLE_ORDER = ("trace", "energy_density", "n_tot", "n_err", "re_n_k", "n1nL_c", "nk_sum")
FERMION_ONLY = ("n_tot", "n_err", "re_n_k", "n1nL_c", "nk_sum")


@dataclass(frozen=True)
class ExperimentConfig:
    model: str
    method: str
    length: int
    chi_max: int
    dt: float
    t_final: float
    initial_state: str
    observables: tuple[str, ...]
    scheme: str = "bosonic"
    gamma: float = 1.0
    output_path: str | None = None
    measure_every: int = 1
    normalize: bool = True

    def __post_init__(self) -> None:
        if self.model not in MODELS:
            raise ConfigError(f"unknown model {self.model!r}")
        if self.method not in METHODS:
            raise ConfigError(f"unknown method {self.method!r}")
        if self.scheme not in SCHEMES:
            raise ConfigError(f"unknown scheme {self.scheme!r}")
        if self.initial_state not in INITIAL_STATES:
            raise ConfigError(f"unknown initial_state {self.initial_state!r}")
        if self.length < 2:
            raise ConfigError("L must be >= 2")
        if self.chi_max < 1:
            raise ConfigError("chi_max must be >= 1")
        if self.dt <= 0:
            raise ConfigError("dt must be positive")
        if self.t_final < 0:
            raise ConfigError("t_final must be non-negative")
        if self.measure_every < 1:
            raise ConfigError("measure_every must be >= 1")
        steps = round(self.t_final / self.dt)
        if abs(steps * self.dt - self.t_final) > 1e-9:
            raise ConfigError("t_final must be an integer multiple of dt")
        if self.method == "rtebd" and self.gamma < 1.0:
            raise ConfigError("rtebd requires gamma >= 1")
        if self.method == "mpdo_tebd" and self.gamma != 1.0:
            raise ConfigError("mpdo_tebd forces gamma = 1")
        if not self.observables:
            raise ConfigError("at least one observable must be requested")
        for obs in self.observables:
            if obs not in OBSERVABLE_ORDER:
                raise ConfigError(f"unknown observable {obs!r}")
            if obs in FERMION_ONLY and self.model != "free_fermion":
                raise ConfigError(f"observable {obs!r} requires the free_fermion model")
        if "trace" in self.observables and self.method == "mps_tebd":
            raise ConfigError("trace is only defined for MPDO methods")
        if self.model == "free_fermion" and self.initial_state == "spin_tilt":
            raise ConfigError("spin_tilt initial state belongs to the spin model")
        if self.model == "spin" and self.initial_state != "spin_tilt":
            raise ConfigError("the spin model uses the spin_tilt initial state")
        if "n_err" in self.observables and self.initial_state != "fock_pattern":
            raise ConfigError("n_err needs the Fock-pattern initial state (Gaussian reference)")

    @property
    def steps(self) -> int:
        return round(self.t_final / self.dt)

    def is_mpdo(self) -> bool:
        return self.method in ("mpdo_tebd", "rtebd")

    def effective_gamma(self) -> float:
        return 1.0 if self.method == "mpdo_tebd" else self.gamma

    def column_names(self) -> list[str]:
        requested = set(self.observables)
        if self.is_mpdo():
            requested.add("trace")
        names = [obs for obs in OBSERVABLE_ORDER if obs in requested]
        if self.is_mpdo() and self.normalize:
            names.append("diverged")
        return names


@dataclass(frozen=True)
class SweepConfig:
    base: ExperimentConfig
    gammas: tuple[float, ...]
    chis: tuple[int, ...]
    error_t_final: float

    def __post_init__(self) -> None:
        if not self.gammas or not self.chis:
            raise ConfigError("sweep grids must be non-empty")
        if any(g < 1.0 for g in self.gammas):
            raise ConfigError("all sweep gammas must be >= 1")
        if self.base.method != "rtebd":
            raise ConfigError("sweeps drive the rtebd method")
        if "energy_density" not in self.base.observables:
            raise ConfigError("sweeps need the energy_density observable")
        if self.error_t_final <= 0 or self.error_t_final > self.base.t_final + 1e-9:
            raise ConfigError("sweep T_f must lie within the simulated window")


def parse_kv_file(path: str | Path) -> dict[str, str]:
    """Flat ``key = value`` text file; ``#`` starts a comment."""
    mapping: dict[str, str] = {}
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip()
        if not key:
            raise ConfigError(f"{path}:{lineno}: empty key")
        if key in mapping:
            raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
        mapping[key] = value.strip()
    return mapping


def apply_overrides(mapping: dict[str, str], overrides: list[str]) -> dict[str, str]:
    out = dict(mapping)
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override {item!r} is not of the form key=value")
        key, value = item.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _get(mapping: dict[str, str], key: str, kind, default=_MISSING):
    if key not in mapping:
        if default is not _MISSING:
            return default
        raise ConfigError(f"missing required config key {key!r}")
    raw = mapping[key]
    try:
        if kind is bool:
            if raw.lower() not in ("true", "false"):
                raise ValueError
            return raw.lower() == "true"
        return kind(raw)
    except ValueError:
        raise ConfigError(f"config key {key!r}: cannot parse {raw!r} as {kind.__name__}") from None


_EXPERIMENT_KEYS = {
    "model", "method", "scheme", "L", "chi_max", "gamma", "dt", "t_final",
    "initial_state", "observables", "output_path", "measure_every", "normalize",
}
_SWEEP_KEYS = {"gammas", "chis", "sweep_t_final"}


def experiment_from_mapping(mapping: dict[str, str], allow_sweep_keys: bool = False) -> ExperimentConfig:
    allowed = _EXPERIMENT_KEYS | (_SWEEP_KEYS if allow_sweep_keys else set())
    for key in mapping:
        if key not in allowed:
            raise ConfigError(f"unknown config key {key!r}")
    observables = tuple(
        s.strip() for s in _get(mapping, "observables", str).split(",") if s.strip()
    )
    return ExperimentConfig(
        model=_get(mapping, "model", str),
        method=_get(mapping, "method", str),
        scheme=_get(mapping, "scheme", str, default="bosonic"),
        length=_get(mapping, "L", int),
        chi_max=_get(mapping, "chi_max", int),
        gamma=_get(mapping, "gamma", float, default=1.0),
        dt=_get(mapping, "dt", float),
        t_final=_get(mapping, "t_final", float),
        initial_state=_get(mapping, "initial_state", str),
        observables=observables,
        output_path=mapping.get("output_path"),
        measure_every=_get(mapping, "measure_every", int, default=1),
        normalize=_get(mapping, "normalize", bool, default=True),
    )


def sweep_from_mapping(mapping: dict[str, str]) -> SweepConfig:
    base = experiment_from_mapping(mapping, allow_sweep_keys=True)
    try:
        gammas = tuple(float(s) for s in mapping.get("gammas", "").split(",") if s.strip())
        chis = tuple(int(s) for s in mapping.get("chis", "").split(",") if s.strip())
    except ValueError:
        raise ConfigError("cannot parse sweep grids") from None
    t_f = _get(mapping, "sweep_t_final", float, default=base.t_final)
    return SweepConfig(base=base, gammas=gammas, chis=chis, error_t_final=t_f)


def with_cell(base: ExperimentConfig, gamma: float, chi: int) -> ExperimentConfig:
    return replace(base, gamma=gamma, chi_max=chi)
