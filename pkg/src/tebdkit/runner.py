"""Experiment driver: one simulation or a (gamma, chi) sweep, written as CSV.

CSV numbers carry 17 significant digits with LF line endings so repeated
runs of one config are byte-identical and round-trip losslessly.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__, metrics, models, mpdo_engine, mps_engine
from .config import ExperimentConfig, SweepConfig, with_cell
from .errors import TraceDivergenceError
from .kernels import BACKEND
from .mpdo_engine import Mpdo
from .oracles import gaussian_trotter
from .pauli_basis import ReweightScheme
from .tensor_core import TruncationPolicy

FOURIER_K = np.pi / 4


def _format(x: float) -> str:
    return f"{x:.17g}"


@dataclass
class RunResult:
    config: ExperimentConfig
    times: np.ndarray
    columns: dict[str, np.ndarray]
    per_step_max_dw: list[float]
    wall_time: float


def _initial_state(config: ExperimentConfig, scheme: ReweightScheme | None):
    if config.model == "free_fermion":
        occ = models.fock_initial_state(config.length)
        if config.initial_state == "fock_pattern":
            if config.is_mpdo():
                return mpdo_engine.init_product_mpdo(models.fock_site_densities(occ), scheme)
            return mps_engine.init_product_mps(models.fock_site_vectors(occ))
        if config.is_mpdo():
            return models.ghz_initial_mpdo(config.length, scheme)
        return models.ghz_initial_mps(config.length)
    vectors = models.spin_initial_state(config.length)
    if config.is_mpdo():
        rhos = [np.outer(v, v.conj()) for v in vectors]
        return mpdo_engine.init_product_mpdo(rhos, scheme)
    return mps_engine.init_product_mps(vectors)


def _measure(config: ExperimentConfig, state, bond_h, exact_profile) -> dict[str, float]:
    out: dict[str, float] = {}
    wanted = set(config.column_names())
    normalized = config.normalize
    diverged = 0.0

    def guarded(fn, fallback=0.0):
        nonlocal diverged
        try:
            return fn()
        except TraceDivergenceError:
            diverged = 1.0
            return fallback

    if isinstance(state, Mpdo):
        out["trace"] = mpdo_engine.trace(state)
    profile = None
    if wanted & {"n_tot", "n_err", "re_n_k"}:
        profile = guarded(
            lambda: metrics.number_profile(state, normalized),
            np.zeros(config.length),
        )
    if "energy_density" in wanted:
        out["energy_density"] = guarded(
            lambda: metrics.energy_density(state, bond_h, normalized)
        )
    if "n_tot" in wanted:
        out["n_tot"] = float(np.mean(profile))
    if "n_err" in wanted:
        out["n_err"] = metrics.fermion_number_error(profile, exact_profile)
    if "re_n_k" in wanted:
        length = config.length
        phases = np.exp(-1j * FOURIER_K * (np.arange(length) + 0.5))
        out["re_n_k"] = float(np.real(np.sum(phases * profile) / length))
    if "n1nL_c" in wanted:
        out["n1nL_c"] = guarded(
            lambda: metrics.connected_correlation(state, 0, config.length - 1, normalized)
        )
    if "nk_sum" in wanted:
        out["nk_sum"] = guarded(
            lambda: metrics.nk_double_sum(
                metrics.correlation_table(state, normalized), FOURIER_K
            )
        )
    if "diverged" in wanted:
        out["diverged"] = diverged
    return out


def simulate(config: ExperimentConfig) -> RunResult:
    started = time.perf_counter()
    scheme = None
    if config.is_mpdo():
        scheme = ReweightScheme(config.scheme, config.effective_gamma())

    if config.model == "free_fermion":
        bond_h = models.fermion_bond_hamiltonian(config.length)
    else:
        bond_h = models.spin_bond_hamiltonian(config.length)
    circuit = models.gate_circuit(bond_h, config.dt)
    if config.is_mpdo():
        circuit = mpdo_engine.supergate_circuit(circuit, scheme)

    state = _initial_state(config, scheme)
    policy = TruncationPolicy(chi_max=config.chi_max)

    steps = config.steps
    record_steps = [s for s in range(steps + 1) if s == 0 or s % config.measure_every == 0]
    exact_diag = None
    if "n_err" in config.observables:
        traj = gaussian_trotter(
            config.length, models.fock_initial_state(config.length), 1.0, config.dt, steps
        )
        exact_diag = {s: np.real(np.diagonal(traj[s])) for s in record_steps}

    names = config.column_names()
    rows: list[dict[str, float]] = []
    times: list[float] = []
    per_step_dw: list[float] = []

    def record(step: int) -> None:
        profile = exact_diag[step] if exact_diag is not None else None
        rows.append(_measure(config, state, bond_h, profile))
        times.append(step * config.dt)

    record(0)
    for step in range(1, steps + 1):
        if isinstance(state, Mpdo):
            dw = mpdo_engine.rtebd_step(state, circuit, policy)
        else:
            dw = state.tebd_step(circuit, policy, renormalize=True)
        per_step_dw.append(dw)
        if step % config.measure_every == 0:
            record(step)

    columns = {name: np.array([row.get(name, 0.0) for row in rows]) for name in names}
    return RunResult(
        config=config,
        times=np.array(times),
        columns=columns,
        per_step_max_dw=per_step_dw,
        wall_time=time.perf_counter() - started,
    )


def write_run_csv(path: str | Path, result: RunResult) -> None:
    names = list(result.columns.keys())
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(["t"] + names) + "\n")
        for n, t in enumerate(result.times):
            row = [_format(t)] + [_format(result.columns[name][n]) for name in names]
            fh.write(",".join(row) + "\n")


def write_manifest(path: str | Path, result: RunResult) -> None:
    config = result.config
    lines = [
        f"toolkit_version = {__version__}",
        f"kernel_backend = {BACKEND}",
        f"wall_time_s = {result.wall_time:.3f}",
        f"max_discarded_weight = {_format(max(result.per_step_max_dw, default=0.0))}",
        "per_step_max_discarded_weight = "
        + ",".join(_format(x) for x in result.per_step_max_dw),
        f"model = {config.model}",
        f"method = {config.method}",
        f"scheme = {config.scheme}",
        f"L = {config.length}",
        f"chi_max = {config.chi_max}",
        f"gamma = {config.gamma}",
        f"dt = {_format(config.dt)}",
        f"t_final = {_format(config.t_final)}",
        f"initial_state = {config.initial_state}",
        f"observables = {','.join(config.observables)}",
        f"measure_every = {config.measure_every}",
        f"normalize = {str(config.normalize).lower()}",
    ]
    Path(path).write_text("\n".join(lines) + "\n")


def run_experiment(config: ExperimentConfig, output_path: str | Path | None = None):
    """Simulate one config; write the CSV and its manifest. Returns the paths."""
    out = Path(output_path if output_path is not None else config.output_path or "")
    if str(out) == "":
        raise ValueError("an output path is required")
    result = simulate(config)
    write_run_csv(out, result)
    manifest = out.with_suffix(out.suffix + ".manifest")
    write_manifest(manifest, result)
    return out, manifest


def _sweep_cell(args) -> float:
    base, gamma, chi, t_f = args
    cell = with_cell(base, gamma, chi)
    try:
        result = simulate(cell)
        return metrics.avg_energy_error(
            result.times, result.columns["energy_density"], t_f
        )
    except Exception:
        return float("nan")


def run_gamma_sweep(
    sweep: SweepConfig, output_path: str | Path, workers: int = 1
) -> Path:
    """One row per (gamma, chi) cell with the time-averaged energy error.

    Cells are independent simulations; failures are marked nan and the
    sweep completes.  Results are merged in grid order (gammas outer).
    """
    cells = [
        (sweep.base, gamma, chi, sweep.error_t_final)
        for gamma in sweep.gammas
        for chi in sweep.chis
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            errors = list(pool.map(_sweep_cell, cells))
    else:
        errors = [_sweep_cell(cell) for cell in cells]
    out = Path(output_path)
    with open(out, "w", newline="\n") as fh:
        fh.write("gamma,chi,eps_avg_err\n")
        for (_, gamma, chi, _), err in zip(cells, errors):
            fh.write(f"{_format(gamma)},{chi},{_format(err)}\n")
    return out
