"""Scalar observables and error functionals over engine states and series."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import models, mpdo_engine, mps_engine
from .errors import TraceDivergenceError
from .mpdo_engine import Mpdo
from .mps_engine import TensorTrain
from .pauli_basis import SIGMA


@dataclass
class TimeSeries:
    """Named real-valued columns over a strictly increasing time grid."""

    times: np.ndarray
    columns: dict[str, np.ndarray]

    def __post_init__(self) -> None:
        self.times = np.asarray(self.times, dtype=float)
        if self.times.size > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("times must be strictly increasing")
        for name, col in self.columns.items():
            col = np.asarray(col, dtype=float)
            if col.shape != self.times.shape:
                raise ValueError(f"column {name!r} length does not match times")
            if np.any(np.isnan(col)):
                raise ValueError(f"column {name!r} contains NaN")
            self.columns[name] = col


def _normalizer(state: Mpdo, normalized: bool) -> float:
    if not normalized:
        return 1.0
    tr = mpdo_engine.trace(state)
    if abs(tr) < mpdo_engine.TRACE_EPS:
        raise TraceDivergenceError(
            f"|Tr rho| = {abs(tr):.3e} below {mpdo_engine.TRACE_EPS}"
        )
    return tr


def number_profile(state: Mpdo | TensorTrain, normalized: bool = True) -> np.ndarray:
    """<n_i> for every site; n = (1 + sigma^z)/2.  MPDO values are divided
    by Tr[rho] when ``normalized``."""
    if isinstance(state, Mpdo):
        tr = mpdo_engine.trace(state)
        z = mpdo_engine.site_pauli_profile(state, 3)
        vals = 0.5 * (tr + z)
        return vals / _normalizer(state, normalized)
    n_op = 0.5 * (SIGMA[0] + SIGMA[3])
    return mps_engine.site_expectations(state, n_op)


def energy_density(
    state: Mpdo | TensorTrain, bond_h: models.BondHamiltonian, normalized: bool = True
) -> float:
    """<H>/L from the embedded bond terms."""
    length = bond_h.length
    if isinstance(state, Mpdo):
        if state.length != length:
            raise ValueError("model length does not match state")
        blocks = mpdo_engine.bond_pauli_blocks(state)
        total = 0.0
        for b, h in bond_h.terms:
            coeffs = models.pauli_decompose_two_site(h)
            if np.max(np.abs(coeffs.imag)) > 1e-12:
                raise ValueError("bond term is not Hermitian")
            total += float(np.sum(coeffs.real * blocks[b]))
        return total / length / _normalizer(state, normalized)
    if state.length != length:
        raise ValueError("model length does not match state")
    vals = mps_engine.bond_expectations(state, bond_h.terms)
    return float(np.sum(vals)) / length


def total_number_density(state: Mpdo | TensorTrain, normalized: bool = True) -> float:
    """<n_tot>/L: mean of the site number expectations."""
    return float(np.mean(number_profile(state, normalized)))


def fourier_number(state: Mpdo | TensorTrain, k: float, normalized: bool = True) -> complex:
    """(1/L) sum_j exp(-i k (j - 1/2)) <n_j> with 1-based j."""
    profile = number_profile(state, normalized)
    length = profile.size
    phases = np.exp(-1j * k * (np.arange(length) + 0.5))
    return complex(np.sum(phases * profile) / length)


def connected_correlation(
    state: Mpdo | TensorTrain, i: int, j: int, normalized: bool = True
) -> float:
    """<n_i n_j> - <n_i><n_j> (normalized two-point minus normalized one-points)."""
    if i == j:
        raise ValueError("connected correlator needs distinct sites")
    if isinstance(state, Mpdo):
        norm = _normalizer(state, normalized)
        two = (
            complex(
                mpdo_engine.operator_expectation(
                    state, models.density_density_operator(i, j), normalized=False
                )
            ).real
            / norm
        )
        ni = (
            complex(
                mpdo_engine.operator_expectation(
                    state, models.number_operator(i), normalized=False
                )
            ).real
            / norm
        )
        nj = (
            complex(
                mpdo_engine.operator_expectation(
                    state, models.number_operator(j), normalized=False
                )
            ).real
            / norm
        )
        return two - ni * nj
    zi = mps_engine.pauli_expectation(state, {i: 3})
    zj = mps_engine.pauli_expectation(state, {j: 3})
    zz = mps_engine.pauli_expectation(state, {i: 3, j: 3})
    two = 0.25 * (1.0 + zi + zj + zz)
    return two - 0.25 * (1.0 + zi) * (1.0 + zj)


def _operator_expectation(state, op: models.PauliStringOperator, normalized: bool) -> complex:
    if isinstance(state, Mpdo):
        return mpdo_engine.operator_expectation(state, op, normalized=normalized)
    val = complex(0.0)
    for c, string in op.iter_terms():
        val += c * (mps_engine.pauli_expectation(state, string) if string else 1.0)
    return val


def correlation_table(state: Mpdo | TensorTrain, normalized: bool = True) -> np.ndarray:
    """Hermitian L x L table of <c_i^+ c_j> measured string-by-string."""
    length = state.length
    norm = _normalizer(state, normalized) if isinstance(state, Mpdo) else 1.0
    table = np.empty((length, length), dtype=np.complex128)
    for i in range(length):
        for j in range(i, length):
            val = _operator_expectation(state, models.cdag_c_operator(i, j), normalized=False)
            table[i, j] = val / norm
            if j > i:
                table[j, i] = np.conj(table[i, j])
    return table


def nk_double_sum(corr: np.ndarray, k: float) -> float:
    """Re sum_{i,j} exp(-i k (i - j)) <c_i^+ c_j> over a full correlation table."""
    length = corr.shape[0]
    phases = np.exp(-1j * k * np.arange(length))
    return float(np.real(phases @ corr @ phases.conj()))


def fermion_number_error(n_method: np.ndarray, n_exact: np.ndarray) -> float:
    """Root-sum-square site-number error relative to the exact profile."""
    n_method = np.asarray(n_method, dtype=float)
    n_exact = np.asarray(n_exact, dtype=float)
    if n_method.shape != n_exact.shape:
        raise ValueError("profiles have different lengths")
    denom = float(np.sum(n_exact**2))
    if denom == 0.0:
        raise ValueError("exact profile is identically zero")
    return float(np.sqrt(np.sum((n_method - n_exact) ** 2) / denom))


def avg_energy_error(times: np.ndarray, energies: np.ndarray, t_final: float) -> float:
    """Root-mean-square (over time) deviation of a series from its t=0 value.

    Trapezoidal discretization of ``(1/T) int_0^T |e(t) - e(0)|^2 dt`` over
    the recorded samples with t <= T.
    """
    times = np.asarray(times, dtype=float)
    energies = np.asarray(energies, dtype=float)
    if times.shape != energies.shape:
        raise ValueError("times and series have different lengths")
    if t_final <= 0:
        raise ValueError("t_final must be positive")
    if times[0] > 1e-12 or times[-1] < t_final - 1e-9:
        raise ValueError(f"series does not cover [0, {t_final}]")
    mask = times <= t_final + 1e-9
    dev2 = (energies[mask] - energies[0]) ** 2
    return float(np.sqrt(np.trapezoid(dev2, times[mask]) / t_final))
