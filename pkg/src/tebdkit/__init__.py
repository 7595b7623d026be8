"""tebdkit: TEBD simulation toolkit for 1D quantum dynamics.

MPS-TEBD, MPDO-TEBD, and reweighted-basis MPDO-TEBD time evolution with
dense and free-fermion exact oracles and a CSV benchmark harness.
"""

__version__ = "0.1.0"

from .config import ExperimentConfig, SweepConfig
from .mpdo_engine import Mpdo, init_product_mpdo, rtebd_step, supergate_circuit
from .mps_engine import BrickworkCircuit, TensorTrain, init_product_mps
from .pauli_basis import ReweightScheme, SuperGate, build_supergate
from .tensor_core import SvdResult, TruncationPolicy, contract, svd_truncate

__all__ = [
    "BrickworkCircuit",
    "ExperimentConfig",
    "Mpdo",
    "ReweightScheme",
    "SuperGate",
    "SvdResult",
    "SweepConfig",
    "TensorTrain",
    "TruncationPolicy",
    "build_supergate",
    "contract",
    "init_product_mpdo",
    "init_product_mps",
    "rtebd_step",
    "supergate_circuit",
    "svd_truncate",
    "__version__",
]
