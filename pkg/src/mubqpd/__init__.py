"""Quasiprobability distributions over complete sets of mutually unbiased
bases, and the polytope of states on which they are non-negative."""

from .csco import CscoBasis, build_csco, make_basis, paper_fixture, validate_csco
from .errors import MubQpdError
from .mub import MubFamily, build_mub, twist_map_check, verify_unbiased
from .polytope import enumerate_faces, membership, support_probe, vertices
from .qpd import (
    QpdTable,
    classify,
    mh_characteristic,
    mh_fourier_sweep,
    qpd_marginal,
    qpd_table,
)
from .state import BlochState, DensityMatrix, bloch_from_density, density_from_bloch, random_state
from .tomography import MeasurementRecord, estimate_bloch, simulate_counts

__version__ = "0.1.0"

__all__ = [
    "BlochState",
    "CscoBasis",
    "DensityMatrix",
    "MeasurementRecord",
    "MubFamily",
    "MubQpdError",
    "QpdTable",
    "bloch_from_density",
    "build_csco",
    "build_mub",
    "classify",
    "density_from_bloch",
    "enumerate_faces",
    "estimate_bloch",
    "make_basis",
    "membership",
    "mh_characteristic",
    "mh_fourier_sweep",
    "paper_fixture",
    "qpd_marginal",
    "qpd_table",
    "random_state",
    "simulate_counts",
    "support_probe",
    "twist_map_check",
    "validate_csco",
    "verify_unbiased",
    "vertices",
]
