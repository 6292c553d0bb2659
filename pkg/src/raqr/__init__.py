"""Desk-scale simulator of a superheterodyne Rydberg atomic quantum
receiver for classical wireless communication and sensing links.

The package evaluates the closed-form four-level atomic response, carries
an RF tone through the optical readout and photodetection chain to an
equivalent baseband model, quantifies projection/shot/thermal noise and
SNR in every regime, compares against a classical RF front end, and
optimizes the receiver parameters by exhaustive alternating sweeps.
"""

from .config import (
    AtomicVaporConfig,
    LaserRfConfig,
    ReceiverChainConfig,
    load_config,
    serialize,
    table1_preset,
    table2_preset,
)
from .quantum import (
    DensityCoefficients,
    DetuningSet,
    RabiSet,
    build_hamiltonian,
    density_coefficients,
    lindblad_steady_state,
    rho21,
    susceptibility,
    susceptibility_derivative,
)

__version__ = "0.1.0"

__all__ = [
    "AtomicVaporConfig", "LaserRfConfig", "ReceiverChainConfig",
    "load_config", "serialize", "table1_preset", "table2_preset",
    "DensityCoefficients", "DetuningSet", "RabiSet", "build_hamiltonian",
    "density_coefficients", "lindblad_steady_state", "rho21",
    "susceptibility", "susceptibility_derivative", "__version__",
]
