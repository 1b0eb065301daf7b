"""Rigorous numerical checks around Robin's inequality s(n) < e^gamma log log n."""

__version__ = "0.1.0"

from .arith import (  # noqa: E402
    Factorization,
    PrimeTable,
    abundancy,
    divisor_sigma,
    euler_phi,
    factorize,
    phi_ratio,
    primorial,
    radical,
)
from .errors import CapacityError, DomainError, PrecisionError, RobinKitError  # noqa: E402
from .numerics import Ordering3, RealInterval, compare  # noqa: E402
from .robin import RobinVerdict, Status, check, scan  # noqa: E402

__all__ = [
    "CapacityError", "DomainError", "Factorization", "Ordering3", "PrecisionError", "PrimeTable",
    "RealInterval", "RobinKitError", "RobinVerdict", "Status", "__version__", "abundancy", "check",
    "compare", "divisor_sigma", "euler_phi", "factorize", "phi_ratio", "primorial", "radical", "scan",
]
