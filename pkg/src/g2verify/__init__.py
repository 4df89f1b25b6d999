"""Exact-arithmetic verification of G2-structures and G2-instantons on S^7."""

from .exactmath import Poly, RatFn
from .exterior import Form
from .quaternion import Quat
from .report import REPORT_VERSION, CheckOutcome, CheckReport

__version__ = "0.1.0"

__all__ = ["Poly", "RatFn", "Form", "Quat", "CheckOutcome", "CheckReport", "REPORT_VERSION", "__version__"]
