"""Exact computational verification of Dumont's identity

    r_k^{1(2)}(n) = c_k^{1(4)}(n) - (-1)^k c_k^{3(4)}(n)

through truncated q-series, infinite matrices and brute-force counting.
"""
from .errors import DumontError
from .report import VerificationReport
from .series import EXACT, Monomial, QSeries

__version__ = "0.1.0"

__all__ = ["DumontError", "EXACT", "Monomial", "QSeries", "VerificationReport", "__version__"]
