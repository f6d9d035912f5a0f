"""Finite Toeplitz+Hankel determinants: exact identities, asymptotics and Monte Carlo checks."""
from .constants import case_constants, szego_constants
from .determinants import LogDet, det_lu, fredholm_det
from .errors import ToeplitzHankelError
from .identities import (
    predict_shifted,
    verify_bogc_even,
    verify_bogc_general,
    verify_szego,
)
from .operators import I, II, III, IV, REALIZATIONS, Realization, m_section, toeplitz_section
from .reports import VerificationReport
from .symbol import FourierSymbol, exp_symbol, log_symbol, symbol_from_spec

__all__ = [
    "FourierSymbol", "exp_symbol", "log_symbol", "symbol_from_spec",
    "Realization", "REALIZATIONS", "I", "II", "III", "IV", "m_section", "toeplitz_section",
    "LogDet", "det_lu", "fredholm_det",
    "szego_constants", "case_constants",
    "verify_bogc_even", "verify_bogc_general", "verify_szego", "predict_shifted",
    "VerificationReport", "ToeplitzHankelError",
]
