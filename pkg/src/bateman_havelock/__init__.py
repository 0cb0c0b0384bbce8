"""Large-order asymptotics of the Bateman function k_nu(x) and the Havelock
function h_nu(x), with certified quadrature oracles for checking them.

The main entry points are :func:`auto_eval` (expansion chosen by regime),
:func:`certified_value` (quadrature) and the ``bateman-havelock`` command.
"""

__version__ = "0.1.0"

from .asymptotics import ExpansionResult, auto_eval, evaluate
from .coefficients import CoefficientFamily, DomainError, generate_family
from .kernels import BACKEND
from .oracle import OracleError, QuadratureResult, certified_value, oracle_cross_check
from .regimes import EvalPoint, Regime, TruncationPolicy, classify
from .series import PrecisionConfig

__all__ = [
    "BACKEND",
    "CoefficientFamily",
    "DomainError",
    "EvalPoint",
    "ExpansionResult",
    "OracleError",
    "PrecisionConfig",
    "QuadratureResult",
    "Regime",
    "TruncationPolicy",
    "auto_eval",
    "certified_value",
    "classify",
    "evaluate",
    "generate_family",
    "oracle_cross_check",
]
