"""Exact photon-propagator algebra with renormalization bookkeeping and static-potential transforms."""
from .scalarfield import Polynomial, RationalFn
from .tensoralg import RankTwoSymbol, contract, decompose, invert_symbol
from .propagators import GaugeParams, MassiveQEDParams, PropagatorModel

__all__ = [
    "GaugeParams",
    "MassiveQEDParams",
    "Polynomial",
    "PropagatorModel",
    "RankTwoSymbol",
    "RationalFn",
    "contract",
    "decompose",
    "invert_symbol",
]
__version__ = "0.1.0"
