"""Spherical Shalika functionals on GSp4 and GU(2,2) and the degree-5 L-factor identity."""

from .exactalg import LaurentPoly, RationalFn, TruncatedSeries
from .lfactor import euler_factor, lfactor_series, verify_identity, zeta_series
from .rootdata import C2, Coweight, weyl_group
from .satake import CharacterTriple, ConstraintError, frobenius, gsp4_from_uv, symbolic_gsp4
from .shalika import CSContext, cs_inert, cs_inert_unnormalized, cs_split
from .theta import shalika_verdict, theta_transfer
from .weylchar import weyl_character

__version__ = "0.1.0"

__all__ = [
    "C2",
    "CSContext",
    "CharacterTriple",
    "ConstraintError",
    "Coweight",
    "LaurentPoly",
    "RationalFn",
    "TruncatedSeries",
    "cs_inert",
    "cs_inert_unnormalized",
    "cs_split",
    "euler_factor",
    "frobenius",
    "gsp4_from_uv",
    "lfactor_series",
    "shalika_verdict",
    "symbolic_gsp4",
    "theta_transfer",
    "verify_identity",
    "weyl_character",
    "weyl_group",
    "zeta_series",
]
