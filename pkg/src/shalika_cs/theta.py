"""Character-level theta transfer, Mackey orbit data and the Shalika verdict."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .satake import (
    CHI_EF,
    CharacterTriple,
    ConstraintError,
    _eq,
    is_generic_regular,
)

__all__ = [
    "ShalikaReport",
    "OrbitEntry",
    "ORBITS",
    "changechar_pullback",
    "changechar_preimages",
    "theta_transfer",
    "weyl_normalize",
    "mackey_conditions",
    "closed_orbit_contributions",
    "shalika_verdict",
]


# --------------------------------------------------------------------------
# change of character along GU(2,2) -> GSO(4,2)
# --------------------------------------------------------------------------


def changechar_pullback(xi_p: CharacterTriple) -> CharacterTriple:
    """Pull a GSO(4,2) torus character back to GU(2,2).

    With N(varpi) = varpi^2 the three value-level formulas are
    y1 = y1'^2 y2'^2 y0', y2 = y1'^2 y0', y0 = y2' y0'.
    """
    if xi_p.group != "GSO42":
        raise ValueError("expects a GSO42 character")
    a, b, c = xi_p.values
    return CharacterTriple("GU22", (a * a * b * b * c, a * a * c, b * c))


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def changechar_preimages(xi: CharacterTriple) -> list[CharacterTriple]:
    """All rational GSO(4,2) triples pulling back to ``xi``.

    The monomial system has determinant -4, so preimages come in sign
    patterns: y2' = +-sqrt(y1/y2), y1' = +-sqrt(y2 y2'/y0).
    """
    if xi.group != "GU22" or xi.is_symbolic():
        raise ValueError("expects a numeric GU22 character")
    y1, y2, y0 = xi.values
    out = []
    r = _rational_sqrt(y1 / y2)
    if r is None or r == 0:
        return out
    for b in (r, -r):
        c = y0 / b
        s = _rational_sqrt(y2 / c)
        if s is None:
            continue
        for a in {s, -s}:
            cand = CharacterTriple("GSO42", (a, b, c))
            if changechar_pullback(cand) == xi:
                out.append(cand)
    return out


# --------------------------------------------------------------------------
# theta transfer GSp4 -> GU(2,2)
# --------------------------------------------------------------------------

CASE_IRREDUCIBLE = "irreducible-restriction"
CASE_DIHEDRAL_A = "dihedral-2a"
CASE_B = "case-2b"


def weyl_normalize(chi: CharacterTriple) -> tuple[CharacterTriple, str]:
    """Move a quadratic-character slot to the position the case split expects.

    {x1, x2} = {-1, 1}: arrange x1 = -1, x2 = 1 (case 2b).
    Otherwise one slot equal to -1 goes to x2 (case 2a).
    The swap x1 <-> x2 keeps x0 since the central product is symmetric.
    """
    eps = CHI_EF["inert"]
    x1, x2, x0 = chi.values
    if (_eq(x1, eps) and _eq(x2, 1)) or (_eq(x2, eps) and _eq(x1, 1)):
        if _eq(x2, eps):
            x1, x2 = x2, x1
        return CharacterTriple("GSp4", (x1, x2, x0)), CASE_B
    if _eq(x1, eps) and not _eq(x2, eps):
        return CharacterTriple("GSp4", (x2, x1, x0)), CASE_DIHEDRAL_A
    if _eq(x2, eps):
        return chi, CASE_DIHEDRAL_A
    return chi, CASE_IRREDUCIBLE


def theta_transfer(chi: CharacterTriple, q=None) -> tuple[CharacterTriple, str]:
    """Unramified theta transfer (x1, x2, x0) -> (x0^2, x2^2 x0^2, -x1)."""
    if chi.group != "GSp4":
        raise ValueError("theta_transfer expects a GSp4 character")
    chi.check_central()
    if not is_generic_regular(chi, q):
        raise ConstraintError("theta-transfer nondegeneracy", "a chi value or ratio equals q^(+-1)")
    chi, tag = weyl_normalize(chi)
    x1, x2, x0 = chi.values
    eps = CHI_EF["inert"]
    xi = CharacterTriple("GU22", (x0 * x0, x2 * x2 * x0 * x0, eps * x1))
    return xi, tag


def mackey_conditions(xi: CharacterTriple) -> tuple[bool, bool]:
    """Value-level forms of the two boundary conditions.

    cond1: y1 y0 = 1/y2 and y0 = 1.  cond2: y1 y0 = 1 and y0 = 1/y2.
    """
    y1, y2, y0 = xi.values
    cond1 = _eq(y1 * y0 * y2, 1) and _eq(y0, 1)
    cond2 = _eq(y1 * y0, 1) and _eq(y0 * y2, 1)
    return cond1, cond2


def closed_orbit_contributions(xi: CharacterTriple) -> set[int]:
    """Closed orbits whose Hom space can be non-zero; only 3 and 4 can."""
    y1, y2, y0 = xi.values
    out = set()
    if _eq(y1 * y2 * y0, 1) and _eq(y0, 1):
        out.add(3)
    if _eq(y1 * y0, 1) and _eq(y2 * y0, 1):
        out.add(4)
    return out


# --------------------------------------------------------------------------
# orbit table
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitEntry:
    index: int
    word: tuple  # e.g. ("w_delta", "s2", "s1", "s2")
    open: bool
    stabilizer: str


ORBITS: tuple[OrbitEntry, ...] = (
    OrbitEntry(1, (), False, "B_GL2.N_G"),
    OrbitEntry(2, ("s2",), False, "B_GL2.N(y=0)"),
    OrbitEntry(3, ("s2", "s1"), False, "B_GL2.N(x only)"),
    OrbitEntry(4, ("s2", "s1", "s2"), False, "B_GL2"),
    OrbitEntry(5, ("w_delta",), False, "T_delta.N_G"),
    OrbitEntry(6, ("w_delta", "s2"), False, "T_delta.N(y=delta*alpha+conj(delta*alpha)-N(delta)*x)"),
    OrbitEntry(7, ("w_delta", "s2", "s1"), False, "T_delta.N(alpha=conj(delta)*x, y=N(delta)*x)"),
    OrbitEntry(8, ("w_delta", "s2", "s1", "s2"), True, "T_delta"),
)


# --------------------------------------------------------------------------
# verdict
# --------------------------------------------------------------------------


@dataclass
class ShalikaReport:
    exists: bool
    unique: bool
    via: str
    theta_source: CharacterTriple | None
    boundary_conditions: dict = field(default_factory=dict)
    case_tag: str = ""
    transfer: CharacterTriple | None = None

    def to_json(self) -> dict:
        return {
            "exists": self.exists,
            "unique": self.unique,
            "via": self.via,
            "case_tag": self.case_tag,
            "theta_source": self.theta_source.to_json() if self.theta_source else None,
            "transfer": self.transfer.to_json() if self.transfer else None,
            "boundary_conditions": dict(self.boundary_conditions),
        }


def shalika_verdict(chi: CharacterTriple, q=None) -> ShalikaReport:
    """Existence and uniqueness of the Shalika functional for generic chi.

    Existence comes from the open orbit; uniqueness either from the Mackey
    analysis (both boundary conditions fail) or, when one holds, from the
    theta lift of the dihedral principal series.
    """
    xi, tag = theta_transfer(chi, q)
    c1, c2 = mackey_conditions(xi)
    via = "theta-dihedral" if (c1 or c2) else "mackey-open-orbit"
    return ShalikaReport(
        exists=True,
        unique=True,
        via=via,
        theta_source=chi,
        boundary_conditions={"cond1": c1, "cond2": c2},
        case_tag=tag,
        transfer=xi,
    )
