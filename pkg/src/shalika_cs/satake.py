"""Unramified characters, Frobenius classes and the predicates on them.

A character is recorded only through its values at the uniformizer. Values
may be Fractions or symbolic Laurent monomials in u, v, q.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Any, Sequence

from .exactalg import LaurentPoly, RationalFn
from .rootdata import SYMBOLS, symbols

__all__ = [
    "ConstraintError",
    "CharacterTriple",
    "FrobeniusClass",
    "CHI_EF",
    "GROUPS",
    "frobenius",
    "is_generic_regular",
    "is_dihedral",
    "split_shalika_admissible",
    "value_from_exponent",
    "gsp4_from_uv",
    "symbolic_gsp4",
    "parse_value",
    "format_value",
]

GROUPS = ("GSp4", "GU22", "GSO42", "GL4")
_ARITY = {"GSp4": 3, "GU22": 3, "GSO42": 3, "GL4": 4}

# Value of the quadratic character attached to E/F at the uniformizer.
CHI_EF = {"split": 1, "inert": -1}


class ConstraintError(ValueError):
    """A named condition on the input fails; ``condition`` says which one."""

    def __init__(self, condition: str, detail: str = ""):
        self.condition = condition
        super().__init__(f"{condition} violated" + (f": {detail}" if detail else ""))


def _exact(x):
    if isinstance(x, bool):
        raise TypeError("boolean is not a character value")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, (Fraction, LaurentPoly, RationalFn)):
        return x
    raise TypeError(f"unsupported character value {x!r}")


@dataclass(frozen=True, eq=False)
class CharacterTriple:
    """Unramified torus character by its uniformizer values.

    GSp4: (x1, x2, x0); GU22: (y1, y2, y0); GSO42: (y1', y2', y0');
    GL4: (a1, a2, a3, a4).
    """

    group: str
    values: tuple

    def __post_init__(self):
        if self.group not in GROUPS:
            raise ValueError(f"unknown group {self.group!r}")
        if len(self.values) != _ARITY[self.group]:
            raise ValueError(f"{self.group} needs {_ARITY[self.group]} values")
        object.__setattr__(self, "values", tuple(_exact(x) for x in self.values))

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __eq__(self, other):
        if not isinstance(other, CharacterTriple) or other.group != self.group:
            return NotImplemented
        return all(_eq(a, b) for a, b in zip(self.values, other.values))

    __hash__ = None  # type: ignore[assignment]

    def central_product(self):
        """The product that must equal 1 for trivial central character."""
        if self.group == "GSp4":
            x1, x2, x0 = self.values
            return x1 * x2 * x0 * x0
        if self.group == "GU22":
            y1, y2, y0 = self.values
            return y1 * y2 * y0 * y0
        if self.group == "GL4":
            a1, a2, a3, a4 = self.values
            return a1 * a2 * a3 * a4
        raise ValueError("no central constraint recorded for GSO42")

    def has_trivial_central_character(self) -> bool:
        return _eq(self.central_product(), 1)

    def check_central(self) -> None:
        if not self.has_trivial_central_character():
            name = {"GSp4": "x1*x2*x0^2", "GU22": "y1*y2*y0^2", "GL4": "a1*a2*a3*a4"}[self.group]
            raise ConstraintError("trivial central character", f"{name} = {format_value(self.central_product())} != 1")

    def is_symbolic(self) -> bool:
        return any(isinstance(x, (LaurentPoly, RationalFn)) for x in self.values)

    def to_json(self) -> dict:
        return {"group": self.group, "values": [format_value(x) for x in self.values]}

    @classmethod
    def from_json(cls, obj: dict) -> "CharacterTriple":
        return cls(obj["group"], tuple(parse_value(x) for x in obj["values"]))


@dataclass(frozen=True, eq=False)
class FrobeniusClass:
    """diag(u, v, 1/v, 1/u) in Sp4(C)."""

    entries: tuple
    source: CharacterTriple | None = None

    @property
    def u(self):
        return self.entries[0]

    @property
    def v(self):
        return self.entries[1]

    def is_symplectic_shape(self) -> bool:
        a, b, c, d = self.entries
        return _eq(a * d, 1) and _eq(b * c, 1)

    def gl4_tuple(self) -> CharacterTriple:
        return CharacterTriple("GL4", self.entries)


def _eq(a, b) -> bool:
    if isinstance(a, (LaurentPoly, RationalFn)):
        return a == b
    if isinstance(b, (LaurentPoly, RationalFn)):
        return b == a
    return a == b


def frobenius(chi: CharacterTriple) -> FrobeniusClass:
    """diag(x1 x2 x0, x1 x0, x2 x0, x0) for a GSp4 character."""
    if chi.group != "GSp4":
        raise ValueError("frobenius expects a GSp4 character")
    chi.check_central()
    x1, x2, x0 = chi.values
    g = FrobeniusClass((x1 * x2 * x0, x1 * x0, x2 * x0, x0), chi)
    if not g.is_symplectic_shape():
        raise AssertionError("Frobenius class is not symplectic")
    return g


def gsp4_from_uv(u, v) -> CharacterTriple:
    """The GSp4 character whose Frobenius class is diag(u, v, 1/v, 1/u)."""
    u, v = _exact(u), _exact(v)
    return CharacterTriple("GSp4", (u * v, u / v, 1 / u))


def symbolic_gsp4() -> CharacterTriple:
    u, v, _ = symbols()
    return gsp4_from_uv(u, v)


def value_from_exponent(z, q=None):
    """Uniformizer value of |.|^z, i.e. q^(-z), for integer z."""
    if q is None:
        q = symbols()[2]
    q = _exact(q)
    return q ** (-int(z))


def is_generic_regular(chi: CharacterTriple, q=None) -> bool:
    """None of x1, x2, x1 x2, x1/x2 equals q or 1/q."""
    if q is None:
        q = symbols()[2]
    q = _exact(q)
    x1, x2, _ = chi.values
    bad = (q, 1 / q)
    for val in (x1, x2, x1 * x2, x1 / x2):
        if any(_eq(val, b) for b in bad):
            return False
    return True


def is_dihedral(chi: CharacterTriple) -> bool:
    """Inert unramified case: the quadratic character is among chi1, chi2."""
    x1, x2, _ = chi.values
    eps = CHI_EF["inert"]
    return _eq(x1, eps) or _eq(x2, eps)


def split_shalika_admissible(chi: CharacterTriple) -> bool:
    """Entries distinct and splitting into two mutually inverse pairs."""
    if chi.group != "GL4":
        raise ValueError("expects a GL4 character")
    a = chi.values
    for i in range(4):
        for j in range(i + 1, 4):
            if _eq(a[i], a[j]):
                return False
    for p in permutations(range(4)):
        if p[0] < p[1] and p[2] < p[3] and p[0] < p[2]:
            if _eq(a[p[0]] * a[p[1]], 1) and _eq(a[p[2]] * a[p[3]], 1):
                return True
    return False


# --------------------------------------------------------------------------
# text form of values
# --------------------------------------------------------------------------

_FACTOR = re.compile(r"\s*([a-z][a-z0-9]*|\d+(?:/\d+)?)\s*(?:\^\s*(-?\d+))?\s*")


def parse_value(s: Any):
    """Parse "p/q", an integer, or a monomial expression like "-u^2*v/q".

    Symbols must come from the ring (u, v, q).
    """
    if isinstance(s, bool):
        raise ValueError("boolean is not a value")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, float):
        raise ValueError("floats are not exact; pass a string like '3/2'")
    if not isinstance(s, str):
        raise ValueError(f"cannot parse {s!r}")
    text = s.strip().replace(" ", "")
    if not text:
        raise ValueError("empty value")
    sign = 1
    while text and text[0] in "+-":
        if text[0] == "-":
            sign = -sign
        text = text[1:]
    try:
        return sign * Fraction(text)
    except (ValueError, ZeroDivisionError):
        pass
    gens = dict(zip(SYMBOLS, symbols()))
    result: Any = Fraction(sign)
    pos = 0
    op = "*"
    while pos < len(text):
        m = _FACTOR.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse value {s!r}")
        atom, exp = m.group(1), int(m.group(2) or 1)
        if atom in gens:
            val = gens[atom] ** exp
        elif atom[0].isdigit():
            val = Fraction(atom) ** exp
        else:
            raise ValueError(f"unknown symbol {atom!r} in {s!r}; allowed: {', '.join(SYMBOLS)}")
        result = result * val if op == "*" else result / val
        pos = m.end()
        if pos < len(text):
            op = text[pos]
            if op not in "*/":
                raise ValueError(f"cannot parse value {s!r}")
            pos += 1
    return result


def format_value(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return str(x)
    return str(x)
