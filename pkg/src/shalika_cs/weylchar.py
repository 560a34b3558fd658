"""Weyl alternators and characters of Sp4(C).

Characters are produced by exact division of alternators. The symmetric
power oracle builds the same characters from explicit weights, without the
character formula, so the two paths check each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable

from .exactalg import LaurentPoly, exact_divide
from .rootdata import C2, RHO, SYMBOLS, Coweight, weyl_group

__all__ = [
    "CharacterPoly",
    "NotDominantError",
    "alternator",
    "alternate",
    "alternator_at",
    "weyl_denominator",
    "weyl_character",
    "sym_decomp",
    "sym_power_oracle",
    "standard_weights",
]


class NotDominantError(ValueError):
    pass


@dataclass(frozen=True)
class CharacterPoly:
    value: LaurentPoly
    highest_weight: Coweight

    @property
    def dimension(self) -> int:
        return int(self.value.sum_of_coefficients())

    def weights(self) -> dict[Coweight, int]:
        return {Coweight(e[0], e[1]): int(c) for e, c in self.value.items()}

    def is_weyl_invariant(self) -> bool:
        return all(alternate_action(w, self.value) == self.value for w in weyl_group("C2"))


def _mono(mu: Coweight, c=1, vars=SYMBOLS) -> LaurentPoly:
    e = [0] * len(vars)
    e[0], e[1] = mu.a, mu.b
    return LaurentPoly.monomial(vars, e, c)


def alternate_action(w, p: LaurentPoly) -> LaurentPoly:
    """Apply w to the (u, v) exponents of p; other variables ride along."""

    def fn(e):
        m = w.act(Coweight(e[0], e[1]))
        return (m.a, m.b) + tuple(e[2:])

    return p.map_exponents(fn)


def alternate(p: LaurentPoly) -> LaurentPoly:
    """A(p) = sum over W of sign(w) * w(p), acting on the u, v exponents."""
    total = LaurentPoly(p.vars)
    for w in weyl_group("C2"):
        term = alternate_action(w, p)
        total = total + term if w.sign > 0 else total - term
    return total


def alternator(mu: Coweight, vars=SYMBOLS) -> LaurentPoly:
    return alternate(_mono(mu, 1, vars))


def alternator_at(terms: Iterable[tuple[Any, Coweight]], u, v):
    """Evaluate A(sum c * e^mu) at a point by the 8-term Weyl sum.

    Works for numbers and for symbolic u, v alike; no division happens.
    """
    terms = list(terms)
    u, v = _exact(u), _exact(v)
    total: Any = 0
    for w in weyl_group("C2"):
        s = w.sign
        for c, mu in terms:
            m = w.act(mu)
            total = total + s * c * (u ** m.a) * (v ** m.b)
    return total


def _exact(x):
    if isinstance(x, int):
        return Fraction(x)
    return x


def weyl_denominator(vars=SYMBOLS) -> LaurentPoly:
    """e^rho * prod over positive roots of (1 - e^{-alpha})."""
    p = _mono(RHO, 1, vars)
    one = LaurentPoly.const(vars, 1)
    for a in C2.positive:
        p = p * (one - _mono(-a, 1, vars))
    return p


@lru_cache(maxsize=None)
def weyl_character(lam: Coweight) -> CharacterPoly:
    """Character of the irreducible representation with highest weight lam."""
    lam = Coweight(*lam)
    if not lam.is_dominant():
        raise NotDominantError(f"{tuple(lam)} is not dominant (need a >= b >= 0)")
    num = alternator(RHO + lam)
    den = alternator(RHO)
    return CharacterPoly(exact_divide(num, den), lam)


def sym_decomp(k: int) -> list[Coweight]:
    """Highest weights of the irreducible pieces of Sym^k of the 5-dim rep."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return [Coweight(k - 2 * i, k - 2 * i) for i in range(k // 2 + 1)]


def standard_weights() -> list[Coweight]:
    """Weights of the 5-dim rep, read off as Lambda^2 of the 4-dim rep minus one zero."""
    four = [Coweight(1, 0), Coweight(0, 1), Coweight(0, -1), Coweight(-1, 0)]
    wedge = [four[i] + four[j] for i in range(4) for j in range(i + 1, 4)]
    wedge.remove(Coweight(0, 0))
    return sorted(wedge, reverse=True)


@lru_cache(maxsize=None)
def sym_power_oracle(k: int) -> CharacterPoly:
    """Complete homogeneous symmetric polynomial h_k of the 5 weight monomials."""
    monos = [_mono(w) for w in standard_weights()]
    one = LaurentPoly.const(SYMBOLS, 1)
    # h[j] for the monomials processed so far
    h = [one] + [LaurentPoly(SYMBOLS)] * k
    for m in monos:
        new = []
        for j in range(k + 1):
            acc = LaurentPoly(SYMBOLS)
            power = one
            for i in range(j + 1):
                acc = acc + h[j - i] * power
                power = power * m
            new.append(acc)
        h = new
    return CharacterPoly(h[k], Coweight(k, k))
