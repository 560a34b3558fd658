"""Degree-5 standard L-factors and the unramified zeta series.

The series variable is t = q^{-s}. The zeta side is
(1 - t/q)^{-1} (1 - t^2)^{-1} * sum_n t^n q^{2n} CS(n).
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .exactalg import LaurentPoly, RationalFn, TruncatedSeries
from .rootdata import Coweight
from .satake import CHI_EF, CharacterTriple, frobenius, gsp4_from_uv, symbolic_gsp4
from .shalika import CSContext, cs_inert, cs_split
from .weylchar import sym_decomp, weyl_character

__all__ = [
    "EulerFactor",
    "ZetaSeries",
    "IdentityReport",
    "euler_factor",
    "euler_series",
    "lfactor_series",
    "zeta_series",
    "verify_identity",
    "random_regular_points",
    "telescoping_check",
    "default_order",
]

ORDER_ENV = "SHALIKA_CS_ORDER"


def default_order(mode: str) -> int:
    """16 for numeric runs, 8 for symbolic ones; the env var overrides both."""
    env = os.environ.get(ORDER_ENV)
    if env:
        return int(env)
    return 16 if mode == "numeric" else 8


def _twist_sign(twist: str) -> int:
    if twist in ("trivial", "split"):
        return CHI_EF["split"]
    if twist in ("quadratic", "inert"):
        return CHI_EF["inert"]
    raise ValueError(f"unknown twist {twist!r}")


def _evaluate_character(lam: Coweight, g):
    return weyl_character(lam).value.evaluate({"u": g.u, "v": g.v})


@dataclass(frozen=True)
class EulerFactor:
    """1 / prod (1 - eps w_i t) over the five weights w_i."""

    inverse: tuple  # coefficients of the degree-5 polynomial in t
    twist: str
    weights: tuple

    def series(self, order: int) -> TruncatedSeries:
        return TruncatedSeries.inverse_of_polynomial(self.inverse, order)


def euler_factor(chi: CharacterTriple, twist: str = "trivial", q=None) -> EulerFactor:
    """Determinant form: weights are the monomials of the 5-dim character at g."""
    eps = _twist_sign(twist)
    g = frobenius(chi)
    char = weyl_character(Coweight(1, 1)).value
    weights = []
    for e, c in sorted(char.items(), reverse=True):
        w = g.u ** e[0] * g.v ** e[1] if not isinstance(g.u, int) else Fraction(g.u) ** e[0] * Fraction(g.v) ** e[1]
        weights.extend([w] * int(c))
    poly: list[Any] = [Fraction(1)]
    for w in weights:
        # multiply by (1 - eps w t)
        nxt = poly + [Fraction(0)]
        for i in range(len(poly)):
            nxt[i + 1] = nxt[i + 1] - eps * w * poly[i]
        poly = nxt
    return EulerFactor(tuple(poly), "trivial" if eps == 1 else "quadratic", tuple(weights))


def euler_series(chi: CharacterTriple, twist: str, order: int) -> TruncatedSeries:
    """Expansion of the Euler factor as a product of five geometric series."""
    ef = euler_factor(chi, twist)
    eps = _twist_sign(twist)
    out = TruncatedSeries.one(order)
    for w in ef.weights:
        out = out * TruncatedSeries.geometric(eps * w, order)
    return out


def lfactor_series(chi: CharacterTriple, twist: str, q=None, order: int = 8) -> TruncatedSeries:
    """sum_k eps^k sum_i tr(g | rho_{k-2i,k-2i}) t^k."""
    eps = _twist_sign(twist)
    g = frobenius(chi)
    coeffs = []
    for k in range(order + 1):
        acc: Any = 0
        for lam in sym_decomp(k):
            acc = acc + _evaluate_character(lam, g)
        coeffs.append(Fraction(eps) ** k * acc)
    return TruncatedSeries.from_list(coeffs, order)


@dataclass(frozen=True)
class ZetaSeries:
    series: TruncatedSeries
    case: str
    ctx: CSContext


def zeta_series(ctx: CSContext, order: int, cs: Callable | None = None) -> ZetaSeries:
    """zeta(s+1) zeta(2s) sum_{n>=0} q^{n(2-s)} CS(n), written in t = q^{-s}."""
    if cs is None:
        cs = cs_split if ctx.case == "split" else cs_inert
    q = ctx.q if not isinstance(ctx.q, int) else Fraction(ctx.q)
    brackets = [q ** (2 * n) * cs(n, ctx) for n in range(order + 1)]
    s = TruncatedSeries.from_list(brackets, order)
    s = s * TruncatedSeries.geometric(1 / q, order)
    s = s * TruncatedSeries.from_list([Fraction(1 - k % 2) for k in range(order + 1)], order)
    return ZetaSeries(s, ctx.case, ctx)


@dataclass
class IdentityReport:
    case: str
    order: int
    equal: bool
    first_mismatch: int | None = None
    lhs: str | None = None
    rhs: str | None = None
    points: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"case": self.case, "order": self.order, "equal": self.equal}
        if not self.equal:
            out.update(first_mismatch=self.first_mismatch, lhs=self.lhs, rhs=self.rhs)
        if self.points:
            out["points"] = self.points
        return out


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, RationalFn):
        return str(x.reduce())
    return str(x)


def verify_identity(
    case: str,
    chi: CharacterTriple | None = None,
    q=None,
    order: int = 8,
    *,
    short_signs: tuple[int, int] | None = None,
) -> IdentityReport:
    """Compare the zeta series with the (twisted) L-factor coefficientwise.

    ``short_signs`` replaces the signs inside the short-root product, which
    is how the mutation test injects a fault.
    """
    ctx = CSContext.build(case, chi, q)
    base = cs_split if case == "split" else cs_inert
    cs = None if short_signs is None else (lambda n, c: base(n, c, short_signs=short_signs))
    z = zeta_series(ctx, order, cs).series
    twist = "trivial" if case == "split" else "quadratic"
    l = lfactor_series(ctx.chi, twist, ctx.q, order)
    k = z.first_mismatch(l)
    if k is None:
        return IdentityReport(case, order, True)
    return IdentityReport(case, order, False, k, _fmt(z[k]), _fmt(l[k]))


def random_regular_points(count: int, seed: int, primes=(3, 5, 7, 11)) -> list[tuple[Fraction, Fraction, Fraction]]:
    """Seeded rational points (u, v, q) with u, v regular and q an odd prime."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        u = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        v = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        q = Fraction(rng.choice(primes))
        if u == 0 or v == 0:
            continue
        if u * u == 1 or v * v == 1 or u == v or u * v == 1:
            continue
        chi = gsp4_from_uv(u, v)
        # keep away from the excluded locus x = q^{+-1}
        x1, x2, _ = chi.values
        if any(val in (q, 1 / q) for val in (x1, x2, x1 * x2, x1 / x2)):
            continue
        out.append((u, v, q))
    return out


def telescoping_check(a: list, order: int, q) -> bool:
    """(1 - t/q) * sum_n t^n sum_k a_{n-2k} == sum_n t^n (a_n - a_{n-1}/q) / (1 - t^2).

    Both sides are truncated at ``order``; a_{-1} = 0.
    """
    q = Fraction(q) if isinstance(q, int) else q
    lhs_c = []
    for n in range(order + 1):
        acc: Any = 0
        for k in range(n // 2 + 1):
            acc = acc + a[n - 2 * k]
        lhs_c.append(acc)
    lhs = TruncatedSeries.from_list(lhs_c, order) * TruncatedSeries.from_list([1, -1 / q], order)
    diff = [a[n] - (a[n - 1] / q if n else 0) for n in range(order + 1)]
    even = TruncatedSeries.from_list([Fraction(1 - k % 2) for k in range(order + 1)], order)
    rhs = TruncatedSeries.from_list(diff, order) * even
    return lhs == rhs
