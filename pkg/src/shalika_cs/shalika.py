"""Spherical Shalika functional values on the family g_n.

Two routes are implemented for the inert case. The recursion route sums
eight Weyl terms built from the constants c_alpha and per-generator step
factors. The closed-form route evaluates a single alternator. Their
agreement is the main consistency check of this module.

Relative roots of GU(2,2) are written in coefficients (a1, a2, a0) of
alpha1, alpha2, alpha0. Positive roots: alpha1-alpha2 and alpha1+alpha2-alpha0
(short, residue degree q^2), 2alpha1-alpha0 and 2alpha2-alpha0 (long, q).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any

from .exactalg import LaurentPoly, RationalFn, exact_divide
from .rootdata import (
    A3,
    C2,
    RHO,
    Coweight,
    gl4_root_restrictions,
    modulus_exponent,
    symbols,
    weyl_group,
)
from .satake import (
    CHI_EF,
    CharacterTriple,
    ConstraintError,
    FrobeniusClass,
    _eq,
    frobenius,
    split_shalika_admissible,
    symbolic_gsp4,
)
from .theta import theta_transfer, weyl_normalize
from .weylchar import alternator_at

__all__ = [
    "PoleError",
    "SingularPointError",
    "CSContext",
    "StepFactor",
    "POSITIVE_RELATIVE",
    "LONG_RELATIVE",
    "q_alpha",
    "xi_at",
    "chi_at",
    "c_alpha",
    "step_factor",
    "t_star_cocycle",
    "t_star_direct",
    "iwahori_volume_sum",
    "cs_inert_recursion",
    "cs_inert_unnormalized",
    "cs_inert",
    "cs_split",
    "inert_normalization_ratio",
    "q_gl4",
    "split_normalization",
    "cs_numerator_terms",
]


class PoleError(ZeroDivisionError):
    """A constant c_alpha or a step factor has a pole at this numeric point."""


class SingularPointError(ConstraintError):
    """The Weyl denominator vanishes at a numeric Frobenius class."""

    def __init__(self, detail: str = ""):
        super().__init__(
            "Weyl-denominator zero (non-regular Frobenius class)",
            detail or "A(e^rho)(g) = 0; evaluate symbolically instead",
        )


POSITIVE_RELATIVE: tuple[tuple[int, int, int], ...] = ((1, -1, 0), (1, 1, -1), (2, 0, -1), (0, 2, -1))
LONG_RELATIVE = frozenset({(2, 0, -1), (0, 2, -1)})
_IOTA = {"s1": "s2", "s2": "s1"}


def _neg(r):
    return tuple(-x for x in r)


def _is_positive_root(r) -> bool:
    return tuple(r) in POSITIVE_RELATIVE


def _exact(x):
    return Fraction(x) if isinstance(x, int) else x


def _is_zero_number(x) -> bool:
    return isinstance(x, (int, Fraction)) and x == 0


def _div(a, b):
    if _is_zero_number(b):
        raise PoleError("division by zero at a numeric point")
    return a / b


# --------------------------------------------------------------------------
# evaluation tables
# --------------------------------------------------------------------------


def q_alpha(alpha, q):
    """Residue-field size attached to a relative root."""
    alpha = tuple(alpha) if _is_positive_root(alpha) else _neg(alpha)
    return q if alpha in LONG_RELATIVE else q * q


def xi_at(alpha, xi: CharacterTriple):
    """xi(a_alpha) from the coroot matrices.

    a_{alpha1-alpha2} = diag(w, 1/w, ...) gives y1/y2; a_{alpha1+alpha2-alpha0}
    gives y1 y2; the long roots give y1 and y2. Negative roots invert.
    """
    y1, y2, y0 = xi.values
    table = {
        (1, -1, 0): lambda: y1 / y2,
        (1, 1, -1): lambda: y1 * y2,
        (2, 0, -1): lambda: y1,
        (0, 2, -1): lambda: y2,
    }
    alpha = tuple(alpha)
    if alpha in table:
        return table[alpha]()
    return 1 / table[_neg(alpha)]()


def chi_at(alpha, chi: CharacterTriple):
    """chi(a_alpha) for the GSp4 roots in the same coordinates.

    Long coroots give x1, x2; short ones are their product and ratio.
    """
    x1, x2, _ = chi.values
    table = {
        (1, -1, 0): lambda: x1 / x2,
        (1, 1, -1): lambda: x1 * x2,
        (2, 0, -1): lambda: x1,
        (0, 2, -1): lambda: x2,
    }
    alpha = tuple(alpha)
    if alpha in table:
        return table[alpha]()
    return 1 / table[_neg(alpha)]()


def c_alpha(alpha, xi: CharacterTriple, q):
    """(1 - xi(a_alpha)/q_alpha) / (1 - xi(a_alpha))."""
    z = xi_at(alpha, xi)
    den = 1 - z
    if _is_zero_number(den):
        raise PoleError(f"c_alpha has a pole: xi(a_alpha) = 1 for alpha = {alpha}")
    return (1 - z / q_alpha(alpha, q)) / den


# --------------------------------------------------------------------------
# Weyl actions
# --------------------------------------------------------------------------


def act_root(gen: str, r):
    a1, a2, a0 = r
    if gen == "s1":
        return (a2, a1, a0)
    return (a1, -a2, a0 + a2)


def act_xi(gen: str, xi: CharacterTriple) -> CharacterTriple:
    y1, y2, y0 = xi.values
    if gen == "s1":
        return CharacterTriple("GU22", (y2, y1, y0))
    return CharacterTriple("GU22", (y1, 1 / y2, y0 * y2))


def act_chi(gen: str, chi: CharacterTriple) -> CharacterTriple:
    x1, x2, x0 = chi.values
    if gen == "s1":
        return CharacterTriple("GSp4", (x2, x1, x0))
    return CharacterTriple("GSp4", (x1, 1 / x2, x0 * x2))


def _apply_word(act, word, obj):
    for g in reversed(word):
        obj = act(g, obj)
    return obj


def iota(word) -> tuple:
    return tuple(_IOTA[g] for g in word)


# --------------------------------------------------------------------------
# context
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CSContext:
    case: str
    chi: CharacterTriple
    q: Any
    xi: CharacterTriple | None
    g: FrobeniusClass

    @classmethod
    def build(cls, case: str, chi: CharacterTriple | None = None, q=None) -> "CSContext":
        if case not in CHI_EF:
            raise ValueError(f"case must be 'split' or 'inert', got {case!r}")
        if chi is None:
            chi = symbolic_gsp4()
        if q is None:
            q = symbols()[2]
        q = _exact(q)
        chi.check_central()
        xi = None
        if case == "inert":
            xi, _ = theta_transfer(chi, q)
            chi, _ = weyl_normalize(chi)
        g = frobenius(chi)
        if case == "split" and not split_shalika_admissible(g.gl4_tuple()):
            raise SingularPointError("GL4 character (u, v, 1/v, 1/u) is not regular")
        return cls(case, chi, q, xi, g)

    @property
    def symbolic(self) -> bool:
        return isinstance(self.g.u, LaurentPoly) or isinstance(self.q, LaurentPoly)


@dataclass(frozen=True)
class StepFactor:
    generator: str
    value: Any


def _step_raw(gen: str, chi: CharacterTriple, xi: CharacterTriple, q):
    x1, x2, _ = chi.values
    if gen == "s2":
        # -chi^{-1}(a_{alpha1-alpha2}) c_{2alpha2-alpha0}(xi)
        return -_div(x2, x1) * c_alpha((0, 2, -1), xi, q)
    # -chi^{-1}(a_{2alpha2-alpha0}) c_{alpha1-alpha2}(xi) (1 + x2/q)/(1 + 1/(q x2))
    den = 1 + _div(1, q * x2)
    if _is_zero_number(den):
        raise PoleError("step factor s1 has a pole: x2 = -1/q")
    return -_div(1, x2) * c_alpha((1, -1, 0), xi, q) * (1 + x2 / q) / den


def step_factor(gen: str, ctx: CSContext) -> StepFactor:
    if ctx.case != "inert":
        raise ValueError("step factors are defined for the inert case")
    if gen not in ("s1", "s2"):
        raise ValueError(f"unknown generator {gen!r}")
    return StepFactor(gen, _step_raw(gen, ctx.chi, ctx.xi, ctx.q))


def t_star_cocycle(word, ctx: CSContext):
    """Product of step factors along a reduced word.

    For word = s * rest: value(word) = value(rest) * step_s at the translate by rest.
    """
    if not word:
        return Fraction(1)
    s, rest = word[0], tuple(word[1:])
    chi_r = _apply_word(act_chi, iota(rest), ctx.chi)
    xi_r = _apply_word(act_xi, rest, ctx.xi)
    return t_star_cocycle(rest, ctx) * _step_raw(s, chi_r, xi_r, ctx.q)


def t_star_direct(word, ctx: CSContext):
    """Closed product for the same quantity, root by root."""
    q = ctx.q
    val: Any = Fraction(-1) ** len(word)
    for a in POSITIVE_RELATIVE:
        if not _is_positive_root(_apply_word(act_root, word, a)):
            val = val * c_alpha(a, ctx.xi, q)
    for a in POSITIVE_RELATIVE:
        if not _is_positive_root(_apply_word(act_root, iota(word), a)):
            val = val * chi_at(_neg(a), ctx.chi)
            if a in LONG_RELATIVE:
                val = val * (1 + chi_at(a, ctx.chi) / q) / (1 + chi_at(_neg(a), ctx.chi) / q)
    return val


def iwahori_volume_sum(q):
    """Sum over W of the inverse Iwahori indices; s1 has index q^2, s2 has q."""
    total: Any = 0
    for w in weyl_group("C2"):
        cost = sum(2 if g == "s1" else 1 for g in w.word)
        total = total + _exact(q) ** (-cost)
    return total


def _half_modulus_gn(n: int, q):
    # g_n = diag(w^n, w^n, 1, 1) with similitude w^n
    k = modulus_exponent("B_G", {"a": n, "b": n, "nu": n})
    return _exact(q) ** (-(k // 2))


def cs_inert_recursion(n: int, ctx: CSContext):
    """Weyl-sum route: Q^{-1} sum_w prod c_alpha * (w xi)^{-1} delta^{1/2}(g_n) * T*_w."""
    if ctx.case != "inert":
        raise ValueError("recursion is defined for the inert case")
    q = ctx.q
    total: Any = 0
    for w in weyl_group("C2"):
        word = w.word
        term: Any = Fraction(1)
        for a in POSITIVE_RELATIVE:
            if _is_positive_root(_apply_word(act_root, word, a)):
                term = term * c_alpha(a, ctx.xi, q)
        y1, y2, y0 = _apply_word(act_xi, word, ctx.xi).values
        term = term * _half_modulus_gn(n, q) * _div(1, (y1 * y2 * y0) ** n)
        total = total + term * t_star_cocycle(word, ctx)
    return _div(total, iwahori_volume_sum(q))


def cs_numerator_terms(n: int, case: str, q, short_signs: tuple[int, int] | None = None):
    """Terms (coefficient, weight) of e^{rho + n(1,1)} prod_short (1 + s q^{-1} e^{-alpha}).

    The sign s is -1 in the split case and +1 in the inert case; the inert
    case also carries the overall factor (-1)^n.
    """
    if short_signs is None:
        s = 1 if case == "inert" else -1
        short_signs = (s, s)
    top = RHO + Coweight(n, n)
    overall = Fraction(-1) ** n if case == "inert" else Fraction(1)
    terms = [(overall, top)]
    for sign, alpha in zip(short_signs, sorted(C2.short)):
        new = []
        for c, mu in terms:
            new.append((c, mu))
            new.append((c * sign / _exact(q), mu - alpha))
        terms = new
    return terms


def _alternator_ratio(terms, ctx: CSContext):
    u, v = ctx.g.u, ctx.g.v
    num = alternator_at(terms, u, v)
    den = alternator_at([(Fraction(1), RHO)], u, v)
    if isinstance(den, LaurentPoly):
        if isinstance(num, LaurentPoly):
            return exact_divide(num, den)
        return num / den
    if den == 0:
        raise SingularPointError()
    return num / den


def cs_inert_unnormalized(n: int, ctx: CSContext):
    """Closed form obtained from the recursion before normalization."""
    if ctx.case != "inert":
        raise ValueError("inert closed form needs an inert context")
    q = ctx.q
    x1, x2, _ = ctx.chi.values
    prod_c: Any = Fraction(1)
    for a in POSITIVE_RELATIVE:
        prod_c = prod_c * c_alpha(a, ctx.xi, q)
    long_prod = (1 + _div(1, q * x1)) * (1 + _div(1, q * x2))
    rho_g = ctx.g.u ** RHO.a * ctx.g.v ** RHO.b
    alt = alternator_at(cs_numerator_terms(n, "inert", q), ctx.g.u, ctx.g.v)
    pre = _exact(q) ** (-2 * n) * prod_c
    return _div(pre, iwahori_volume_sum(q) * rho_g * long_prod) * alt


# Inert prefactor is 1/(1 + PREFACTOR_SIGN * q^{-1}). With -1 the value at
# n = 0 is 1 and the zeta series equals the twisted L-factor; +1 is off by
# the constant (1 - q^{-1})/(1 + q^{-1}).
INERT_PREFACTOR_SIGN = -1


def cs_inert(n: int, ctx: CSContext, *, short_signs=None, prefactor_sign: int = INERT_PREFACTOR_SIGN):
    """Normalized inert value: alternator ratio with (-1)^n and plus signs."""
    if ctx.case != "inert":
        raise ValueError("cs_inert needs an inert context")
    q = _exact(ctx.q)
    ratio = _alternator_ratio(cs_numerator_terms(n, "inert", q, short_signs), ctx)
    return q ** (-2 * n) * ratio / (1 + Fraction(prefactor_sign) / q)


def cs_split(n: int, ctx: CSContext, *, short_signs=None):
    """Split value: q^{-2n}/(1+q^{-1}) A(e^{rho+n(1,1)} prod_short(1 - q^{-1}e^{-alpha}))/A(e^rho)."""
    if ctx.case != "split":
        raise ValueError("cs_split needs a split context")
    q = _exact(ctx.q)
    ratio = _alternator_ratio(cs_numerator_terms(n, "split", q, short_signs), ctx)
    return q ** (-2 * n) * ratio / (1 + 1 / q)


def inert_normalization_ratio(ctx: CSContext, n: int = 0):
    """cs_inert(n) / cs_inert_unnormalized(n); independent of n."""
    return _div(cs_inert(n, ctx), cs_inert_unnormalized(n, ctx))


def q_gl4(q):
    """Poincare series of S4 at 1/q: sum over W(A3) of q^{-length}."""
    q = _exact(q)
    total: Any = 0
    for w in weyl_group("A3"):
        total = total + q ** (-w.length)
    return total


def split_normalization(ctx: CSContext):
    """Value of the split functional at the spherical vector, before rescaling."""
    if ctx.case != "split":
        raise ValueError("split normalization needs a split context")
    q = _exact(ctx.q)
    u, v = ctx.g.u, ctx.g.v

    def e(mu: Coweight):
        return u ** mu.a * v ** mu.b

    gl4 = Fraction(1)
    for beta in gl4_root_restrictions():
        gl4 = gl4 * (1 - e(beta))
    sp4 = Fraction(1)
    for alpha in C2.positive:
        factor = 1 - e(alpha) / q
        if _is_zero_number(factor):
            raise PoleError("1 - q^{-1} e^alpha vanishes: the GL4 principal series is reducible")
        sp4 = sp4 * factor
    den = alternator_at([(Fraction(1), RHO)], u, v)
    if _is_zero_number(den):
        raise SingularPointError()
    return q_gl4(q) / (1 + 1 / q) * e(-RHO) * gl4 / (sp4 * den)
