"""Exact arithmetic: Laurent polynomials, rational functions, truncated series.

Everything here is exact. Coefficients are :class:`fractions.Fraction` and
exponent vectors are tuples of Python ints, so there is no precision limit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Any, Iterable, Mapping, Sequence

__all__ = [
    "ArityError",
    "NotDivisibleError",
    "SeriesOrderError",
    "LaurentPoly",
    "RationalFn",
    "TruncatedSeries",
    "laurent_mul",
    "exact_divide",
    "series_mul",
    "as_fraction",
]


class ArityError(ValueError):
    """Operands live in polynomial rings with different variable tuples."""


class NotDivisibleError(ArithmeticError):
    """Raised by :func:`exact_divide`; ``remainder`` is the non-zero witness."""

    def __init__(self, dividend, divisor, remainder):
        self.dividend = dividend
        self.divisor = divisor
        self.remainder = remainder
        super().__init__(f"{divisor} does not divide {dividend}; remainder {remainder}")


class SeriesOrderError(ValueError):
    """Truncated series of different orders were combined."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


# --------------------------------------------------------------------------
# Laurent polynomials
# --------------------------------------------------------------------------


class LaurentPoly:
    """Multivariate Laurent polynomial over Q with named variables.

    ``terms`` maps exponent tuples to non-zero Fractions. Instances are
    immutable; the term map is canonical, so equality is dict equality.
    """

    __slots__ = ("vars", "_terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple, Any] | None = None):
        self.vars = tuple(vars)
        n = len(self.vars)
        clean: dict[tuple, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != n:
                raise ArityError(f"exponent {e} has arity {len(e)}, ring has {n}")
            c = as_fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        self._terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def _raw(cls, vars: tuple, terms: dict) -> "LaurentPoly":
        obj = object.__new__(cls)
        obj.vars = vars
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, vars: Sequence[str], c=1) -> "LaurentPoly":
        c = as_fraction(c)
        vars = tuple(vars)
        return cls._raw(vars, {(0,) * len(vars): c} if c else {})

    @classmethod
    def monomial(cls, vars: Sequence[str], exps: Sequence[int], c=1) -> "LaurentPoly":
        return cls(vars, {tuple(exps): c})

    @classmethod
    def var(cls, vars: Sequence[str], name: str) -> "LaurentPoly":
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls._raw(vars, {tuple(e): Fraction(1)})

    @classmethod
    def gens(cls, vars: Sequence[str]) -> tuple["LaurentPoly", ...]:
        return tuple(cls.var(vars, name) for name in vars)

    # -- basic queries ------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    @property
    def arity(self) -> int:
        return len(self.vars)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((0,) * self.arity, Fraction(0))

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def min_exponents(self) -> tuple:
        if not self._terms:
            return (0,) * self.arity
        return tuple(min(e[i] for e in self._terms) for i in range(self.arity))

    def leading(self) -> tuple[tuple, Fraction]:
        """Leading (exponent, coefficient) in graded-lex order."""
        e = max(self._terms, key=_grlex_key)
        return e, self._terms[e]

    def sum_of_coefficients(self) -> Fraction:
        return sum(self._terms.values(), Fraction(0))

    # -- coercion -----------------------------------------------------------
    def _coerce(self, other) -> "LaurentPoly | None":
        if isinstance(other, LaurentPoly):
            if other.vars != self.vars:
                raise ArityError(f"ring mismatch: {self.vars} vs {other.vars}")
            return other
        if _is_scalar(other):
            return LaurentPoly.const(self.vars, other)
        return None

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in o._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if _is_scalar(other):
            c = as_fraction(other)
            if not c:
                return LaurentPoly._raw(self.vars, {})
            return LaurentPoly._raw(self.vars, {e: k * c for e, k in self._terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[tuple, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return LaurentPoly._raw(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_monomial():
                raise ZeroDivisionError(f"negative power of non-monomial {self}")
            (e, c), = self._terms.items()
            return LaurentPoly._raw(self.vars, {tuple(x * k for x in e): c ** k})
        result = LaurentPoly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if _is_scalar(other):
            return self * (1 / as_fraction(other))
        if isinstance(other, LaurentPoly):
            if other.is_monomial():
                return self * other ** -1
            return RationalFn(self) / other
        if isinstance(other, RationalFn):
            return RationalFn(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        if _is_scalar(other):
            return RationalFn(LaurentPoly.const(self.vars, other)) / self
        return NotImplemented

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.vars == other.vars and self._terms == other._terms
        if _is_scalar(other):
            return self.is_constant() and self.constant_value() == other
        if isinstance(other, RationalFn):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # -- transformations ----------------------------------------------------
    def shift(self, exps: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial with exponent vector ``exps``."""
        exps = tuple(exps)
        return LaurentPoly._raw(
            self.vars, {tuple(a + b for a, b in zip(e, exps)): c for e, c in self._terms.items()}
        )

    def map_exponents(self, fn) -> "LaurentPoly":
        out: dict[tuple, Fraction] = {}
        for e, c in self._terms.items():
            e2 = tuple(fn(e))
            s = out.get(e2, 0) + c
            if s:
                out[e2] = s
            else:
                out.pop(e2, None)
        return LaurentPoly._raw(self.vars, out)

    def embed(self, new_vars: Sequence[str]) -> "LaurentPoly":
        """Same polynomial seen in a ring with a superset of variables."""
        new_vars = tuple(new_vars)
        idx = [new_vars.index(v) for v in self.vars]
        out = {}
        for e, c in self._terms.items():
            e2 = [0] * len(new_vars)
            for i, k in zip(idx, e):
                e2[i] = k
            out[tuple(e2)] = c
        return LaurentPoly._raw(new_vars, out)

    def evaluate(self, values: Mapping[str, Any] | Sequence[Any]):
        """Substitute values (numbers, polynomials, rational functions)."""
        if isinstance(values, Mapping):
            vals = [values[v] if v in values else None for v in self.vars]
        else:
            vals = list(values)
        # unspecified variables stay symbolic
        gens = LaurentPoly.gens(self.vars)
        vals = [g if x is None else x for g, x in zip(gens, vals)]
        total: Any = 0
        cache: dict[tuple[int, int], Any] = {}
        for e, c in self._terms.items():
            term: Any = c
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = _power(vals[i], k)
                    term = term * cache[key]
            total = total + term
        return total

    # -- printing -----------------------------------------------------------
    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, key=_grlex_key, reverse=True):
            c = self._terms[e]
            mono = "*".join(
                (v if k == 1 else f"{v}^{k}") for v, k in zip(self.vars, e) if k
            )
            if not mono:
                parts.append(_fmt_frac(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{_fmt_frac(c)}*{mono}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def __repr__(self):
        return f"LaurentPoly({self.vars}, {str(self)!r})"


def _fmt_frac(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _grlex_key(e: tuple):
    return (sum(e), e)


def _power(x, k: int):
    if k >= 0:
        return x ** k
    if isinstance(x, LaurentPoly) and not x.is_monomial():
        return RationalFn(LaurentPoly.const(x.vars, 1)) / x ** (-k)
    if _is_scalar(x):
        x = as_fraction(x)
    return x ** k


def laurent_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact product; raises :class:`ArityError` when the rings differ."""
    if a.vars != b.vars:
        raise ArityError(f"ring mismatch: {a.vars} vs {b.vars}")
    return a * b


def _poly_divmod(a: LaurentPoly, b: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Graded-lex division of polynomial a by polynomial b (non-negative exponents)."""
    lb, cb = b.leading()
    bterms = list(b.items())
    rem: dict[tuple, Fraction] = dict(a._terms)
    quo: dict[tuple, Fraction] = {}
    out_rem: dict[tuple, Fraction] = {}
    while rem:
        e = max(rem, key=_grlex_key)
        c = rem[e]
        shift = tuple(x - y for x, y in zip(e, lb))
        if min(shift) < 0:
            out_rem[e] = c
            del rem[e]
            continue
        f = c / cb
        quo[shift] = quo.get(shift, 0) + f
        for eb, c2 in bterms:
            e2 = tuple(x + y for x, y in zip(eb, shift))
            s = rem.get(e2, 0) - f * c2
            if s:
                rem[e2] = s
            else:
                rem.pop(e2, None)
    return LaurentPoly._raw(a.vars, quo), LaurentPoly._raw(a.vars, out_rem)


def exact_divide(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Quotient ``a / b`` in the Laurent ring, or :class:`NotDivisibleError`.

    Both operands are shifted into the polynomial ring so that no variable
    divides them. A Laurent quotient then exists iff the polynomial one does.
    """
    if a.vars != b.vars:
        raise ArityError(f"ring mismatch: {a.vars} vs {b.vars}")
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return a
    if b.is_monomial():
        return a * b ** -1
    ma, mb = a.min_exponents(), b.min_exponents()
    a0 = a.shift(tuple(-x for x in ma))
    b0 = b.shift(tuple(-x for x in mb))
    q, r = _poly_divmod(a0, b0)
    if not r.is_zero():
        raise NotDivisibleError(a, b, r)
    return q.shift(tuple(x - y for x, y in zip(ma, mb)))


# --------------------------------------------------------------------------
# Rational functions
# --------------------------------------------------------------------------


def _normalize_factor(f: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Split f = unit * g with g a polynomial, no variable factor, leading coeff 1."""
    m = f.min_exponents()
    g = f.shift(tuple(-x for x in m))
    _, c = g.leading()
    g = g * (1 / c)
    unit = LaurentPoly.monomial(f.vars, m, c)
    return unit, g


class RationalFn:
    """Quotient of Laurent polynomials with a factored denominator.

    The denominator is kept as a multiset of normalized factors (polynomials
    with leading coefficient 1 and no monomial content). Sums use the
    multiset maximum as common denominator; equality is decided by
    cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: Mapping[LaurentPoly, int] | None = None):
        self.num = num
        self.den = {f: k for f, k in (den or {}).items() if k}

    @property
    def vars(self):
        return self.num.vars

    @classmethod
    def from_ratio(cls, num: LaurentPoly, den: LaurentPoly) -> "RationalFn":
        return cls(num) / den

    def denominator(self) -> LaurentPoly:
        d = LaurentPoly.const(self.vars, 1)
        for f, k in self.den.items():
            d = d * f ** k
        return d

    def numerator(self) -> LaurentPoly:
        return self.num

    def _coerce(self, other) -> "RationalFn | None":
        if isinstance(other, RationalFn):
            if other.vars != self.vars:
                raise ArityError(f"ring mismatch: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, LaurentPoly):
            if other.vars != self.vars:
                raise ArityError(f"ring mismatch: {self.vars} vs {other.vars}")
            return RationalFn(other)
        if _is_scalar(other):
            return RationalFn(LaurentPoly.const(self.vars, other))
        return None

    def _common(self, o: "RationalFn"):
        lcm = dict(self.den)
        for f, k in o.den.items():
            if lcm.get(f, 0) < k:
                lcm[f] = k
        s_mul = LaurentPoly.const(self.vars, 1)
        o_mul = LaurentPoly.const(self.vars, 1)
        for f, k in lcm.items():
            if k - self.den.get(f, 0):
                s_mul = s_mul * f ** (k - self.den.get(f, 0))
            if k - o.den.get(f, 0):
                o_mul = o_mul * f ** (k - o.den.get(f, 0))
        return lcm, self.num * s_mul, o.num * o_mul

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.den:
            return RationalFn(self.num + o.num * self.denominator(), self.den) if self.den else RationalFn(self.num + o.num)
        lcm, a, b = self._common(o)
        return RationalFn(a + b, lcm)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        den = dict(self.den)
        for f, k in o.den.items():
            den[f] = den.get(f, 0) + k
        return RationalFn(self.num * o.num, den)._cancel_some()

    __rmul__ = __mul__

    def inverse(self) -> "RationalFn":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        unit, g = _normalize_factor(self.num)
        num = self.denominator() * unit ** -1
        den = {} if g.is_constant() else {g: 1}
        return RationalFn(num, den)._cancel_some()

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFn(self.num ** k, {f: m * k for f, m in self.den.items()})

    def _cancel_some(self) -> "RationalFn":
        """Cancel denominator factors that divide the numerator exactly.

        Only cheap attempts: a factor is tried when the numerator is small
        or is itself a monomial times that factor.
        """
        if not self.den or self.num.is_zero():
            return RationalFn(self.num) if self.num.is_zero() else self
        num = self.num
        den = dict(self.den)
        if len(num) <= 64:
            for f in list(den):
                while den.get(f):
                    try:
                        num = exact_divide(num, f)
                    except NotDivisibleError:
                        break
                    den[f] -= 1
        return RationalFn(num, den)

    def reduce(self) -> "RationalFn":
        """Cancel every denominator factor that divides the numerator."""
        num = self.num
        den = dict(self.den)
        for f in list(den):
            while den.get(f) and not num.is_zero():
                try:
                    num = exact_divide(num, f)
                except NotDivisibleError:
                    break
                den[f] -= 1
        return RationalFn(num, den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return self.num == o.num
        _, a, b = self._common(o)
        return a == b

    def __hash__(self):
        raise TypeError("RationalFn is unhashable (equality is not structural)")

    def evaluate(self, values):
        n = self.num.evaluate(values)
        d = self.denominator().evaluate(values)
        if isinstance(d, (Fraction, int)) and d == 0:
            raise ZeroDivisionError("denominator vanishes at the evaluation point")
        return n / d

    def as_laurent(self) -> LaurentPoly:
        r = self.reduce()
        if r.den:
            raise NotDivisibleError(self.num, self.denominator(), None)
        return r.num

    def __str__(self):
        if not self.den:
            return str(self.num)
        dens = "*".join(
            f"({f})" if k == 1 else f"({f})^{k}" for f, k in sorted(self.den.items(), key=lambda x: str(x[0]))
        )
        return f"({self.num})/({dens})"

    def __repr__(self):
        return f"RationalFn({self})"


# --------------------------------------------------------------------------
# Truncated power series
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series c_0 + c_1 t + ... + c_N t^N modulo t^(N+1).

    Coefficients may be Fractions, LaurentPolys or RationalFns; only ring
    operations are used on them.
    """

    coeffs: tuple
    order: int

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise SeriesOrderError(f"{len(self.coeffs)} coefficients for order {self.order}")

    @classmethod
    def from_list(cls, coeffs: Iterable, order: int) -> "TruncatedSeries":
        cs = list(coeffs)[: order + 1]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        return cls(tuple(_canon(c) for c in cs), order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls.from_list([Fraction(1)], order)

    @classmethod
    def geometric(cls, ratio, order: int) -> "TruncatedSeries":
        """Expansion of 1/(1 - ratio*t)."""
        cs = [Fraction(1)]
        for _ in range(order):
            cs.append(cs[-1] * ratio)
        return cls.from_list(cs, order)

    @classmethod
    def inverse_of_polynomial(cls, poly: Sequence, order: int) -> "TruncatedSeries":
        """Long division: expansion of 1/P(t) with P(0) = 1."""
        p = list(poly)
        if p[0] != 1:
            raise ValueError("constant term must be 1")
        out = [Fraction(1)]
        for k in range(1, order + 1):
            acc: Any = 0
            for i in range(1, min(k, len(p) - 1) + 1):
                acc = acc + p[i] * out[k - i]
            out.append(_canon(-acc))
        return cls.from_list(out, order)

    def _check(self, other: "TruncatedSeries"):
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"expected TruncatedSeries, got {type(other).__name__}")
        if other.order != self.order:
            raise SeriesOrderError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other):
        self._check(other)
        return TruncatedSeries(tuple(_canon(a + b) for a, b in zip(self.coeffs, other.coeffs)), self.order)

    def __sub__(self, other):
        self._check(other)
        return TruncatedSeries(tuple(_canon(a - b) for a, b in zip(self.coeffs, other.coeffs)), self.order)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return TruncatedSeries(tuple(_canon(c * other) for c in self.coeffs), self.order)

    __rmul__ = __mul__

    def __getitem__(self, k):
        return self.coeffs[k]

    def first_mismatch(self, other: "TruncatedSeries") -> int | None:
        self._check(other)
        for k, (a, b) in enumerate(zip(self.coeffs, other.coeffs)):
            if not _equal(a, b):
                return k
        return None

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries) or other.order != self.order:
            return NotImplemented
        return self.first_mismatch(other) is None

    __hash__ = None  # type: ignore[assignment]


def _canon(c):
    if isinstance(c, int) and not isinstance(c, bool):
        return Fraction(c)
    return c


def _equal(a, b) -> bool:
    if isinstance(a, (RationalFn, LaurentPoly)):
        return a == b
    if isinstance(b, (RationalFn, LaurentPoly)):
        return b == a
    return a == b


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the common order."""
    a._check(b)
    n = a.order
    out = []
    for k in range(n + 1):
        acc: Any = 0
        for i in range(k + 1):
            x, y = a.coeffs[i], b.coeffs[k - i]
            if _is_zero(x) or _is_zero(y):
                continue
            acc = acc + x * y
        out.append(_canon(acc))
    return TruncatedSeries(tuple(out), n)


def _is_zero(x) -> bool:
    if isinstance(x, (LaurentPoly, RationalFn)):
        return x.is_zero()
    return x == 0
