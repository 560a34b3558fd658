"""Library-level verification suite behind ``shalika-cs selftest``.

Each check returns (passed, detail). The pytest acceptance file runs its
own assertions; this module is the same protocol packaged for the CLI.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable

from .exactalg import LaurentPoly
from .lfactor import euler_series, lfactor_series, random_regular_points, verify_identity
from .rootdata import RHO, Coweight, simple_reflection
from .satake import CharacterTriple, gsp4_from_uv, symbolic_gsp4
from .shalika import CSContext, cs_inert, cs_inert_recursion, cs_inert_unnormalized
from .structure import (
    PadicSampler,
    QuadExtScalar,
    excep_iso_check,
    lemfact1_check,
    padic_integral_comp1,
    padic_integral_comp2,
    stabilizer_check,
    stabilizer_sample,
)
from .theta import ORBITS, mackey_conditions, theta_transfer
from .weylchar import (
    alternate_action,
    alternator,
    sym_decomp,
    sym_power_oracle,
    weyl_character,
    weyl_denominator,
)

Check = Callable[[], tuple[bool, str]]


def zeta_equals_l(case: str, sym_order: int = 8, num_order: int = 16, points: int = 20, seed: int = 2024):
    def run():
        r = verify_identity(case, order=sym_order)
        if not r.equal:
            return False, f"symbolic mismatch at t^{r.first_mismatch}"
        for u, v, q in random_regular_points(points, seed):
            r = verify_identity(case, gsp4_from_uv(u, v), q, num_order)
            if not r.equal:
                return False, f"numeric mismatch at (u,v,q)=({u},{v},{q}), t^{r.first_mismatch}"
        return True, f"symbolic order {sym_order}; {points} points to order {num_order}"

    return run


def recursion_closed_form(nmax: int = 6):
    def run():
        ctx = CSContext.build("inert")
        for n in range(nmax + 1):
            if not cs_inert_recursion(n, ctx) == cs_inert_unnormalized(n, ctx):
                return False, f"n={n}"
        return True, f"n=0..{nmax}"

    return run


def normalization_constant(nmax: int = 5):
    def run():
        ctx = CSContext.build("inert")
        base = cs_inert(0, ctx) / cs_inert_unnormalized(0, ctx)
        for n in range(1, nmax + 1):
            if not cs_inert(n, ctx) / cs_inert_unnormalized(n, ctx) == base:
                return False, f"ratio changes at n={n}"
        return True, f"n=0..{nmax}"

    return run


def two_path_euler(order: int = 12):
    def run():
        chi = symbolic_gsp4()
        for twist in ("trivial", "quadratic"):
            if not euler_series(chi, twist, order) == lfactor_series(chi, twist, None, order):
                return False, twist
        return True, f"order {order}"

    return run


def weyl_machinery(kmax: int = 10):
    def run():
        if alternator(RHO) != weyl_denominator():
            return False, "denominator identity"
        rng = random.Random(7)
        for _ in range(20):
            mu = Coweight(rng.randint(-6, 6), rng.randint(-6, 6))
            p = alternator(mu)
            for s in ("s1", "s2"):
                if alternate_action(simple_reflection(s), p) != -p:
                    return False, f"antisymmetry {s} at {tuple(mu)}"
        zero = LaurentPoly(weyl_denominator().vars)
        for k in range(kmax + 1):
            rhs = sum((weyl_character(l).value for l in sym_decomp(k)), zero)
            if sym_power_oracle(k).value != rhs:
                return False, f"Sym^{k}"
        dims = weyl_character(Coweight(1, 1)).dimension, weyl_character(Coweight(2, 2)).dimension
        if dims != (5, 14):
            return False, f"dims {dims}"
        return True, "denominator, antisymmetry, Sym^k<=10, dims 5/14"

    return run


def mackey_theta(count: int = 100, seed: int = 11):
    def run():
        rng = random.Random(seed)
        q = Fraction(5)
        for _ in range(count):
            x0 = Fraction(rng.randint(2, 40), rng.randint(1, 40))
            chi = CharacterTriple("GSp4", (-1 / (x0 * x0), -1, x0))
            if chi.values[0] in (q, 1 / q, -1, 1, -q, -1 / q):
                continue
            xi, _ = theta_transfer(chi, q)
            c1, c2 = mackey_conditions(xi)
            if not (c2 and not c1) or not xi.has_trivial_central_character():
                return False, f"dihedral {chi.values}"
        n = 0
        while n < count:
            u = Fraction(rng.randint(2, 30), rng.randint(1, 30))
            v = Fraction(rng.randint(2, 30), rng.randint(1, 30))
            chi = gsp4_from_uv(u, v)
            x1, x2, _ = chi.values
            if -1 in (x1, x2) or any(val in (q, 1 / q) for val in (x1, x2, x1 * x2, x1 / x2)):
                continue
            n += 1
            xi, _ = theta_transfer(chi, q)
            if any(mackey_conditions(xi)) or not xi.has_trivial_central_character():
                return False, f"non-dihedral {chi.values}"
        return True, f"{count} dihedral, {count} non-dihedral"

    return run


def period_integrals():
    def run():
        worst1 = 0.0
        for p, z2 in ((3, Fraction(1)), (3, Fraction(2)), (5, Fraction(3, 2)), (5, Fraction(1))):
            worst1 = max(worst1, padic_integral_comp1(PadicSampler(p, 3), z2)["error"])
        worst2 = 0.0
        for p, z1, z0 in ((3, Fraction(1), Fraction(1, 2)), (5, Fraction(2), Fraction(-1))):
            worst2 = max(worst2, padic_integral_comp2(PadicSampler(p, 3), z1, z0)["error"])
        ok = worst1 < 1e-9 and worst2 < 1e-6
        return ok, f"comp1 max err {worst1:.2e}; comp2 max err {worst2:.2e}"

    return run


def structural(count: int = 50, seed: int = 5):
    def run():
        a, b, d = LaurentPoly.gens(("a", "b", "d"))
        if not (lemfact1_check(1, QuadExtScalar(a, b, d)) and lemfact1_check(2, QuadExtScalar(a, b, d))):
            return False, "factorization"
        rng = random.Random(seed)
        dd = Fraction(3)

        def r():
            return Fraction(rng.choice([-1, 1]) * rng.randint(1, 15), rng.randint(1, 15))

        for _ in range(count):
            A, B = QuadExtScalar(r(), r(), dd), QuadExtScalar(r(), r(), dd)
            if not excep_iso_check(A, B, r()):
                return False, "exceptional isomorphism"
        if len(ORBITS) != 8 or [o.index for o in ORBITS if o.open] != [8]:
            return False, "orbit table"
        for o in ORBITS:
            for _ in range(3):
                if not stabilizer_check(o, stabilizer_sample(o, rng, dd)):
                    return False, f"stabilizer {o.index}"
        return True, "factorizations, 50 torus elements, 8 orbits"

    return run


def mutation():
    def run():
        for case, signs in (("split", (1, -1)), ("split", (-1, 1)), ("inert", (-1, 1)), ("inert", (1, -1))):
            r = verify_identity(case, order=4, short_signs=signs)
            if r.equal or r.first_mismatch > 2:
                return False, f"{case} {signs}"
        return True, "all four single-sign flips caught by t^2"

    return run


CRITERIA: list[tuple[str, Check]] = [
    ("1 zeta = L (split)", zeta_equals_l("split")),
    ("2 zeta = L (inert, twisted)", zeta_equals_l("inert")),
    ("3 recursion = closed form", recursion_closed_form()),
    ("4 normalization independent of n", normalization_constant()),
    ("5 two-path Euler factor", two_path_euler()),
    ("6 Weyl machinery", weyl_machinery()),
    ("7 Mackey/theta consistency", mackey_theta()),
    ("8 period-integral oracle", period_integrals()),
    ("9 structural identities", structural()),
    ("10 mutation sensitivity", mutation()),
]


def run_all() -> list[dict]:
    out = []
    for name, check in CRITERIA:
        try:
            ok, detail = check()
        except Exception as exc:  # report, do not crash the suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append({"criterion": name, "passed": bool(ok), "detail": detail})
    return out
