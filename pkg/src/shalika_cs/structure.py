"""Matrix checks over E = F(delta) and numeric p-adic period integrals.

Matrix entries are :class:`QuadExtScalar` values a + b*delta with delta^2 = d.
The components a, b (and d) may be Fractions or symbolic rational functions,
so the factorization identities can be checked with every input left free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .exactalg import LaurentPoly, RationalFn

__all__ = [
    "QuadExtScalar",
    "PadicSampler",
    "matmul",
    "conj_transpose",
    "is_upper_triangular",
    "J_MATRIX",
    "s1_matrix",
    "s2_matrix",
    "w_delta_matrix",
    "orbit_representative",
    "unitary_similitude",
    "shalika_element",
    "stabilizer_sample",
    "stabilizer_check",
    "lemfact1_check",
    "excep_iso_matrix",
    "excep_iso_expected",
    "excep_iso_check",
    "padic_integral_comp1",
    "padic_integral_comp2",
    "comp1_closed_form",
    "comp2_closed_form",
    "comp2_unit_region_closed_form",
    "smallest_nonresidue",
]


def _exact(x):
    return Fraction(x) if isinstance(x, int) and not isinstance(x, bool) else x


def _is_zero(x) -> bool:
    if isinstance(x, (LaurentPoly, RationalFn)):
        return x.is_zero()
    return x == 0


@dataclass(frozen=True, eq=False)
class QuadExtScalar:
    """a + b*delta in F(delta), delta^2 = d, conj(delta) = -delta."""

    a: Any
    b: Any
    d: Any

    def __post_init__(self):
        object.__setattr__(self, "a", _exact(self.a))
        object.__setattr__(self, "b", _exact(self.b))
        object.__setattr__(self, "d", _exact(self.d))

    def _lift(self, x) -> "QuadExtScalar":
        if isinstance(x, QuadExtScalar):
            return x
        return QuadExtScalar(x, 0, self.d)

    def __add__(self, o):
        o = self._lift(o)
        return QuadExtScalar(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExtScalar(-self.a, -self.b, self.d)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        o = self._lift(o)
        return QuadExtScalar(self.a * o.a + self.b * o.b * self.d, self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def conj(self) -> "QuadExtScalar":
        return QuadExtScalar(self.a, -self.b, self.d)

    def norm(self):
        return self.a * self.a - self.d * self.b * self.b

    def trace(self):
        return 2 * self.a

    def inverse(self) -> "QuadExtScalar":
        n = self.norm()
        if _is_zero(n):
            raise ZeroDivisionError("non-invertible element of E")
        return QuadExtScalar(self.a / n, -self.b / n, self.d)

    def __truediv__(self, o):
        return self * self._lift(o).inverse()

    def __rtruediv__(self, o):
        return self._lift(o) * self.inverse()

    def is_zero(self) -> bool:
        return _is_zero(self.a) and _is_zero(self.b)

    def in_base_field(self) -> bool:
        return _is_zero(self.b)

    def __eq__(self, o):
        o = self._lift(o)
        return (self - o).is_zero()

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self):
        return f"({self.a} + {self.b}*delta)"


# --------------------------------------------------------------------------
# matrices as nested tuples
# --------------------------------------------------------------------------

Matrix = tuple


def _m(rows, d) -> Matrix:
    return tuple(tuple(x if isinstance(x, QuadExtScalar) else QuadExtScalar(x, 0, d) for x in r) for r in rows)


def matmul(A: Matrix, B: Matrix) -> Matrix:
    n, k, m = len(A), len(B), len(B[0])
    return tuple(
        tuple(sum((A[i][l] * B[l][j] for l in range(1, k)), A[i][0] * B[0][j]) for j in range(m)) for i in range(n)
    )


def mat_eq(A: Matrix, B: Matrix) -> bool:
    return all(x == y for ra, rb in zip(A, B) for x, y in zip(ra, rb))


def conj_transpose(A: Matrix) -> Matrix:
    return tuple(tuple(A[j][i].conj() for j in range(len(A))) for i in range(len(A[0])))


def transpose(A: Matrix) -> Matrix:
    return tuple(tuple(A[j][i] for j in range(len(A))) for i in range(len(A[0])))


def scalar_mul(c, A: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in r) for r in A)


def is_upper_triangular(A: Matrix) -> bool:
    return all(A[i][j].is_zero() for i in range(len(A)) for j in range(i))


def inverse_4x4(A: Matrix) -> Matrix:
    """Gauss-Jordan over E (entries are QuadExtScalar)."""
    n = len(A)
    d = A[0][0].d
    M = [list(r) + [QuadExtScalar(int(i == j), 0, d) for j in range(n)] for i, r in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not M[r][col].is_zero()), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[col], M[piv] = M[piv], M[col]
        inv = M[col][col].inverse()
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and not M[r][col].is_zero():
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return tuple(tuple(r[n:]) for r in M)


def J_MATRIX(d) -> Matrix:
    return _m([[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]], d)


def s1_matrix(d) -> Matrix:
    return _m([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], d)


def s2_matrix(d) -> Matrix:
    return _m([[1, 0, 0, 0], [0, 0, 1, 0], [0, -1, 0, 0], [0, 0, 0, 1]], d)


def w_delta_matrix(d) -> Matrix:
    delta = QuadExtScalar(0, 1, d)
    return _m([[1, 0, 0, 0], [delta, 1, 0, 0], [0, 0, 1, 0], [0, 0, delta, 1]], d)


_GENS = {"s1": s1_matrix, "s2": s2_matrix, "w_delta": w_delta_matrix}


def word_matrix(word: Sequence[str], d) -> Matrix:
    M = _m([[int(i == j) for j in range(4)] for i in range(4)], d)
    for g in word:
        M = matmul(M, _GENS[g](d))
    return M


def orbit_representative(orbit, d) -> Matrix:
    return word_matrix(orbit.word, d)


def unitary_similitude(g: Matrix):
    """Return m with conj(g)^t J g = m J, or None when g is not a similitude."""
    d = g[0][0].d
    J = J_MATRIX(d)
    lhs = matmul(matmul(conj_transpose(g), J), g)
    m = lhs[0][3]
    if not m.in_base_field():
        return None
    if mat_eq(lhs, scalar_mul(m, J)):
        return m
    return None


# --------------------------------------------------------------------------
# Shalika subgroup and stabilizers
# --------------------------------------------------------------------------


def shalika_element(A: Sequence[Sequence[Any]], alpha: QuadExtScalar, x, y, d) -> Matrix:
    """diag(A, A*) times the unipotent with upper block [[alpha, x], [y, conj(alpha)]].

    A is in GL2(F) and A* = [[a, -b], [-c, d]] is det(A) J2 A^{-t} J2, so the
    product is a unitary similitude with multiplier det(A).
    """
    (a, b), (c, dd) = A
    lev = _m([[a, b, 0, 0], [c, dd, 0, 0], [0, 0, a, -b], [0, 0, -c, dd]], d)
    alpha = alpha if isinstance(alpha, QuadExtScalar) else QuadExtScalar(alpha, 0, d)
    uni = _m([[1, 0, alpha, x], [0, 1, y, alpha.conj()], [0, 0, 1, 0], [0, 0, 0, 1]], d)
    return matmul(lev, uni)


def stabilizer_sample(orbit, rng, d) -> Matrix:
    """Random element built from the generator recipe of the orbit's stabilizer."""

    def r():
        while True:
            x = Fraction(rng.randint(-20, 20), rng.randint(1, 12))
            if x:
                return x

    delta = QuadExtScalar(0, 1, d)
    if orbit.index <= 4:
        A = ((r(), r()), (0, r()))  # Borel of GL2
    else:
        a, b = r(), r()
        while a * a - b * b * d == 0:
            a, b = r(), r()
        A = ((a, b), (b * d, a))  # non-split torus T_delta
    zero = QuadExtScalar(0, 0, d)
    alpha, x, y = QuadExtScalar(r(), r(), d), r(), r()
    idx = orbit.index
    if idx in (1, 5):
        pass
    elif idx == 2:
        y = 0
    elif idx == 3:
        alpha, y = zero, 0
    elif idx in (4, 8):
        alpha, x, y = zero, 0, 0
    elif idx == 6:
        yy = delta * alpha + (delta * alpha).conj() - delta * delta.conj() * x
        y = yy.a
    elif idx == 7:
        alpha = delta.conj() * x
        y = (delta * delta.conj()).a * x
    return shalika_element(A, alpha, x, y, d)


def stabilizer_check(orbit, sample: Matrix) -> bool:
    """w^{-1} sample w is upper triangular and sample is a unitary similitude."""
    if len(sample) != 4 or any(len(r) != 4 for r in sample):
        raise ValueError("malformed sample: expected a 4x4 matrix")
    d = sample[0][0].d
    if unitary_similitude(sample) is None:
        return False
    w = orbit_representative(orbit, d)
    conj = matmul(matmul(inverse_4x4(w), sample), w)
    return is_upper_triangular(conj)


# --------------------------------------------------------------------------
# factorization lemma
# --------------------------------------------------------------------------


def lemfact1_check(which: int, y: QuadExtScalar) -> bool:
    """Multiply out the two-factor decompositions and compare with the left side."""
    d = y.d
    if which == 1:
        if y.is_zero():
            raise ValueError("factorization requires y != 0")
        yi = y.inverse()
        lhs = _m([[1, 0, 0, 0], [0, 0, 1, 0], [0, -1, -y, 0], [0, 0, 0, 1]], d)
        left = _m([[1, 0, 0, 0], [0, -yi, 1, 0], [0, 0, -y, 0], [0, 0, 0, 1]], d)
        right = _m([[1, 0, 0, 0], [0, 1, 0, 0], [0, yi, 1, 0], [0, 0, 0, 1]], d)
    elif which == 2:
        by = y.b
        N = y * y.conj() + by
        if N.is_zero():
            raise ValueError("factorization requires y*conj(y) + b_y != 0")
        Ni = N.inverse()
        yb = y.conj()
        lhs = _m([[0, 1, 0, 0], [1, y, 0, 0], [0, 0, 0, 1], [0, 0, 1, -yb]], d)
        left = _m([[-Ni, yb * Ni, 0, 0], [0, 1, 0, 0], [0, 0, Ni, y * Ni], [0, 0, 0, -1]], d)
        right = _m([[yb, -by, 0, 0], [1, y, 0, 0], [0, 0, y, by], [0, 0, -1, yb]], d)
    else:
        raise ValueError("which must be 1 or 2")
    return mat_eq(matmul(left, right), lhs)


# --------------------------------------------------------------------------
# exceptional isomorphism on the torus
# --------------------------------------------------------------------------


def _v_matrix(x: Sequence[Any], d) -> Matrix:
    x1, x2, x3, x4, x5, x6 = x
    delta = QuadExtScalar(0, 1, d)
    z = delta * x4 + x3
    zb = z.conj()
    return _m(
        [
            [0, -x1, x2, -zb],
            [x1, 0, z, x5],
            [-x2, -z, 0, x6],
            [zb, -x5, -x6, 0],
        ],
        d,
    )


def _v_coords(M: Matrix) -> list | None:
    """Inverse of _v_matrix; None when M is not in the 6-dim space."""
    x1, x2, z, x5, x6 = M[1][0], M[0][2], M[1][2], M[1][3], M[2][3]
    if not all(c.in_base_field() for c in (x1, x2, x5, x6)):
        return None
    coords = [x1.a, x2.a, z.a, z.b, x5.a, x6.a]
    if not mat_eq(M, _v_matrix(coords, M[0][0].d)):
        return None
    return coords


def excep_iso_matrix(a: QuadExtScalar, b: QuadExtScalar, nu) -> list[list[Any]]:
    """6x6 matrix over F of v -> conj(ab) t v t^t, t = diag(a, b, nu/conj(b), nu/conj(a))."""
    d = a.d
    nu = _exact(nu)
    if a.is_zero() or b.is_zero() or _is_zero(nu):
        raise ZeroDivisionError("torus entries must be invertible")
    t = [a, b, QuadExtScalar(nu, 0, d) / b.conj(), QuadExtScalar(nu, 0, d) / a.conj()]
    scale = (a * b).conj()
    cols = []
    for k in range(6):
        e = [0] * 6
        e[k] = 1
        V = _v_matrix(e, d)
        W = tuple(tuple(scale * t[i] * V[i][j] * t[j] for j in range(4)) for i in range(4))
        c = _v_coords(W)
        if c is None:
            raise AssertionError("torus action leaves the 6-dim space")
        cols.append(c)
    return [[cols[j][i] for j in range(6)] for i in range(6)]


def excep_iso_expected(a: QuadExtScalar, b: QuadExtScalar, nu) -> list[list[Any]]:
    """diag(N(ab), nu N(a), [mult by nu conj(a) b], nu N(b), nu^2)."""
    nu = _exact(nu)
    d = a.d
    w = a.conj() * b * nu
    out = [[Fraction(0)] * 6 for _ in range(6)]
    out[0][0] = (a * b).norm()
    out[1][1] = nu * a.norm()
    # z -> w z on z = x3 + delta x4
    out[2][2], out[2][3] = w.a, w.b * d
    out[3][2], out[3][3] = w.b, w.a
    out[4][4] = nu * b.norm()
    out[5][5] = nu * nu
    return out


def excep_iso_check(a: QuadExtScalar, b: QuadExtScalar, nu) -> bool:
    got = excep_iso_matrix(a, b, nu)
    exp = excep_iso_expected(a, b, nu)
    return all(_is_zero(x - y) for rg, re in zip(got, exp) for x, y in zip(rg, re))


# --------------------------------------------------------------------------
# p-adic period integrals (numeric)
# --------------------------------------------------------------------------


def smallest_nonresidue(p: int) -> int:
    for r in range(2, p):
        if pow(r, (p - 1) // 2, p) == p - 1:
            return r
    raise ValueError(f"{p} has no non-residue")


def _valuation(x: int, p: int, cap: int) -> int:
    if x % p ** cap == 0:
        return cap
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k


@dataclass(frozen=True)
class PadicSampler:
    """Coset sampler for Q_p integrals at resolution p^depth.

    The additive character is psi(x) = exp(2 pi i {x}_p); it is trivial on Z_p.
    """

    p: int
    depth: int = 3
    d: int | None = None

    def __post_init__(self):
        if self.p < 3 or any(self.p % k == 0 for k in range(2, math.isqrt(self.p) + 1)):
            raise ValueError("p must be an odd prime")
        if self.depth < 1:
            raise ValueError("depth must be positive")
        if self.d is None:
            object.__setattr__(self, "d", smallest_nonresidue(self.p))

    def psi(self, num: int, j: int) -> complex:
        """psi(num / p^j) for an integer num."""
        frac = (num % self.p ** j) / self.p ** j if j > 0 else 0.0
        return complex(np.exp(2j * np.pi * frac))


def comp1_closed_form(p: int, z2) -> float:
    q = float(p)
    return 1 - 1 / q - q ** (-(2 * float(z2) + 1))


def padic_integral_comp1(sampler: PadicSampler, z2, Jmax: int | None = None, tol: float = 1e-12) -> dict:
    """Riemann sum of int_O |y|^{2 z2 - 1} psi^{-1}(2 d / y) dy, shell by shell.

    Shell j (|y| = q^-j) is sampled on unit residues mod p^max(D, j), where
    psi(2d/y) is constant on cosets. The tail beyond Jmax is bounded by the
    absolute sum of the remaining shells.
    """
    p, D, d = sampler.p, sampler.depth, sampler.d
    z2 = float(z2)
    if z2 <= 0:
        raise ValueError("need Re(z2) > 0 for convergence")
    q = float(p)
    # tail after J: sum_{j>J} q^{-2 j z2} (1 - 1/q)
    if Jmax is None:
        Jmax = 1
        while (1 - 1 / q) * q ** (-2 * (Jmax + 1) * z2) / (1 - q ** (-2 * z2)) > tol:
            Jmax += 1
    shells = []
    for j in range(Jmax + 1):
        res = max(D, j)
        M = p ** res
        w = np.arange(M, dtype=np.int64)
        w = w[w % p != 0]
        if j == 0:
            avg = 1.0 + 0j
        else:
            mod = p ** j
            inv = np.array([pow(int(x), -1, mod) for x in (w % mod)], dtype=np.int64)
            phase = ((2 * d) * inv) % mod / mod
            avg = complex(np.exp(-2j * np.pi * phase).mean())
        # measure of shell j is q^-j (1 - 1/q); |y|^{2z2-1} = q^{-j(2z2-1)}
        shells.append(q ** (-j * (2 * z2 - 1)) * q ** (-j) * (1 - 1 / q) * avg)
    total = complex(sum(shells))
    tail = (1 - 1 / q) * q ** (-2 * (Jmax + 1) * z2) / (1 - q ** (-2 * z2))
    exact = comp1_closed_form(p, z2)
    return {
        "value": total,
        "closed_form": exact,
        "error": abs(total - exact),
        "tail_bound": tail,
        "shells": shells,
        "Jmax": Jmax,
    }


def comp2_closed_form(p: int, z1, z0) -> float:
    q = float(p)
    s = 2 * float(z1) + float(z0)
    X = -(q ** s)
    return -(1 / q ** 2) * (1 + (q - 1) * (1 - q * X) / (1 + X))


def comp2_unit_region_closed_form(p: int, z1, z0) -> float:
    q = float(p)
    s = 2 * float(z1) + float(z0)
    return (q * q - q - 1) / q ** 2 + (1 - 1 / q) / (q ** s - 1)


def padic_integral_comp2(sampler: PadicSampler, z1, z0, Jmax: int = 400) -> dict:
    """int_{O x O} |a^2 - d b^2 + b|^{s-1} da db with s = 2 z1 + z0.

    Each coset mod p^D with v(f) < D contributes exactly. Cosets with
    f = 0 mod p^D are handled by Hensel: grad f = (2a, 1 - 2db) is never
    zero mod p on f = 0, so the deeper valuations are geometric with ratio
    1/q and their contribution is summed in closed form. Results are split
    into the unit region and the strata of v(a) = i, v(b) = j inside p x p.
    ``Jmax`` is the number of valuation levels kept in that geometric tail.
    """
    p, D, d = sampler.p, sampler.depth, sampler.d
    s = 2 * float(z1) + float(z0)
    if s <= 1:
        raise ValueError("need Re(2 z1 + z0) > 1 for convergence")
    if Jmax < 1:
        raise ValueError("Jmax must be positive")
    q = float(p)
    M = p ** D
    cell = 1.0 / (M * M)
    # tail factor for a coset known only to satisfy v(f) >= D
    tail = sum((1 - 1 / q) * q ** (-(k - D)) * q ** (-k * (s - 1)) for k in range(D, D + Jmax))
    strata = {"unit": 0.0, "j<2i": 0.0, "j>2i": 0.0, "j=2i": 0.0, "deep": 0.0}
    a = np.arange(M, dtype=np.int64)
    for bv in range(M):
        f = (a * a - d * bv * bv + bv) % M
        vals = np.array([_valuation(int(x), p, D) for x in f])
        contrib = np.where(vals < D, q ** (-vals * (s - 1)), tail) * cell
        if bv % p:
            strata["unit"] += float(contrib.sum())
            continue
        for av, c in zip(a, contrib):
            if av % p:
                strata["unit"] += float(c)
                continue
            i = _valuation(int(av), p, D)
            j = _valuation(bv, p, D)
            if i >= D or j >= D:
                strata["deep"] += float(c)
            elif j < 2 * i:
                strata["j<2i"] += float(c)
            elif j > 2 * i:
                strata["j>2i"] += float(c)
            else:
                strata["j=2i"] += float(c)
    total = sum(strata.values())
    exact = comp2_closed_form(p, z1, z0)
    return {
        "value": total,
        "closed_form": exact,
        "error": abs(total - exact),
        "strata": strata,
        "unit_closed_form": comp2_unit_region_closed_form(p, z1, z0),
    }
