"""Root data and Weyl groups for C2 (Sp4) and A3 (GL4).

Weights of the dual torus diag(u, v, 1/v, 1/u) are integer pairs (a, b)
standing for the monomial u^a v^b. In these coordinates the positive roots
of Sp4(C) are (1,-1), (1,1) (short) and (2,0), (0,2) (long), so that
rho = (2, 1) and every exponent that occurs is an integer.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Any, Mapping

from .exactalg import LaurentPoly

__all__ = [
    "Coweight",
    "WeylElement",
    "RootTable",
    "RHO",
    "EPS1",
    "EPS2",
    "C2",
    "A3",
    "weyl_group",
    "weyl_act",
    "eval_coweight",
    "modulus_eval",
    "modulus_exponent",
    "identification",
    "gl4_root_restrictions",
    "SYMBOLS",
    "symbols",
]

# Default symbolic ring: Satake coordinates u, v and the residue field size q.
SYMBOLS = ("u", "v", "q")


def symbols() -> tuple[LaurentPoly, LaurentPoly, LaurentPoly]:
    return LaurentPoly.gens(SYMBOLS)  # type: ignore[return-value]


@dataclass(frozen=True, order=True)
class Coweight:
    """Integer exponent pair (a, b) meaning u^a v^b on diag(u, v, 1/v, 1/u)."""

    a: int
    b: int

    def __iter__(self):
        yield self.a
        yield self.b

    def __add__(self, o: "Coweight") -> "Coweight":
        return Coweight(self.a + o.a, self.b + o.b)

    def __sub__(self, o: "Coweight") -> "Coweight":
        return Coweight(self.a - o.a, self.b - o.b)

    def __neg__(self) -> "Coweight":
        return Coweight(-self.a, -self.b)

    def __mul__(self, k: int) -> "Coweight":
        return Coweight(k * self.a, k * self.b)

    __rmul__ = __mul__

    def is_dominant(self) -> bool:
        return self.a >= self.b >= 0

    def is_positive(self) -> bool:
        """Positive for the ordering that makes (1,-1) and (0,2) simple."""
        return self.a > 0 or (self.a == 0 and self.b > 0)


EPS1 = Coweight(1, 0)
EPS2 = Coweight(0, 1)
RHO = Coweight(2, 1)


@dataclass(frozen=True)
class WeylElement:
    """Signed permutation (C2) or permutation (A3).

    For C2, ``perm`` and ``signs`` act by (a, b) -> (s0 * x[perm[0]], s1 * x[perm[1]]).
    For A3, ``perm`` is a permutation of range(4) acting on e_1..e_4.
    """

    system: str
    perm: tuple
    signs: tuple = ()
    word: tuple = field(default=(), compare=False)

    def act(self, mu):
        if self.system == "C2":
            x = tuple(mu)
            return Coweight(self.signs[0] * x[self.perm[0]], self.signs[1] * x[self.perm[1]])
        x = tuple(mu)
        out = [0] * 4
        for i, j in enumerate(self.perm):
            out[j] = x[i]
        return tuple(out)

    def compose(self, other: "WeylElement") -> "WeylElement":
        """self * other (apply other first)."""
        if self.system != other.system:
            raise ValueError("different Weyl groups")
        if self.system == "C2":
            perm = tuple(other.perm[self.perm[i]] for i in range(2))
            signs = tuple(self.signs[i] * other.signs[self.perm[i]] for i in range(2))
            return _lookup_c2(perm, signs)
        perm = tuple(self.perm[other.perm[i]] for i in range(4))
        return _lookup_a3(perm)

    __mul__ = compose

    def inverse(self) -> "WeylElement":
        for w in weyl_group(self.system):
            if w.compose(self).is_identity():
                return w
        raise AssertionError("group table incomplete")

    def is_identity(self) -> bool:
        if self.system == "C2":
            return self.perm == (0, 1) and self.signs == (1, 1)
        return self.perm == (0, 1, 2, 3)

    @property
    def length(self) -> int:
        table = C2 if self.system == "C2" else A3
        return sum(1 for r in table.positive if not _is_pos(self.system, self.act(r)))

    @property
    def sign(self) -> int:
        return -1 if self.length % 2 else 1

    def __repr__(self):
        w = "".join(self.word) or "id"
        return f"WeylElement({self.system}, {w})"


def _is_pos(system: str, r) -> bool:
    if system == "C2":
        return Coweight(*r).is_positive()
    # e_i - e_j with i < j: first non-zero entry is +1
    for x in r:
        if x:
            return x > 0
    return False


@dataclass(frozen=True)
class RootTable:
    system: str
    positive: tuple
    short: frozenset
    simple: tuple

    @property
    def long(self) -> frozenset:
        return frozenset(self.positive) - self.short


C2 = RootTable(
    "C2",
    positive=(Coweight(1, -1), Coweight(1, 1), Coweight(2, 0), Coweight(0, 2)),
    short=frozenset({Coweight(1, -1), Coweight(1, 1)}),
    simple=(Coweight(1, -1), Coweight(0, 2)),
)


def _a3_roots():
    out = []
    for i in range(4):
        for j in range(i + 1, 4):
            e = [0] * 4
            e[i], e[j] = 1, -1
            out.append(tuple(e))
    return tuple(out)


A3 = RootTable(
    "A3",
    positive=_a3_roots(),
    short=frozenset(_a3_roots()),
    simple=((1, -1, 0, 0), (0, 1, -1, 0), (0, 0, 1, -1)),
)


def _generators(system: str) -> dict[str, WeylElement]:
    if system == "C2":
        return {
            "s1": WeylElement("C2", (1, 0), (1, 1), ("s1",)),  # swap
            "s2": WeylElement("C2", (0, 1), (1, -1), ("s2",)),  # flip second
        }
    gens = {}
    for k in range(3):
        p = list(range(4))
        p[k], p[k + 1] = p[k + 1], p[k]
        gens[f"s{k + 1}"] = WeylElement("A3", tuple(p), (), (f"s{k + 1}",))
    return gens


def _raw_compose(x: WeylElement, y: WeylElement, word: tuple) -> WeylElement:
    if x.system == "C2":
        perm = tuple(y.perm[x.perm[i]] for i in range(2))
        signs = tuple(x.signs[i] * y.signs[x.perm[i]] for i in range(2))
        return WeylElement("C2", perm, signs, word)
    perm = tuple(x.perm[y.perm[i]] for i in range(4))
    return WeylElement("A3", perm, (), word)


@lru_cache(maxsize=None)
def weyl_group(system: str = "C2") -> tuple[WeylElement, ...]:
    """All elements, each tagged with a shortest word found by BFS."""
    gens = _generators(system)
    ident = WeylElement(system, (0, 1) if system == "C2" else (0, 1, 2, 3), (1, 1) if system == "C2" else (), ())
    seen = {(ident.perm, ident.signs): ident}
    queue = deque([ident])
    while queue:
        w = queue.popleft()
        for name, s in gens.items():
            # left multiplication: s * w, word grows on the left
            x = _raw_compose(s, w, (name,) + w.word)
            key = (x.perm, x.signs)
            if key not in seen:
                seen[key] = x
                queue.append(x)
    return tuple(sorted(seen.values(), key=lambda w: (len(w.word), w.word)))


def _lookup_c2(perm, signs) -> WeylElement:
    for w in weyl_group("C2"):
        if w.perm == perm and w.signs == signs:
            return w
    raise AssertionError


def _lookup_a3(perm) -> WeylElement:
    for w in weyl_group("A3"):
        if w.perm == perm:
            return w
    raise AssertionError


def simple_reflection(name: str, system: str = "C2") -> WeylElement:
    for w in weyl_group(system):
        if w.word == (name,):
            return w
    raise KeyError(name)


def longest_element(system: str = "C2") -> WeylElement:
    return max(weyl_group(system), key=lambda w: w.length)


def weyl_act(w: WeylElement, mu):
    return w.act(mu)


def eval_coweight(mu: Coweight, g) -> Any:
    """Value of e^mu on the Frobenius class g = diag(u, v, 1/v, 1/u).

    ``g`` is anything exposing ``u`` and ``v`` attributes, or a (u, v) pair.
    """
    if hasattr(g, "u"):
        u, v = g.u, g.v
    else:
        u, v = g
    return _pow(u, mu.a) * _pow(v, mu.b)


def _pow(x, k: int):
    if isinstance(x, int):
        x = Fraction(x)
    return x ** k


def modulus_eval(which: str, t: Mapping[str, int], q: Any = None) -> Any:
    """Modulus character as a power of q.

    ``t`` holds valuations of the torus entries:

    * ``P_H``: keys ``det`` and ``mu`` for diag(g, mu g') with similitude mu;
      the value is |det(g)/mu|^3.
    * ``B_G``: keys ``a``, ``b``, ``nu`` for diag(a, b, nu/conj(b), nu/conj(a))
      in GU(2,2) with E/F unramified; the value is |a abar|^3 |b bbar| / |nu|^4.
    * ``B_GSp4``: keys ``a``, ``b``, ``nu`` for diag(a, b, nu/b, nu/a);
      the value is |a|^4 |b|^2 / |nu|^3.
    """
    if q is None:
        q = symbols()[2]
    return _pow(q, -modulus_exponent(which, t))


def modulus_exponent(which: str, t: Mapping[str, int]) -> int:
    """The k with modulus_eval(which, t) = q^(-k)."""
    if which == "P_H":
        k = 3 * (t.get("det", 0) - t.get("mu", 0))
    elif which == "B_G":
        # |x xbar| = q^(-2 v(x)) for x in E, E/F unramified
        k = 6 * t.get("a", 0) + 2 * t.get("b", 0) - 4 * t.get("nu", 0)
    elif which == "B_GSp4":
        k = 4 * t.get("a", 0) + 2 * t.get("b", 0) - 3 * t.get("nu", 0)
    else:
        raise KeyError(f"unknown modulus character {which!r}")
    return k


# Relative roots of GU(2,2) (equivalently of GSp4) in (alpha1, alpha2, alpha0)
# coefficients, paired with the Sp4(C) root that e^{.}(g) evaluates for
# chi(a_alpha). Long relative roots land on short dual roots and vice versa.
_IDENTIFICATION = {
    (1, -1, 0): Coweight(0, 2),
    (1, 1, -1): Coweight(2, 0),
    (2, 0, -1): Coweight(1, 1),
    (0, 2, -1): Coweight(1, -1),
}


def identification() -> dict[tuple, Coweight]:
    return dict(_IDENTIFICATION)


def gl4_root_restrictions() -> list[Coweight]:
    """Positive GL4 roots e_i - e_j evaluated on diag(u, v, 1/v, 1/u)."""
    diag = [Coweight(1, 0), Coweight(0, 1), Coweight(0, -1), Coweight(-1, 0)]
    return [diag[i] - diag[j] for i in range(4) for j in range(i + 1, 4)]
