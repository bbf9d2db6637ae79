"""Local splitting tests and Hasse invariants over F_q(t).

Invariants are :class:`fractions.Fraction` values reduced into ``[0, 1)``.
The invariant of a symbol algebra ``(a, b; eps)`` at a tame place ``v`` is read
off the tame symbol ``c = (-1)^{v(a)v(b)} a^{v(b)} b^{-v(a)}`` reduced at ``v``:
if ``c^{(Q-1)/n} = eps^{-j}`` (``Q`` the residue field size) the invariant is
``j/n``.  This is normalised so that ``(delta, f; eps)`` with ``delta`` a unit
has invariant ``k/n`` where Frobenius acts on ``delta^{1/n}`` as the
automorphism ``u -> eps^{-k} u``, i.e. ``v(b)/n`` for the Frobenius generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInput, InvariantBreach
from .fields import Field
from .poly import Poly, factor
from .ratfunc import (INFINITY, Place, RatFunc, ResidueField, poly_valuation,
                      unit_residue, valuation)


def hasse(x) -> Fraction:
    """Normalise a rational number into ``[0, 1)``."""
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


def parse_hasse(s: str) -> Fraction:
    try:
        x = Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"malformed invariant {s!r}") from exc
    return hasse(x)


def format_hasse(x: Fraction) -> str:
    x = hasse(x)
    return f"{x.numerator}/{x.denominator}" if x else "0"


@dataclass(frozen=True)
class SymbolAlgebra:
    """``(a, b; eps)``: generators ``u, v`` with ``u^n = a``, ``v^n = b``, ``uv = eps vu``."""

    n: int
    eps: int
    a: RatFunc
    b: RatFunc

    def __post_init__(self):
        F = self.a.F
        if not self.a or not self.b:
            raise InvalidInput("symbol parameters must be nonzero")
        if (F.q - 1) % self.n:
            raise InvalidInput(f"n={self.n} does not divide q-1={F.q - 1}")
        if F.order_of(self.eps) != self.n:
            raise InvalidInput("eps is not a primitive n-th root of unity")

    @property
    def F(self) -> Field:
        return self.a.F


# -- conic tests --------------------------------------------------------------

def _check_nonzero(*xs):
    if any(not x for x in xs):
        raise InvalidInput("conic coefficients must be nonzero")


def conic_solvable_finite(a1: Poly, a2: Poly, a3: Poly, f: Place) -> bool:
    """Local solvability of ``a1 x^2 + a2 y^2 + a3 z^2 = 0`` at a finite place."""
    _check_nonzero(a1, a2, a3)
    if f.is_infinite:
        raise InvalidInput("finite place expected")
    coeffs = (a1, a2, a3)
    vals = [poly_valuation(a, f.poly) for a in coeffs]
    par = [v % 2 for v in vals]
    if par[0] == par[1] == par[2]:
        return True
    i, j = [(0, 1), (0, 2), (1, 2)][[par[0] == par[1], par[0] == par[2], par[1] == par[2]].index(True)]
    prod = coeffs[i] * coeffs[j]
    for _ in range(vals[i] + vals[j]):
        prod = prod // f.poly
    R = ResidueField(f.poly)
    return R.is_square(-prod)


def conic_solvable_infinity(a1: Poly, a2: Poly, a3: Poly) -> bool:
    """Solvability of the same conic over ``F_q((1/t))``."""
    _check_nonzero(a1, a2, a3)
    coeffs = (a1, a2, a3)
    par = [a.deg % 2 for a in coeffs]
    if par[0] == par[1] == par[2]:
        return True
    i, j = [(0, 1), (0, 2), (1, 2)][[par[0] == par[1], par[0] == par[2], par[1] == par[2]].index(True)]
    F = a1.F
    return F.is_square(F.neg(F.mul(coeffs[i].lc, coeffs[j].lc)))


def _poly_rep(x: RatFunc) -> Poly:
    # x * den^2 differs from x by a square
    return x.num * x.den


def candidate_places(*xs: RatFunc) -> list[Place]:
    """Finite places dividing some numerator or denominator, sorted, then infinity."""
    polys = set()
    for x in xs:
        for p in (x.num, x.den):
            if p.deg > 0:
                polys.update(g for g, _ in factor(p))
    return sorted(Place(g) for g in polys) + [INFINITY]


def quaternion_ramification(a: RatFunc, b: RatFunc) -> set[Place]:
    """Places where ``a x^2 + b y^2 = z^2`` has no nontrivial local solution."""
    F = a.F
    if F.p == 2:
        raise InvalidInput("quaternion symbols need odd characteristic")
    if not a or not b:
        raise InvalidInput("quaternion parameters must be nonzero")
    a1, a2 = _poly_rep(a), _poly_rep(b)
    a3 = Poly.const(F, F.neg(1))
    out = set()
    for v in candidate_places(a, b):
        ok = conic_solvable_infinity(a1, a2, a3) if v.is_infinite else conic_solvable_finite(a1, a2, a3, v)
        if not ok:
            out.add(v)
    if len(out) % 2:
        raise InvariantBreach("odd number of ramified places")
    return out


# -- symbol invariants --------------------------------------------------------

def tame_symbol(a: RatFunc, b: RatFunc, v: Place):
    """Tame symbol at ``v``: a reduced Poly (finite place) or a code (infinity)."""
    va, vb = valuation(a, v), valuation(b, v)
    ua, ub = unit_residue(a, v), unit_residue(b, v)
    sign = (va * vb) % 2
    if v.is_infinite:
        F = a.F
        c = F.mul(F.pow(ua, vb), F.pow(ub, -va))
        return F.neg(c) if sign else c
    R = ResidueField(v.poly)
    c = R.mul(R.pow(ua, vb), R.pow(ub, -va))
    return R.sub(R.zero, c) if sign else c


def symbol_local_invariant(A: SymbolAlgebra, v: Place) -> Fraction:
    F = A.F
    if F.q % A.n == 0 or (F.q - 1) % A.n:
        raise InvalidInput("symbol invariants need n | q-1")
    c = tame_symbol(A.a, A.b, v)
    if v.is_infinite:
        y = F.pow(c, (F.q - 1) // A.n)
    else:
        R = ResidueField(v.poly)
        yp = R.pow(c, (R.q - 1) // A.n)
        if yp.deg > 0:
            raise InvariantBreach("power residue is not a constant")
        y = yp.c[0]
    einv = F.inv(A.eps)
    acc = 1
    for j in range(A.n):
        if acc == y:
            return hasse(Fraction(j, A.n))
        acc = F.mul(acc, einv)
    raise InvariantBreach("power residue is not an n-th root of unity")


class InvariantProfile(dict):
    """Map ``Place -> Fraction`` storing only nonzero invariants."""

    def __init__(self, items=()):
        super().__init__()
        for p, x in dict(items).items():
            x = hasse(x)
            if x:
                self[p] = x

    def total(self) -> Fraction:
        return hasse(sum(self.values(), Fraction(0)))

    def lcm_denominator(self) -> int:
        from math import lcm
        out = 1
        for x in self.values():
            out = lcm(out, x.denominator)
        return out

    def lines(self) -> list[str]:
        return [f"{p.format()} → {format_hasse(x)}" for p, x in sorted(self.items(), key=lambda kv: kv[0].sort_key())]

    def format(self) -> str:
        return "\n".join(self.lines())

    @classmethod
    def parse(cls, F: Field, text: str) -> InvariantProfile:
        items = {}
        for line in text.splitlines():
            if not line.strip():
                continue
            sep = "→" if "→" in line else "->"
            if sep not in line:
                raise InvalidInput(f"malformed profile line {line!r}")
            place, inv = line.split(sep, 1)
            p = Place.parse(F, place)
            if p in items:
                raise InvalidInput(f"duplicate place {place.strip()}")
            items[p] = parse_hasse(inv)
        return cls(items)


def invariant_profile(A: SymbolAlgebra) -> InvariantProfile:
    prof = InvariantProfile({v: symbol_local_invariant(A, v) for v in candidate_places(A.a, A.b)})
    if prof.total():
        raise InvariantBreach(f"reciprocity violated: invariants sum to {prof.total()}")
    return prof
