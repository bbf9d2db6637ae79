"""Rational functions F_q(t), places, valuations and residue fields."""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .errors import InvalidInput
from .fields import Field, prime_factors
from .poly import Poly, factor, poly_gcd, poly_irreducible, poly_invmod
from .textio import split_top, strip_parens


class RatFunc:
    """Reduced quotient ``num/den`` with ``den`` monic and ``gcd(num, den) = 1``."""

    __slots__ = ("num", "den", "_h")

    def __init__(self, num: Poly, den: Poly | None = None, *, reduced: bool = False):
        F = num.F
        if den is None:
            den = Poly.const(F, 1)
            reduced = True
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not reduced:
            if not num:
                den = Poly.const(F, 1)
            elif den.deg > 0:
                g = poly_gcd(num, den)
                if g.deg > 0:
                    num, den = num // g, den // g
            lc = den.lc
            if lc != 1:
                inv = F.inv(lc)
                num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den
        self._h = None

    @property
    def F(self) -> Field:
        return self.num.F

    @classmethod
    def const(cls, F: Field, a: int) -> RatFunc:
        return cls(Poly.const(F, a))

    @classmethod
    def t(cls, F: Field) -> RatFunc:
        return cls(Poly.t(F))

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_const(self) -> bool:
        return self.num.deg <= 0 and self.den.deg == 0

    def const_value(self) -> int:
        if not self.is_const():
            raise InvalidInput("not a constant")
        return self.num.c[0] if self.num else 0

    def is_poly(self) -> bool:
        return self.den.deg == 0

    def _co(self, other):
        if isinstance(other, RatFunc):
            if other.F is not self.F:
                raise InvalidInput("rational functions over different fields")
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        if isinstance(other, int):
            return RatFunc.const(self.F, self.F.from_int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        if not self.num or not o.num:
            return RatFunc(Poly(self.F))
        if self.den.deg == 0 and o.den.deg == 0:
            return RatFunc(self.num * o.num)
        # cross-cancel before multiplying to keep degrees small
        g1 = poly_gcd(self.num, o.den)
        g2 = poly_gcd(o.num, self.den)
        n = (self.num // g1) * (o.num // g2)
        d = (self.den // g2) * (o.den // g1)
        return RatFunc(n, d, reduced=d.is_monic())

    __rmul__ = __mul__

    def inv(self) -> RatFunc:
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num, reduced=self.num.is_monic())

    def __truediv__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, k: int) -> RatFunc:
        if k < 0:
            return self.inv() ** (-k)
        return RatFunc(self.num ** k, self.den ** k, reduced=True)

    def scale(self, a: int) -> RatFunc:
        return RatFunc(self.num.scale(a), self.den, reduced=True) if a else RatFunc(Poly(self.F))

    def __eq__(self, other):
        o = self._co(other) if not isinstance(other, RatFunc) else other
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._h is None:
            self._h = hash((self.num, self.den))
        return self._h

    def map_coeffs(self, fn, F: Field | None = None) -> RatFunc:
        """Apply a field map coefficientwise (must be a ring embedding/automorphism)."""
        return RatFunc(self.num.map_coeffs(fn, F), self.den.map_coeffs(fn, F))

    def degree_height(self) -> int:
        return max(self.num.deg, self.den.deg)

    # -- text
    def format(self, var: str = "t") -> str:
        if self.den.deg == 0:
            return self.num.format(var)
        return f"({self.num.format(var)})/({self.den.format(var)})"

    def __repr__(self):
        return self.format()

    @classmethod
    def parse(cls, F: Field, s: str, var: str = "t") -> RatFunc:
        s = s.replace(" ", "")
        parts = split_top(s, "/")
        if len(parts) == 1:
            return cls(Poly.parse(F, strip_parens(s), var))
        if len(parts) != 2:
            raise InvalidInput(f"malformed rational function {s!r}")
        num = Poly.parse(F, strip_parens(parts[0][1]), var)
        den = Poly.parse(F, strip_parens(parts[1][1]), var)
        if not den or not den.is_monic() or (num and poly_gcd(num, den).deg > 0) or (not num and den.deg > 0):
            raise InvalidInput(f"non-canonical rational function {s!r}")
        return cls(num, den, reduced=True)


@dataclass(frozen=True)
class Place:
    """A place of F_q(t): a monic irreducible polynomial, or infinity (``poly is None``)."""

    poly: Poly | None = None
    certified: bool = True

    @classmethod
    def finite(cls, f: Poly, check: bool = True) -> Place:
        if f.deg < 1 or not f.is_monic():
            raise InvalidInput("finite places are monic polynomials of positive degree")
        if check and not poly_irreducible(f):
            raise InvalidInput(f"{f} is not irreducible")
        return cls(f, True)

    @property
    def is_infinite(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.deg

    def sort_key(self):
        if self.poly is None:
            return (1, 0, ())
        return (0, self.poly.deg, tuple(reversed(self.poly.c)))

    def __lt__(self, other: Place):
        return self.sort_key() < other.sort_key()

    def __eq__(self, other):
        return isinstance(other, Place) and self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def format(self) -> str:
        return "inf" if self.poly is None else f"finite:{self.poly.format()}"

    def __repr__(self):
        return self.format()

    @classmethod
    def parse(cls, F: Field, s: str) -> Place:
        s = s.strip()
        if s == "inf":
            return cls(None)
        if not s.startswith("finite:"):
            raise InvalidInput(f"malformed place {s!r}")
        return cls.finite(Poly.parse(F, s[len("finite:"):]))


INFINITY = Place(None)


def poly_valuation(a: Poly, f: Poly) -> int:
    if not a:
        raise InvalidInput("valuation of zero is undefined")
    v = 0
    while True:
        q, r = divmod(a, f)
        if r:
            return v
        a = q
        v += 1


def valuation(x: RatFunc, v: Place) -> int:
    if not x:
        raise InvalidInput("valuation of zero is undefined")
    if v.is_infinite:
        return x.den.deg - x.num.deg
    return poly_valuation(x.num, v.poly) - poly_valuation(x.den, v.poly)


def support(x: RatFunc) -> list[Place]:
    """Finite places where ``x`` has nonzero valuation."""
    out = {g for g, _ in factor(x.num)} | {g for g, _ in factor(x.den)}
    return sorted(Place(g) for g in out)


def moebius_apply(x: RatFunc, m: tuple[int, int, int, int]) -> RatFunc:
    """Substitute ``t -> (a t + b)/(c t + d)`` into ``x``."""
    a, b, c, d = m
    F = x.F
    lin_num = Poly(F, (b, a))
    lin_den = Poly(F, (d, c))

    def homog(p: Poly, n: int) -> Poly:
        acc = Poly(F)
        for i, ci in enumerate(p.c):
            if ci:
                acc = acc + (lin_num ** i * lin_den ** (n - i)).scale(ci)
        return acc

    if c == 0 and b == 0:
        s = F.div(a, d)
        num = Poly(F, [F.mul(ci, F.pow(s, i)) for i, ci in enumerate(x.num.c)])
        den = Poly(F, [F.mul(ci, F.pow(s, i)) for i, ci in enumerate(x.den.c)])
        return RatFunc(num, den)
    n = max(x.num.deg, x.den.deg, 0)
    return RatFunc(homog(x.num, n), homog(x.den, n))


def moebius_substitute(x: RatFunc, c: int) -> RatFunc:
    """Rewrite ``x`` in the variable ``s = 1/(t + c)``, i.e. put ``t = (1 - c s)/s``."""
    F = x.F
    return moebius_apply(x, (F.neg(c), 1, 1, 0))


def moebius_unsubstitute(x: RatFunc, c: int) -> RatFunc:
    """Inverse of :func:`moebius_substitute`: put ``s = 1/(t + c)``."""
    return moebius_apply(x, (0, 1, 1, c))


class ResidueField:
    """``F_q[t]/(f)`` for an irreducible ``f``, presented as a finite field.

    Elements are reduced :class:`Poly` values.  Only the operations needed for
    power-residue computations are provided.
    """

    def __init__(self, f: Poly):
        if f.deg < 1 or not poly_irreducible(f):
            raise InvalidInput(f"{f} is not irreducible")
        self.f = f.monic()
        self.base = f.F
        self.q = self.base.q ** f.deg
        self.zero = Poly(self.base)
        self.one = Poly.const(self.base, 1)

    def reduce(self, x) -> Poly:
        if isinstance(x, RatFunc):
            if not (x.den % self.f):
                raise InvalidInput("rational function has a pole at this place")
            return (x.num * poly_invmod(x.den, self.f)) % self.f
        return x % self.f

    def lift(self, x: Poly) -> Poly:
        return x

    def add(self, a, b):
        return (a + b) % self.f

    def sub(self, a, b):
        return (a - b) % self.f

    def mul(self, a, b):
        return (a * b) % self.f

    def inv(self, a):
        return poly_invmod(a, self.f)

    def pow(self, a, k: int):
        if k < 0:
            return self.inv(a).powmod(-k, self.f)
        return a.powmod(k, self.f)

    @functools.cached_property
    def gen(self) -> Poly:
        """Least primitive element in coefficient-code order."""
        factors = prime_factors(self.q - 1)
        B = self.base
        d = self.f.deg
        for code in range(1, self.q):
            cs = []
            x = code
            for _ in range(d):
                x, r = divmod(x, B.q)
                cs.append(r)
            a = Poly(B, cs)
            if all(self.pow(a, (self.q - 1) // r) != self.one for r in factors):
                return a
        raise InvalidInput("no primitive element found")

    def power_class(self, x: Poly, n: int) -> int:
        """Class of ``x`` in K*/K*^n relative to :attr:`gen`."""
        if (self.q - 1) % n:
            raise InvalidInput(f"{n} does not divide {self.q}-1")
        x = x % self.f
        if not x:
            raise InvalidInput("power class of zero")
        e = (self.q - 1) // n
        y = self.pow(x, e)
        z = self.pow(self.gen, e)
        acc = self.one
        for k in range(n):
            if acc == y:
                return k
            acc = self.mul(acc, z)
        raise InvalidInput("power class computation failed")

    def is_square(self, x: Poly) -> bool:
        x = x % self.f
        if not x or self.base.p == 2:
            return True
        return self.pow(x, (self.q - 1) // 2) == self.one

    def root_of_unity(self, n: int) -> Poly:
        if (self.q - 1) % n:
            raise InvalidInput(f"{n} does not divide {self.q}-1")
        return self.pow(self.gen, (self.q - 1) // n)

    def elements(self):
        B = self.base
        d = self.f.deg
        for code in range(self.q):
            cs = []
            x = code
            for _ in range(d):
                x, r = divmod(x, B.q)
                cs.append(r)
            yield Poly(B, cs)


def residue_field(v: Place) -> ResidueField:
    if v.is_infinite:
        raise InvalidInput("residue field construction needs a finite place")
    return ResidueField(v.poly)


def unit_residue(x: RatFunc, v: Place):
    """Residue of the unit part ``x / pi^v(x)``.

    Finite places use ``pi = f`` and return a reduced Poly; infinity uses
    ``pi = 1/t`` and returns a code in F_q (the ratio of leading coefficients).
    """
    if v.is_infinite:
        F = x.F
        return F.div(x.num.lc, x.den.lc)
    f = v.poly
    num, den = x.num, x.den
    while not (num % f):
        num = num // f
    while not (den % f):
        den = den // f
    return (num * poly_invmod(den % f, f)) % f
