"""Skew polynomial rings K[x; sigma] over K = F_q(t) and cyclic algebras."""

from __future__ import annotations

import functools

from .errors import InvalidInput
from .fields import Field
from .ratfunc import RatFunc, moebius_apply
from .textio import _last_top_star, _top_level, split_top, strip_parens

MAX_ORDER = 4096


class FieldAut:
    """``sigma(f)(t) = f^Fr((a t + b)/(c t + d))`` with ``Fr`` the coefficient map ``x -> x^(p^k)``."""

    def __init__(self, F: Field, frob: int = 0, moebius=(1, 0, 0, 1), order: int | None = None):
        a, b, c, d = moebius
        if F.sub(F.mul(a, d), F.mul(b, c)) == 0:
            raise InvalidInput("Möbius matrix is singular")
        if c == 0 and d != 1:
            inv = F.inv(d)
            a, b, d = F.mul(a, inv), F.mul(b, inv), 1
        self.F = F
        self.frob = frob % F.e
        self.m = (a, b, c, d)
        self._order = None
        if order is not None:
            actual = self.order
            if actual != order:
                raise InvalidInput(f"automorphism has order {actual}, not {order}")

    def coeff(self, x: int) -> int:
        return self.F.frobenius(x, self.frob) if self.frob else x

    def __call__(self, x: RatFunc) -> RatFunc:
        if self.frob:
            x = x.map_coeffs(self.coeff)
        if self.m == (1, 0, 0, 1) or x.is_const():
            return x
        return moebius_apply(x, self.m)

    def is_identity(self) -> bool:
        return self.frob == 0 and self.m == (1, 0, 0, 1)

    def normalized_matrix(self):
        a, b, c, d = self.m
        F = self.F
        # scale so the last nonzero of (c, d) is 1
        s = d if c == 0 else c
        inv = F.inv(s)
        return tuple(F.mul(x, inv) for x in (a, b, c, d))

    def compose(self, other: FieldAut) -> FieldAut:
        """``self o other``."""
        F = self.F
        # (self o other)(f) = self(other(f)) = f^{Fr_o Fr_s}(m_o^{Fr_s}(m_s(t)))
        mo = tuple(self.coeff(x) for x in other.m)
        ms = self.m
        a = F.add(F.mul(mo[0], ms[0]), F.mul(mo[1], ms[2]))
        b = F.add(F.mul(mo[0], ms[1]), F.mul(mo[1], ms[3]))
        c = F.add(F.mul(mo[2], ms[0]), F.mul(mo[3], ms[2]))
        d = F.add(F.mul(mo[2], ms[1]), F.mul(mo[3], ms[3]))
        return FieldAut(F, self.frob + other.frob, (a, b, c, d))

    def _key(self):
        return (self.frob, self.normalized_matrix())

    def __eq__(self, other):
        return isinstance(other, FieldAut) and self.F is other.F and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    @functools.lru_cache(maxsize=None)
    def power(self, j: int) -> FieldAut:
        if j < 0:
            return self.power(j % self.order)
        if j == 0:
            return FieldAut(self.F)
        if j == 1:
            return self
        return self.compose(self.power(j - 1))

    @property
    def order(self) -> int:
        if self._order is None:
            acc = self
            for j in range(1, MAX_ORDER + 1):
                if acc.is_identity() or acc._key() == (0, (1, 0, 0, 1)):
                    self._order = j
                    break
                acc = self.compose(acc)
            else:
                raise InvalidInput("automorphism order exceeds the configured bound")
        return self._order

    def is_fixed(self, x: RatFunc) -> bool:
        return self(x) == x

    def describe(self) -> dict:
        a, b, c, d = self.m
        return {"frob": self.frob, "moebius": [[a, b], [c, d]]}

    def __repr__(self):
        return f"FieldAut(frob={self.frob}, moebius={self.m})"


def norm_j(sigma: FieldAut, a: RatFunc, j: int) -> RatFunc:
    """``a sigma(a) ... sigma^{j-1}(a)``."""
    acc = RatFunc.const(a.F, 1)
    x = a
    for i in range(j):
        acc = acc * x
        if i + 1 < j:
            x = sigma(x)
    return acc


def norms(sigma: FieldAut, a: RatFunc, count: int) -> list[RatFunc]:
    """``[N_0(a), ..., N_{count-1}(a)]``."""
    out = [RatFunc.const(a.F, 1)]
    x = a
    for _ in range(1, count):
        out.append(out[-1] * x)
        x = sigma(x)
    return out


class SkewPoly:
    """``sum a_i x^i`` with left coefficients and ``x a = sigma(a) x``."""

    __slots__ = ("sigma", "c")

    def __init__(self, sigma: FieldAut, coeffs=()):
        c = list(coeffs)
        while c and not c[-1]:
            c.pop()
        self.sigma = sigma
        self.c = tuple(c)

    @classmethod
    def x(cls, sigma: FieldAut) -> SkewPoly:
        F = sigma.F
        return cls(sigma, [RatFunc.const(F, 0), RatFunc.const(F, 1)])

    @classmethod
    def const(cls, sigma: FieldAut, a) -> SkewPoly:
        if isinstance(a, int):
            a = RatFunc.const(sigma.F, sigma.F.from_int(a))
        return cls(sigma, [a])

    @classmethod
    def linear(cls, sigma: FieldAut, beta: RatFunc) -> SkewPoly:
        """``x - beta``."""
        return cls(sigma, [-beta, RatFunc.const(sigma.F, 1)])

    @property
    def deg(self) -> int:
        return len(self.c) - 1

    @property
    def lc(self) -> RatFunc:
        return self.c[-1]

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, SkewPoly):
            return self.c == other.c
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def _co(self, other) -> SkewPoly:
        if isinstance(other, SkewPoly):
            if other.sigma != self.sigma:
                raise InvalidInput("skew polynomials over different automorphisms")
            return other
        if isinstance(other, (RatFunc, int)):
            return SkewPoly.const(self.sigma, other)
        return NotImplemented

    def __add__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = out[i] + y
        return SkewPoly(self.sigma, out)

    __radd__ = __add__

    def __neg__(self):
        return SkewPoly(self.sigma, [-x for x in self.c])

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
        if not self.c or not o.c:
            return SkewPoly(self.sigma)
        zero = RatFunc.const(self.sigma.F, 0)
        out = [zero] * (len(self.c) + len(o.c) - 1)
        for i, ai in enumerate(self.c):
            if not ai:
                continue
            si = self.sigma.power(i)
            for j, bj in enumerate(o.c):
                if bj:
                    out[i + j] = out[i + j] + ai * si(bj)
        return SkewPoly(self.sigma, out)

    def __rmul__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return o * self

    def left_scale(self, a: RatFunc) -> SkewPoly:
        return SkewPoly(self.sigma, [a * x for x in self.c])

    def monic(self) -> SkewPoly:
        if not self.c:
            return self
        inv = self.lc.inv()
        return self.left_scale(inv)

    def divmod_right(self, g: SkewPoly) -> tuple[SkewPoly, SkewPoly]:
        """``(q, r)`` with ``self = q*g + r`` and ``deg r < deg g``."""
        if not g:
            raise ZeroDivisionError("right division by zero skew polynomial")
        sigma = self.sigma
        zero = RatFunc.const(sigma.F, 0)
        r = list(self.c)
        e = g.deg
        q = [zero] * max(len(r) - e, 0)
        for dd in range(len(r) - 1, e - 1, -1):
            if not r[dd]:
                continue
            k = dd - e
            sk = sigma.power(k)
            c = r[dd] / sk(g.lc)
            q[k] = c
            for j, gj in enumerate(g.c):
                if gj:
                    r[k + j] = r[k + j] - c * sk(gj)
        return SkewPoly(sigma, q), SkewPoly(sigma, r[:e])

    def mod_right(self, g: SkewPoly) -> SkewPoly:
        return self.divmod_right(g)[1]

    def eval_right(self, c: RatFunc) -> RatFunc:
        """Remainder of right division by ``x - c``: ``sum f_j N_j(c)``."""
        if not self.c:
            return RatFunc.const(self.sigma.F, 0)
        Ns = norms(self.sigma, c, len(self.c))
        acc = RatFunc.const(self.sigma.F, 0)
        for fj, nj in zip(self.c, Ns):
            if fj:
                acc = acc + fj * nj
        return acc

    def apply_sigma(self, k: int = 1) -> SkewPoly:
        s = self.sigma.power(k)
        return SkewPoly(self.sigma, [s(x) for x in self.c])

    def format(self, var: str = "x") -> str:
        terms = []
        for i, a in enumerate(self.c):
            if not a:
                continue
            mono = "" if i == 0 else (f"*{var}" if i == 1 else f"*{var}^{i}")
            terms.append(f"({a.format()}){mono}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return self.format()

    @classmethod
    def parse(cls, sigma: FieldAut, s: str, var: str = "x") -> SkewPoly:
        F = sigma.F
        s = s.strip()
        if s == "0":
            return cls(sigma)
        coeffs: dict[int, RatFunc] = {}
        for _, term in split_top(s.replace(" ", ""), "+"):
            k, body = 0, term
            if term == var or term.startswith(var + "^"):
                body, mono = "1", term
            elif "*" in _top_level(term):
                idx = _last_top_star(term)
                body, mono = term[:idx], term[idx + 1:]
            else:
                mono = ""
            if mono:
                if mono == var:
                    k = 1
                elif mono.startswith(var + "^") and mono[len(var) + 1:].isdigit():
                    k = int(mono[len(var) + 1:])
                else:
                    raise InvalidInput(f"malformed skew term {term!r}")
            if k in coeffs:
                raise InvalidInput(f"repeated power {var}^{k}")
            coeffs[k] = RatFunc.parse(F, strip_parens(body))
        zero = RatFunc.const(F, 0)
        n = max(coeffs) + 1
        return cls(sigma, [coeffs.get(i, zero) for i in range(n)])


def skew_gcrd(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    """Monic greatest common right divisor."""
    while g:
        f, g = g, f.mod_right(g)
    return f.monic()


def skew_lclm2(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    """Monic least common left multiple via the extended right Euclidean algorithm."""
    if not f or not g:
        raise InvalidInput("lclm of the zero polynomial")
    sigma = f.sigma
    one, zero = SkewPoly.const(sigma, 1), SkewPoly(sigma)
    r0, r1 = f, g
    s0, s1 = one, zero
    while r1:
        q, r = r0.divmod_right(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    # s1*f + t1*g = 0 with s1 of minimal degree
    return (s1 * f).monic()


def skew_lclm(fs) -> SkewPoly:
    fs = list(fs)
    if not fs:
        raise InvalidInput("lclm of an empty list")
    acc = fs[0].monic()
    for f in fs[1:]:
        acc = skew_lclm2(acc, f)
    return acc


class CyclicAlgebra:
    """``K[x; sigma]/(x^n - lambda)`` with ``sigma`` of order ``n`` fixing ``lambda``."""

    def __init__(self, sigma: FieldAut, n: int, lam: RatFunc):
        if sigma.order != n:
            raise InvalidInput(f"automorphism has order {sigma.order}, not {n}")
        if not lam:
            raise InvalidInput("lambda must be nonzero")
        if sigma(lam) != lam:
            raise InvalidInput("lambda is not fixed by sigma")
        self.sigma = sigma
        self.n = n
        self.lam = lam
        self.F = sigma.F

    def __eq__(self, other):
        return (isinstance(other, CyclicAlgebra) and self.sigma == other.sigma
                and self.n == other.n and self.lam == other.lam)

    def __hash__(self):
        return hash((self.sigma, self.n, self.lam))

    def zero(self) -> AlgElem:
        return AlgElem(self, [RatFunc.const(self.F, 0)] * self.n)

    def one(self) -> AlgElem:
        return self.scalar(RatFunc.const(self.F, 1))

    def scalar(self, a: RatFunc) -> AlgElem:
        return AlgElem(self, [a] + [RatFunc.const(self.F, 0)] * (self.n - 1))

    def x(self, k: int = 1) -> AlgElem:
        return self.from_skew(SkewPoly(self.sigma, [RatFunc.const(self.F, 0)] * k + [RatFunc.const(self.F, 1)]))

    def elem(self, coeffs) -> AlgElem:
        return AlgElem(self, coeffs)

    def from_skew(self, f: SkewPoly) -> AlgElem:
        zero = RatFunc.const(self.F, 0)
        out = [zero] * self.n
        for i, a in enumerate(f.c):
            if not a:
                continue
            q, r = divmod(i, self.n)
            out[r] = out[r] + (a * self.lam ** q if q else a)
        return AlgElem(self, out)

    def modulus(self) -> SkewPoly:
        F = self.F
        return SkewPoly(self.sigma, [-self.lam] + [RatFunc.const(F, 0)] * (self.n - 1) + [RatFunc.const(F, 1)])

    def describe(self) -> dict:
        return {"q": self.F.q, "sigma": self.sigma.describe(), "n": self.n, "lambda": self.lam.format()}


class AlgElem:
    """Element ``sum a_i x^i`` of a cyclic algebra, ``0 <= i < n``."""

    __slots__ = ("A", "c")

    def __init__(self, A: CyclicAlgebra, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != A.n:
            raise InvalidInput(f"expected {A.n} coordinates, got {len(coeffs)}")
        self.A = A
        self.c = coeffs

    def to_skew(self) -> SkewPoly:
        return SkewPoly(self.A.sigma, self.c)

    def __eq__(self, other):
        if isinstance(other, AlgElem):
            return self.A == other.A and self.c == other.c
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __bool__(self):
        return any(self.c)

    def _co(self, other) -> AlgElem:
        if isinstance(other, AlgElem):
            if other.A != self.A:
                raise InvalidInput("elements of different algebras")
            return other
        if isinstance(other, RatFunc):
            return self.A.scalar(other)
        if isinstance(other, int):
            return self.A.scalar(RatFunc.const(self.A.F, self.A.F.from_int(other)))
        return NotImplemented

    def __add__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return AlgElem(self.A, [a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return AlgElem(self.A, [-a for a in self.c])

    def __sub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return AlgElem(self.A, [a - b for a, b in zip(self.c, o.c)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        A = self.A
        n = A.n
        out = [RatFunc.const(A.F, 0)] * n
        for i, ai in enumerate(self.c):
            if not ai:
                continue
            si = A.sigma.power(i)
            for j, bj in enumerate(o.c):
                if not bj:
                    continue
                term = ai * si(bj)
                k = i + j
                if k >= n:
                    k -= n
                    term = term * A.lam
                out[k] = out[k] + term
        return AlgElem(A, out)

    def __rmul__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return o * self

    def left_scale(self, a: RatFunc) -> AlgElem:
        return AlgElem(self.A, [a * x for x in self.c])

    def __pow__(self, k: int) -> AlgElem:
        acc = self.A.one()
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def sigma(self, k: int = 1) -> AlgElem:
        s = self.A.sigma.power(k)
        return AlgElem(self.A, [s(a) for a in self.c])

    def weight(self) -> int:
        return sum(1 for a in self.c if a)

    def format(self) -> str:
        return self.to_skew().format()

    def __repr__(self):
        return self.format()


def alg_sigma(u: AlgElem, k: int = 1) -> AlgElem:
    return u.sigma(k)


def weight(u: AlgElem) -> int:
    return u.weight()


def hamming_distance(u: AlgElem, v: AlgElem) -> int:
    return (u - v).weight()
