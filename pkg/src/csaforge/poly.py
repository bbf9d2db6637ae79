"""Univariate polynomials over a finite field: arithmetic, CRT, irreducibility,
factorization, and sampling of irreducibles in a residue class."""

from __future__ import annotations

import random
from functools import reduce

from .errors import InvalidInput, SamplingFailure
from .fields import Field
from .textio import format_terms, parse_poly_terms


def _trim(c: list[int]) -> tuple[int, ...]:
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


class Poly:
    """Polynomial over ``F`` with coefficient codes stored low degree first.

    The zero polynomial has an empty coefficient tuple and degree -1 (used as
    the sentinel for minus infinity; callers never do arithmetic on it).
    """

    __slots__ = ("F", "c", "_h")

    def __init__(self, F: Field, coeffs=()):
        self.F = F
        self.c = coeffs if isinstance(coeffs, tuple) and (not coeffs or coeffs[-1]) else _trim(list(coeffs))
        self._h = None

    # -- constructors
    @classmethod
    def const(cls, F: Field, a: int) -> Poly:
        return cls(F, (a,) if a else ())

    @classmethod
    def monomial(cls, F: Field, k: int, a: int = 1) -> Poly:
        return cls(F, (0,) * k + (a,)) if a else cls(F)

    @classmethod
    def t(cls, F: Field) -> Poly:
        return cls(F, (0, 1))

    # -- basic properties
    @property
    def deg(self) -> int:
        return len(self.c) - 1

    @property
    def lc(self) -> int:
        return self.c[-1] if self.c else 0

    def is_zero(self) -> bool:
        return not self.c

    def is_monic(self) -> bool:
        return bool(self.c) and self.c[-1] == 1

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.F is other.F and self.c == other.c
        if isinstance(other, int):
            return self.c == ((self.F.from_int(other),) if self.F.from_int(other) else ())
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            self._h = hash((self.F.p, self.F.e, self.c))
        return self._h

    def __lt__(self, other: Poly):
        return (self.deg, tuple(reversed(self.c))) < (other.deg, tuple(reversed(other.c)))

    def _co(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.F is not self.F:
                raise InvalidInput("polynomials over different fields")
            return other
        if isinstance(other, int):
            return Poly.const(self.F, self.F.from_int(other))
        return NotImplemented

    # -- ring operations
    def __add__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        F, a, b = self.F, self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            if y:
                out[i] = F.add(out[i], y)
        return Poly(F, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.F
        return Poly(F, tuple(F.neg(x) for x in self.c))

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
        a, b = self.c, o.c
        if not a or not b:
            return Poly(self.F)
        F = self.F
        out = [0] * (len(a) + len(b) - 1)
        if F.e == 1:
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            p = F.p
            return Poly(F, [c % p for c in out])
        tabs = F.tables
        if tabs is not None:
            at, mt = tabs
            for i, x in enumerate(a):
                if x:
                    row = mt[x]
                    for j, y in enumerate(b):
                        if y:
                            out[i + j] = at[out[i + j]][row[y]]
            return Poly(F, out)
        add, mul = F.add, F.mul
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add(out[i + j], mul(x, y))
        return Poly(F, out)

    __rmul__ = __mul__

    def scale(self, a: int) -> Poly:
        F = self.F
        if a == 0:
            return Poly(F)
        return Poly(F, tuple(F.mul(a, x) for x in self.c))

    def __pow__(self, k: int) -> Poly:
        result = Poly.const(self.F, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        o = self._co(other)
        if not o:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.F
        a = list(self.c)
        db = o.deg
        if len(a) <= db:
            return Poly(F), self
        inv = F.inv(o.lc)
        q = [0] * (len(a) - db)
        bc = o.c
        if F.e == 1:
            p = F.p
            nz = [(j, y) for j, y in enumerate(bc) if y]
            for i in range(len(a) - 1, db - 1, -1):
                ai = a[i] % p
                if ai:
                    c = ai * inv % p
                    q[i - db] = c
                    base = i - db
                    for j, y in nz:
                        a[base + j] -= c * y
            return Poly(F, q), Poly(F, [x % p for x in a[:db]])
        tabs = F.tables
        if tabs is not None:
            at, mt = tabs
            nz = [(j, F.neg(y)) for j, y in enumerate(bc) if y]
            for i in range(len(a) - 1, db - 1, -1):
                ai = a[i]
                if ai:
                    c = mt[ai][inv]
                    q[i - db] = c
                    base = i - db
                    row = mt[c]
                    for j, y in nz:
                        a[base + j] = at[a[base + j]][row[y]]
            return Poly(F, q), Poly(F, a[:db])
        for i in range(len(a) - 1, db - 1, -1):
            ai = a[i]
            if ai:
                c = F.mul(ai, inv)
                q[i - db] = c
                for j in range(db + 1):
                    if bc[j]:
                        a[i - db + j] = F.sub(a[i - db + j], F.mul(c, bc[j]))
        return Poly(F, q), Poly(F, a[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> Poly:
        if not self.c or self.c[-1] == 1:
            return self
        return self.scale(self.F.inv(self.c[-1]))

    def __call__(self, x: int) -> int:
        F = self.F
        acc = 0
        for c in reversed(self.c):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def derivative(self) -> Poly:
        F = self.F
        return Poly(F, [F.mul(F.from_int(i), c) for i, c in enumerate(self.c)][1:])

    def map_coeffs(self, fn, F: Field | None = None) -> Poly:
        return Poly(F or self.F, [fn(c) for c in self.c])

    def powmod(self, k: int, m: Poly) -> Poly:
        result = Poly.const(self.F, 1) % m
        base = self % m
        while k:
            if k & 1:
                result = (result * base) % m
            base = (base * base) % m
            k >>= 1
        return result

    # -- text
    def format(self, var: str = "t") -> str:
        F = self.F
        return format_terms([(k, F.format(c)) for k, c in enumerate(self.c) if c], var)

    def __repr__(self):
        return self.format()

    @classmethod
    def parse(cls, F: Field, s: str, var: str = "t") -> Poly:
        out: list[int] = []
        for k, neg, coef in parse_poly_terms(s, var):
            c = F.parse(coef)
            if neg:
                c = F.neg(c)
            out.extend([0] * (k + 1 - len(out)))
            out[k] = F.add(out[k], c)
        return cls(F, out)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    F = a.F
    r0, r1 = a, b
    s0, s1 = Poly.const(F, 1), Poly(F)
    t0, t1 = Poly(F), Poly.const(F, 1)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    inv = F.inv(r0.lc)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def poly_invmod(a: Poly, m: Poly) -> Poly:
    g, s, _ = poly_xgcd(a % m, m)
    if g.deg != 0:
        raise InvalidInput("polynomial not invertible modulo the given modulus")
    return s % m


def poly_crt(residues: list[tuple[Poly, Poly]]) -> Poly:
    """The unique ``B`` of degree below ``prod(m_i)`` with ``B = r_i mod m_i``."""
    if not residues:
        raise InvalidInput("empty CRT system")
    F = residues[0][1].F
    B = Poly(F)
    M = Poly.const(F, 1)
    for r, m in residues:
        if m.deg < 1:
            raise InvalidInput("CRT modulus must have positive degree")
        if poly_gcd(M, m).deg != 0:
            raise InvalidInput("CRT moduli are not pairwise coprime")
        # B + M*k = r (mod m)
        k = ((r - B) * poly_invmod(M, m)) % m
        B = B + M * k
        M = M * m
    return B % M


def poly_irreducible(f: Poly) -> bool:
    """Ben-Or's test over ``F_q``: no factor of degree ``i <= d/2`` divides ``t^(q^i) - t``."""
    if f.deg < 1:
        raise InvalidInput("irreducibility of a constant is undefined")
    d = f.deg
    if d == 1:
        return True
    q = f.F.q
    t = Poly.t(f.F)
    f = f.monic()
    if f.c[0] == 0:
        return False
    tf = t % f
    x = tf
    for _ in range(d // 2):
        x = x.powmod(q, f)
        if poly_gcd(f, x - tf).deg != 0:
            return False
    return True


def random_monic(F: Field, d: int, rng: random.Random) -> Poly:
    return Poly(F, [rng.randrange(F.q) for _ in range(d)] + [1])


def random_poly(F: Field, d: int, rng: random.Random) -> Poly:
    """Uniform polynomial of degree at most ``d``."""
    return Poly(F, [rng.randrange(F.q) for _ in range(d + 1)])


def _pth_root(f: Poly) -> Poly:
    F = f.F
    p = F.p
    inv_frob = F.e - 1
    return Poly(F, [F.frobenius(f.c[i], inv_frob) for i in range(0, len(f.c), p)])


def squarefree_factorization(f: Poly) -> list[tuple[Poly, int]]:
    """Pairs ``(g, k)`` with ``g`` squarefree and monic, ``f = lc * prod g^k``."""
    F = f.F
    f = f.monic()
    if f.deg < 1:
        return []
    out: list[tuple[Poly, int]] = []
    df = f.derivative()
    if not df:
        return [(g, k * F.p) for g, k in squarefree_factorization(_pth_root(f))]
    c = poly_gcd(f, df)
    w = f // c
    i = 1
    while w.deg > 0:
        y = poly_gcd(w, c)
        z = w // y
        if z.deg > 0:
            out.append((z, i))
        i += 1
        w = y
        c = c // y
    if c.deg > 0:
        out.extend((g, k * F.p) for g, k in squarefree_factorization(_pth_root(c)))
    merged: dict[Poly, int] = {}
    for g, k in out:
        merged[g] = merged.get(g, 0) + k
    return list(merged.items())


def _distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    F = f.F
    t = Poly.t(F)
    out = []
    x = t % f
    d = 0
    while f.deg >= 2 * (d + 1):
        d += 1
        x = x.powmod(F.q, f)
        g = poly_gcd(f, x - t)
        if g.deg > 0:
            out.append((g, d))
            f = f // g
            x = x % f
    if f.deg > 0:
        out.append((f, f.deg))
    return out


def _equal_degree(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    if f.deg == d:
        return [f]
    F = f.F
    while True:
        a = random_poly(F, f.deg - 1, rng)
        if a.deg < 1:
            continue
        if F.p == 2:
            h = a % f
            acc = h
            for _ in range(F.e * d - 1):
                h = (h * h) % f
                acc = acc + h
        else:
            acc = a.powmod((F.q ** d - 1) // 2, f) - 1
        g = poly_gcd(f, acc)
        if 0 < g.deg < f.deg:
            return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)


def factor(f: Poly, seed: int = 0) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicities, sorted canonically."""
    if f.deg < 1:
        return []
    rng = random.Random(seed)
    out: dict[Poly, int] = {}
    for g, k in squarefree_factorization(f):
        for h, d in _distinct_degree(g):
            for irr in _equal_degree(h, d, rng):
                out[irr] = out.get(irr, 0) + k
    return sorted(out.items(), key=lambda gk: gk[0])


def sample_irreducible_in_class(B: Poly, F_mod: Poly, mu: int, parity: int,
                                rng: random.Random, extra_degree: int | None = None) -> Poly:
    """Random ``u = mu*u'`` with ``u' = F*g + B/mu`` monic irreducible.

    ``g`` is monic of degree ``3d + parity`` (``d = deg F``) unless
    ``extra_degree`` overrides it, so ``u = B (mod F)``, ``lc(u) = mu`` and
    ``deg u = 4d + parity``.  Gives up after ``3N`` draws, ``N = deg u``.
    """
    d = F_mod.deg
    if d < 1:
        raise InvalidInput("modulus must have positive degree")
    if mu == 0:
        raise InvalidInput("leading coefficient must be nonzero")
    if poly_gcd(B, F_mod).deg != 0:
        raise InvalidInput("residue class is not coprime to the modulus")
    K = F_mod.F
    gdeg = 3 * d + parity if extra_degree is None else extra_degree
    N = d + gdeg
    shift = B.scale(K.inv(mu)) % F_mod
    for _ in range(3 * N):
        g = random_monic(K, gdeg, rng)
        u1 = F_mod * g + shift
        if poly_irreducible(u1):
            return u1.scale(mu)
    raise SamplingFailure(f"no irreducible found in {3 * N} draws of degree {N}")


def product(polys, F: Field) -> Poly:
    return reduce(lambda a, b: a * b, polys, Poly.const(F, 1))
