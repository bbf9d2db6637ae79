"""Finite fields GF(p^e) with compatible embeddings.

Elements are encoded as integers: the code ``c0 + c1*p + ... + c_{e-1}*p^(e-1)``
stands for ``c0 + c1*w + ... + c_{e-1}*w^(e-1)`` where ``w`` is a root of the
field modulus.  All hot-path arithmetic works on these codes through the
owning :class:`Field`; :class:`FieldElem` is a thin operator-overloading wrapper
for the public API.

Every field of characteristic ``p`` is built from a *compatible* modulus: ``w``
is primitive and, for each proper divisor ``d`` of ``e``, the norm
``w^((p^e-1)/(p^d-1))`` is the chosen root of the modulus of GF(p^d).  This is
the Conway-polynomial condition; it makes all embeddings commute.
"""

from __future__ import annotations

import functools
from math import gcd

from .errors import InvalidInput

MAX_FIELD_SIZE = 2 ** 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` by trial division."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


# -- dense polynomials over F_p as lists (low degree first), used only while
# -- searching for moduli, before any field tables exist.

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmulmod(a, b, f, p):
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    return _pmod(prod, f, p)


def _pmod(a, f, p):
    a = list(a)
    d = len(f) - 1
    inv_lc = pow(f[-1], p - 2, p)
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i] * inv_lc % p
        if c:
            for j in range(d + 1):
                a[i - d + j] = (a[i - d + j] - c * f[j]) % p
    return _ptrim(a[:d])


def _ppowmod(a, k, f, p):
    result = [1]
    base = _pmod(a, f, p)
    while k:
        if k & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        k >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _psub(a, b, p):
    n = max(len(a), len(b))
    return _ptrim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _irreducible_mod_p(f, p) -> bool:
    d = len(f) - 1
    x = [0, 1]
    if _ppowmod(x, p ** d, f, p) != _pmod(x, f, p):
        return False
    for r in prime_factors(d):
        h = _psub(_ppowmod(x, p ** (d // r), f, p), x, p)
        if len(_pgcd(f, h, p)) != 1:
            return False
    return True


def _digits(code: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        code, r = divmod(code, p)
        out.append(r)
    return out


def _undigits(ds, p: int) -> int:
    code = 0
    for d in reversed(ds):
        code = code * p + d
    return code


class Field:
    """The finite field GF(p^e), with log/exp tables over its generator."""

    def __init__(self, p: int, e: int, modulus: tuple[int, ...], gen: int):
        self.p = p
        self.e = e
        self.q = p ** e
        self.modulus = modulus
        self.gen = gen
        self.zero = 0
        self.one = 1
        self._build_tables()

    def _build_tables(self):
        p, q = self.p, self.q
        exp = [0] * (q - 1)
        log = [-1] * q
        if self.e == 1:
            x = 1
            for i in range(q - 1):
                exp[i] = x
                log[x] = i
                x = x * self.gen % p
        else:
            e, m = self.e, self.modulus
            ds = [1] + [0] * (e - 1)
            for i in range(q - 1):
                c = _undigits(ds, p)
                exp[i] = c
                log[c] = i
                top = ds[-1]
                ds = [0] + ds[:-1]
                if top:
                    ds = [(ds[j] - top * m[j]) % p for j in range(e)]
        if len(set(exp)) != q - 1:
            raise InvalidInput(f"generator of GF({p}^{self.e}) is not primitive")
        self._exp = exp
        self._log = log
        self._minus_one = (p - 1) if p != 2 else 1
        if self.e > 1:
            zech = [-1] * (q - 1)
            for k in range(q - 1):
                c = exp[k]
                d0 = c % p
                s = c - d0 + (d0 + 1) % p
                zech[k] = log[s]
            self._zech = zech

    # -- code-level arithmetic
    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % (self.q - 1)]
        if z < 0:
            return 0
        return self._exp[(la + z) % (self.q - 1)]

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        if a == 0 or self.p == 2:
            return a
        return self._exp[(self._log[a] + (self.q - 1) // 2) % (self.q - 1)]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if k == 0 else 0
        return self._exp[(self._log[a] * k) % (self.q - 1)]

    def log(self, a: int) -> int:
        """Discrete logarithm relative to the fixed generator."""
        if a == 0:
            raise InvalidInput("logarithm of zero")
        return self._log[a]

    def exp(self, k: int) -> int:
        return self._exp[k % (self.q - 1)]

    def frobenius(self, a: int, k: int = 1) -> int:
        """``a^(p^k)``."""
        if a == 0:
            return 0
        return self._exp[(self._log[a] * pow(self.p, k % self.e, self.q - 1)) % (self.q - 1)]

    def from_int(self, k: int) -> int:
        return k % self.p

    def is_square(self, a: int) -> bool:
        if a == 0:
            return True
        return self.p == 2 or self._log[a] % 2 == 0

    def sqrt(self, a: int) -> int:
        if a == 0:
            return 0
        la = self._log[a]
        if self.p == 2:
            return self._exp[(la * (self.q // 2)) % (self.q - 1)]
        if la % 2:
            raise InvalidInput("not a square")
        return self._exp[la // 2]

    @functools.cached_property
    def tables(self) -> tuple[list[list[int]], list[list[int]]] | None:
        """Full addition and multiplication tables for small extension fields."""
        if self.e == 1 or self.q > 256:
            return None
        r = range(self.q)
        return ([[self.add(a, b) for b in r] for a in r],
                [[self.mul(a, b) for b in r] for a in r])

    def elements(self):
        return range(self.q)

    def elem(self, code: int) -> FieldElem:
        return FieldElem(self, code)

    def order_of(self, a: int) -> int:
        la = self.log(a)
        return (self.q - 1) // gcd(la, self.q - 1)

    # -- text
    def format(self, a: int) -> str:
        if self.e == 1:
            return str(a)
        ds = _digits(a, self.p, self.e)
        return _format_poly(ds, "w") or "0"

    def parse(self, s: str) -> int:
        from .textio import parse_poly_terms

        terms = parse_poly_terms(s, "w")
        ds = [0] * max(self.e, 1 + max(k for k, _, _ in terms))
        for k, neg, c in terms:
            if not c.isdigit():
                raise InvalidInput(f"bad coefficient {c!r} in field element {s!r}")
            ds[k] = (ds[k] + (-1 if neg else 1) * int(c)) % self.p
        if any(ds[self.e:]):
            if self.e == 1 and len(ds) > 1 and ds[1]:
                raise InvalidInput("prime field elements are integers")
            raise InvalidInput(f"element {s!r} not reduced modulo the field modulus")
        return _undigits(ds[: self.e], self.p)

    def __repr__(self):
        return f"GF({self.p}^{self.e}; modulus={_format_poly(list(self.modulus), 'w')})"

    def __reduce__(self):
        return (ff_make, (self.p, self.e))


def _format_poly(ds, var: str) -> str:
    parts = []
    for k in range(len(ds) - 1, -1, -1):
        c = ds[k]
        if not c:
            continue
        if k == 0:
            parts.append(str(c))
        else:
            mono = var if k == 1 else f"{var}^{k}"
            parts.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(parts)


class FieldElem:
    """An element of a :class:`Field` with the usual operators."""

    __slots__ = ("F", "c")

    def __init__(self, F: Field, c: int):
        self.F = F
        self.c = c

    def _co(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.F is not self.F:
                raise InvalidInput("elements of different fields")
            return other.c
        if isinstance(other, int):
            return self.F.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._co(other)
        return NotImplemented if o is NotImplemented else FieldElem(self.F, self.F.add(self.c, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._co(other)
        return NotImplemented if o is NotImplemented else FieldElem(self.F, self.F.sub(self.c, o))

    def __rsub__(self, other):
        o = self._co(other)
        return NotImplemented if o is NotImplemented else FieldElem(self.F, self.F.sub(o, self.c))

    def __mul__(self, other):
        o = self._co(other)
        return NotImplemented if o is NotImplemented else FieldElem(self.F, self.F.mul(self.c, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._co(other)
        return NotImplemented if o is NotImplemented else FieldElem(self.F, self.F.div(self.c, o))

    def __rtruediv__(self, other):
        o = self._co(other)
        return NotImplemented if o is NotImplemented else FieldElem(self.F, self.F.div(o, self.c))

    def __neg__(self):
        return FieldElem(self.F, self.F.neg(self.c))

    def __pow__(self, k: int):
        return FieldElem(self.F, self.F.pow(self.c, k))

    def __eq__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return NotImplemented
        return self.c == o

    def __hash__(self):
        return hash((self.F.p, self.F.e, self.c))

    def __bool__(self):
        return self.c != 0

    def __repr__(self):
        return self.F.format(self.c)


@functools.lru_cache(maxsize=None)
def ff_make(p: int, e: int = 1) -> Field:
    """Build GF(p^e) deterministically.

    The modulus is the first monic irreducible (ordered by the integer code of
    its lower coefficients) whose root is primitive and norm-compatible with
    the moduli of all proper subfields.
    """
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    if e < 1:
        raise InvalidInput("extension degree must be positive")
    q = p ** e
    if q > MAX_FIELD_SIZE:
        raise InvalidInput(f"field size {p}^{e} exceeds configured bound {MAX_FIELD_SIZE}")
    order_factors = prime_factors(q - 1)
    if e == 1:
        g = next(a for a in range(1, p) if p == 2 or all(pow(a, (p - 1) // r, p) != 1 for r in order_factors))
        return Field(p, 1, ((-g) % p, 1), g)
    subs = [ff_make(p, d) for d in divisors(e) if d < e]
    x = [0, 1]
    for low in range(p ** e):
        f = _digits(low, p, e) + [1]
        if f[0] == 0 or not _irreducible_mod_p(f, p):
            continue
        if any(_ppowmod(x, (q - 1) // r, f, p) == [1] for r in order_factors):
            continue
        if all(_compatible(f, sub, p, q) for sub in subs):
            return Field(p, e, tuple(f), p)
    raise InvalidInput(f"no compatible modulus for GF({p}^{e})")


def _compatible(f, sub: Field, p: int, q: int) -> bool:
    y = _ppowmod([0, 1], (q - 1) // (sub.q - 1), f, p)
    acc: list[int] = []
    power = [1]
    for coef in sub.modulus:
        if coef:
            acc = _psub(acc, [(-coef * c) % p for c in power], p)
        power = _pmulmod(power, y, f, p)
    return not acc


class EmbeddingMap:
    """A ring embedding ``sub -> sup`` fixing the prime field."""

    def __init__(self, sub: Field, sup: Field):
        self.sub = sub
        self.sup = sup
        self.ratio = (sup.q - 1) // (sub.q - 1)
        self.image = sup.exp(self.ratio) if sub.e > 1 else sub.gen
        self._back = None

    def __call__(self, a: int) -> int:
        if a == 0:
            return 0
        return self.sup.exp(self.sub.log(a) * self.ratio)

    def preimage(self, b: int) -> int:
        """Inverse on the image; raises when ``b`` is not in the subfield."""
        if b == 0:
            return 0
        lb = self.sup.log(b)
        if lb % self.ratio:
            raise InvalidInput("element does not lie in the embedded subfield")
        return self.sub.exp(lb // self.ratio)

    def contains(self, b: int) -> bool:
        return b == 0 or self.sup.log(b) % self.ratio == 0


@functools.lru_cache(maxsize=None)
def ff_embed(sub: Field, sup: Field) -> EmbeddingMap:
    if sub.p != sup.p:
        raise InvalidInput("characteristic mismatch")
    if sup.e % sub.e:
        raise InvalidInput(f"GF({sub.p}^{sub.e}) does not embed in GF({sup.p}^{sup.e})")
    return EmbeddingMap(sub, sup)


def ff_root_of_unity(F: Field, n: int) -> int:
    """Primitive n-th root of unity ``gen^((q-1)/n)``."""
    if n < 1 or (F.q - 1) % n:
        raise InvalidInput(f"{n} does not divide {F.q}-1")
    return F.exp((F.q - 1) // n)


def ff_power_class(F: Field, x: int, n: int) -> int:
    """Class of ``x`` in F*/(F*)^n, i.e. its discrete log modulo n."""
    if (F.q - 1) % n:
        raise InvalidInput(f"{n} does not divide {F.q}-1")
    return F.log(x) % n


def ff_norm(sub: Field, sup: Field, a: int) -> int:
    """Norm from ``sup`` down to ``sub`` of a code in ``sup`` (returned in sup)."""
    return sup.pow(a, (sup.q - 1) // (sub.q - 1))


def ff_norm_solve(sub: Field, sup: Field, lam: int) -> int:
    """Code ``a`` in ``sup`` with norm to ``sub`` equal to ``lam`` (a code in sub)."""
    if lam == 0:
        raise InvalidInput("norm equation with zero right-hand side")
    emb = ff_embed(sub, sup)
    ratio = (sup.q - 1) // (sub.q - 1)
    return sup.exp(sup.log(emb(lam)) // ratio)


def field_det(F: Field, rows: list[list[int]]) -> int:
    m = [list(r) for r in rows]
    n = len(m)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = F.neg(det)
        det = F.mul(det, m[c][c])
        ic = F.inv(m[c][c])
        for r in range(c + 1, n):
            if m[r][c]:
                f = F.mul(m[r][c], ic)
                m[r] = [F.sub(m[r][j], F.mul(f, m[c][j])) for j in range(n)]
    return det


def ff_normal_element(sub: Field, sup: Field) -> int:
    """Least code generating a normal basis of ``sup`` over ``sub``."""
    ff_embed(sub, sup)
    n = sup.e // sub.e
    if n == 1:
        return 1
    k = sub.e
    for a in range(1, sup.q):
        conj = [a]
        for _ in range(2 * n - 2):
            conj.append(sup.frobenius(conj[-1], k))
        if field_det(sup, [[conj[i + j] for j in range(n)] for i in range(n)]):
            return a
    raise InvalidInput("no normal element found")
