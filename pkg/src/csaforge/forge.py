"""Quaternion and symbol algebras over F_q(t) with prescribed local invariants."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidInput, InvariantBreach, SamplingFailure
from .fields import Field, ff_root_of_unity
from .local import (InvariantProfile, SymbolAlgebra, hasse, symbol_local_invariant)
from .poly import (Poly, poly_crt, poly_irreducible, product, random_monic,
                   sample_irreducible_in_class)
from .ratfunc import INFINITY, Place, RatFunc, ResidueField, moebius_substitute, moebius_unsubstitute

# Independent sampling blocks (each of 3N draws) tried before giving up.
SAMPLING_BLOCKS = 4


def _least_nonsquare(F: Field) -> int:
    return next(x for x in F.elements() if x and not F.is_square(x))


def _sample(B, F_mod, mu, parity, rng, extra_degree=None, blocks=SAMPLING_BLOCKS):
    last = None
    for _ in range(blocks):
        try:
            return sample_irreducible_in_class(B, F_mod, mu, parity, rng, extra_degree)
        except SamplingFailure as exc:
            last = exc
    raise last


def _split_places(S) -> tuple[list[Poly], bool]:
    finite = []
    inf = False
    for v in S:
        if v.is_infinite:
            inf = True
        else:
            finite.append(v.poly)
    if len(set(finite)) != len(finite):
        raise InvalidInput("places must be distinct")
    for f in finite:
        if f.deg < 1 or not f.is_monic() or not poly_irreducible(f):
            raise InvalidInput(f"{f} is not a monic irreducible polynomial")
    return sorted(finite), inf


def build_quaternion(S, F: Field, rng: random.Random) -> tuple[Poly, Poly]:
    """Return ``(a, b)`` such that ``H(a, b)`` ramifies exactly at the places ``S``."""
    if F.p == 2:
        raise InvalidInput("quaternion construction needs odd q")
    S = list(S)
    if len(S) % 2:
        raise InvalidInput("the ramification set must have even cardinality")
    one = Poly.const(F, 1)
    if not S:
        return one, one
    fs, inf = _split_places(S)
    Fm = product(fs, F)
    d = Fm.deg
    nonsq = _least_nonsquare(F)
    lam, mu = 1, 1
    if not inf:
        parity = d % 2  # deg a = 5d + parity even
    elif d % 2:
        parity, mu = 1, nonsq
    else:
        parity, lam = 1, nonsq
    neg_lam = F.neg(lam)
    residues = []
    for f in fs:
        R = ResidueField(f)
        alpha = R.gen if R.is_square(Poly.const(F, neg_lam)) else R.one
        residues.append((alpha, f))
    B = poly_crt(residues)
    u = _sample(B, Fm, mu, parity, rng)
    return Fm * u, Fm.scale(lam)


@dataclass(frozen=True)
class InvariantSpec:
    """Requested invariants ``r_i/s_i`` at finite places plus ``r_0/s_0`` at infinity."""

    n: int
    finite: tuple[tuple[Poly, Fraction], ...]
    infinity: Fraction = Fraction(0)

    def __post_init__(self):
        polys = [f for f, _ in self.finite]
        if len(set(polys)) != len(polys):
            raise InvalidInput("places must be distinct")
        for f in polys:
            if f.deg < 1 or not f.is_monic() or not poly_irreducible(f):
                raise InvalidInput(f"{f} is not a monic irreducible polynomial")
        invs = [hasse(x) for _, x in self.finite] + [hasse(self.infinity)]
        if hasse(sum(invs, Fraction(0))):
            raise InvalidInput("invariants must sum to an integer")
        for x in invs:
            if self.n % x.denominator:
                raise InvalidInput(f"invariant {x} has denominator not dividing n={self.n}")

    def profile(self) -> InvariantProfile:
        items = {Place(f): x for f, x in self.finite}
        items[INFINITY] = self.infinity
        return InvariantProfile(items)

    def lcm_denominator(self) -> int:
        return math.lcm(*[hasse(x).denominator for _, x in self.finite], hasse(self.infinity).denominator)


def _class_exponent(o: int, target: int, n: int) -> int:
    if math.gcd(o, n) != 1:
        raise InvariantBreach("generator does not give an invariant of full order")
    return target * pow(o, -1, n) % n


def _aux_irreducible(F: Field, deg0: int, n: int, avoid, rng) -> Poly:
    deg = deg0
    while True:
        for _ in range(3 * deg * SAMPLING_BLOCKS):
            g = random_monic(F, deg, rng)
            if g not in avoid and poly_irreducible(g):
                return g
        deg += n


def build_symbol(spec: InvariantSpec, F: Field, rng: random.Random) -> SymbolAlgebra:
    """Symbol algebra ``(s, F*lambda; eps)`` (or ``(s, F*g*lambda; eps)``) realising ``spec``."""
    n = spec.n
    if n < 1 or (F.q - 1) % n:
        raise InvalidInput(f"need n | q-1 (q={F.q}, n={n})")
    eps = ff_root_of_unity(F, n)
    fs = [f for f, _ in spec.finite]
    Fm = product(fs, F)
    l = Fm.deg % n
    residues = []
    b_poly = Fm
    if math.gcd(l, n) != 1:
        g = _aux_irreducible(F, (n + 1 - l) % n or n, n, set(fs), rng)
        b_poly = Fm * g
        residues.append((Poly.const(F, 1), g))
    L = b_poly.deg
    # residue targets at the finite places; the symbol at f_i only sees v(b)=1
    for f, x in spec.finite:
        R = ResidueField(f)
        delta = R.gen
        probe = SymbolAlgebra(n, eps, RatFunc(delta), RatFunc(b_poly))
        o = int(symbol_local_invariant(probe, Place(f)) * n)
        e = _class_exponent(o, int(hasse(x) * n), n)
        residues.append((R.pow(delta, e), f))
    r0 = int(hasse(spec.infinity) * n)
    mod = product([m for _, m in residues], F)
    d = mod.deg
    # degree of s: D = 0 (mod n) to split at infinity, else D = -L (mod n)
    target = 0 if r0 == 0 else (-L) % n
    D = 4 * max(d, 1)
    D += (target - D) % n
    if r0 == 0:
        lam = 1
    else:
        sign = F.pow(eps, -(n * (n - 1) // 2))
        mu0 = F.gen
        t = RatFunc.t(F)
        probe = SymbolAlgebra(n, eps, t ** D, RatFunc(b_poly.scale(F.mul(sign, mu0))))
        o = int(symbol_local_invariant(probe, INFINITY) * n)
        e = _class_exponent(o, r0, n)
        lam = F.mul(sign, F.pow(mu0, e))
    if d == 0:
        s = _sample_free(F, D, rng)
    else:
        B = poly_crt(residues) if len(residues) > 1 else residues[0][0] % residues[0][1]
        s = _sample(B, mod, 1, 0, rng, extra_degree=D - d)
    return SymbolAlgebra(n, eps, RatFunc(s), RatFunc(b_poly.scale(lam)))


def _sample_free(F: Field, D: int, rng) -> Poly:
    for _ in range(3 * D * SAMPLING_BLOCKS):
        s = random_monic(F, D, rng)
        if poly_irreducible(s):
            return s
    raise SamplingFailure(f"no irreducible of degree {D} found")


# -- structure constants ------------------------------------------------------

@dataclass
class StructureConstants:
    """Sparse table: ``gamma[i][j]`` maps ``k`` to the coefficient of ``b_k`` in ``b_i b_j``."""

    dim: int
    gamma: list[list[dict[int, RatFunc]]]
    labels: list[str] = field(default_factory=list)

    def F(self) -> Field:
        for row in self.gamma:
            for entry in row:
                for c in entry.values():
                    return c.F
        raise InvalidInput("empty structure constants")

    def mul(self, x: dict[int, RatFunc], y: dict[int, RatFunc]) -> dict[int, RatFunc]:
        out: dict[int, RatFunc] = {}
        for i, xi in x.items():
            for j, yj in y.items():
                c = xi * yj
                for k, g in self.gamma[i][j].items():
                    out[k] = out[k] + c * g if k in out else c * g
        return {k: v for k, v in out.items() if v}

    def basis(self, i: int, F: Field) -> dict[int, RatFunc]:
        return {i: RatFunc.const(F, 1)}

    def associativity_failures(self) -> int:
        F = self.F()
        e = [self.basis(i, F) for i in range(self.dim)]
        bad = 0
        for i in range(self.dim):
            for j in range(self.dim):
                ij = self.mul(e[i], e[j])
                for k in range(self.dim):
                    if self.mul(ij, e[k]) != self.mul(e[i], self.mul(e[j], e[k])):
                        bad += 1
        return bad

    def identity_index(self) -> int | None:
        F = self.F()
        for u in range(self.dim):
            eu = self.basis(u, F)
            if all(self.mul(eu, self.basis(i, F)) == self.basis(i, F) == self.mul(self.basis(i, F), eu)
                   for i in range(self.dim)):
                return u
        return None

    def map_entries(self, fn) -> StructureConstants:
        gamma = [[{k: fn(c) for k, c in entry.items()} for entry in row] for row in self.gamma]
        return StructureConstants(self.dim, gamma, list(self.labels))


def symbol_structure_constants(A: SymbolAlgebra) -> StructureConstants:
    """Constants in the basis ``u^i v^j`` (index ``i*n + j``)."""
    n, F = A.n, A.F
    dim = n * n
    gamma = [[{} for _ in range(dim)] for _ in range(dim)]
    one = RatFunc.const(F, 1)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    # v^j u^k = eps^{-jk} u^k v^j
                    c = one.scale(F.pow(A.eps, -(j * k) % n))
                    if i + k >= n:
                        c = c * A.a
                    if j + l >= n:
                        c = c * A.b
                    gamma[i * n + j][k * n + l] = {((i + k) % n) * n + (j + l) % n: c}
    labels = [f"u^{i}v^{j}" for i in range(n) for j in range(n)]
    return StructureConstants(dim, gamma, labels)


def swap_infinity(sc: StructureConstants, c: int) -> StructureConstants:
    """Rewrite every constant in ``s = 1/(t + c)`` so ``t + c`` and infinity trade places."""
    return sc.map_entries(lambda x: moebius_substitute(x, c))


def unswap_infinity(sc: StructureConstants, c: int) -> StructureConstants:
    return sc.map_entries(lambda x: moebius_unsubstitute(x, c))
