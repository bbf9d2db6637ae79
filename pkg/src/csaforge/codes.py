"""Skew constacyclic convolutional codes, their isometric transport and decoding."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

from .csa import IdempotentSystem, MatRep, k_rank, lemma_beta, normal_element
from .errors import DecodingFailure, InvalidInput, InvariantBreach
from .fields import EmbeddingMap, Field, MAX_FIELD_SIZE, ff_embed, ff_make
from .matrix import rank, solve
from .ore import AlgElem, CyclicAlgebra, FieldAut, SkewPoly, norms, skew_gcrd, skew_lclm
from .poly import Poly
from .ratfunc import RatFunc

MAX_EXACT_LENGTH = 12


def full_norm(sigma: FieldAut, a: RatFunc, n: int) -> RatFunc:
    return norms(sigma, a, n + 1)[n]


class ThetaTwist:
    """``theta: sum a_i x^i -> sum a_i N_i(a) y^i`` from ``x^n - lambda`` to ``y^n - 1``."""

    def __init__(self, A: CyclicAlgebra, B: CyclicAlgebra, a: RatFunc):
        if B.sigma != A.sigma or B.n != A.n or B.lam != 1:
            raise InvalidInput("target algebra must be K[y; sigma]/(y^n - 1)")
        n = A.n
        Na = norms(A.sigma, a, n + 1)
        if Na[n] != A.lam:
            raise InvalidInput("twist element does not have norm lambda")
        self.A, self.B, self.a = A, B, a
        self.N = Na[:n]
        self.Ninv = norms(A.sigma, a.inv(), n)

    def __call__(self, u: AlgElem) -> AlgElem:
        return AlgElem(self.B, [c * w for c, w in zip(u.c, self.N)])

    def inv(self, v: AlgElem) -> AlgElem:
        return AlgElem(self.A, [c * w for c, w in zip(v.c, self.Ninv)])

    def skew_inv(self, g: SkewPoly) -> SkewPoly:
        """``theta^{-1}`` on skew polynomials of degree below ``n``."""
        if g.deg >= self.A.n:
            raise InvalidInput("degree too large for theta")
        return SkewPoly(self.A.sigma, [c * w for c, w in zip(g.c, self.Ninv)])


def theta_make(A: CyclicAlgebra, B: CyclicAlgebra, a: RatFunc) -> ThetaTwist:
    return ThetaTwist(A, B, a)


def cyclic_target(A: CyclicAlgebra) -> CyclicAlgebra:
    return CyclicAlgebra(A.sigma, A.n, RatFunc.const(A.F, 1))


# -- norm equations -----------------------------------------------------------

def _lam_shape(lam: RatFunc, n: int) -> tuple[int, int]:
    """``lambda = c * t^(n e)``; returns ``(c, e)``."""
    num, den = lam.num, lam.den
    if any(num.c[:-1]) or any(den.c[:-1]):
        raise InvalidInput("lambda must be a constant times a power of t")
    k = num.deg - den.deg
    if k % n:
        raise InvalidInput("the power of t in lambda must be a multiple of n")
    return num.lc, k // n


def _is_diagonal(sigma: FieldAut) -> bool:
    a, b, c, d = sigma.m
    return b == 0 and c == 0 and d == 1


def _monomial_norm_root(sigma: FieldAut, c: int, e: int, n: int) -> RatFunc | None:
    """``beta t^e`` with norm ``c t^(ne)``, ``beta`` a constant of ``sigma.F``, or ``None``."""
    F = sigma.F
    t = RatFunc.t(F)
    nu = full_norm(sigma, t, n) / t ** n
    if not nu.is_const():
        return None
    target = F.mul(c, F.pow(nu.const_value(), -e))
    S = sum(F.p ** (sigma.frob * i) for i in range(n)) % (F.q - 1)
    g = math.gcd(S, F.q - 1)
    lt = F.log(target)
    if lt % g:
        return None
    m = (F.q - 1) // g
    k = (lt // g) * pow(S // g, -1, m) % m if m > 1 else 0
    mu = t ** e if e else RatFunc.const(F, 1)
    mu = mu.scale(F.exp(k))
    if full_norm(sigma, mu, n) != RatFunc.const(F, c) * t ** (n * e):
        raise InvariantBreach("norm solution check failed")
    return mu


def norm_solve(A: CyclicAlgebra) -> RatFunc:
    """``a`` in K with ``N(a) = lambda`` for the supported shapes."""
    if not _is_diagonal(A.sigma):
        raise InvalidInput("norm equations are solved only for sigma = Frobenius o (t -> a t)")
    c, e = _lam_shape(A.lam, A.n)
    mu = _monomial_norm_root(A.sigma, c, e, A.n)
    if mu is None:
        raise InvalidInput("lambda is not a norm from K")
    return mu


# -- splitting-field embedding ------------------------------------------------

@dataclass
class EmbedData:
    A: CyclicAlgebra
    M: Field
    emb: EmbeddingMap
    phi: FieldAut
    root: RatFunc
    A2: CyclicAlgebra

    def lift(self, x: RatFunc) -> RatFunc:
        return x.map_coeffs(self.emb, self.M)

    def lift_elem(self, u: AlgElem) -> AlgElem:
        return AlgElem(self.A2, [self.lift(c) for c in u.c])

    def lift_skew(self, f: SkewPoly) -> SkewPoly:
        return SkewPoly(self.phi, [self.lift(c) for c in f.c])

    def descend(self, x: RatFunc) -> RatFunc:
        try:
            return x.map_coeffs(self.emb.preimage, self.A.F)
        except InvalidInput:
            raise InvariantBreach("coordinate does not lie in K") from None

    def descend_elem(self, v: AlgElem) -> AlgElem:
        return AlgElem(self.A, [self.descend(c) for c in v.c])


def embed_construct(A: CyclicAlgebra) -> EmbedData:
    """Smallest ``F_{q'}(t)`` and extension ``phi`` of ``sigma`` in which ``lambda``
    is the norm of ``root = beta t^e``."""
    sigma, n, F = A.sigma, A.n, A.F
    if not _is_diagonal(sigma):
        raise InvalidInput("unsupported automorphism shape")
    c, e = _lam_shape(A.lam, n)
    j = 1
    while F.q ** j <= MAX_FIELD_SIZE:
        M = ff_make(F.p, F.e * j)
        emb = ff_embed(F, M)
        for kk in range(sigma.frob, M.e, F.e):
            phi = FieldAut(M, kk, tuple(emb(x) for x in sigma.m))
            if phi.order != n:
                continue
            root = _monomial_norm_root(phi, emb(c), e, n)
            if root is not None:
                A2 = CyclicAlgebra(phi, n, A.lam.map_coeffs(emb, M))
                return EmbedData(A, M, emb, phi, root, A2)
        j += 1
    raise InvalidInput("no splitting field within the configured size bound")


# -- codes ----------------------------------------------------------------------

@dataclass
class ConstaCode:
    A: CyclicAlgebra
    g: SkewPoly
    delta: int
    m: int
    B: CyclicAlgebra
    theta: ThetaTwist
    points: list[RatFunc]
    embed: EmbedData | None = None
    alpha: RatFunc | None = None
    beta: RatFunc | None = None
    gamma: RatFunc | None = None

    @property
    def n(self) -> int:
        return self.A.n

    @property
    def dim(self) -> int:
        return self.n - self.g.deg

    @property
    def t(self) -> int:
        return (self.delta - 1) // 2

    def to_transport(self, u: AlgElem) -> AlgElem:
        if self.embed is not None:
            u = self.embed.lift_elem(u)
        return self.theta(u)

    def from_transport(self, v: AlgElem) -> AlgElem:
        u = self.theta.inv(v)
        if self.embed is not None:
            u = self.embed.descend_elem(u)
        return u


def rs_generator(sigma: FieldAut, beta: RatFunc, m: int, k: int) -> SkewPoly:
    """``[x - beta, x - sigma^m(beta), ..., x - sigma^{m(k-2)}(beta)]_l``."""
    if k < 2:
        raise InvalidInput("designed distance must be at least 2")
    pts = rs_points(sigma, beta, m, k)
    g = skew_lclm([SkewPoly.linear(sigma, p) for p in pts])
    if g.deg != k - 1:
        raise InvalidInput("evaluation points are degenerate")
    return g


def rs_points(sigma: FieldAut, beta: RatFunc, m: int, k: int) -> list[RatFunc]:
    sm = sigma.power(m)
    pts = [beta]
    for _ in range(k - 2):
        pts.append(sm(pts[-1]))
    return pts


def norm_case_code(A: CyclicAlgebra, delta: int) -> ConstaCode:
    """MDS code ``theta^{-1}`` of a skew Reed-Solomon code of designed distance ``delta``."""
    n = A.n
    if not 2 <= delta <= n:
        raise InvalidInput(f"designed distance must lie in [2, {n}]")
    a = norm_solve(A)
    B = cyclic_target(A)
    theta = ThetaTwist(A, B, a)
    alpha = normal_element(A.sigma, n)
    beta = A.sigma(alpha) / alpha
    pts = rs_points(A.sigma, beta, 1, delta)
    gB = rs_generator(A.sigma, beta, 1, delta)
    g = skew_gcrd(theta.skew_inv(gB), A.modulus())
    return ConstaCode(A, g, delta, 1, B, theta, pts, None, alpha, beta, beta)


def constacyclic_rs_code(A: CyclicAlgebra, system: IdempotentSystem, k: int,
                         embed: EmbedData | None = None) -> ConstaCode:
    """Code generated by ``[e, sigma^m(e), ..., sigma^{m(k-2)}(e)]_l`` with ``e = 1 - e_0``."""
    n, m = A.n, system.m
    if not 2 <= k <= n // m:
        raise InvalidInput(f"designed distance must lie in [2, {n // m}]")
    e = A.one() - system.e0
    lifts = [e.sigma(m * i).to_skew() for i in range(k - 1)]
    L = skew_lclm(lifts)
    g = skew_gcrd(L, A.modulus())
    embed = embed or embed_construct(A)
    A2 = embed.A2
    rep = MatRep(A2, embed.root)
    beta = lemma_beta(rep, embed.lift_elem(e))
    phi = embed.phi
    alpha = normal_element(phi, n)
    a = beta * alpha / phi(alpha)
    gamma = phi(alpha) / alpha
    B = cyclic_target(A2)
    theta = ThetaTwist(A2, B, a)
    # x - phi^{mj}(beta) maps to a multiple of y - phi^{mj}(beta)/a
    pts = [p / a for p in rs_points(phi, beta, m, k)]
    if pts[0] != gamma:
        raise InvariantBreach("transport point mismatch")
    return ConstaCode(A, g, k, m, B, theta, pts, embed, alpha, beta, gamma)


def left_ideal_code(A: CyclicAlgebra, z: AlgElem) -> ConstaCode:
    """The left ideal ``A z`` as a code (no transport data; designed distance 1)."""
    g = skew_gcrd(z.to_skew(), A.modulus())
    B = cyclic_target(A)
    return ConstaCode(A, g, 1, A.n, B, None, [])


def encode(C: ConstaCode, msg) -> AlgElem:
    msg = list(msg)
    if len(msg) != C.dim:
        raise InvalidInput(f"message length {len(msg)} != dimension {C.dim}")
    return C.A.from_skew(SkewPoly(C.A.sigma, msg) * C.g)


def generator_rows(C: ConstaCode) -> list[list[RatFunc]]:
    return [list(C.A.from_skew(SkewPoly(C.A.sigma, [RatFunc.const(C.A.F, 0)] * i
                                         + [RatFunc.const(C.A.F, 1)]) * C.g).c)
            for i in range(C.dim)]


def min_distance_rows(rows, n: int, bound: int = MAX_EXACT_LENGTH) -> int:
    if n > bound:
        raise InvalidInput(f"length {n} exceeds the exact-distance bound {bound}")
    if not rows:
        raise InvalidInput("zero code has no minimum distance")
    zero = rows[0][0] - rows[0][0]
    k = rank(rows, zero)
    for w in range(1, n + 1):
        for T in itertools.combinations(range(n), w):
            outside = [c for c in range(n) if c not in T]
            sub = [[r[c] for c in outside] for r in rows]
            if not outside or rank(sub, zero) < k:
                return w
    raise InvariantBreach("no nonzero codeword found")


def min_distance_exact(C: ConstaCode, bound: int = MAX_EXACT_LENGTH) -> int:
    return min_distance_rows(generator_rows(C), C.n, bound)


def code_contains(C: ConstaCode, u: AlgElem) -> bool:
    return not u.to_skew().mod_right(C.g)


def syndromes(B: CyclicAlgebra, points, y: AlgElem) -> list[RatFunc]:
    f = y.to_skew()
    return [f.eval_right(p) for p in points]


def decode_B(B: CyclicAlgebra, points, received: AlgElem, t: int) -> AlgElem:
    """Nearest codeword within distance ``t`` of the code ``{c : c(P) = 0 for P in points}``."""
    if 2 * t > len(points):
        raise InvalidInput("decoding radius exceeds the designed capacity")
    s = syndromes(B, points, received)
    if not any(s):
        return received
    n = B.n
    zero = RatFunc.const(B.F, 0)
    Ns = [norms(B.sigma, p, n) for p in points]
    for w in range(1, t + 1):
        for T in itertools.combinations(range(n), w):
            rows = [[Ns[j][l] for l in T] for j in range(len(points))]
            sol = solve(rows, s, zero)
            if sol is None or not all(sol):
                continue
            err = [zero] * n
            for l, v in zip(T, sol):
                err[l] = v
            return received - AlgElem(B, err)
    raise DecodingFailure(f"no codeword within distance {t}")


def decode(C: ConstaCode, received: AlgElem, t: int | None = None) -> AlgElem:
    """Transport to the skew-cyclic code, decode there, and pull back."""
    if C.theta is None:
        raise InvalidInput("code has no decoding transport")
    t = C.t if t is None else t
    y = C.to_transport(received)
    c = decode_B(C.B, C.points, y, t)
    out = C.from_transport(c)
    if not code_contains(C, out):
        raise DecodingFailure("decoded word is not a codeword")
    return out


decode_constacyclic = decode


def random_ratfunc(F: Field, rng: random.Random, max_deg: int = 2, nonzero: bool = False) -> RatFunc:
    while True:
        num = Poly(F, [rng.randrange(F.q) for _ in range(rng.randint(0, max_deg) + 1)])
        den = Poly(F, [rng.randrange(F.q) for _ in range(rng.randint(0, max_deg))] + [1])
        x = RatFunc(num, den)
        if x or not nonzero:
            return x


def random_message(C: ConstaCode, rng: random.Random, max_deg: int = 2) -> list[RatFunc]:
    return [random_ratfunc(C.A.F, rng, max_deg) for _ in range(C.dim)]


def add_errors(C: ConstaCode, word: AlgElem, positions, rng: random.Random, max_deg: int = 2) -> AlgElem:
    cs = list(word.c)
    for p in positions:
        cs[p] = cs[p] + random_ratfunc(C.A.F, rng, max_deg, nonzero=True)
    return AlgElem(C.A, cs)


def simulate(C: ConstaCode, trials: int, seed: int, errors: int | None = None) -> list[dict]:
    """Encode, corrupt and decode; one CSV-ready row per trial."""
    rows = []
    errors = C.t if errors is None else errors
    for trial in range(trials):
        rng = random.Random(f"{seed}:{trial}")
        sent = encode(C, random_message(C, rng))
        pos = rng.sample(range(C.n), errors)
        recv = add_errors(C, sent, pos, rng)
        try:
            ok = decode(C, recv) == sent
        except DecodingFailure:
            ok = False
        rows.append({"trial": trial, "seed": seed, "n": C.n, "delta": C.delta,
                     "errors_injected": errors, "decoded_ok": int(ok)})
    return rows


def encoder_rank(C: ConstaCode) -> int:
    return k_rank(C.A, [AlgElem(C.A, r) for r in generator_rows(C)]) if C.dim else 0


__all__ = [
    "ConstaCode", "EmbedData", "ThetaTwist", "add_errors", "code_contains", "constacyclic_rs_code",
    "decode", "decode_B", "decode_constacyclic", "embed_construct", "encode", "encoder_rank",
    "generator_rows", "left_ideal_code", "min_distance_exact", "min_distance_rows", "norm_case_code",
    "norm_solve", "random_message", "random_ratfunc", "rs_generator", "rs_points", "simulate",
    "syndromes", "theta_make",
]
