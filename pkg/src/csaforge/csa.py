"""Linear algebra over the fixed field K^sigma of a cyclic algebra.

Every computation here is K^sigma-linear.  K is presented over K^sigma by a
normal basis ``phi^i(alpha)``; a field element ``c`` has coordinates
``W^{-1} (phi^i(c))_i`` with ``W_ij = phi^{i+j}(alpha)``, and an algebra
element ``sum a_j x^j`` has the ``n^2`` coordinates of its ``a_j`` (index
``j*n + i``).  Coordinates are rational functions that happen to lie in
K^sigma, so no separate presentation of the fixed field is needed.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

from .errors import InvalidInput, InvariantBreach
from .forge import SymbolAlgebra
from .matrix import inverse, kernel, matvec, rank, rref, solve
from .ore import AlgElem, CyclicAlgebra, FieldAut, norms
from .ratfunc import RatFunc


def conjugate_matrix(sigma: FieldAut, alpha: RatFunc, n: int) -> list[list[RatFunc]]:
    conj = [alpha]
    for _ in range(2 * n - 2):
        conj.append(sigma(conj[-1]))
    return [[conj[i + j] for j in range(n)] for i in range(n)]


def is_normal(sigma: FieldAut, alpha: RatFunc, n: int) -> bool:
    if not alpha:
        return False
    zero = RatFunc.const(alpha.F, 0)
    return rank(conjugate_matrix(sigma, alpha, n), zero) == n


def normal_element(sigma: FieldAut, n: int | None = None) -> RatFunc:
    """Small element generating a normal basis of K over K^sigma."""
    n = n or sigma.order
    F = sigma.F
    t = RatFunc.t(F)
    one = RatFunc.const(F, 1)
    if n == 1:
        return one
    geo = sum((t ** i for i in range(1, n)), one)
    candidates = [geo]
    candidates += [RatFunc.const(F, c) for c in range(1, F.q)]
    candidates += [geo.scale(c) for c in range(2, F.q)]
    candidates += [geo + RatFunc.const(F, c) * t ** n for c in range(1, F.q)]
    for alpha in candidates:
        if is_normal(sigma, alpha, n):
            return alpha
    raise InvalidInput("no small normal element found")


class FixedBasis:
    """K^sigma-coordinates for K and for a cyclic algebra over K."""

    def __init__(self, A: CyclicAlgebra, alpha: RatFunc | None = None):
        self.A = A
        n = A.n
        self.n = n
        self.sigma = A.sigma
        self.alpha = alpha if alpha is not None else normal_element(A.sigma, n)
        F = A.F
        self.zero = RatFunc.const(F, 0)
        self.one = RatFunc.const(F, 1)
        self.W = conjugate_matrix(A.sigma, self.alpha, n)
        try:
            self.Winv = inverse(self.W, self.zero, self.one)
        except ZeroDivisionError:
            raise InvalidInput("alpha does not generate a normal basis") from None
        self.conj = [self.W[0][i] for i in range(n)]

    def decompose(self, c: RatFunc) -> list[RatFunc]:
        """``gamma`` in K^sigma with ``c = sum gamma_i phi^i(alpha)``."""
        if not c:
            return [self.zero] * self.n
        v = [c]
        for _ in range(self.n - 1):
            v.append(self.sigma(v[-1]))
        return matvec(self.Winv, v, self.zero)

    def compose(self, gamma) -> RatFunc:
        acc = self.zero
        for g, a in zip(gamma, self.conj):
            if g:
                acc = acc + g * a
        return acc

    @property
    def dim(self) -> int:
        return self.n * self.n

    def coords(self, u: AlgElem) -> list[RatFunc]:
        out = []
        for a in u.c:
            out.extend(self.decompose(a))
        return out

    def element(self, v) -> AlgElem:
        n = self.n
        return AlgElem(self.A, [self.compose(v[j * n:(j + 1) * n]) for j in range(n)])

    @functools.cached_property
    def basis(self) -> list[AlgElem]:
        n = self.n
        out = []
        for j in range(n):
            for i in range(n):
                c = [self.zero] * n
                c[j] = self.conj[i]
                out.append(AlgElem(self.A, c))
        return out

    def map_matrix(self, f) -> list[list[RatFunc]]:
        """Matrix (rows = output coordinates) of a K^sigma-linear map ``A -> A``."""
        cols = [self.coords(f(b)) for b in self.basis]
        return [list(r) for r in zip(*cols)]

    def span_basis(self, elems) -> list[AlgElem]:
        rows = [self.coords(e) for e in elems]
        R, piv = rref(rows, self.zero)
        return [self.element(r) for r in R[:len(piv)]]

    def fixed_dim(self, elems) -> int:
        return rank([self.coords(e) for e in elems], self.zero)


def k_rank(A: CyclicAlgebra, elems) -> int:
    """Rank over K of the coefficient vectors (left K-span)."""
    zero = RatFunc.const(A.F, 0)
    return rank([list(e.c) for e in elems], zero)


def left_ideal_k_dim(A: CyclicAlgebra, z: AlgElem) -> int:
    """``dim_K (A z)``; the K^sigma-dimension is ``n`` times this."""
    return k_rank(A, [A.x(i) * z for i in range(A.n)])


def solve_left(fb: FixedBasis, w: AlgElem, target: AlgElem) -> AlgElem | None:
    """Some ``y`` with ``y * w = target``."""
    M = fb.map_matrix(lambda b: b * w)
    v = solve(M, fb.coords(target), fb.zero)
    return None if v is None else fb.element(v)


def alg_inverse(fb: FixedBasis, u: AlgElem) -> AlgElem:
    y = solve_left(fb, u, fb.A.one())
    if y is None:
        raise InvalidInput("element is not invertible")
    return y


def idempotent_from_zero_divisor(A: CyclicAlgebra, z: AlgElem, m: int | None = None,
                                 fb: FixedBasis | None = None) -> tuple[AlgElem, bool | None]:
    """Idempotent ``e`` with ``A e = A z``; the flag reports primitivity when ``m`` is given."""
    fb = fb or FixedBasis(A)
    if not z:
        raise InvalidInput("zero element generates no proper ideal")
    kd = left_ideal_k_dim(A, z)
    if kd == A.n:
        raise InvalidInput("element is invertible")
    L = fb.span_basis([b * z for b in fb.basis])
    N = len(L)
    prods = [[fb.coords(lp * ll) for ll in L] for lp in L]
    rows, rhs = [], []
    for p, lp in enumerate(L):
        target = fb.coords(lp)
        for r in range(fb.dim):
            rows.append([prods[p][l][r] for l in range(N)])
            rhs.append(target[r])
    c = solve(rows, rhs, fb.zero)
    if c is None:
        raise InvariantBreach("left ideal has no right identity")
    e = A.zero()
    for cl, ll in zip(c, L):
        if cl:
            e = e + ll.left_scale(cl)
    if e * e != e or z * e != z:
        raise InvariantBreach("idempotent construction failed")
    primitive = None if m is None else left_ideal_k_dim(A, e) == m
    return e, primitive


@dataclass
class MatrixUnits:
    """A supplied presentation ``A = M_k(D)``: elements ``E[i][j]`` with
    ``E_ij E_kl = [j == k] E_il`` and ``sum E_ii = 1``."""

    A: CyclicAlgebra
    E: list[list[AlgElem]]

    @property
    def k(self) -> int:
        return len(self.E)

    def verify(self) -> None:
        A, k = self.A, self.k
        total = A.zero()
        for i in range(k):
            total = total + self.E[i][i]
            for j in range(k):
                for l in range(k):
                    for r in range(k):
                        expect = self.E[i][r] if j == l else A.zero()
                        if self.E[i][j] * self.E[l][r] != expect:
                            raise InvalidInput(f"matrix unit relation fails at {(i, j, l, r)}")
        if total != A.one():
            raise InvalidInput("diagonal matrix units do not sum to 1")


def matrix_units_from_idempotent(A: CyclicAlgebra, f: AlgElem, fb: FixedBasis | None = None) -> MatrixUnits:
    """Complete a primitive idempotent ``f`` to a full system of matrix units."""
    fb = fb or FixedBasis(A)
    one = A.one()
    w = [f]
    wp = [f]
    rest = one - f
    while rest:
        cand = None
        for b in fb.basis:
            c = rest * b * f
            if c:
                cand = c
                break
        if cand is None:
            raise InvariantBreach("no element in rest*A*f")
        y = solve_left(fb, cand, f)
        if y is None:
            raise InvalidInput("idempotent is not primitive")
        cp = f * y * rest
        if cp * cand != f:
            raise InvariantBreach("matrix unit normalisation failed")
        w.append(cand)
        wp.append(cp)
        rest = rest - cand * cp
        if len(w) > A.n:
            raise InvalidInput("idempotent is not primitive")
    E = [[wi * wj for wj in wp] for wi in w]
    units = MatrixUnits(A, E)
    units.verify()
    return units


class MatRep:
    """``A = M_n(K^sigma)`` from ``mu`` with ``N(mu) = lambda``.

    ``A`` acts on ``K`` by ``sum u_i x^i : m -> sum u_i N_i(mu) phi^i(m)``; matrices
    are taken in the normal basis ``phi^j(alpha)``.
    """

    def __init__(self, A: CyclicAlgebra, mu: RatFunc, fb: FixedBasis | None = None):
        if norms(A.sigma, mu, A.n + 1)[A.n] != A.lam:
            raise InvalidInput("mu does not have norm lambda")
        self.A = A
        self.mu = mu
        self.fb = fb or FixedBasis(A)
        self.Nmu = norms(A.sigma, mu, A.n)

    def act(self, u: AlgElem, m: RatFunc) -> RatFunc:
        acc = self.fb.zero
        x = m
        for i, (ui, ni) in enumerate(zip(u.c, self.Nmu)):
            if ui:
                acc = acc + ui * ni * x
            if i + 1 < self.A.n:
                x = self.A.sigma(x)
        return acc

    def __call__(self, u: AlgElem) -> list[list[RatFunc]]:
        cols = [self.fb.decompose(self.act(u, a)) for a in self.fb.conj]
        return [list(r) for r in zip(*cols)]

    def inverse(self, T) -> AlgElem:
        fb = self.fb
        n = self.A.n
        images = [fb.compose([T[r][j] for r in range(n)]) for j in range(n)]
        w = matvec(fb.Winv, images, fb.zero)
        return AlgElem(self.A, [wi / ni for wi, ni in zip(w, self.Nmu)])

    def matrix_units(self) -> MatrixUnits:
        n = self.A.n
        zero, one = self.fb.zero, self.fb.one
        E = []
        for i in range(n):
            row = []
            for j in range(n):
                T = [[one if (r, c) == (i, j) else zero for c in range(n)] for r in range(n)]
                row.append(self.inverse(T))
            E.append(row)
        return MatrixUnits(self.A, E)


def split_iso_from_norm_solution(A: CyclicAlgebra, mu: RatFunc) -> MatRep:
    return MatRep(A, mu)


def lemma_beta(rep: MatRep, e: AlgElem) -> RatFunc:
    """``beta`` with ``N(beta) = lambda`` and ``e`` in the maximal left ideal ``A (x - beta)``."""
    A = rep.A
    if e == A.one():
        raise InvalidInput("e = 1 lies in no proper left ideal")
    if not e:
        return rep.mu
    fb = rep.fb
    ker = kernel(rep(e), A.n, fb.zero, fb.one)
    if not ker:
        raise InvalidInput("e is invertible")
    v = fb.compose(ker[0])
    beta = rep.mu * A.sigma(v) / v
    if norms(A.sigma, beta, A.n + 1)[A.n] != A.lam:
        raise InvariantBreach("beta has the wrong norm")
    if e.to_skew().eval_right(beta):
        raise InvariantBreach("e is not in A(x - beta)")
    return beta


@dataclass
class IdempotentSystem:
    e0: AlgElem
    m: int
    count: int

    @property
    def members(self) -> list[AlgElem]:
        return [self.e0.sigma(self.m * i) for i in range(self.count)]

    def verify(self) -> None:
        es = self.members
        A = self.e0.A
        total = A.zero()
        for i, ei in enumerate(es):
            total = total + ei
            for j, ej in enumerate(es):
                expect = ei if i == j else A.zero()
                if ei * ej != expect:
                    raise InvariantBreach(f"idempotents {i}, {j} are not orthogonal")
            if left_ideal_k_dim(A, ei) != self.m:
                raise InvariantBreach(f"idempotent {i} is not primitive")
        if total != A.one():
            raise InvariantBreach("idempotents do not sum to 1")
        if self.e0.sigma(self.m * self.count) != self.e0:
            raise InvariantBreach("orbit does not close")


def orthogonal_idempotent_system(A: CyclicAlgebra, units: MatrixUnits, m: int,
                                 fb: FixedBasis | None = None, max_tries: int = 64) -> IdempotentSystem:
    """Primitive ``e0`` whose ``sigma^m``-orbit is a complete orthogonal system."""
    n = A.n
    if m < 1 or n % m:
        raise InvalidInput("m must divide n")
    k = n // m
    if units.k != k:
        raise InvalidInput(f"presentation has size {units.k}, expected {k}")
    fb = fb or FixedBasis(A)
    E = units.E
    s = E[k - 1][0].left_scale(A.lam)
    for i in range(k - 1):
        s = s + E[i][i + 1]
    xm = A.x(m)
    M = fb.map_matrix(lambda h: xm * h - h * s)
    ker = kernel(M, fb.dim, fb.zero, fb.one)
    if not ker:
        raise InvalidInput("x^m is not conjugate to the companion matrix")
    hs = [fb.element(v) for v in ker]
    for h in _combinations(hs, max_tries):
        if left_ideal_k_dim(A, h) == n:
            hinv = alg_inverse(fb, h)
            sysm = IdempotentSystem(h * E[0][0] * hinv, m, k)
            sysm.verify()
            return sysm
    raise InvariantBreach("no invertible conjugating element found")


def _combinations(hs, limit):
    yield from hs
    F = hs[0].A.F
    count = 0
    for coeffs in itertools.product(range(F.q), repeat=len(hs)):
        if count >= limit:
            return
        if sum(1 for c in coeffs if c) < 2:
            continue
        count += 1
        acc = hs[0].A.zero()
        for c, h in zip(coeffs, hs):
            if c:
                acc = acc + h.left_scale(RatFunc.const(F, c))
        yield acc


def split_idempotent_system(A: CyclicAlgebra, mu: RatFunc, rep: MatRep | None = None) -> IdempotentSystem:
    """Split case ``m = 1`` done inside ``M_n(K^sigma)``.

    ``X H = H S`` for the companion matrix ``S`` of ``y^n - lambda`` forces the
    columns ``h_{j-1} = X h_j``; any cyclic vector ``h_{n-1}`` gives an invertible ``H``.
    """
    rep = rep or MatRep(A, mu)
    n = A.n
    zero, one = rep.fb.zero, rep.fb.one
    X = rep(A.x())
    for v in _cyclic_candidates(n, zero, one):
        cols = [v]
        for _ in range(n - 1):
            cols.append(matvec(X, cols[-1], zero))
        cols.reverse()
        H = [list(r) for r in zip(*cols)]
        try:
            Hinv = inverse(H, zero, one)
        except ZeroDivisionError:
            continue
        P = [[H[r][0] * Hinv[0][c] for c in range(n)] for r in range(n)]
        sysm = IdempotentSystem(rep.inverse(P), 1, n)
        sysm.verify()
        return sysm
    raise InvariantBreach("no cyclic vector found")


def _cyclic_candidates(n, zero, one):
    for i in range(n):
        yield [one if r == i else zero for r in range(n)]
    for mask in itertools.product((0, 1), repeat=n):
        if sum(mask) > 1:
            yield [one if b else zero for b in mask]


def cyclic_as_symbol(A: CyclicAlgebra) -> SymbolAlgebra:
    """For ``sigma(t) = zeta t``: ``A = (T, lambda; zeta^{-1})`` over ``F_q(T)``, ``T = t^n``."""
    sig = A.sigma
    a, b, c, d = sig.m
    if sig.frob or b or c or d != 1:
        raise InvalidInput("only sigma(t) = zeta*t is supported")
    F, n = A.F, A.n

    def contract(p):
        if any(ci for i, ci in enumerate(p.c) if i % n):
            raise InvalidInput("lambda is not a function of t^n")
        return type(p)(F, p.c[::n])

    lam = RatFunc(contract(A.lam.num), contract(A.lam.den))
    return SymbolAlgebra(n, F.inv(a), RatFunc.t(F), lam)


def identity_units(A: CyclicAlgebra) -> MatrixUnits:
    """Trivial presentation ``A = M_1(A)`` (for division algebras)."""
    return MatrixUnits(A, [[A.one()]])


__all__ = [
    "FixedBasis", "MatRep", "MatrixUnits", "IdempotentSystem", "alg_inverse", "cyclic_as_symbol",
    "idempotent_from_zero_divisor", "is_normal", "k_rank", "left_ideal_k_dim",
    "lemma_beta", "matrix_units_from_idempotent", "normal_element", "orthogonal_idempotent_system",
    "solve_left", "split_idempotent_system", "split_iso_from_norm_solution", "identity_units",
]
