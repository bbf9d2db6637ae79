"""Dense Gaussian elimination over any exact field whose elements support
``+ - * /`` and truthiness (RatFunc, FieldElem, ...)."""

from __future__ import annotations


def _size(x) -> int:
    h = getattr(x, "degree_height", None)
    return h() if h else 0


def rref(rows, zero):
    """Reduced row echelon form and pivot columns; input is not modified."""
    M = [list(r) for r in rows]
    if not M:
        return M, []
    ncols = len(M[0])
    pivots = []
    r = 0
    for col in range(ncols):
        if r == len(M):
            break
        best = None
        for i in range(r, len(M)):
            if M[i][col]:
                if best is None or _size(M[i][col]) < _size(M[best][col]):
                    best = i
        if best is None:
            continue
        M[r], M[best] = M[best], M[r]
        inv = 1 / M[r][col]
        M[r] = [x * inv if x else x for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][col]:
                f = M[i][col]
                pr = M[r]
                M[i] = [a - f * b if b else a for a, b in zip(M[i], pr)]
        pivots.append(col)
        r += 1
    return M, pivots


def rank(rows, zero) -> int:
    return len(rref(rows, zero)[1])


def kernel(rows, ncols: int, zero, one) -> list[list]:
    """Basis of ``{v : M v = 0}``."""
    if not rows:
        return [[one if i == j else zero for i in range(ncols)] for j in range(ncols)]
    R, piv = rref(rows, zero)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for fcol in free:
        v = [zero] * ncols
        v[fcol] = one
        for i, pcol in enumerate(piv):
            if R[i][fcol]:
                v[pcol] = -R[i][fcol]
        basis.append(v)
    return basis


def solve(rows, rhs, zero):
    """One solution of ``M v = rhs`` or ``None``."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, piv = rref(aug, zero)
    if ncols in piv:
        return None
    v = [zero] * ncols
    for i, pcol in enumerate(piv):
        v[pcol] = R[i][ncols]
    return v


def inverse(rows, zero, one):
    n = len(rows)
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(rows)]
    R, piv = rref(aug, zero)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in R[:n]]


def matmul(A, B, zero):
    m = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [zero] * m
        for a, brow in zip(row, B):
            if a:
                acc = [x + a * b if b else x for x, b in zip(acc, brow)]
        out.append(acc)
    return out


def matvec(A, v, zero):
    out = []
    for row in A:
        acc = zero
        for a, b in zip(row, v):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


def transpose(A):
    return [list(c) for c in zip(*A)]


def identity(n: int, zero, one):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]
