"""JSON descriptors for algebras and codes."""

from __future__ import annotations

from .codes import (ConstaCode, constacyclic_rs_code, embed_construct, left_ideal_code,
                    norm_case_code)
from .csa import (FixedBasis, MatRep, idempotent_from_zero_divisor, matrix_units_from_idempotent,
                  orthogonal_idempotent_system, split_idempotent_system)
from .errors import InvalidInput, InvariantBreach
from .fields import Field, ff_make
from .ore import AlgElem, CyclicAlgebra, FieldAut, SkewPoly
from .ratfunc import RatFunc


def field_from_q(q) -> Field:
    if not isinstance(q, int) or q < 2:
        raise InvalidInput(f"q must be a prime power, got {q!r}")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise InvalidInput(f"q={q} is not a prime power")
    return ff_make(p, e)


def scalar_to_json(F: Field, x: int):
    return x if F.e == 1 else F.format(x)


def scalar_from_json(F: Field, v) -> int:
    if isinstance(v, bool):
        raise InvalidInput("field element expected")
    if isinstance(v, int):
        return F.from_int(v)
    if isinstance(v, str):
        return F.parse(v)
    raise InvalidInput(f"bad field element {v!r}")


def require(d: dict, *keys):
    if not isinstance(d, dict):
        raise InvalidInput("JSON object expected")
    missing = [k for k in keys if k not in d]
    if missing:
        raise InvalidInput(f"missing field(s): {', '.join(missing)}")


def sigma_to_json(sigma: FieldAut) -> dict:
    a, b, c, d = sigma.m
    F = sigma.F
    return {"frob": sigma.frob, "moebius": [[scalar_to_json(F, a), scalar_to_json(F, b)],
                                            [scalar_to_json(F, c), scalar_to_json(F, d)]]}


def sigma_from_json(F: Field, d: dict, n: int | None = None) -> FieldAut:
    frob = d.get("frob", 0)
    mat = d.get("moebius", [[1, 0], [0, 1]])
    try:
        (a, b), (c, e) = mat
    except (TypeError, ValueError):
        raise InvalidInput("moebius must be a 2x2 matrix") from None
    if not isinstance(frob, int):
        raise InvalidInput("frob must be an integer")
    m = tuple(scalar_from_json(F, x) for x in (a, b, c, e))
    return FieldAut(F, frob, m, order=n)


def algebra_to_json(A: CyclicAlgebra) -> dict:
    return {"q": A.F.q, "sigma": sigma_to_json(A.sigma), "n": A.n, "lambda": A.lam.format()}


def algebra_from_json(d: dict) -> CyclicAlgebra:
    require(d, "q", "sigma", "n", "lambda")
    F = field_from_q(d["q"])
    n = d["n"]
    if not isinstance(n, int) or n < 1:
        raise InvalidInput("n must be a positive integer")
    sigma = sigma_from_json(F, d["sigma"], n)
    lam = RatFunc.parse(F, d["lambda"])
    return CyclicAlgebra(sigma, n, lam)


def elem_from_json(A: CyclicAlgebra, s: str) -> AlgElem:
    if not isinstance(s, str):
        raise InvalidInput("algebra elements are skew polynomial strings")
    return A.from_skew(SkewPoly.parse(A.sigma, s))


def vector_from_json(A: CyclicAlgebra, v, length: int | None = None) -> list[RatFunc]:
    if not isinstance(v, list) or not all(isinstance(x, str) for x in v):
        raise InvalidInput("vectors are JSON lists of rational function strings")
    if length is not None and len(v) != length:
        raise InvalidInput(f"expected {length} entries, got {len(v)}")
    return [RatFunc.parse(A.F, x) for x in v]


def vector_to_json(v) -> list[str]:
    return [x.format() for x in v]


def build_code(A: CyclicAlgebra, construction: dict, delta: int) -> ConstaCode:
    """Run the pipeline named by ``construction['type']``."""
    kind = construction.get("type")
    if kind == "norm":
        return norm_case_code(A, delta)
    if kind == "split":
        require(construction, "mu")
        mu = RatFunc.parse(A.F, construction["mu"])
        rep = MatRep(A, mu)
        system = split_idempotent_system(A, mu, rep)
        return constacyclic_rs_code(A, system, delta)
    if kind == "zero-divisor":
        require(construction, "z", "m")
        z = elem_from_json(A, construction["z"])
        m = construction["m"]
        fb = FixedBasis(A)
        e, primitive = idempotent_from_zero_divisor(A, z, m, fb)
        if not primitive:
            raise InvalidInput("zero divisor does not yield a primitive idempotent of the stated index")
        units = matrix_units_from_idempotent(A, e, fb)
        system = orthogonal_idempotent_system(A, units, m, fb)
        return constacyclic_rs_code(A, system, delta, embed_construct(A))
    if kind == "ideal":
        require(construction, "z")
        z = elem_from_json(A, construction["z"])
        if not z:
            raise InvalidInput("ideal generator must be nonzero")
        return left_ideal_code(A, z)
    raise InvalidInput(f"unknown construction type {kind!r}")


def code_to_json(C: ConstaCode, construction: dict) -> dict:
    out = {"algebra": algebra_to_json(C.A), "construction": construction, "delta": C.delta,
           "m": C.m, "dim": C.dim, "generator": C.g.format()}
    if C.theta is not None:
        tr = {"points": vector_to_json(C.points)}
        if C.embed is not None:
            M = C.embed.M
            tr["field"] = M.q
            tr["modulus"] = repr(M)
            tr["phi"] = sigma_to_json(C.embed.phi)
            tr["root"] = C.embed.root.format()
        tr["twist"] = C.theta.a.format()
        tr["target_lambda"] = C.B.lam.format()
        out["transport"] = tr
    return out


def code_from_json(d: dict) -> ConstaCode:
    """Rebuild a code and check it against the recorded generator."""
    require(d, "algebra", "construction", "delta", "generator")
    A = algebra_from_json(d["algebra"])
    C = build_code(A, d["construction"], d["delta"])
    g = SkewPoly.parse(A.sigma, d["generator"])
    if g != C.g:
        raise InvariantBreach("recorded generator does not match the rebuilt code")
    return C
