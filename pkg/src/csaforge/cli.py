"""Command line interface: ``csaforge <subcommand> [options]``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys

from .codes import decode, encode, min_distance_exact, simulate
from .csa import cyclic_as_symbol
from .errors import CsaError, InvalidInput, InvariantBreach
from .forge import InvariantSpec, build_quaternion, build_symbol
from .local import (InvariantProfile, SymbolAlgebra, format_hasse, invariant_profile, parse_hasse,
                    quaternion_ramification)
from .ore import AlgElem
from .ratfunc import Place, RatFunc
from .serial import (algebra_from_json, build_code, code_from_json, code_to_json, field_from_q,
                     require, scalar_from_json, scalar_to_json, vector_from_json, vector_to_json)

CSV_FIELDS = ["trial", "seed", "n", "delta", "errors_injected", "decoded_ok"]


def _load(source: str | None):
    """Inline JSON or a path to a JSON file."""
    if source is None:
        raise InvalidInput("--in is required")
    text = source if source.lstrip().startswith(("{", "[")) else _read(source)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"invalid JSON: {exc}") from None


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _seed(args, job=None) -> int:
    if args.seed is not None:
        return args.seed
    if job and "seed" in job:
        if not isinstance(job["seed"], int):
            raise InvalidInput("seed must be an integer")
        return job["seed"]
    return 0


def _format_ram(places) -> str:
    names = ["inf" if p.is_infinite else p.poly.format() for p in sorted(places, key=Place.sort_key)]
    return "{" + ", ".join(names) + "}"


def _parse_ram(F, text: str) -> set[Place]:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise InvalidInput(f"malformed ramification set {text!r}")
    body = text[1:-1].strip()
    out = set()
    for item in filter(None, (s.strip() for s in body.split(","))):
        out.add(Place.parse(F, item if item == "inf" or item.startswith("finite:") else "finite:" + item))
    return out


# -- construction ---------------------------------------------------------------

def cmd_build_quaternion(args) -> int:
    if args.q is None:
        raise InvalidInput("--q is required")
    F = field_from_q(args.q)
    items = [s for s in (args.places or "").split(",") if s.strip()]
    S = [Place.parse(F, s) for s in items]
    if len(set(S)) != len(S):
        raise InvalidInput("places must be distinct")
    seed = _seed(args)
    a, b = build_quaternion(S, F, random.Random(seed))
    ram = quaternion_ramification(RatFunc(a), RatFunc(b))
    if ram != set(S):
        raise InvariantBreach(f"ramification {_format_ram(ram)} differs from the request")
    lines = [f"# build-quaternion seed={seed}", f"q = {F.q}", f"a = {a.format()}",
             f"b = {b.format()}", f"ram = {_format_ram(ram)}"]
    _emit(args, "\n".join(lines))
    return 0


def _spec_from_job(F, n: int, job: dict) -> InvariantSpec:
    finite = []
    for item in job.get("invariants", []):
        require(item, "place", "inv")
        p = Place.parse(F, item["place"])
        if p.is_infinite:
            raise InvalidInput("use the 'infinity' field for the place at infinity")
        finite.append((p.poly, parse_hasse(str(item["inv"]))))
    return InvariantSpec(n, tuple(finite), parse_hasse(str(job.get("infinity", "0"))))


def cmd_build_symbol(args) -> int:
    job = _load(args.input)
    q = args.q if args.q is not None else job.get("q")
    n = args.n if args.n is not None else job.get("n")
    if q is None or n is None:
        raise InvalidInput("q and n are required")
    F = field_from_q(q)
    spec = _spec_from_job(F, n, job)
    seed = _seed(args, job)
    A = build_symbol(spec, F, random.Random(seed))
    prof = invariant_profile(A)
    if prof != spec.profile():
        raise InvariantBreach("constructed profile differs from the request")
    out = dict(job)
    out.update({"q": F.q, "n": n, "seed": seed, "a": A.a.format(), "b": A.b.format(),
                "epsilon": scalar_to_json(F, A.eps), "profile": prof.lines()})
    _emit(args, _dump(out))
    return 0


# -- verification -----------------------------------------------------------------

def _parse_kv(text: str) -> dict:
    out = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise InvalidInput(f"malformed line {line!r}")
        k, v = line.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _verify_quaternion(F, a: RatFunc, b: RatFunc, claimed) -> str:
    ram = quaternion_ramification(a, b)
    if claimed is not None and claimed != ram:
        raise InvariantBreach(f"claimed ramification differs from computed {_format_ram(ram)}")
    return f"ram = {_format_ram(ram)}"


def _verify_profile(F, A: SymbolAlgebra, claimed_lines) -> str:
    if claimed_lines is not None:
        claimed = InvariantProfile.parse(F, "\n".join(claimed_lines))
        if claimed.total():
            raise InvariantBreach(f"reciprocity violated: claimed invariants sum to {format_hasse(claimed.total())}")
    prof = invariant_profile(A)
    if claimed_lines is not None and claimed != prof:
        raise InvariantBreach("claimed profile differs from the computed one")
    return prof.format() or "split"


def cmd_verify(args) -> int:
    src = args.input
    if src is None:
        raise InvalidInput("--in is required")
    raw = src if src.lstrip().startswith("{") else _read(src)
    if raw.lstrip().startswith("{"):
        d = _load(raw)
    else:
        d = _parse_kv(raw)
        require(d, "q", "a", "b")
        F = field_from_q(int(d["q"]))
        claimed = _parse_ram(F, d["ram"]) if "ram" in d else None
        _emit(args, _verify_quaternion(F, RatFunc.parse(F, d["a"]), RatFunc.parse(F, d["b"]), claimed))
        return 0
    if "sigma" in d:
        A = cyclic_as_symbol(algebra_from_json(d))
        _emit(args, _verify_profile(A.F, A, d.get("profile")))
        return 0
    require(d, "q", "a", "b")
    F = field_from_q(d["q"])
    a, b = RatFunc.parse(F, d["a"]), RatFunc.parse(F, d["b"])
    if "epsilon" in d or d.get("n", 2) != 2:
        require(d, "n", "epsilon")
        A = SymbolAlgebra(d["n"], scalar_from_json(F, d["epsilon"]), a, b)
        _emit(args, _verify_profile(F, A, d.get("profile")))
    else:
        claimed = None
        if "ram" in d:
            claimed = {Place.parse(F, s) for s in d["ram"]}
        _emit(args, _verify_quaternion(F, a, b, claimed))
    return 0


# -- codes --------------------------------------------------------------------------

def cmd_code_new(args) -> int:
    job = _load(args.input)
    if "algebra" in job:
        alg, construction = job["algebra"], job.get("construction", {"type": "norm"})
        delta = job.get("delta")
    else:
        alg, construction, delta = job, job.get("construction", {"type": "norm"}), job.get("delta")
        alg = {k: v for k, v in alg.items() if k not in ("construction", "delta")}
    if args.delta is not None:
        delta = args.delta
    if construction.get("type") == "ideal":
        delta = 1
    if not isinstance(delta, int):
        raise InvalidInput("designed distance (--delta) is required")
    A = algebra_from_json(alg)
    C = build_code(A, construction, delta)
    _emit(args, _dump(code_to_json(C, construction)))
    return 0


def _vector_arg(value: str | None, name: str):
    if value is None:
        raise InvalidInput(f"--{name} is required")
    return _load(value)


def cmd_encode(args) -> int:
    C = code_from_json(_load(args.input))
    msg = vector_from_json(C.A, _vector_arg(args.msg, "msg"), C.dim)
    word = encode(C, msg)
    _emit(args, _dump({"codeword": vector_to_json(word.c)}))
    return 0


def cmd_decode(args) -> int:
    C = code_from_json(_load(args.input))
    recv = AlgElem(C.A, vector_from_json(C.A, _vector_arg(args.word, "word"), C.n))
    word = decode(C, recv)
    quo, rem = word.to_skew().divmod_right(C.g)
    if rem:
        raise InvariantBreach("decoded word is not a codeword")
    zero = RatFunc.const(C.A.F, 0)
    msg = list(quo.c) + [zero] * (C.dim - len(quo.c))
    _emit(args, _dump({"codeword": vector_to_json(word.c), "message": vector_to_json(msg)}))
    return 0


def cmd_mindist(args) -> int:
    C = code_from_json(_load(args.input))
    _emit(args, str(min_distance_exact(C)))
    return 0


def cmd_simulate(args) -> int:
    C = code_from_json(_load(args.input))
    if args.trials < 0:
        raise InvalidInput("--trials must be non-negative")
    if args.errors is not None and not 0 <= args.errors <= C.n:
        raise InvalidInput(f"--errors must lie in [0, {C.n}]")
    rows = simulate(C, args.trials, _seed(args), args.errors)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    _emit(args, buf.getvalue())
    return 0


COMMANDS = {
    "build-quaternion": cmd_build_quaternion,
    "build-symbol": cmd_build_symbol,
    "verify": cmd_verify,
    "code-new": cmd_code_new,
    "encode": cmd_encode,
    "decode": cmd_decode,
    "mindist": cmd_mindist,
    "simulate": cmd_simulate,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, help="field size q = p^e")
    common.add_argument("--n", type=int, help="degree n")
    common.add_argument("--seed", type=int, help="seed for the single random generator")
    common.add_argument("--in", dest="input", help="input file or inline JSON")
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--threads", type=int, default=1, help="accepted for compatibility; work is single-threaded")
    p = argparse.ArgumentParser(prog="csaforge", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "build-quaternion":
            sp.add_argument("--places", default="", help="comma separated places, e.g. finite:t,inf")
        if name == "code-new":
            sp.add_argument("--delta", type=int)
        if name == "encode":
            sp.add_argument("--msg", help="message: JSON list or file")
        if name == "decode":
            sp.add_argument("--word", help="received word: JSON list or file")
        if name == "simulate":
            sp.add_argument("--trials", type=int, default=100)
            sp.add_argument("--errors", type=int)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.threads < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return 2
    try:
        return COMMANDS[args.command](args)
    except CsaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, TypeError, KeyError) as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
