"""Line-oriented text formats shared by every module.

Polynomials print as ``2*t^3+t+1`` (highest degree first, ``+`` only);
coefficients that are themselves sums are parenthesised, e.g. ``(w+1)*t^2+w``.
Rational functions print as ``(num)/(den)``, or just ``num`` when the
denominator is 1.
"""

from __future__ import annotations

import re

from .errors import InvalidInput


def split_top(s: str, seps: str) -> list[tuple[str, str]]:
    """Split ``s`` at top-level separator characters, keeping the separator."""
    out = []
    depth = 0
    cur = []
    sign = "+"
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise InvalidInput(f"unbalanced parentheses in {s!r}")
        if depth == 0 and ch in seps:
            if cur:
                out.append((sign, "".join(cur)))
            elif out:
                raise InvalidInput(f"malformed expression {s!r}")
            sign = ch
            cur = []
            continue
        cur.append(ch)
    if depth:
        raise InvalidInput(f"unbalanced parentheses in {s!r}")
    out.append((sign, "".join(cur)))
    return out


def strip_parens(s: str) -> str:
    s = s.strip()
    while s.startswith("(") and s.endswith(")") and _matching(s) == len(s) - 1:
        s = s[1:-1].strip()
    return s


def _matching(s: str) -> int:
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                return i
    return -1


_MONO = re.compile(r"^(?P<var>[A-Za-z_]\w*)(\^(?P<exp>\d+))?$")


def parse_poly_terms(s: str, var: str) -> list[tuple[int, bool, str]]:
    """Parse a sum of ``coef*var^k`` terms.

    Returns ``(k, negative, coefficient_text)`` triples; the coefficient text is
    ``"1"`` for bare monomials and is left to the caller to interpret.
    """
    s = s.replace(" ", "")
    if not s:
        raise InvalidInput("empty polynomial")
    terms = []
    for sign, body in split_top(s, "+-"):
        if not body:
            raise InvalidInput(f"malformed polynomial {s!r}")
        neg = sign == "-"
        k = 0
        coef = body
        if "*" in _top_level(body):
            idx = _last_top_star(body)
            head, tail = body[:idx], body[idx + 1:]
            m = _MONO.match(tail)
            if not m:
                raise InvalidInput(f"malformed term {body!r}")
            if m.group("var") == var:
                k = int(m.group("exp") or 1)
                coef = head
        else:
            m = _MONO.match(body)
            if m and m.group("var") == var:
                k = int(m.group("exp") or 1)
                coef = "1"
        terms.append((k, neg, strip_parens(coef)))
    return terms


def _top_level(s: str) -> str:
    depth = 0
    out = []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0:
            out.append(ch)
    return "".join(out)


def _last_top_star(s: str) -> int:
    depth = 0
    for i in range(len(s) - 1, -1, -1):
        ch = s[i]
        if ch == ")":
            depth += 1
        elif ch == "(":
            depth -= 1
        elif ch == "*" and depth == 0:
            return i
    raise InvalidInput(f"malformed term {s!r}")


def format_terms(terms: list[tuple[int, str]], var: str) -> str:
    """Format ``(k, coefficient_text)`` pairs, highest degree first."""
    parts = []
    for k, c in sorted(terms, key=lambda kc: -kc[0]):
        if k == 0:
            parts.append(c if "+" not in c else f"({c})")
            continue
        mono = var if k == 1 else f"{var}^{k}"
        if c == "1":
            parts.append(mono)
        elif "+" in c or "/" in c:
            parts.append(f"({c})*{mono}")
        else:
            parts.append(f"{c}*{mono}")
    return "+".join(parts) if parts else "0"
