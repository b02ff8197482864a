"""Parsing of command-line symbols."""

import math
from fractions import Fraction
from typing import Optional, Tuple

from eigentope.core.errors import ParseError

SQRT5 = math.sqrt(5.0)

# exact values accepted wherever a symbol component is expected
NAMED_CONSTANTS = {
    "phi": (1.0 + SQRT5) / 2.0,
    "phi2": (3.0 - SQRT5) / 2.0,
    "phi2p": (3.0 + SQRT5) / 2.0,
    "c5": (3.0 + SQRT5) / 8.0,
    "c5s": (3.0 - SQRT5) / 8.0,
    "r2": 1.0 / math.sqrt(2.0),
    "inf": math.inf,
}

SYMBOL_KINDS = ("f", "e", "h", "rho")


def parse_scalar(token: str, position: int = 0) -> float:
    """A decimal, a rational ``a/b`` or a named constant (optionally negated)."""
    tok = token.strip().lower()
    sign = 1.0
    if tok.startswith("-") and tok[1:] in NAMED_CONSTANTS:
        sign, tok = -1.0, tok[1:]
    if tok in NAMED_CONSTANTS:
        return sign * NAMED_CONSTANTS[tok]
    try:
        if "/" in tok:
            return float(Fraction(tok))
        return float(tok)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(
            f"cannot read {token!r} as a number (decimal, a/b or one of "
            f"{', '.join(NAMED_CONSTANTS)})",
            position=position,
        ) from e


def parse_vector(text: str, offset: int = 0) -> Tuple[float, ...]:
    """Comma-separated scalars, optionally wrapped in brackets."""
    body = text.strip()
    if body.startswith(("[", "{", "(")) and body.endswith(("]", "}", ")")):
        body, offset = body[1:-1], offset + 1
    if not body:
        raise ParseError("empty symbol", position=offset)
    values = []
    pos = offset
    for part in body.split(","):
        values.append(parse_scalar(part, pos))
        pos += len(part) + 1
    return tuple(values)


def parse_symbol(text: str, default_kind: Optional[str] = None) -> Tuple[str, Tuple[float, ...]]:
    """Split ``f:4,3,3`` / ``e:0.5,0.25,0.25`` / ``h:..`` / ``rho:..`` into kind and values."""
    kind, sep, body = text.partition(":")
    if not sep:
        if default_kind is None:
            raise ParseError(
                f"symbol {text!r} needs a kind prefix ({', '.join(k + ':' for k in SYMBOL_KINDS)})",
                position=0,
            )
        return default_kind, parse_vector(text)
    kind = kind.strip().lower()
    if kind not in SYMBOL_KINDS:
        raise ParseError(f"unknown symbol kind {kind!r}", position=0)
    return kind, parse_vector(body, offset=len(kind) + 1)

