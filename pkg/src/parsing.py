"""
Command-line text syntax.

Field element: an integer residue for e = 1, or a bracketed coordinate vector
"[c0,c1,...]" for e > 1 (a bare integer is then read in the prime field).
Polynomial: comma-separated coefficients, lowest degree first ("1,0,1" is x^2+1).
Integer lists: "1,2,5" with "a-b" ranges allowed ("0-3,7").
"""

import re
from typing import List, Tuple

from .errors import ParseError
from .field import FiniteField
from .polynomial import Poly, PolynomialRing

_TOKEN = re.compile(r'\s*(\[[^\]]*\]|[^,\[\]]+)\s*(?:,|$)')


def _tokens(text: str) -> List[str]:
    text = text.strip()
    if not text:
        raise ParseError("empty value")
    tokens, pos = [], 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match or match.end() == pos:
            raise ParseError(f"cannot parse '{text}' near position {pos}")
        tokens.append(match.group(1).strip())
        pos = match.end()
    return tokens


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"'{text}' is not an integer") from None


def parse_element(field: FiniteField, text: str) -> int:
    text = text.strip()
    if text.startswith('['):
        if not text.endswith(']'):
            raise ParseError(f"unterminated element '{text}'")
        coords = [_int(c) for c in text[1:-1].split(',') if c.strip()]
        if len(coords) != field.e:
            raise ParseError(f"element '{text}' needs {field.e} coordinates")
        return field.element(coords)
    return field.from_int(_int(text))


def parse_poly(polys: PolynomialRing, text: str) -> Poly:
    """Coefficient list c0,c1,... into a stripped polynomial."""
    return polys.strip([parse_element(polys.field, tok) for tok in _tokens(text)])


def parse_int_list(text: str) -> List[int]:
    values: List[int] = []
    for part in text.split(','):
        part = part.strip()
        if not part:
            continue
        if re.fullmatch(r'-?\d+-\d+', part):
            lo, hi = part.rsplit('-', 1)
            values.extend(range(_int(lo), _int(hi) + 1))
        else:
            values.append(_int(part))
    return values


def parse_family(text: str) -> Tuple[int, int]:
    """'e0,e1' for x^e0 (x-1)^e1; both exponents positive."""
    values = parse_int_list(text)
    if len(values) != 2 or min(values) < 1:
        raise ParseError(f"family needs two positive exponents, got '{text}'")
    return values[0], values[1]


def parse_matrix(field: FiniteField, text: str) -> Tuple[int, int, int, int]:
    """'alpha,beta,gamma,delta' as field elements."""
    tokens = _tokens(text)
    if len(tokens) != 4:
        raise ParseError(f"matrix needs four entries, got '{text}'")
    a, b, c, d = (parse_element(field, t) for t in tokens)
    return a, b, c, d
