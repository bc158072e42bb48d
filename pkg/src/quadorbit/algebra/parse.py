"""Text grammar for integer polynomials.

Accepted forms: integer coefficients, one variable letter (t by default, x
for maps), ^ for exponents, terms joined by + or -, whitespace ignored.
A leading minus may negate a parenthesized polynomial, e.g. -(7t^4+3).
Parse errors carry the offending position.
"""

from __future__ import annotations

import re

from .intpoly import IntPolynomial

_TERM = re.compile(
    r"(?P<sign>[+-])?"
    r"(?:(?P<coeff>\d+)(?:\*?(?P<var1>[a-zA-Z])(?:\^(?P<exp1>\d+))?)?"
    r"|(?P<var2>[a-zA-Z])(?:\^(?P<exp2>\d+))?)"
)


class PolynomialSyntaxError(ValueError):
    """Malformed polynomial text; .position is the 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def parse_poly(text: str, var: str = "t") -> IntPolynomial:
    """Parse text like '7t^4+3' or '-(7t^4+3)' into an IntPolynomial."""
    s = "".join(text.split())
    if not s:
        raise PolynomialSyntaxError("empty polynomial", 0)
    sign = 1
    if s[0] in "+-" and len(s) > 1 and s[1] == "(":
        if not s.endswith(")"):
            raise PolynomialSyntaxError("unbalanced parenthesis", len(s) - 1)
        sign = -1 if s[0] == "-" else 1
        s = s[2:-1]
        if not s:
            raise PolynomialSyntaxError("empty parenthesized polynomial", 2)
    elif s[0] == "(" and s.endswith(")"):
        s = s[1:-1]
        if not s:
            raise PolynomialSyntaxError("empty parenthesized polynomial", 1)

    coeffs: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None:
            raise PolynomialSyntaxError("expected a term", pos)
        if not first and m.group("sign") is None:
            raise PolynomialSyntaxError("missing +/- between terms", pos)
        term_sign = -1 if m.group("sign") == "-" else 1
        letter = m.group("var1") or m.group("var2")
        if letter is not None and letter != var:
            raise PolynomialSyntaxError(
                f"unexpected variable {letter!r} (expected {var!r})", m.start("var1" if m.group("var1") else "var2")
            )
        coeff = int(m.group("coeff")) if m.group("coeff") else 1
        if letter is None:
            exp = 0
        else:
            raw_exp = m.group("exp1") or m.group("exp2")
            exp = int(raw_exp) if raw_exp else 1
        coeffs[exp] = coeffs.get(exp, 0) + term_sign * coeff
        pos = m.end()
        first = False
    top = max(coeffs, default=0)
    return IntPolynomial(tuple(sign * coeffs.get(i, 0) for i in range(top + 1)))
