"""Shell-friendly exact literals: ``3/4``, ``1/2 + 3 s6``, ``1+s2``, ``-s3``.

``sD`` stands for the square root of the integer ``D``; a term may carry a
rational coefficient in front of it (``2s3``, ``1/2 s6``, ``3*s5``).  Terms
with two different radicands produce a biquadratic element.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algnum import AlgNum, Field, FieldMismatch, squarefree_decomposition

__all__ = ["parse_algnum", "LiteralError"]


class LiteralError(ValueError):
    pass


_TERM = re.compile(
    r"""^(?P<coef>\d+(?:/\d+)?)?\s*\*?\s*(?:s(?P<rad>\d+))?$""",
    re.VERBOSE,
)


def parse_algnum(text: str) -> AlgNum:
    src = text.strip()
    if not src:
        raise LiteralError("empty number literal")
    # split on +/- that are not part of a leading sign
    pieces = re.findall(r"[+-]?[^+-]+", src.replace(" ", ""))
    if "".join(pieces) != src.replace(" ", ""):
        raise LiteralError(f"malformed number literal {text!r}")
    terms: dict[int, Fraction] = {}
    for piece in pieces:
        neg = piece.startswith("-")
        body = piece.lstrip("+-")
        m = _TERM.match(body)
        if not body or m is None or (m.group("coef") is None and m.group("rad") is None):
            raise LiteralError(f"malformed term {piece!r} in {text!r}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        rad = 1
        if m.group("rad"):
            n = int(m.group("rad"))
            if n == 0:
                coef, rad = Fraction(0), 1
            else:
                k, rad = squarefree_decomposition(n)
                coef *= k
        terms[rad] = terms.get(rad, Fraction(0)) + (-coef if neg else coef)
    rads = sorted(r for r, c in terms.items() if r != 1 and c)
    base = terms.get(1, Fraction(0))
    if not rads:
        return AlgNum.rational(base)
    if len(rads) == 1:
        return AlgNum.quad(base, terms[rads[0]], rads[0])
    field = Field.quad(rads[0])
    try:
        for r in rads[1:]:
            field = field.compositum(Field.quad(r))
    except FieldMismatch:
        raise LiteralError(f"{text!r} needs more than two independent square roots") from None
    if field.kind != "biquad":
        raise LiteralError(f"{text!r} needs more than two independent square roots")
    total = AlgNum([base] + [0] * (field.dim - 1), field)
    for r in rads:
        total = total + AlgNum.quad(0, terms[r], r).lift(field)
    return total
