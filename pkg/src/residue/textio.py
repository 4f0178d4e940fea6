"""Text syntax for forms and classes, and canonical JSON output.

    2-form   EXPR ds^dt            (also dt^ds, with the opposite sign)
    1-form   EXPR ds + EXPR dt
    class    [EXPR ds^dt / NAME^m]  or  [EXPR ds^dt / (EXPR)^m]

EXPR follows the expression grammar, with ``/`` allowed for 2-form and
1-form coefficients.  Class numerators must be polynomials.
"""

import json
import re

from .algebra.multipoly import MultiPoly
from .algebra.parser import parse_expression, parse_rational
from .algebra.ratfunc import RationalFunction
from .errors import ParseError
from .forms import DiffForm1, DiffForm2, GeneralizedFraction

_MARKER = re.compile(r"(?<![\w])d([st])(?![\w])(?:\s*\^\s*d([st])(?![\w]))?")
_CLASS_TAIL = re.compile(r"\s*/\s*(?:([^\W\d]\w*)|(\(.*\)))\s*(?:\^\s*(\d+))?\s*$", re.S)


def _byte_offset(text, index):
    return len(text[:index].encode("utf-8"))


def _reraise(exc, text, start):
    offset = (exc.offset or 0) + _byte_offset(text, start)
    raise ParseError(exc.message, offset) from None


def _coefficient(text, start, end, rational=True):
    piece = text[start:end]
    stripped = piece.strip()
    lead = start + (len(piece) - len(piece.lstrip()))
    if stripped.endswith("*"):
        stripped = stripped[:-1].rstrip()
    if stripped.startswith("+"):
        rest = stripped[1:]
        lead += 1 + (len(rest) - len(rest.lstrip()))
        stripped = rest.strip()
    one = MultiPoly.constant(1)
    if not stripped:
        return RationalFunction(one, reduce=False)
    if stripped == "-":
        return RationalFunction(-one, reduce=False)
    try:
        if rational:
            return parse_rational(stripped)
        return RationalFunction(parse_expression(stripped), reduce=False)
    except ParseError as exc:
        _reraise(exc, text, lead)


def _split_terms(text, rational=True):
    """``[(coefficient, (first, second or None)), ...]`` for each marker."""
    markers = list(_MARKER.finditer(text))
    if not markers:
        raise ParseError("expected ds, dt or ds^dt", _byte_offset(text, len(text)))
    terms = []
    prev = 0
    for m in markers:
        coeff = _coefficient(text, prev, m.start(), rational)
        terms.append((coeff, (m.group(1), m.group(2)), m.start()))
        prev = m.end()
    if text[prev:].strip():
        offset = prev + (len(text[prev:]) - len(text[prev:].lstrip()))
        raise ParseError("unexpected text after the last differential", _byte_offset(text, offset))
    kinds = {second is not None for _, (_, second), _ in terms}
    if len(kinds) > 1:
        raise ParseError("cannot mix 1-form and 2-form terms", _byte_offset(text, terms[-1][2]))
    return terms


def parse_form2(text, rational=True):
    terms = _split_terms(text, rational)
    total = RationalFunction(MultiPoly.constant(0), reduce=False)
    for coeff, (a, b), pos in terms:
        if b is None:
            raise ParseError("expected a 2-form (ds^dt)", _byte_offset(text, pos))
        sign = 0 if a == b else (1 if a == "s" else -1)
        total = total + coeff * sign
    return DiffForm2(total)


def parse_form1(text):
    terms = _split_terms(text)
    zero = RationalFunction(MultiPoly.constant(0), reduce=False)
    cs = {"s": zero, "t": zero}
    for coeff, (a, b), pos in terms:
        if b is not None:
            raise ParseError("expected a 1-form (ds, dt)", _byte_offset(text, pos))
        cs[a] = cs[a] + coeff
    return DiffForm1(cs["s"], cs["t"])


def parse_class(text, curves=None):
    """Parse ``[EXPR ds^dt / NAME^m]`` into a :class:`GeneralizedFraction`."""
    curves = curves or {}
    body = text.strip()
    lead = len(text) - len(text.lstrip())
    if not body.startswith("[") or not body.endswith("]"):
        raise ParseError("a class must be enclosed in [ ]", _byte_offset(text, lead))
    inner = body[1:-1]
    base = lead + 1
    markers = list(_MARKER.finditer(inner))
    wedge = [m for m in markers if m.group(2)]
    if not wedge:
        raise ParseError("class numerator needs ds^dt", _byte_offset(text, base))
    cut = wedge[-1].end()
    tail = _CLASS_TAIL.match(inner, cut)
    if tail is None:
        raise ParseError("expected '/ NAME^m' after ds^dt", _byte_offset(text, base + cut))
    try:
        num = parse_form2(inner[:cut], rational=False).coeff
    except ParseError as exc:
        _reraise(exc, text, base)
    name, paren, power = tail.group(1), tail.group(2), tail.group(3)
    if name is not None:
        if name not in curves:
            raise ParseError(f"unknown curve {name!r}", _byte_offset(text, base + tail.start(1)))
        f = curves[name]
    else:
        try:
            f = parse_expression(paren)
        except ParseError as exc:
            _reraise(exc, text, base + tail.start(2))
        name = None
    m = int(power) if power is not None else 1
    if m < 1:
        raise ParseError("class power must be positive", _byte_offset(text, base + tail.start(3)))
    return GeneralizedFraction(num.num * (1 / num.den.constant_value()), f, m, name)


def parse_form(text, curves=None):
    """Dispatch on syntax: class, 2-form or 1-form."""
    if text.strip().startswith("["):
        return parse_class(text, curves)
    terms = _split_terms(text)
    if terms[0][1][1] is not None:
        return parse_form2(text)
    return parse_form1(text)


def parse_point(text):
    """``origin`` or ``a,b`` with rational literals."""
    from fractions import Fraction

    text = text.strip()
    if text == "origin":
        return (Fraction(0), Fraction(0))
    parts = text.split(",")
    if len(parts) != 2:
        raise ParseError("a point is 'origin' or 'a,b'", 0)
    out = []
    pos = 0
    for part in parts:
        try:
            p = parse_expression(part, ("s", "t"))
        except ParseError as exc:
            _reraise(exc, text, pos)
        if not p.is_constant():
            raise ParseError("point coordinates must be numbers", _byte_offset(text, pos))
        out.append(Fraction(p.constant_value()))
        pos += len(part) + 1
    return tuple(out)


def dumps(obj):
    """Canonical JSON: sorted keys, exact strings, stable across runs."""
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=2)
