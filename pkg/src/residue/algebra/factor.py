"""Univariate factorization over Q and over a simple extension Q(theta).

Over Q the irreducible factors of each squarefree part come from sympy's
Zassenhaus implementation.  Over Q(theta) we use Trager's norm method on top
of that: shift until the norm is squarefree, factor the norm over Q, and pull
the factors back with gcds in Q(theta)[x].
"""

from fractions import Fraction
from math import lcm

import sympy

from .numberfield import QQ, AlgNumber, FieldExt
from .unipoly import UniPoly, gcd, interpolate, squarefree_decomposition

_X = sympy.Symbol("x")


def _as_rational_poly(p):
    cs = []
    for c in p.coeffs:
        if isinstance(c, AlgNumber):
            if not c.is_rational():
                raise ValueError("polynomial has irrational coefficients")
            c = c.coeffs[0]
        cs.append(Fraction(c))
    return UniPoly(cs)


def _irreducible_factors_sympy(p):
    """Monic irreducible factors of a squarefree rational polynomial."""
    den = lcm(*(c.denominator for c in p.coeffs))
    ints = [int(c * den) for c in reversed(p.coeffs)]
    poly = sympy.Poly.from_list(ints, _X, domain="ZZ")
    _, facs = poly.factor_list()
    out = []
    for fac, mult in facs:
        cs = [Fraction(int(c)) for c in reversed(fac.all_coeffs())]
        out.extend([UniPoly(cs).monic()] * mult)
    return out


def factor_rational(p):
    """Squarefree decomposition and factorization over Q.

    Returns ``(unit, [(factor, multiplicity), ...])`` with monic irreducible
    factors sorted by (degree, coefficients), such that
    ``unit * prod(factor**multiplicity) == p``.
    """
    p = _as_rational_poly(p)
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    unit = p.lc
    out = []
    for part, mult in squarefree_decomposition(p):
        if part.degree == 1:
            out.append((part, mult))
            continue
        for fac in _irreducible_factors_sympy(part):
            out.append((fac, mult))
    out.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs, fm[1]))
    return unit, out


squarefree_and_factor = factor_rational


def norm_poly(p, field):
    """``Norm_{K/Q}(p)`` as a rational polynomial, by interpolation."""
    n = p.degree * field.degree
    xs = [Fraction(j) for j in range(n + 1)]
    ys = [field.norm(field.convert(p(x))) for x in xs]
    return interpolate(xs, ys)


def _split_squarefree_ext(h, field):
    theta = field.gen
    k = 0
    for attempt in range(64):
        k = (attempt + 1) // 2 * (1 if attempt % 2 else -1)
        shifted = h.compose(UniPoly([-k * theta, 1]))
        norm = norm_poly(shifted, field)
        if gcd(norm, norm.derivative()).degree == 0:
            break
    else:  # pragma: no cover - a good shift always exists in char 0
        raise RuntimeError("no squarefree norm found")
    _, facs = factor_rational(norm)
    if len(facs) == 1:
        return [h]
    back = UniPoly([k * theta, 1])
    out = []
    for fac, _ in facs:
        lifted = UniPoly([field.convert(c) for c in fac.coeffs])
        g = gcd(shifted, lifted)
        if g.degree > 0:
            out.append(g.compose(back).monic())
    return out


def factor_over(p, field=QQ):
    """Factor ``p`` over ``field`` (QQ or a :class:`FieldExt`).

    Returns ``(unit, [(monic irreducible factor, multiplicity), ...])``.
    """
    if field == QQ or field.degree == 1:
        return factor_rational(p)
    p = UniPoly([field.convert(c) for c in p.coeffs])
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    unit = p.lc
    out = []
    for part, mult in squarefree_decomposition(p):
        if part.degree == 1:
            out.append((part, mult))
            continue
        for fac in _split_squarefree_ext(part, field):
            out.append((fac, mult))
    out.sort(key=lambda fm: (fm[0].degree, str(fm[0]), fm[1]))
    return unit, out


def roots_in_field(p, field=QQ):
    """Roots of ``p`` lying in ``field``, with multiplicities."""
    _, facs = factor_over(p, field)
    return [(-fac[0] / fac[1], mult) for fac, mult in facs if fac.degree == 1]


def field_for_factor(fac, name="θ"):
    """Field generated by a root of an irreducible rational factor.

    Degree-one factors give QQ; the returned root is then a ``Fraction``.
    """
    if fac.degree == 1:
        return QQ, -fac[0] / fac[1]
    ext = FieldExt(fac, name=name, check=False)
    return ext, ext.gen
