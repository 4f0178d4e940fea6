"""Reduced quotients of multivariate polynomials."""

from fractions import Fraction

from .multipoly import DEFAULT_VARS, MultiPoly, poly_gcd
from .numberfield import AlgNumber

_SCALARS = (int, Fraction, AlgNumber)


class RationalFunction:
    """``numerator / denominator`` with coprime parts and a monic denominator.

    "Monic" refers to the leading coefficient in the canonical graded-lex
    order, so equal functions have identical representations.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, reduce=True):
        if isinstance(num, _SCALARS):
            num = MultiPoly.constant(num, den.variables if den is not None else DEFAULT_VARS)
        if den is None:
            den = MultiPoly.constant(1, num.variables)
        elif isinstance(den, _SCALARS):
            den = MultiPoly.constant(den, num.variables)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if reduce:
            if num.is_zero():
                den = MultiPoly.constant(1, num.variables)
            else:
                g = poly_gcd(num, den)
                if not g.is_constant():
                    num = num.exact_div(g)
                    den = den.exact_div(g)
            lc = den.lc
            num, den = num / lc, den / lc
        self.num = num
        self.den = den

    @property
    def variables(self):
        return self.num.variables

    @classmethod
    def from_poly(cls, p):
        return cls(p, reduce=False)

    def _lift(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, MultiPoly):
            return RationalFunction(other, reduce=False)
        if isinstance(other, _SCALARS):
            return RationalFunction(MultiPoly.constant(other, self.variables), reduce=False)
        return None

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self):
        return self.den.is_constant()

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({self.to_str()!r})"

    def to_str(self):
        if self.den.is_constant():
            return self.num.to_str()
        return f"({self.num.to_str()})/({self.den.to_str()})"

    __str__ = to_str

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n):
        if n < 0:
            return RationalFunction(self.den ** (-n), self.num ** (-n))  # re-normalizes
        return RationalFunction(self.num ** n, self.den ** n, reduce=False)

    def diff(self, var):
        """Quotient rule."""
        n, d = self.num, self.den
        return RationalFunction(n.diff(var) * d - n * d.diff(var), d * d)

    def evaluate(self, values):
        return self.num.evaluate(values) / self.den.evaluate(values)
