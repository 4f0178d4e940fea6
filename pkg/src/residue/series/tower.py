"""Two-level iterated Laurent series ``K((u))((g))``.

The outer variable ``g`` is the local equation of the curve and ``u`` is the
uniformizer of the branch.  Coefficients of ``g``-powers are
:class:`LaurentSeries`; each carries its own ``u`` window.
"""

from fractions import Fraction

from .laurent import INF, SeriesBase, LaurentSeries, _SCALARS


class TowerSeries(SeriesBase):
    """Element of ``K((u))((g))`` truncated in ``g`` and, per coefficient, in ``u``.

    Only exact-zero outer coefficients are stripped; a leading coefficient
    that is zero to ``u``-precision stays in place and makes inversion raise
    :class:`~residue.errors.PrecisionError`.
    """

    __slots__ = ()
    var = "g"

    def __init__(self, low=0, coeffs=(), top=INF):
        cs = [c if isinstance(c, LaurentSeries) else LaurentSeries.const(c) for c in coeffs]
        super().__init__(low, cs, top)

    @staticmethod
    def _is_zero_coeff(c):
        return c.is_exact_zero()

    @staticmethod
    def _zero_coeff():
        return LaurentSeries.zero()

    @staticmethod
    def _coeff_inverse(c, inner_cap=None):
        return c.inverse(cap=inner_cap)

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, TowerSeries):
            return other
        if isinstance(other, LaurentSeries):
            return cls.const(other)
        if isinstance(other, _SCALARS):
            return cls.const(LaurentSeries.const(other))
        return None

    def __mul__(self, other):
        if isinstance(other, LaurentSeries):
            if other.is_exact_zero():
                return TowerSeries.zero()
            return TowerSeries(self.low, [c * other for c in self.coeffs], self.top)
        return super().__mul__(other)

    __rmul__ = __mul__

    @classmethod
    def g(cls):
        return cls.monomial(LaurentSeries.const(Fraction(1)), 1)

    def diff_u(self):
        return TowerSeries(self.low, [c.derivative() for c in self.coeffs], self.top)

    def diff_g(self):
        return self.derivative()

    def residue(self):
        """Coefficient of ``u^-1 g^-1``."""
        return self.coefficient(-1).coefficient(-1)

    def _coeff_text(self, c):
        return c.to_str()

    def _coeff_json(self, c):
        return c.to_json()

    def to_str(self):
        parts = []
        for n, c in self.terms():
            mono = "" if n == 0 else ("g" if n == 1 else f"g^{n}")
            inner = c.to_str()
            if not mono:
                parts.append(f"({inner})")
            else:
                parts.append(f"({inner})*{mono}")
        if self.top != INF:
            parts.append(f"O(g^{self.top})")
        return " + ".join(parts) if parts else "0"

    __str__ = to_str
