"""Truncated Laurent series with pessimistic precision tracking.

A series is stored as ``(low, coeffs, top)`` and denotes

    sum(coeffs[i] * x**(low + i)) + O(x**top)

where ``top`` is the absolute precision (``INF`` for an exact series).
Coefficients between ``low + len(coeffs)`` and ``top`` are known to be zero.
A series whose window holds no nonzero coefficient but whose ``top`` is
finite is *zero to precision*; it is never treated as exactly zero when a
unit is required.

The arithmetic core lives in :class:`SeriesBase` so that the outer level of
the two-variable tower can reuse it with Laurent series as coefficients.
"""

import math
from fractions import Fraction

from ..errors import PrecisionError
from ..algebra.numberfield import AlgNumber, scalar_json, scalar_text

INF = math.inf

_SCALARS = (int, Fraction, AlgNumber)


def _finite(x):
    return x != INF


class SeriesBase:
    """Shared arithmetic for one level of iterated Laurent series."""

    __slots__ = ("low", "coeffs", "top")
    var = "x"

    def __init__(self, low=0, coeffs=(), top=INF):
        cs = list(coeffs)
        if _finite(top):
            top = int(top)
            keep = max(0, top - low)
            del cs[keep:]
        start = 0
        while start < len(cs) and self._is_zero_coeff(cs[start]):
            start += 1
        cs = cs[start:]
        low += start
        while cs and self._is_zero_coeff(cs[-1]):
            cs.pop()
        if not cs:
            low = top if _finite(top) else 0
        self.low = low
        self.coeffs = tuple(cs)
        self.top = top

    # hooks -------------------------------------------------------------
    @staticmethod
    def _is_zero_coeff(c):
        return c == 0

    @staticmethod
    def _zero_coeff():
        return Fraction(0)

    @staticmethod
    def _coeff_inverse(c, **kw):
        if isinstance(c, AlgNumber):
            return c.inverse()
        return Fraction(1) / c

    @classmethod
    def _coerce(cls, other):
        raise NotImplementedError

    # constructors ------------------------------------------------------
    @classmethod
    def zero(cls, top=INF):
        return cls(0, (), top)

    @classmethod
    def const(cls, c, top=INF):
        return cls(0, (c,), top)

    @classmethod
    def monomial(cls, c, n, top=INF):
        return cls(n, (c,), top)

    # predicates --------------------------------------------------------
    def is_exact(self):
        return not _finite(self.top)

    def is_exact_zero(self):
        return not self.coeffs and not _finite(self.top)

    def is_zero_to_precision(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def precision(self):
        """Relative precision ``top - low`` (``None`` for exact series)."""
        return self.top - self.low if _finite(self.top) else None

    def valuation(self):
        """Order of the leading term.

        Raises :class:`PrecisionError` for a series that is zero only to
        precision; exact zero has valuation ``INF``.
        """
        if self.coeffs:
            return self.low
        if _finite(self.top):
            raise PrecisionError(f"series is zero to precision O({self.var}^{self.top})")
        return INF

    def val_bound(self):
        """A lower bound for the valuation that never raises."""
        return self.low if self.coeffs else self.top

    def coefficient(self, n):
        if n >= self.top:
            raise PrecisionError(f"coefficient of {self.var}^{n} is beyond O({self.var}^{self.top})")
        i = n - self.low
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self._zero_coeff()

    __getitem__ = coefficient

    def terms(self):
        """Pairs ``(exponent, coefficient)`` for stored nonzero terms."""
        return [
            (self.low + i, c) for i, c in enumerate(self.coeffs) if not self._is_zero_coeff(c)
        ]

    def truncate(self, top):
        return type(self)(self.low, self.coeffs, min(self.top, top))

    def with_top(self, top):
        """Reinterpret with window ``top``; unknown terms become zero.

        Used by Newton iterations that grow a solution one window at a time.
        """
        return type(self)(self.low, self.coeffs, top)

    def map_coeffs(self, fn, top=None):
        return type(self)(self.low, [fn(c) for c in self.coeffs], self.top if top is None else top)

    # comparison ----------------------------------------------------------
    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self.low, self.coeffs, self.top) == (o.low, o.coeffs, o.top)

    def __hash__(self):
        return hash((self.low, self.coeffs, self.top))

    # arithmetic ----------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        top = min(self.top, o.top)
        if not self.coeffs and not o.coeffs:
            return type(self).zero(top)
        low = min(self.val_bound(), o.val_bound())
        end = max(self.low + len(self.coeffs), o.low + len(o.coeffs))
        if _finite(top):
            end = min(end, top)
        cs = []
        for n in range(low, end):
            a = self._get(n)
            b = o._get(n)
            if a is None:
                cs.append(b if b is not None else self._zero_coeff())
            elif b is None:
                cs.append(a)
            else:
                cs.append(a + b)
        return type(self)(low, cs, top)

    __radd__ = __add__

    def _get(self, n):
        i = n - self.low
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return None

    def __neg__(self):
        return type(self)(self.low, [-c for c in self.coeffs], self.top)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            if other == 0:
                return type(self).zero()
            return type(self)(self.low, [c * other for c in self.coeffs], self.top)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_exact_zero() or o.is_exact_zero():
            return type(self).zero()
        top = min(self.val_bound() + o.top, o.val_bound() + self.top)
        if not self.coeffs or not o.coeffs:
            return type(self).zero(top)
        la, lb = len(self.coeffs), len(o.coeffs)
        low = self.low + o.low
        n = la + lb - 1
        if _finite(top):
            n = min(n, top - low)
        a, b = self.coeffs, o.coeffs
        cs = []
        for k in range(max(n, 0)):
            acc = None
            for i in range(max(0, k - lb + 1), min(k, la - 1) + 1):
                p = a[i] * b[k - i]
                acc = p if acc is None else acc + p
            cs.append(acc)
        return type(self)(low, cs, top)

    __rmul__ = __mul__

    def inverse(self, cap=None, **kw):
        """Multiplicative inverse.

        Relative precision is preserved.  An exact series with more than one
        term has an infinite inverse, so ``cap`` (a number of terms) must be
        given; otherwise :class:`PrecisionError` is raised.
        """
        if not self.coeffs:
            if self.is_exact():
                raise ZeroDivisionError("inverse of the zero series")
            raise PrecisionError(
                f"cannot invert a series that is zero to precision O({self.var}^{self.top})"
            )
        a = self.coeffs
        lead_inv = self._coeff_inverse(a[0], **kw)
        if len(a) == 1 and self.is_exact():
            return type(self)(-self.low, (lead_inv,))
        if self.is_exact():
            if cap is None:
                raise PrecisionError("an exact series with several terms needs a cap to invert")
            rel = cap
        else:
            rel = self.top - self.low
            if cap is not None:
                rel = min(rel, cap)
        b = [lead_inv]
        for k in range(1, rel):
            acc = None
            for j in range(1, min(k, len(a) - 1) + 1):
                p = a[j] * b[k - j]
                acc = p if acc is None else acc + p
            b.append(self._zero_coeff() if acc is None else -(acc * lead_inv))
        return type(self)(-self.low, b, -self.low + rel)

    def div(self, other, cap=None, **kw):
        o = self._coerce(other)
        return self * o.inverse(cap, **kw)

    def __truediv__(self, other):
        if isinstance(other, _SCALARS):
            if other == 0:
                raise ZeroDivisionError("division of a series by zero")
            inv = other.inverse() if isinstance(other, AlgNumber) else Fraction(1) / other
            return self * inv
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = type(self).const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def derivative(self):
        """Term-wise derivative; the window loses one order at the top."""
        cs = [
            self._zero_coeff() if self.low + i == 0 else c * (self.low + i)
            for i, c in enumerate(self.coeffs)
        ]
        top = self.top - 1 if _finite(self.top) else INF
        return type(self)(self.low - 1, cs, top)

    # text ----------------------------------------------------------------
    def _coeff_text(self, c):
        return scalar_text(c)

    def to_str(self):
        parts = []
        for n, c in self.terms():
            ct = self._coeff_text(c)
            if n == 0:
                mono = ""
            elif n == 1:
                mono = self.var
            else:
                mono = f"{self.var}^{n}"
            if not mono:
                parts.append(ct)
            elif ct == "1":
                parts.append(mono)
            elif ct == "-1":
                parts.append("-" + mono)
            else:
                if any(ch in ct[1:] for ch in "+-") or " " in ct:
                    ct = f"({ct})"
                parts.append(f"{ct}*{mono}")
        if _finite(self.top):
            parts.append(f"O({self.var}^{self.top})")
        if not parts:
            return "0"
        text = parts[0]
        for p in parts[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        return text

    __str__ = to_str

    def __repr__(self):
        return f"{type(self).__name__}({self.to_str()!r})"

    def _coeff_json(self, c):
        return scalar_json(c)

    def to_json(self):
        return {
            "var": self.var,
            "low": self.low,
            "coeffs": [self._coeff_json(c) for c in self.coeffs],
            "precision": self.precision,
        }


class LaurentSeries(SeriesBase):
    """Element of ``K((u))`` truncated to a window; ``K`` is Q or Q(theta)."""

    __slots__ = ()
    var = "u"

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, LaurentSeries):
            return other
        if isinstance(other, _SCALARS):
            return cls.const(other)
        return None

    @classmethod
    def u(cls):
        return cls.monomial(Fraction(1), 1)

    @classmethod
    def from_coeffs(cls, coeffs, low=0, top=INF):
        return cls(low, [Fraction(c) if isinstance(c, int) else c for c in coeffs], top)

    def residue(self):
        """Coefficient of ``u^-1``, i.e. the residue of ``self * du``."""
        return self.coefficient(-1)

    def __call__(self, x):
        """Evaluate a series with finitely many terms (polynomial part only)."""
        acc = 0
        for n, c in self.terms():
            acc = acc + c * x**n
        return acc


def residue_1d(a):
    """Residue of the Laurent 1-form ``a(u) du``.

    Raises :class:`PrecisionError` when the window stops before order -1.
    """
    return a.residue()
