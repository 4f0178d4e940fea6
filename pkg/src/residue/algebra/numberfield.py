"""The rationals and simple algebraic extensions ``Q(theta)``.

Only one level of extension is supported: an :class:`AlgNumber` always has
rational coordinates in the power basis of its generator.  Mixing elements of
two different extensions raises :class:`FieldMismatchError`.
"""

from fractions import Fraction

from ..errors import FieldMismatchError, ReducibleError
from .unipoly import UniPoly, xgcd


class _Rationals:
    """Descriptor for the base field Q."""

    degree = 1
    name = "QQ"

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, _Rationals)

    def __hash__(self):
        return hash("QQ")

    def convert(self, c):
        if isinstance(c, AlgNumber):
            raise FieldMismatchError(f"cannot coerce {c} into QQ")
        return Fraction(c)

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def trace(self, c):
        return Fraction(c)

    def norm(self, c):
        return Fraction(c)

    def minpoly_text(self):
        return "QQ"


QQ = _Rationals()


class FieldExt:
    """``Q[theta] / (minpoly)`` for a monic irreducible ``minpoly``.

    ``minpoly`` is a :class:`UniPoly` over ``Fraction``.  Irreducibility is
    checked once, at construction, unless ``check=False``.
    """

    def __init__(self, minpoly, name="θ", check=True):
        if not isinstance(minpoly, UniPoly):
            minpoly = UniPoly(minpoly)
        if minpoly.degree < 1:
            raise ValueError("minimal polynomial must have degree >= 1")
        if any(isinstance(c, AlgNumber) for c in minpoly.coeffs):
            raise FieldMismatchError("nested extensions are not supported")
        self.minpoly = minpoly.monic()
        self.name = name
        self.degree = self.minpoly.degree
        if check:
            from .factor import factor_rational

            _, factors = factor_rational(self.minpoly)
            if len(factors) != 1 or factors[0][1] != 1:
                raise ReducibleError(f"{self.minpoly_text()} is reducible over QQ")
        self._mult_cache = None
        self._reduction = _reduction_table(self.minpoly)

    def __repr__(self):
        return f"FieldExt({self.minpoly_text()})"

    def __eq__(self, other):
        return isinstance(other, FieldExt) and self.minpoly == other.minpoly

    def __hash__(self):
        return hash(self.minpoly)

    def minpoly_text(self):
        return self.minpoly.to_str(self.name)

    # ------------------------------------------------------------------
    def element(self, coeffs):
        """Element with power-basis coordinates ``coeffs`` (reduced if longer)."""
        poly = UniPoly(coeffs)
        if poly.degree >= self.degree:
            poly = poly % self.minpoly
        cs = list(poly.coeffs) + [Fraction(0)] * (self.degree - len(poly.coeffs))
        if self.degree == 1:
            return cs[0]
        return AlgNumber(self, cs)

    @property
    def gen(self):
        return self.element([0, 1])

    def convert(self, c):
        if isinstance(c, AlgNumber):
            if c.ext != self:
                raise FieldMismatchError(f"{c.ext!r} is not {self!r}")
            return c
        return self.element([Fraction(c)])

    def zero(self):
        return self.element([0])

    def one(self):
        return self.element([1])

    def _mult_matrix(self, c):
        """Matrix of ``x -> c*x`` in the power basis (columns = images)."""
        c = self.convert(c)
        cols = []
        basis = self.element([1])
        theta = self.gen
        for _ in range(self.degree):
            img = c * basis
            cols.append(_coords(img, self.degree))
            basis = basis * theta
        return [[cols[j][i] for j in range(self.degree)] for i in range(self.degree)]

    def trace(self, c):
        """Field trace down to Q (trace of the multiplication matrix)."""
        m = self._mult_matrix(c)
        return sum((m[i][i] for i in range(self.degree)), Fraction(0))

    def norm(self, c):
        return determinant(self._mult_matrix(c))


def _reduction_table(minpoly):
    """Power-basis coordinates of ``theta**k`` for ``k = d .. 2d - 2``."""
    d = minpoly.degree
    low = [-c for c in minpoly.coeffs[:d]]
    table = []
    cur = low
    for _ in range(max(d - 1, 0)):
        table.append(tuple(cur))
        top = cur[-1]
        cur = [Fraction(0)] + list(cur[:-1])
        if top:
            cur = [a + top * b for a, b in zip(cur, low)]
    return table


def _coords(c, n):
    if isinstance(c, AlgNumber):
        return list(c.coeffs)
    return [Fraction(c)] + [Fraction(0)] * (n - 1)


def field_of(*values):
    """The common field of scalars (QQ unless an AlgNumber is present)."""
    field = QQ
    for v in values:
        ext = getattr(v, "ext", None)
        if ext is None:
            continue
        if field is QQ:
            field = ext
        elif field != ext:
            raise FieldMismatchError(f"{field!r} vs {ext!r}")
    return field


def determinant(rows):
    """Exact determinant by Gaussian elimination over Q."""
    a = [[Fraction(x) for x in row] for row in rows]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        p = a[col][col]
        det *= p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                for k in range(col, n):
                    a[r][k] -= f * a[col][k]
    return det


_SCALARS = (int, Fraction)


class AlgNumber:
    """Element of a :class:`FieldExt`, stored as power-basis coordinates."""

    __slots__ = ("ext", "coeffs")

    def __init__(self, ext, coeffs):
        self.ext = ext
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        if len(self.coeffs) != ext.degree:
            raise ValueError("coordinate vector has wrong length")

    @classmethod
    def _raw(cls, ext, coeffs):
        obj = object.__new__(cls)
        obj.ext = ext
        obj.coeffs = coeffs
        return obj

    def _coerce(self, other):
        if isinstance(other, AlgNumber):
            if other.ext != self.ext:
                raise FieldMismatchError(f"{self.ext!r} vs {other.ext!r}")
            return other
        if isinstance(other, _SCALARS):
            return AlgNumber(self.ext, [other] + [0] * (self.ext.degree - 1))
        return None

    def is_rational(self):
        return not any(self.coeffs[1:])

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.ext, self.coeffs))

    def __repr__(self):
        return f"AlgNumber({self.to_str()!r} in {self.ext.minpoly_text()})"

    def to_str(self):
        return UniPoly(self.coeffs).to_str(self.ext.name)

    __str__ = to_str

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgNumber._raw(self.ext, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return AlgNumber._raw(self.ext, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgNumber._raw(self.ext, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            return AlgNumber._raw(self.ext, tuple(a * other for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.ext.degree
        a, b = self.coeffs, o.coeffs
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:d]
        for k, row in enumerate(self.ext._reduction):
            c = prod[d + k]
            if c:
                out = [u + c * v for u, v in zip(out, row)]
        return AlgNumber._raw(self.ext, tuple(out))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero in number field")
        g, x, _ = xgcd(UniPoly(self.coeffs), self.ext.minpoly)
        if g.degree != 0:
            raise ZeroDivisionError("element is a zero divisor; minimal polynomial is reducible")
        return _reduce(self.ext, x)

    def __truediv__(self, other):
        if isinstance(other, _SCALARS):
            return AlgNumber(self.ext, [a / other for a in self.coeffs])
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
        result = AlgNumber(self.ext, [1] + [0] * (self.ext.degree - 1))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def trace(self):
        return self.ext.trace(self)

    def norm(self):
        return self.ext.norm(self)


def _reduce(ext, poly):
    r = poly % ext.minpoly if poly.degree >= ext.degree else poly
    cs = list(r.coeffs) + [Fraction(0)] * (ext.degree - len(r.coeffs))
    return AlgNumber(ext, cs)


def adjoin_root(minpoly, name="θ"):
    """Build ``Q(theta)`` for a monic irreducible rational polynomial.

    A degree-one ``minpoly`` gives a trivial extension whose elements are
    plain ``Fraction`` values.
    """
    return FieldExt(minpoly, name=name)


def trace_to_base(value, base=QQ):
    """Trace of ``value`` from its field down to ``base``.

    Only two levels exist: ``base`` is either the field of ``value`` itself
    (trace is the identity) or QQ.
    """
    field = field_of(value)
    if field == base:
        return value
    if base != QQ:
        raise FieldMismatchError(f"cannot trace from {field!r} to {base!r}")
    if field == QQ:
        return Fraction(value)
    return field.trace(value)


def scalar_text(c):
    """Canonical text for an exact scalar ("p/q" or a power-basis expression)."""
    if isinstance(c, AlgNumber):
        if c.is_rational():
            return str(c.coeffs[0])
        return c.to_str()
    return str(Fraction(c))


def scalar_json(c):
    if isinstance(c, AlgNumber) and not c.is_rational():
        return {"ext": c.ext.minpoly_text(), "coeffs": [str(x) for x in c.coeffs]}
    if isinstance(c, AlgNumber):
        return str(c.coeffs[0])
    return str(Fraction(c))
