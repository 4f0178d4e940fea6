"""Dense univariate polynomials over an exact coefficient domain.

Coefficients are stored low degree first.  Any exact domain works as long as
it supports ``+ - *`` and exact division: rationals (``Fraction``),
:class:`~residue.algebra.numberfield.AlgNumber`, or
:class:`~residue.algebra.multipoly.MultiPoly` (for resultants in one
variable of a bivariate polynomial).
"""

from fractions import Fraction


def _is_zero(c):
    return c == 0


def _exact_div(a, b):
    if hasattr(a, "exact_div"):
        return a.exact_div(b)
    if isinstance(a, int) and hasattr(b, "exact_div"):
        return (b * 0 + a).exact_div(b)
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


def _coerce(c):
    return Fraction(c) if isinstance(c, int) else c


class UniPoly:
    """Immutable dense polynomial ``sum(coeffs[i] * x**i)``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_coerce(c) for c in coeffs]
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, c, n):
        return cls([0] * n + [c]) if n else cls([c])

    @classmethod
    def x(cls):
        return cls([0, 1])

    # ------------------------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)!r})"

    def to_str(self, var="x"):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if _is_zero(c):
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            parts.append(_term_text(c, mono))
        text = parts[0]
        for p in parts[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        return text

    __str__ = to_str

    # ------------------------------------------------------------------
    def _wrap(self, other):
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other])

    def __add__(self, other):
        other = self._wrap(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [None] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                term = a * b
                out[i + j] = term if out[i + j] is None else out[i + j] + term
        zero = self.coeffs[0] * 0
        return UniPoly([zero if c is None else c for c in out])

    def __rmul__(self, other):
        return UniPoly([other * c for c in self.coeffs])

    def __pow__(self, n):
        result = UniPoly([self.coeffs[0] * 0 + 1]) if self.coeffs else UniPoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale_div(self, c):
        """Divide every coefficient exactly by ``c``."""
        return UniPoly([_exact_div(a, c) for a in self.coeffs])

    def monic(self):
        if not self.coeffs:
            return self
        lc = self.lc
        return UniPoly([a / lc for a in self.coeffs[:-1]] + [lc / lc])

    def derivative(self):
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, other):
        """Return ``self(other)`` for a polynomial ``other``."""
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def shift(self, a):
        """Return ``self(x + a)``."""
        return self.compose(UniPoly([a, 1]))

    def reverse(self):
        return UniPoly(reversed(self.coeffs))

    # ------------------------------------------------------------------
    def __divmod__(self, other):
        """Euclidean division; the coefficient domain must be a field."""
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        inv_lc = 1 / other.lc
        dv = len(other.coeffs) - 1
        for k in range(len(rem) - 1, dv - 1, -1):
            c = rem[k]
            if _is_zero(c):
                continue
            f = c * inv_lc
            q[k - dv] = f
            for i, b in enumerate(other.coeffs):
                rem[k - dv + i] = rem[k - dv + i] - f * b
        return UniPoly(q), UniPoly(rem[:dv] if dv else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def prem(self, other):
        """Pseudo-remainder: ``lc(other)**(deg self - deg other + 1) * self mod other``."""
        if not other.coeffs:
            raise ZeroDivisionError("pseudo-remainder by zero")
        r = self
        db = other.degree
        e = self.degree - db + 1
        lcb = other.lc
        while r.coeffs and r.degree >= db:
            t = UniPoly.monomial(r.lc, r.degree - db)
            r = r * lcb - t * other
            e -= 1
        if e > 0:
            r = r * (lcb ** e)
        return r

    def content(self, gcd_fn):
        g = None
        for c in self.coeffs:
            g = c if g is None else gcd_fn(g, c)
        return g


def _term_text(c, mono):
    text = c.to_str() if hasattr(c, "to_str") else str(c)
    atomic = isinstance(c, (int, Fraction)) and "/" not in text
    if not mono:
        return text if atomic or isinstance(c, Fraction) else f"({text})"
    if atomic:
        if text == "1":
            return mono
        if text == "-1":
            return "-" + mono
        return f"{text}*{mono}"
    if isinstance(c, Fraction):
        return f"{text}*{mono}"
    return f"({text})*{mono}"


# ----------------------------------------------------------------------
# field algorithms


def gcd(a, b):
    """Monic gcd over a coefficient field."""
    while b:
        a, b = b, a % b
    return a.monic()


def xgcd(a, b):
    """Return ``(g, x, y)`` with ``g = x*a + y*b`` and ``g`` monic."""
    r0, r1 = a, b
    x0, x1 = UniPoly([1]), UniPoly()
    y0, y1 = UniPoly(), UniPoly([1])
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if not r0:
        return r0, x0, y0
    inv = 1 / r0.lc
    return r0 * inv, x0 * inv, y0 * inv


def squarefree_decomposition(p):
    """Yun's algorithm (characteristic 0).

    Returns a list ``[(a_i, i)]`` of monic squarefree pairwise coprime
    factors so that ``p = lc(p) * prod(a_i ** i)``.
    """
    if p.degree < 1:
        return []
    out = []
    dp = p.derivative()
    a0 = gcd(p, dp)
    b = p // a0
    c = dp // a0
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = b // a
        c = d // a
        d = c - b.derivative()
        i += 1
    return out


def resultant(a, b):
    """Resultant via the subresultant pseudo-remainder sequence.

    Works over any integral domain with exact division.  Sign convention is
    the Sylvester determinant one: ``resultant(x - p, x - q) == p - q``.
    """
    if not a.coeffs and not b.coeffs:
        raise ValueError("resultant of two zero polynomials")
    if not a.coeffs or not b.coeffs:
        return _zero_like(a, b)
    s = 1
    if a.degree < b.degree:
        a, b = b, a
        if a.degree % 2 and b.degree % 2:
            s = -s
    if b.degree == 0:
        return s * b.lc ** a.degree
    g = 1
    h = 1
    while True:
        delta = a.degree - b.degree
        if a.degree % 2 and b.degree % 2:
            s = -s
        r = a.prem(b)
        a = b
        denom = g * h ** delta
        b = r.scale_div(denom) if denom != 1 else r
        g = a.lc
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = _exact_div(g ** delta, h ** (delta - 1))
        if not b.coeffs:
            return _zero_like(a, a)
        if b.degree == 0:
            da = a.degree
            if da == 1:
                return s * b.lc
            return s * _exact_div(b.lc ** da, h ** (da - 1))


def _zero_like(a, b):
    c = a.lc if a.coeffs else b.lc
    return c * 0


def interpolate(xs, ys):
    """Newton interpolation over the rationals."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = UniPoly([coef[-1]])
    for i in range(n - 2, -1, -1):
        poly = poly * UniPoly([-xs[i], 1]) + coef[i]
    return poly
