"""Sparse multivariate polynomials with exact coefficients.

Terms live in a dict keyed by exponent tuples.  The canonical term order is
graded lexicographic with ``s < t`` (later variables are bigger), which is
what :meth:`MultiPoly.sorted_terms` and the text serialization use.
"""

from fractions import Fraction
from math import gcd as int_gcd, lcm

from .numberfield import AlgNumber, field_of
from .unipoly import UniPoly

DEFAULT_VARS = ("s", "t")
_SCALARS = (int, Fraction, AlgNumber)


def _grlex_key(exp):
    return (sum(exp), tuple(reversed(exp)))


class MultiPoly:
    """Immutable polynomial over Q or a single extension Q(theta)."""

    __slots__ = ("variables", "terms")

    def __init__(self, terms=None, variables=DEFAULT_VARS):
        self.variables = tuple(variables)
        clean = {}
        for exp, c in (terms or {}).items():
            if isinstance(c, int):
                c = Fraction(c)
            if c != 0:
                clean[tuple(exp)] = c
        self.terms = clean

    # ------------------------------------------------------------------
    # constructors
    @classmethod
    def constant(cls, c, variables=DEFAULT_VARS):
        return cls({(0,) * len(variables): c}, variables)

    @classmethod
    def var(cls, name, variables=DEFAULT_VARS):
        variables = tuple(variables)
        exp = tuple(1 if v == name else 0 for v in variables)
        if name not in variables:
            raise ValueError(f"unknown variable {name!r}")
        return cls({exp: Fraction(1)}, variables)

    def _new(self, terms):
        return MultiPoly(terms, self.variables)

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise ValueError("variable lists differ")
            return other
        if isinstance(other, _SCALARS):
            return MultiPoly.constant(other, self.variables)
        return None

    # ------------------------------------------------------------------
    # predicates / accessors
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    @property
    def field(self):
        return field_of(*self.terms.values())

    def degree(self, var=None):
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        i = self.variables.index(var)
        return max(e[i] for e in self.terms)

    def sorted_terms(self):
        """Terms in descending canonical (graded-lex, s < t) order."""
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def leading_term(self):
        exp = max(self.terms, key=_grlex_key)
        return exp, self.terms[exp]

    @property
    def lc(self):
        return self.leading_term()[1] if self.terms else Fraction(0)

    def monic(self):
        if not self.terms:
            return self
        lc = self.lc
        return self._new({e: c / lc for e, c in self.terms.items()})

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, MultiPoly) else other
        if o is None:
            return NotImplemented
        return self.variables == o.variables and self.terms == o.terms

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self.variables, frozenset(self.terms.items())))

    def __repr__(self):
        return f"MultiPoly({self.to_str()!r})"

    # ------------------------------------------------------------------
    # arithmetic
    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out[e] + c if e in out else c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

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
        if isinstance(other, _SCALARS):
            return self._new({e: c * other for e, c in self.terms.items()})
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                out[e] = out[e] + v if e in out else v
        return self._new(out)

    def __rmul__(self, other):
        if isinstance(other, _SCALARS):
            return self._new({e: other * c for e, c in self.terms.items()})
        return NotImplemented

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.constant(1, self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, _SCALARS):
            return self._new({e: c / other for e, c in self.terms.items()})
        return NotImplemented

    def exact_div(self, other):
        """Exact quotient; raises ``ValueError`` when ``other`` does not divide."""
        if isinstance(other, _SCALARS):
            return self / other
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if other.is_constant():
            return self / other.constant_value()
        rem = dict(self.terms)
        lexp, lcoef = other.leading_term()
        quot = {}
        while rem:
            exp = max(rem, key=_grlex_key)
            diff = tuple(a - b for a, b in zip(exp, lexp))
            if any(d < 0 for d in diff):
                raise ValueError("polynomial division is not exact")
            q = rem[exp] / lcoef
            quot[diff] = q
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(diff, e2))
                v = rem.get(e, 0) - q * c2
                if v == 0:
                    rem.pop(e, None)
                else:
                    rem[e] = v
        return self._new(quot)

    def divides(self, other):
        try:
            other.exact_div(self)
        except ValueError:
            return False
        return True

    # ------------------------------------------------------------------
    # calculus and evaluation
    def diff(self, var):
        if var not in self.variables:
            raise ValueError(f"unknown variable {var!r}")
        i = self.variables.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return self._new(out)

    def evaluate(self, values):
        """Evaluate at ``values`` (a mapping or a sequence in variable order).

        Values may be scalars or any ring elements (series, polynomials) that
        support ``+``, ``*`` and multiplication by scalars.
        """
        if not isinstance(values, dict):
            values = dict(zip(self.variables, values))
        vals = [values[v] for v in self.variables]
        powers = [{0: None} for _ in vals]
        acc = 0
        for exp, c in self.sorted_terms():
            mono = None
            for k, e in enumerate(exp):
                if not e:
                    continue
                cache = powers[k]
                if e not in cache:
                    best = max(p for p in cache if p <= e)
                    val = cache[best]
                    for p in range(best + 1, e + 1):
                        val = vals[k] if val is None else val * vals[k]
                        cache[p] = val
                pw = cache[e]
                mono = pw if mono is None else mono * pw
            term = c if mono is None else mono * c
            acc = acc + term
        return acc

    __call__ = evaluate

    def substitute(self, mapping):
        """Substitute polynomials for some variables."""
        values = {v: mapping.get(v, MultiPoly.var(v, self.variables)) for v in self.variables}
        result = self.evaluate(values)
        if not isinstance(result, MultiPoly):
            result = MultiPoly.constant(result, self.variables)
        return result

    def translate(self, point):
        """``p(s + a, t + b)`` for ``point = (a, b)``."""
        mapping = {v: MultiPoly.var(v, self.variables) + a for v, a in zip(self.variables, point)}
        return self.substitute(mapping)

    # ------------------------------------------------------------------
    # univariate views
    def to_univariate(self, var):
        """View as a :class:`UniPoly` in ``var`` with MultiPoly coefficients."""
        i = self.variables.index(var)
        buckets = {}
        for e, c in self.terms.items():
            ne = list(e)
            k = ne[i]
            ne[i] = 0
            buckets.setdefault(k, {})[tuple(ne)] = c
        if not buckets:
            return UniPoly()
        zero = MultiPoly({}, self.variables)
        cs = [zero] * (max(buckets) + 1)
        for k, t in buckets.items():
            cs[k] = MultiPoly(t, self.variables)
        return UniPoly(cs)

    @classmethod
    def from_univariate(cls, up, var, variables=DEFAULT_VARS):
        variables = tuple(variables)
        x = cls.var(var, variables)
        acc = cls({}, variables)
        for k, c in enumerate(up.coeffs):
            if not isinstance(c, MultiPoly):
                c = cls.constant(c, variables)
            acc = acc + c * x ** k
        return acc

    def to_unipoly(self, var):
        """Univariate polynomial with scalar coefficients (other vars absent)."""
        i = self.variables.index(var)
        cs = {}
        for e, c in self.terms.items():
            if any(x for j, x in enumerate(e) if j != i):
                raise ValueError(f"polynomial depends on variables other than {var!r}")
            cs[e[i]] = c
        if not cs:
            return UniPoly()
        return UniPoly([cs.get(k, 0) for k in range(max(cs) + 1)])

    @classmethod
    def from_unipoly(cls, up, var, variables=DEFAULT_VARS):
        variables = tuple(variables)
        i = variables.index(var)
        terms = {}
        for k, c in enumerate(up.coeffs):
            e = [0] * len(variables)
            e[i] = k
            terms[tuple(e)] = c
        return cls(terms, variables)

    # ------------------------------------------------------------------
    # text
    def to_str(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, exp) if e
            )
            parts.append(_term(c, mono))
        text = parts[0]
        for p in parts[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        return text

    __str__ = to_str

    def to_json(self):
        from .numberfield import scalar_json

        return [
            {"exp": list(e), "coeff": scalar_json(c)} for e, c in self.sorted_terms()
        ]


def _term(c, mono):
    if isinstance(c, AlgNumber) and not c.is_rational():
        text = f"({c.to_str()})"
        return f"{text}*{mono}" if mono else text
    if isinstance(c, AlgNumber):
        c = c.coeffs[0]
    if not mono:
        return str(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{c}*{mono}"


# ----------------------------------------------------------------------
# gcd


def _main_variable(a, b):
    for i in range(len(a.variables) - 1, -1, -1):
        if any(e[i] for e in a.terms) or any(e[i] for e in b.terms):
            return a.variables[i]
    return None


def _uni_content(up):
    g = None
    for c in up.coeffs:
        if c.is_zero():
            continue
        g = c if g is None else poly_gcd(g, c)
        if g.is_constant():
            return g.monic()
    return g


def _uni_pp(up):
    c = _uni_content(up)
    return _numeric_primitive(up.scale_div(c)), c


def _numeric_primitive(up):
    """Scale rational coefficients to coprime integers.

    Over a field the polynomial content is only defined up to a constant, so
    the pseudo-remainder sequence would otherwise let integer coefficients
    grow without bound.  Coefficients over an extension are left alone.
    """
    nums = []
    dens = []
    for c in up.coeffs:
        for v in c.terms.values():
            if isinstance(v, AlgNumber):
                return up
            v = Fraction(v)
            nums.append(v.numerator)
            dens.append(v.denominator)
    if not nums:
        return up
    scale = Fraction(lcm(*dens), int_gcd(*nums))
    return up if scale == 1 else UniPoly([c * scale for c in up.coeffs])


def poly_gcd(a, b):
    """Monic gcd of two multivariate polynomials over a field.

    Recursive primitive PRS on the last variable that occurs.
    """
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    var = _main_variable(a, b)
    if var is None:
        return MultiPoly.constant(1, a.variables)
    ua, ub = a.to_univariate(var), b.to_univariate(var)
    if ua.degree == 0 or ub.degree == 0:
        ca = _uni_content(ua)
        cb = _uni_content(ub)
        return poly_gcd(ca, cb)
    pa, ca = _uni_pp(ua)
    pb, cb = _uni_pp(ub)
    cont = poly_gcd(ca, cb)
    if pa.degree < pb.degree:
        pa, pb = pb, pa
    while pb.coeffs and pb.degree > 0:
        r = pa.prem(pb)
        pa = pb
        pb = _uni_pp(r)[0] if r.coeffs else r
    if pb.coeffs:
        g = MultiPoly.constant(1, a.variables)
    else:
        g = MultiPoly.from_univariate(_uni_pp(pa)[0], var, a.variables)
    return (cont * g).monic()


def squarefree_part(p):
    """``p / gcd(p, dp/dv for every v)`` (characteristic 0), made monic."""
    g = p
    for v in p.variables:
        g = poly_gcd(g, p.diff(v))
    return p.exact_div(g).monic()


def is_squarefree(p):
    return squarefree_part(p).degree() == p.degree()


def bivariate_resultant(a, b, var):
    """Resultant with respect to ``var``; result has ``var`` eliminated."""
    from .unipoly import resultant

    res = resultant(a.to_univariate(var), b.to_univariate(var))
    if not isinstance(res, MultiPoly):
        res = MultiPoly.constant(res, a.variables)
    return res
