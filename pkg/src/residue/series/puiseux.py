"""Newton-Puiseux expansion of a plane curve at a point, in rational form.

Each edge of the Newton polygon with slope ``m/q`` and each irreducible
factor ``phi`` of its edge polynomial give the substitution

    s = gamma * v**q,   t = v**m * (beta + t1),   gamma = z**b, beta = z**a,

where ``z`` is a root of ``phi`` and ``a*q - b*m = 1``.  Conjugate roots of
``phi`` are handled together by working in ``K(z)``, so every returned
branch stands for one closed point of the normalization.  A simple root of
the edge polynomial ends the recursion and the remaining part of ``t`` is
found by Newton iteration in ``v``.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb

from ..algebra.factor import factor_over
from ..algebra.multipoly import MultiPoly, is_squarefree
from ..algebra.numberfield import QQ, FieldExt, field_of, scalar_json, scalar_text
from ..algebra.unipoly import UniPoly
from ..errors import NonReducedError, NotOnCurveError, PrecisionError, UnsupportedExtensionError
from .budget import PrecisionBudget
from .laurent import LaurentSeries

_SORT_TERMS = 4


@dataclass(frozen=True, eq=False)
class PuiseuxBranch:
    """One closed point of the normalization above ``point``.

    ``S`` and ``T`` are the displacements from ``point``: the branch is
    ``(s, t) = point + (S(u), T(u))`` with coefficients in ``field``.
    """

    point: tuple
    e: int
    S: LaurentSeries
    T: LaurentSeries
    field: object
    base_field: object = QQ
    index: int = dc_field(default=0, compare=False)

    @property
    def class_size(self):
        """``[k(x~) : k(x)]``, the number of conjugate geometric branches."""
        return self.field.degree // self.base_field.degree

    def residual(self, f):
        """``f(point + (S, T))`` as a Laurent series (zero to precision)."""
        value = f.evaluate({"s": self.point[0] + self.S, "t": self.point[1] + self.T})
        if not isinstance(value, LaurentSeries):
            value = LaurentSeries.const(value)
        return value

    def sort_key(self):
        def head(x):
            lo = x.val_bound()
            out = []
            for n in range(lo, lo + _SORT_TERMS) if x.coeffs else ():
                if n >= x.top:
                    break
                out.append(scalar_text(x.coefficient(n)))
            return (str(lo), tuple(out))

        return (self.field.minpoly_text(), self.e, head(self.S), head(self.T))

    def to_json(self):
        return {
            "index": self.index,
            "e": self.e,
            "field": self.field.minpoly_text(),
            "classSize": self.class_size,
            "S": self.S.to_json(),
            "T": self.T.to_json(),
        }


@dataclass(frozen=True)
class _Ctx:
    """Accumulated substitution ``s = gamma*v**e``, ``t = P(v) + c*v**M*t'``."""

    gamma: object
    e: int
    P: tuple
    c: object
    M: int

    def compose(self, gamma, beta, q, m):
        P = tuple((n * q, p * gamma**n) for n, p in self.P)
        lead = self.c * gamma**self.M
        P = P + ((q * self.M + m, lead * beta),)
        return _Ctx(self.gamma * gamma**self.e, q * self.e, P, lead, q * self.M + m)

    def finish(self, tau):
        S = LaurentSeries.monomial(self.gamma, self.e)
        Ppoly = LaurentSeries(0, _dense(self.P)) if self.P else LaurentSeries.zero()
        T = Ppoly + LaurentSeries.monomial(self.c, self.M) * tau
        return S, T


def _dense(pairs):
    n = max(k for k, _ in pairs) + 1
    cs = [Fraction(0)] * n
    for k, c in pairs:
        cs[k] = c
    return cs


_ROOT = _Ctx(Fraction(1), 1, (), Fraction(1), 0)


def _divide_monomial(G, di, dj):
    return MultiPoly({(i - di, j - dj): c for (i, j), c in G.terms.items()}, G.variables)


def _lower_hull(points):
    """Edges ``((ia, ja), (ib, jb))`` of the Newton polygon between the axes."""
    j0 = min(j for i, j in points if i == 0)
    cur = (0, j0)
    edges = []
    while cur[1] > 0:
        ia, ja = cur
        best, best_pt = None, None
        for i, j in points:
            if j >= ja:
                continue
            slope = Fraction(i - ia, ja - j)
            if best is None or slope < best or (slope == best and j < best_pt[1]):
                best, best_pt = slope, (i, j)
        edges.append((cur, best_pt, best))
        cur = best_pt
    return edges


def _bezout(q, m):
    """Non-negative ``(a, b)`` with ``a*q - b*m = 1``."""
    if m == 1:
        return 1, q - 1
    a = pow(q, -1, m)
    return a, (a * q - 1) // m


def _edge_substitute(G, gamma, beta, q, m, L):
    """``G(gamma*v**q, v**m*(beta + t)) / v**L`` as a polynomial in ``(v, t)``."""
    out = {}
    for (i, j), c in G.terms.items():
        base = c * gamma**i
        shift = q * i + m * j - L
        for l in range(j + 1):
            coeff = base * comb(j, l) * beta ** (j - l)
            key = (shift, l)
            out[key] = out.get(key, 0) + coeff
    return MultiPoly(out, G.variables)


def _simple_root(G, n_terms):
    """Power series ``tau(v)`` with ``tau(0) = 0`` and ``G(v, tau) = 0``."""
    v = LaurentSeries.u()
    Gt = G.diff("t")
    tau = LaurentSeries.zero(1)
    prec = 1
    while prec < n_terms:
        prec = min(2 * prec, n_terms)
        tau = tau.with_top(prec)
        res = _as_series(G.evaluate({"s": v, "t": tau}))
        der = _as_series(Gt.evaluate({"s": v, "t": tau}))
        tau = (tau - res * der.inverse()).truncate(prec)
    return tau


def _as_series(x):
    return x if isinstance(x, LaurentSeries) else LaurentSeries.const(x)


class _Expander:
    def __init__(self, budget, base_field):
        self.budget = budget
        self.base_field = base_field
        self.found = []

    def emit(self, ctx, tau, fld):
        S, T = ctx.finish(tau)
        self.found.append((ctx.e, S, T, fld))

    def run(self, G, fld, ctx, depth):
        if depth > self.budget.inner:
            raise PrecisionError("branches not separated within the inner budget")
        terms = G.terms
        if depth == 0 and all(i >= 1 for i, _ in terms):
            self.found.append((1, LaurentSeries.zero(), LaurentSeries.u(), fld))
            G = _divide_monomial(G, 1, 0)
            terms = G.terms
        if all(j >= 1 for _, j in terms):
            self.emit(ctx, LaurentSeries.zero(), fld)
            G = _divide_monomial(G, 0, 1)
            terms = G.terms
        if G.constant_value() != 0 or not terms:
            return
        for (ia, ja), (ib, jb), slope in _lower_hull(list(terms)):
            m, q = slope.numerator, slope.denominator
            L = q * ia + m * ja
            K = (ja - jb) // q
            psi = UniPoly([terms.get((ib - m * k, jb + q * k), 0) for k in range(K + 1)])
            _, factors = factor_over(psi, fld)
            for phi, mult in factors:
                if phi.degree == 1:
                    new_fld, z = fld, -phi[0] / phi[1]
                elif fld == QQ:
                    new_fld = FieldExt(phi, check=False)
                    z = new_fld.gen
                else:
                    raise UnsupportedExtensionError(
                        "branch needs an extension of a non-rational residue field",
                        system={"field": fld.minpoly_text(), "factor": phi.to_str("z")},
                    )
                a, b = _bezout(q, m)
                gamma, beta = z**b, z**a
                G1 = _edge_substitute(G, gamma, beta, q, m, L)
                ctx1 = ctx.compose(gamma, beta, q, m)
                if mult == 1:
                    if all(j >= 1 for _, j in G1.terms):
                        tau = LaurentSeries.zero()
                    else:
                        tau = _simple_root(G1, self.budget.inner)
                    self.emit(ctx1, tau, new_fld)
                else:
                    self.run(G1, new_fld, ctx1, depth + 1)


def newton_puiseux(f, point=(0, 0), budget=None):
    """Branches of the curve ``f = 0`` at ``point``.

    Parameters
    ----------
    f : MultiPoly
        Squarefree curve equation in ``(s, t)``.
    point : pair
        Coordinates of a point on the curve, rational or in one ``Q(theta)``.
    budget : PrecisionBudget, optional
        ``budget.inner`` is the number of Newton-iterated terms per branch.

    Returns
    -------
    list of PuiseuxBranch
        One branch per conjugacy class, sorted by
        :meth:`PuiseuxBranch.sort_key` with ``index`` set accordingly.
    """
    budget = budget or PrecisionBudget()
    if f.is_zero() or not is_squarefree(f):
        raise NonReducedError(f"{f} is not squarefree")
    base = field_of(*point, *f.terms.values())
    point = tuple(base.convert(c) if base != QQ else Fraction(c) for c in point)
    if f.evaluate(point) != 0:
        raise NotOnCurveError(f"point {[scalar_text(c) for c in point]} is not on {f}")
    G = f.translate(point)
    ex = _Expander(budget, base)
    ex.run(G, base, _ROOT, 0)
    branches = [PuiseuxBranch(point, e, S, T, fld, base) for e, S, T, fld in ex.found]
    branches.sort(key=PuiseuxBranch.sort_key)
    return [
        PuiseuxBranch(b.point, b.e, b.S, b.T, b.field, b.base_field, i)
        for i, b in enumerate(branches)
    ]


def point_json(point):
    return [scalar_json(c) for c in point]
