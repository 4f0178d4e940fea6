"""Deformation of a branch to the tower coordinates ``(u, g)`` with ``f = g``.

With the "t" normalization ``S(u, g) = S(u)`` stays put and
``T(u, g) = T(u) + h`` where ``h`` solves

    sum_j c_j(u) * h**j = g,   c_j = (1/j!) * d^j f / dt^j  along the branch,

order by order in ``g``.  The "s" normalization swaps the roles.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from ..algebra.multipoly import MultiPoly, poly_gcd
from ..errors import NonReducedError, PrecisionError
from .budget import PrecisionBudget
from .laurent import LaurentSeries
from .tower import TowerSeries


def _as_series(x):
    return x if isinstance(x, LaurentSeries) else LaurentSeries.const(x)


def _as_tower(x):
    return x if isinstance(x, TowerSeries) else TowerSeries._coerce(x)


@dataclass(frozen=True, eq=False)
class DeformedBranch:
    """Tower coordinates of a branch chain.

    ``S`` and ``T`` are displacements from ``point``; ``normalization`` names
    the coordinate that carries the ``g``-dependence.
    """

    curve: MultiPoly
    point: tuple
    S: TowerSeries
    T: TowerSeries
    normalization: str
    budget: PrecisionBudget

    def coords(self):
        return {"s": self.point[0] + self.S, "t": self.point[1] + self.T}

    def jacobian(self):
        """``S_u * T_g - S_g * T_u``, so that ``ds^dt = J du^dg``."""
        S, T = self.S, self.T
        return S.diff_u() * T.diff_g() - S.diff_g() * T.diff_u()

    def evaluate(self, p):
        """Plain substitution ``p(point + (S, T))``."""
        return _as_tower(p.evaluate(self.coords()))

    def residual(self):
        """``f(S, T) - g``; zero to precision by construction."""
        return self.evaluate(self.curve) - TowerSeries.g()


def _taylor_coeffs(f, var, values):
    """``[(1/j!) d^j f/dvar^j at values for j = 0..deg]`` as Laurent series."""
    out = []
    d = f
    for j in range(f.degree(var) + 1):
        out.append(_as_series(d.evaluate(values)) * Fraction(1, factorial(j)))
        d = d.diff(var)
    return out


def _solve_h(cs, budget):
    """Power series ``h`` in ``g`` with ``h(0) = 0`` and ``sum cs[j] h^j = g``.

    ``pw[j][n]`` holds the ``g^n`` coefficient of ``h^j``; the coefficient
    of ``g^k`` in ``h^j`` for ``j >= 2`` only needs ``h_1 .. h_(k-1)``.
    """
    Q = budget.outer
    c1 = cs[1]
    if c1.is_zero_to_precision():
        raise PrecisionError("derivative along the branch is zero to precision")
    c1_inv = c1.inverse(cap=budget.inner)
    deg = len(cs) - 1
    hs = [None, c1_inv]
    pw = [None, hs] + [[None] * Q for _ in range(2, deg + 1)]
    for k in range(2, Q):
        acc = None
        for j in range(2, deg + 1):
            term = None
            for i in range(1, k - j + 2):
                prev = pw[j - 1][k - i]
                if prev is None:
                    continue
                p = hs[i] * prev
                term = p if term is None else term + p
            pw[j][k] = term
            if term is not None:
                p = cs[j] * term
                acc = p if acc is None else acc + p
        hk = LaurentSeries.zero() if acc is None else -(acc * c1_inv)
        hs.append(hk)
    return hs[1:]


def hensel_deform(f, branch, budget=None, normalization=None):
    """Deform ``branch`` so that ``f(S(u, g), T(u, g)) = g``.

    Parameters
    ----------
    f : MultiPoly
        The chain's curve; ``branch`` must be a branch of ``f``.
    branch : PuiseuxBranch
    budget : PrecisionBudget, optional
        ``outer`` ``g``-terms are computed.
    normalization : {"t", "s", None}
        Which coordinate to deform.  ``None`` prefers ``"t"`` and falls back
        to ``"s"`` when ``df/dt`` vanishes identically along the branch.

    Returns
    -------
    DeformedBranch
    """
    budget = budget or PrecisionBudget()
    x0, y0 = branch.point
    values = {"s": x0 + branch.S, "t": y0 + branch.T}
    order = [normalization] if normalization else ["t", "s"]
    chosen = None
    for var in order:
        cs = _taylor_coeffs(f, var, values)
        if len(cs) > 1 and not cs[1].is_exact_zero():
            chosen = var
            break
    if chosen is None:
        if normalization:
            raise NonReducedError(f"d f/d{normalization} vanishes identically along the branch")
        raise NonReducedError("both partial derivatives vanish along the branch")
    hs = _solve_h(cs, budget)
    Q = budget.outer
    if chosen == "t":
        S = TowerSeries.const(branch.S)
        T = TowerSeries(0, [branch.T] + hs, Q)
    else:
        S = TowerSeries(0, [branch.S] + hs, Q)
        T = TowerSeries.const(branch.T)
    out = DeformedBranch(f, branch.point, S, T, chosen, budget)
    res = out.residual()
    if any(c.coeffs for c in res.coeffs):
        raise ArithmeticError(f"deformation check failed: f(S, T) - g = {res}")
    return out


def tower_substitute(r, S, T, budget=None, *, curve=None, point=(0, 0)):
    """Expand a rational function at tower coordinates.

    Parameters
    ----------
    r : RationalFunction or MultiPoly
    S, T : TowerSeries
        Displacements from ``point``.
    curve : MultiPoly, optional
        When given, ``curve(point + (S, T)) = g`` is assumed and factors of
        ``r`` shared with ``curve`` are expanded through that identity instead
        of by direct substitution.  This avoids dividing by a leading
        coefficient that is zero only to precision.
    """
    budget = budget or PrecisionBudget()
    coords = {"s": point[0] + S, "t": point[1] + T}
    num, den = (r.num, r.den) if hasattr(r, "den") else (r, None)
    sub = _Substituter(coords, curve, budget)
    value = sub.tower_of(num)
    if den is not None and not den.is_constant():
        value = value * sub.tower_of(den).inverse(cap=budget.outer, inner_cap=budget.inner)
    elif den is not None:
        value = value * (1 / den.constant_value())
    return value


class _Substituter:
    def __init__(self, coords, curve, budget):
        self.coords = coords
        self.curve = curve
        self.budget = budget
        self.g = TowerSeries.g()

    def plain(self, p):
        return _as_tower(p.evaluate(self.coords))

    def on_branch(self, p):
        """``p`` restricted to ``g = 0`` as a Laurent series in ``u``."""
        vals = {v: x.coefficient(0) for v, x in self.coords.items()}
        return _as_series(p.evaluate(vals))

    def tower_of(self, p):
        if p.is_constant() or self.curve is None:
            return self.plain(p)
        d = poly_gcd(p, self.curve)
        if d.is_constant():
            return self.plain(p)
        e = self.curve.exact_div(d)
        if self.on_branch(e).coeffs:
            e_inv = self.plain(e).inverse(cap=self.budget.outer, inner_cap=self.budget.inner)
            d_val = self.g * e_inv
        elif self.on_branch(d).coeffs:
            d_val = self.plain(d)
        else:
            raise PrecisionError("cannot decide which factor of the curve carries the branch")
        return d_val * self.tower_of(p.exact_div(d))
