"""Singularity analysis and the residue test for membership in L(X, Y).

For a class ``a = [p ds^dt / f^m]`` and a branch ``x~`` of ``f`` at ``x``,
membership needs ``Res(h * a) = 0`` for every ``h`` in the local ring.  The
test runs over the monomials ``(s - x0)^i (t - y0)^j`` whose weight
``i*a_s + j*a_t`` is at most :func:`membership_bound`; heavier monomials
cannot reach the ``u^-1 g^-1`` coefficient.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .algebra.factor import factor_over, factor_rational, field_for_factor
from .algebra.multipoly import MultiPoly, bivariate_resultant, is_squarefree, poly_gcd
from .algebra.numberfield import QQ, FieldExt, scalar_text
from .algebra.unipoly import UniPoly, gcd as uni_gcd
from .errors import NonReducedError, UnsupportedExtensionError
from .forms import ORIENTATION, Chain, GeneralizedFraction, ResidueValue
from .series.budget import PrecisionBudget, with_escalation
from .series.hensel import hensel_deform, tower_substitute
from .series.laurent import INF
from .series.puiseux import newton_puiseux, point_json
from .series.tower import TowerSeries

DEGREE_CAP = 8


# ----------------------------------------------------------------------
# singular locus


def _univariate_at(p, s0, fld):
    """``p(s0, t)`` as a :class:`UniPoly` over ``fld``."""
    up = p.to_univariate("t")
    cs = []
    for c in up.coeffs:
        v = c.evaluate({"s": s0, "t": 0})
        cs.append(fld.convert(v) if fld != QQ else Fraction(v))
    return UniPoly(cs)


def _point_key(item):
    point, fld = item
    return (fld.minpoly_text(), tuple(scalar_text(c) for c in point))


def singular_points(f, degree_cap=DEGREE_CAP):
    """Common zeros of ``f``, ``f_s`` and ``f_t`` in the affine plane.

    Returns
    -------
    list of (point, field)
        Each point has coordinates in ``field`` (QQ or one ``Q(theta)``).

    Raises
    ------
    UnsupportedExtensionError
        For a point whose coordinates need a tower of two extensions.
    """
    if f.degree() > degree_cap:
        raise ValueError(f"curve degree {f.degree()} exceeds the cap {degree_cap}")
    if not is_squarefree(f):
        raise NonReducedError(f"{f} is not squarefree")
    fs, ft = f.diff("s"), f.diff("t")
    if f.degree("t") <= 0:
        return []
    cand = None
    for a, b in ((f, ft), (f, fs), (fs, ft)):
        if a.is_zero() or b.is_zero():
            continue
        r = bivariate_resultant(a, b, "t")
        if r.is_zero():
            continue
        cand = r if cand is None else poly_gcd(cand, r)
    if cand is None or cand.is_constant():
        return []
    out = []
    _, s_factors = factor_rational(cand.to_unipoly("s"))
    for phi, _ in s_factors:
        fld, s0 = field_for_factor(phi)
        h = UniPoly()
        for p in (f, fs, ft):
            h = uni_gcd(h, _univariate_at(p, s0, fld))
        if h.degree <= 0:
            continue
        _, t_factors = factor_over(h, fld)
        for psi, _ in t_factors:
            if psi.degree == 1:
                out.append(((s0, -psi[0] / psi[1]), fld))
            elif fld == QQ:
                tfld = FieldExt(psi, check=False)
                out.append(((tfld.convert(s0), tfld.gen), tfld))
            else:
                raise UnsupportedExtensionError(
                    "singular point needs a nested extension",
                    system={"s": phi.to_str("s"), "t": psi.to_str("t")},
                )
    out.sort(key=_point_key)
    return out


# ----------------------------------------------------------------------
# reports


@dataclass(frozen=True, eq=False)
class SingularityReport:
    """Branches above a point and the dimension of ``V(x)``."""

    curve: MultiPoly
    point: tuple
    field: object
    branches: tuple
    budget: PrecisionBudget

    @property
    def vdim(self):
        return sum(b.class_size for b in self.branches) - 1

    @property
    def unibranch(self):
        return self.vdim == 0

    def chains(self, curve=None):
        curve = curve or self.curve
        return [Chain(curve, b.point, b.index, b, self.budget) for b in self.branches]

    def to_json(self):
        return {
            "coords": point_json(self.point),
            "field": self.field.minpoly_text(),
            "vDim": self.vdim,
            "unibranch": self.unibranch,
            "branches": [b.to_json() for b in self.branches],
        }


def analyze_singularity(f, point, budget=None):
    budget = budget or PrecisionBudget()
    branches = tuple(newton_puiseux(f, point, budget))
    fld = branches[0].base_field if branches else QQ
    pt = branches[0].point if branches else tuple(point)
    return SingularityReport(f, pt, fld, branches, budget)


# ----------------------------------------------------------------------
# membership


@dataclass(frozen=True)
class MembershipBound:
    """``N`` with the coordinate weights used for the monomial battery."""

    N: int
    weights: tuple

    def monomials(self, floor=None):
        N = self.N if floor is None else max(self.N, floor)
        ws, wt = self.weights
        out = []
        i = 0
        while i * ws <= N:
            j = 0
            while i * ws + j * wt <= N:
                out.append((i, j))
                j += 1
            i += 1
        return out


def _val_or(x, default):
    return default if x.is_exact_zero() else x.val_bound()


def _bound_from(c, deformed, m):
    """The weight bound for a class tower ``c`` of pole order ``m``."""
    if deformed.normalization == "t":
        X, Y = deformed.T, deformed.S
    else:
        X, Y = deformed.S, deformed.T
    a_X = _val_or(X.coefficient(0), 1)
    a_Y = _val_or(Y.coefficient(0), 1)
    delta = 0
    for k in range(1, m):
        vk = X.coefficient(k).val_bound()
        if vk != INF:
            delta = max(delta, ceil(Fraction(a_X - vk, k)))
    N = None
    for k in range(m):
        ck = c.coefficient(-1 - k)
        if ck.is_exact_zero():
            continue
        cand = -1 - ck.val_bound() + k * delta
        N = cand if N is None else max(N, cand)
    if N is None:
        N = -1
    weights = (a_Y, a_X) if deformed.normalization == "t" else (a_X, a_Y)
    return MembershipBound(int(N), weights)


def _class_tower(cls, chain, budget):
    branch = chain.branch_at(budget)
    deformed = hensel_deform(chain.curve, branch, budget)
    coeff = cls.form().coeff
    c = tower_substitute(coeff, deformed.S, deformed.T, budget, curve=chain.curve, point=branch.point)
    return c * deformed.jacobian(), deformed, branch


def membership_bound(cls, chain, budget=None):
    """Weight bound ``N`` for the monomial battery of ``cls`` on ``chain``.

    A monomial whose weight ``i*a_s + j*a_t`` exceeds ``N`` multiplies the
    class into something with no ``u^-1 g^-1`` term.  Returns ``N = -1``
    (empty battery) for the zero class.
    """
    budget = budget or chain.budget
    if cls.is_zero():
        return MembershipBound(-1, (1, 1))

    def compute(b):
        c, deformed, _ = _class_tower(cls, chain, b)
        return _bound_from(c, deformed, cls.m)

    return with_escalation(budget, compute)


def _battery(cls, chain, budget, floor=None, emit=None):
    """Residues of ``h * cls`` for every monomial ``h`` within the bound."""
    if cls.is_zero():
        return MembershipBound(-1, (1, 1)), {}

    def compute(b):
        c, deformed, branch = _class_tower(cls, chain, b)
        if emit is not None:
            emit(b, branch, deformed, c)
        bound = _bound_from(c, deformed, cls.m)
        out = {}
        S, T = deformed.S, deformed.T
        for i, j in bound.monomials(floor):
            h = TowerSeries.const(1)
            if i:
                h = h * S**i
            if j:
                h = h * T**j
            value = ORIENTATION * (h * c).residue()
            out[(i, j)] = ResidueValue.make(value, branch.field, branch.base_field)
        return bound, out

    return with_escalation(budget, compute)


@dataclass(frozen=True, eq=False)
class MembershipReport:
    cls: GeneralizedFraction
    residues: dict
    bounds: dict
    in_l: bool

    @property
    def monomial_bound(self):
        return max((b.N for b in self.bounds.values()), default=-1)

    def to_json(self):
        return {
            "class": self.cls.to_str(),
            "inL": self.in_l,
            "monomialBound": self.monomial_bound,
            "residues": [
                {"branch": k[0], "monomial": list(k[1]), **v.to_json()}
                for k, v in sorted(self.residues.items())
            ],
        }


def test_membership(cls, report, budget=None, emit=None):
    """Decide membership of ``cls`` in ``L(X, Y)`` at the point of ``report``.

    ``inL`` is true iff every residue of the monomial battery vanishes in
    ``k(x~)`` on every branch.
    """
    budget = budget or report.budget
    residues, bounds = {}, {}
    for chain in report.chains(cls.f):
        bound, vals = _battery(cls, chain, budget, emit=emit)
        bounds[chain.index] = bound
        for mono, rv in vals.items():
            residues[(chain.index, mono)] = rv
    in_l = all(rv.is_zero() for rv in residues.values())
    return MembershipReport(cls, residues, bounds, in_l)


test_membership.__test__ = False


@dataclass(frozen=True, eq=False)
class FundamentalClassReport:
    residues: dict
    all_zero: bool

    def to_json(self):
        return {
            "allZero": self.all_zero,
            "residues": [
                {"class": k[0], "branch": k[1], "monomial": list(k[2]), **v.to_json()}
                for k, v in sorted(self.residues.items())
            ],
        }


def fundamental_classes(f):
    """``[ds^df/f]`` and ``[dt^df/f]`` as generalized fractions."""
    return {
        "ds^df/f": GeneralizedFraction(f.diff("t"), f, 1),
        "dt^df/f": GeneralizedFraction(-f.diff("s"), f, 1),
    }


def fundamental_class_check(f, report, budget=None, emit=None):
    """Residue battery of the fundamental class components on every branch.

    ``report`` may be ``None`` (no singular point): the battery is empty.
    The battery always includes the monomial 1.
    """
    residues = {}
    if report is not None:
        budget = budget or report.budget
        for label, cls in fundamental_classes(f).items():
            for chain in report.chains(f):
                _, vals = _battery(cls, chain, budget, floor=0, emit=emit)
                for mono, rv in vals.items():
                    residues[(label, chain.index, mono)] = rv
    return FundamentalClassReport(residues, all(rv.is_zero() for rv in residues.values()))
