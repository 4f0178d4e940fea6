"""Differential forms on the plane and their residues along branch chains.

A 2-form ``r ds^dt`` is pulled back to the tower ``k(x~)((u))((g))`` of a
chain (plane, curve, branch point) through the deformed coordinates
``(S(u, g), T(u, g))`` with ``f(S, T) = g``:

    r ds^dt = r(S, T) * (S_u T_g - S_g T_u) du^dg,

and the residue is the coefficient of ``u^-1 g^-1`` times ``ORIENTATION``.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .algebra.factor import factor_rational, field_for_factor
from .algebra.multipoly import MultiPoly, is_squarefree, squarefree_part
from .algebra.numberfield import QQ, AlgNumber, scalar_json, scalar_text
from .algebra.numberfield import trace_to_base as _field_trace
from .algebra.ratfunc import RationalFunction
from .algebra.unipoly import UniPoly
from .errors import NonReducedError
from .series.budget import PrecisionBudget, with_escalation
from .series.hensel import hensel_deform, tower_substitute
from .series.laurent import LaurentSeries, residue_1d
from .series.puiseux import newton_puiseux

ORIENTATION = 1
"""Sign fixed so that ``ds^dt/(st)`` on the chain through ``{t = 0}`` gives +1."""

__all__ = [
    "ORIENTATION",
    "DiffForm1",
    "DiffForm2",
    "GeneralizedFraction",
    "Chain",
    "ResidueValue",
    "d",
    "wedge",
    "residue_1d",
    "parshin_residue",
    "residue_independence_check",
    "global_residue_check_p1",
    "local_residue_theorem_check",
    "trace_to_base",
]


def _rf(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, MultiPoly):
        return RationalFunction(x, reduce=False)
    return RationalFunction(MultiPoly.constant(x))


# ----------------------------------------------------------------------
# forms


@dataclass(frozen=True, eq=False)
class DiffForm1:
    """``coeff_s ds + coeff_t dt``."""

    coeff_s: RationalFunction
    coeff_t: RationalFunction

    def __post_init__(self):
        object.__setattr__(self, "coeff_s", _rf(self.coeff_s))
        object.__setattr__(self, "coeff_t", _rf(self.coeff_t))

    def __eq__(self, other):
        return (
            isinstance(other, DiffForm1)
            and self.coeff_s == other.coeff_s
            and self.coeff_t == other.coeff_t
        )

    def __add__(self, other):
        return DiffForm1(self.coeff_s + other.coeff_s, self.coeff_t + other.coeff_t)

    def scale(self, r):
        return DiffForm1(self.coeff_s * r, self.coeff_t * r)

    def is_zero(self):
        return self.coeff_s.is_zero() and self.coeff_t.is_zero()

    def to_str(self):
        return f"({self.coeff_s}) ds + ({self.coeff_t}) dt"

    __str__ = to_str


@dataclass(frozen=True, eq=False)
class DiffForm2:
    """``coeff ds^dt``."""

    coeff: RationalFunction

    def __post_init__(self):
        object.__setattr__(self, "coeff", _rf(self.coeff))

    def __eq__(self, other):
        return isinstance(other, DiffForm2) and self.coeff == other.coeff

    def __add__(self, other):
        return DiffForm2(self.coeff + other.coeff)

    def scale(self, r):
        return DiffForm2(self.coeff * r)

    def is_zero(self):
        return self.coeff.is_zero()

    def to_str(self):
        return f"({self.coeff}) ds^dt"

    __str__ = to_str


def d(r):
    """Exterior derivative of a rational function."""
    r = _rf(r)
    return DiffForm1(r.diff("s"), r.diff("t"))


def wedge(a, b):
    return DiffForm2(a.coeff_s * b.coeff_t - a.coeff_t * b.coeff_s)


@dataclass(frozen=True, eq=False)
class GeneralizedFraction:
    """The local cohomology class ``[p ds^dt / f^m]``.

    Factors of ``f`` dividing ``p`` are cancelled against the power on
    construction, so ``m`` may drop (to 0 for the zero class).
    """

    p: MultiPoly
    f: MultiPoly
    m: int = 1
    name: str = dc_field(default=None, compare=False)

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("power must be non-negative")
        if not is_squarefree(self.f):
            raise NonReducedError(f"{self.f} is not squarefree")
        p, m = self.p, self.m
        while m > 0 and not p.is_zero() and self.f.divides(p):
            p, m = p.exact_div(self.f), m - 1
        if p.is_zero():
            m = 0
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "m", m)

    def is_zero(self):
        """True for the zero class (no pole along ``f`` left)."""
        return self.m == 0

    def form(self):
        return DiffForm2(RationalFunction(self.p, self.f**self.m))

    def times(self, h):
        """The class of ``h * p ds^dt / f^m`` for a polynomial ``h``."""
        return GeneralizedFraction(h * self.p, self.f, self.m, self.name)

    def to_str(self):
        fname = self.name or f"({self.f})"
        return f"[({self.p}) ds^dt / {fname}^{self.m}]"

    __str__ = to_str


# ----------------------------------------------------------------------
# chains and residue values


@dataclass(frozen=True, eq=False)
class Chain:
    """Saturated chain (plane, curve, branch point).

    ``curve`` must be squarefree.  It may be reducible: the branch selects
    the component, and residues only depend on that component.
    """

    curve: MultiPoly
    point: tuple
    index: int
    branch: object
    budget: PrecisionBudget

    @classmethod
    def at(cls, curve, point=(0, 0), index=0, budget=None):
        budget = budget or PrecisionBudget()
        branches = newton_puiseux(curve, point, budget)
        if not 0 <= index < len(branches):
            raise IndexError(f"branch index {index} out of range ({len(branches)} branches)")
        return cls(curve, branches[index].point, index, branches[index], budget)

    @classmethod
    def all_at(cls, curve, point=(0, 0), budget=None):
        budget = budget or PrecisionBudget()
        return [
            cls(curve, b.point, b.index, b, budget) for b in newton_puiseux(curve, point, budget)
        ]

    def branch_at(self, budget):
        if budget == self.budget:
            return self.branch
        return newton_puiseux(self.curve, self.point, budget)[self.index]


def trace_to_base(v, base=QQ, field=None):
    """Trace of ``v`` from ``field`` (default: the field of ``v``) to ``base``."""
    if field is None:
        field = v.ext if isinstance(v, AlgNumber) else QQ
    if field == base:
        return v
    return _field_trace(field.convert(v), base)


@dataclass(frozen=True)
class ResidueValue:
    """A residue in ``k(x~)`` together with its trace to ``k(x)``."""

    value: object
    traced: object
    field: object = QQ
    base_field: object = QQ

    @classmethod
    def make(cls, value, field, base_field):
        if field != QQ:
            value = field.convert(value)
        traced = trace_to_base(value, base_field, field)
        return cls(value, traced, field, base_field)

    def is_zero(self):
        return self.value == 0

    def text(self, traced=False):
        return scalar_text(self.traced if traced else self.value)

    def to_json(self):
        return {
            "value": scalar_json(self.value),
            "traced": scalar_json(self.traced),
            "field": self.field.minpoly_text(),
        }


# ----------------------------------------------------------------------
# residues


def _coefficient(omega):
    if isinstance(omega, GeneralizedFraction):
        return omega.form().coeff
    if isinstance(omega, DiffForm2):
        return omega.coeff
    return _rf(omega)


def _chain_residue(coeff, chain, budget, normalization):
    branch = chain.branch_at(budget)
    deformed = hensel_deform(chain.curve, branch, budget, normalization)
    c = tower_substitute(
        coeff, deformed.S, deformed.T, budget, curve=chain.curve, point=branch.point
    )
    c = c * deformed.jacobian()
    return ORIENTATION * c.residue(), branch, deformed, c


def parshin_residue(omega, chain, budget=None, normalization=None, emit=None):
    """Residue of a 2-form or generalized fraction along ``chain``.

    Parameters
    ----------
    omega : DiffForm2 or GeneralizedFraction
    chain : Chain
    budget : PrecisionBudget, optional
        Starting budget; escalated on :class:`PrecisionError`.
    normalization : {"t", "s", None}
        Coordinate deformed by :func:`hensel_deform`.
    emit : callable, optional
        Receives ``(budget, branch, deformed, tower)`` for each expansion
        attempted, where ``tower`` is the pulled-back coefficient of
        ``du^dg``.

    Returns
    -------
    ResidueValue
    """
    budget = budget or chain.budget
    coeff = _coefficient(omega)
    branch = chain.branch
    if coeff.is_zero():
        return ResidueValue.make(Fraction(0), branch.field, branch.base_field)

    def compute(b):
        value, br, deformed, c = _chain_residue(coeff, chain, b, normalization)
        if emit is not None:
            emit(b, br, deformed, c)
        return value, br

    value, br = with_escalation(budget, compute)
    return ResidueValue.make(value, br.field, br.base_field)


def residue_independence_check(omega, chain, budget=None):
    """Compare the residues from the two deformation normalizations.

    Returns ``None`` when one of them is unavailable (the corresponding
    partial derivative of the curve vanishes along the branch).
    """
    try:
        a = parshin_residue(omega, chain, budget, normalization="t")
        b = parshin_residue(omega, chain, budget, normalization="s")
    except NonReducedError:
        return None
    return a.value == b.value


@dataclass(frozen=True)
class ResidueSum:
    """Exact total of local residues with the individual contributions."""

    total: object
    contributions: tuple

    @property
    def ok(self):
        return self.total == 0

    def to_json(self):
        return {
            "total": scalar_json(self.total),
            "pass": self.ok,
            "contributions": [
                {"at": label, "value": scalar_json(v)} for label, v in self.contributions
            ],
        }


def _laurent_of_poly(p, point):
    """``p(point + v)`` as an exact Laurent series in ``v``."""
    q = p.compose(UniPoly([point, 1]))
    return LaurentSeries(0, list(q.coeffs))


def global_residue_check_p1(form):
    """Sum of the residues of ``r(s) ds`` over all closed points of P^1.

    ``form`` is a :class:`DiffForm1` with no ``dt`` part whose coefficient
    depends on ``s`` only (or that coefficient itself).  Residues at
    conjugate poles are summed via the trace.
    """
    r = form.coeff_s if isinstance(form, DiffForm1) else _rf(form)
    if isinstance(form, DiffForm1) and not form.coeff_t.is_zero():
        raise ValueError("form has a dt component")
    num, den = r.num.to_unipoly("s"), r.den.to_unipoly("s")
    contributions = []
    total = Fraction(0)
    if den.degree > 0:
        _, factors = factor_rational(den)
        for fac, mult in factors:
            fld, root = field_for_factor(fac)
            cap = mult + 1
            nser = _laurent_of_poly(num, root)
            dser = _laurent_of_poly(den, root)
            local = residue_1d(nser * dser.inverse(cap=cap))
            value = trace_to_base(local, QQ, fld)
            label = scalar_text(root) if fld == QQ else f"roots of {fac.to_str('s')}"
            contributions.append((label, value))
            total += value
    # s = 1/v, ds = -dv/v^2
    dn, dd = num.degree, den.degree
    if num.is_zero():
        at_inf = Fraction(0)
    else:
        nrev = LaurentSeries(dd - dn - 2, list(num.reverse().coeffs))
        drev = LaurentSeries(0, list(den.reverse().coeffs))
        at_inf = -residue_1d(nrev * drev.inverse(cap=max(dn - dd + 2, 1)))
    contributions.append(("∞", at_inf))
    total += at_inf
    return ResidueSum(total, tuple(contributions))


def local_residue_theorem_check(omega, point=(0, 0), budget=None, emit=None):
    """Sum of the traced residues of ``omega`` over all chains through ``point``.

    Chains run over every branch at ``point`` of every component of the
    polar divisor; components not through the point contribute nothing.
    """
    budget = budget or PrecisionBudget()
    coeff = _coefficient(omega)
    den = coeff.den
    if den.is_constant():
        return ResidueSum(Fraction(0), ())
    curve = squarefree_part(den)
    if curve.evaluate(point) != 0:
        return ResidueSum(Fraction(0), ())
    contributions = []
    total = Fraction(0)
    for chain in Chain.all_at(curve, point, budget):
        rv = parshin_residue(DiffForm2(coeff), chain, budget, emit=emit)
        contributions.append((f"branch {chain.index}", rv.traced))
        total = total + rv.traced
    return ResidueSum(total, tuple(contributions))
