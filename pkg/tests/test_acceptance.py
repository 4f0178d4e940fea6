"""Acceptance criteria 1-8, each at exact equality.

Every test prints one ``criterion N: PASS|FAIL`` line.  Random inputs come
from seeded generators, so each run checks the same cases.
"""

import random
from contextlib import contextmanager
from fractions import Fraction

import pytest
import sympy

from residue.algebra.factor import factor_rational
from residue.algebra.multipoly import MultiPoly
from residue.algebra.parser import parse_expression as P
from residue.algebra.ratfunc import RationalFunction
from residue.algebra.unipoly import UniPoly
from residue.curves import (
    analyze_singularity,
    fundamental_class_check,
    fundamental_classes,
    test_membership as membership,
)
from residue.fixtures import curve_table
from residue.forms import (
    Chain,
    DiffForm1,
    DiffForm2,
    GeneralizedFraction,
    global_residue_check_p1,
    local_residue_theorem_check,
    parshin_residue,
    residue_independence_check,
)
from residue.series.budget import PrecisionBudget
from residue.series.hensel import hensel_deform
from residue.series.laurent import LaurentSeries, residue_1d
from residue.series.puiseux import newton_puiseux

import oracle

F = Fraction
CURVES = curve_table()
BUDGET = PrecisionBudget()
ORIGIN = (0, 0)
s, t = MultiPoly.var("s"), MultiPoly.var("t")
ONE = MultiPoly.constant(1)
ZERO = MultiPoly.constant(0)

# Magnitude of the node branch residues of [ds^dt/f], frozen from the
# closed-form oracle in oracle.py (explicit square roots, sympy residue).
NODE_GOLDEN = F(1, 2)


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(n, text):
        try:
            yield
        except BaseException:
            with capsys.disabled():
                print(f"\ncriterion {n}: FAIL  {text}")
            raise
        with capsys.disabled():
            print(f"\ncriterion {n}: PASS  {text}")

    return run


def rand_poly(rng, max_degree, lo=-5, hi=5):
    p = ZERO
    for i in range(max_degree + 1):
        for j in range(max_degree + 1 - i):
            if rng.random() < 0.4:
                p = p + rng.randint(lo, hi) * s**i * t**j
    return p


# ----------------------------------------------------------------------


def test_criterion_1_node_example(criterion):
    with criterion(1, "node: opposite nonzero residues, not in L, fundamental class zero"):
        f = CURVES["node"]
        cls = GeneralizedFraction(ONE, f, 1, "node")
        chains = Chain.all_at(f, ORIGIN, BUDGET)
        values = [parshin_residue(cls, c).value for c in chains]
        doubled = [parshin_residue(cls, c, BUDGET.doubled()).value for c in chains]
        assert values == doubled
        assert values[0] != 0 and values[0] == -values[1]

        # independent oracle: closed-form square roots, one per branch
        for c, v in zip(chains, values):
            sign = c.branch.T.terms()[0][1]
            expected = oracle.branch_residue(sympy.Integer(1), 1, *oracle.NODE[sign])
            assert v == oracle.to_fraction(expected)
        assert sorted(abs(v) for v in values) == [NODE_GOLDEN, NODE_GOLDEN]

        report = analyze_singularity(f, ORIGIN, BUDGET)
        assert not membership(cls, report).in_l

        fc = fundamental_class_check(f, report)
        assert fc.all_zero
        assert {k[1] for k in fc.residues} == {0, 1}
        assert membership(fundamental_classes(f)["ds^df/f"], report).in_l


def test_criterion_2_residue_1d(criterion):
    with criterion(2, "residue_1d: du/u, u^i du, linearity on 50 random pairs"):
        u = LaurentSeries.u()
        assert residue_1d(u.inverse()) == 1
        for i in range(-5, 6):
            if i != -1:
                assert residue_1d(u**i) == 0
        rng = random.Random(2)

        def rand_series():
            low = rng.randint(-6, 2)
            cs = [F(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(rng.randint(1, 9))]
            return LaurentSeries(low, cs)

        for _ in range(50):
            a, b = rand_series(), rand_series()
            x, y = F(rng.randint(-9, 9), rng.randint(1, 9)), F(rng.randint(-9, 9), rng.randint(1, 9))
            assert residue_1d(a * x + b * y) == x * residue_1d(a) + y * residue_1d(b)


def test_criterion_3_global_residue_theorem(criterion):
    with criterion(3, "P^1 residue sums vanish for 50 random forms"):
        rng = random.Random(3)
        x = UniPoly([0, 1])
        irrational = 0
        for _ in range(50):
            den = UniPoly([rng.randint(1, 5)])
            while True:
                kind = rng.choice(["linear", "sqrt", "quadratic", "cubic"])
                if kind == "linear":
                    fac = x - rng.randint(-4, 4)
                elif kind == "sqrt":
                    fac = x * x - rng.choice([2, 3, 5, -1, -3, 7])
                elif kind == "quadratic":
                    fac = x * x + rng.randint(-3, 3) * x + rng.randint(-3, 3)
                else:
                    fac = x**3 - rng.choice([2, 3, -5])
                if den.degree + fac.degree > 6:
                    break
                den = den * fac
                if rng.random() < 0.3:
                    break
            if den.degree == 0:
                den = den * x
            num = UniPoly([rng.randint(-9, 9) for _ in range(rng.randint(1, 9))])
            r = RationalFunction(MultiPoly.from_unipoly(num, "s"), MultiPoly.from_unipoly(den, "s"))
            result = global_residue_check_p1(DiffForm1(r, 0))
            assert result.total == 0
            irrational += any(label.startswith("roots of") for label, _ in result.contributions)
        assert irrational > 0


def _local_forms(rng):
    lines = [s, t, s - t, s + 2 * t, 3 * s - t, s + t]
    curved = [t - s**2, s - t**2, t + s**2 - s * t, CURVES["node"], CURVES["cusp"], t**2 - s**2 - s**3 + t**3]
    pool = lines + curved
    out = []
    while len(out) < 20:
        k = rng.randint(1, 3)
        facs = rng.sample(pool, k)
        den = ONE
        for fac in facs:
            den = den * fac
        if den.degree() > 8:
            continue
        num = rand_poly(rng, 2)
        if num.is_zero():
            num = ONE
        out.append(DiffForm2(RationalFunction(num, den)))
    return out


def test_criterion_4_local_residue_theorem(criterion):
    with criterion(4, "local residue sums vanish at the origin (fixtures + 20 random)"):
        fixed = [DiffForm2(RationalFunction(ONE, s * t))] + [
            GeneralizedFraction(ONE, CURVES[name], 1) for name in ("node", "cusp", "tacnode")
        ]
        for w in fixed:
            r = local_residue_theorem_check(w, ORIGIN, BUDGET)
            assert r.total == 0 and r.contributions
        for w in _local_forms(random.Random(4)):
            r = local_residue_theorem_check(w, ORIGIN, BUDGET)
            assert r.total == 0


INDEPENDENCE_FIXTURES = [
    ("node", ORIGIN),
    ("cusp", ORIGIN),
    ("tacnode", ORIGIN),
    ("inode", ORIGIN),
    ("parabola", ORIGIN),
    ("conic", (1, 0)),
    ("t^2 - s^2 - s^4", ORIGIN),
    ("(t - s^2)^2 - s^5", ORIGIN),
    ("t", ORIGIN),
    ("s", ORIGIN),
]


def test_criterion_5_normalization_independence(criterion):
    with criterion(5, "both normalizations agree on >= 10 fixture chains"):
        checked = 0
        for name, point in INDEPENDENCE_FIXTURES:
            f = CURVES[name] if name in CURVES else P(name)
            forms = [GeneralizedFraction(ONE, f, 1), GeneralizedFraction(s + t * t, f, 2)]
            for c in Chain.all_at(f, point, BUDGET):
                results = [residue_independence_check(w, c) for w in forms]
                if None in results:
                    continue
                assert all(results)
                checked += 1
        assert checked >= 10


def test_criterion_6_unibranch_dichotomy(criterion):
    with criterion(6, "cusp: 30 random classes in L; node, Q(i)-node: [ds^dt/f] not in L"):
        rng = random.Random(6)
        cusp = CURVES["cusp"]
        report = analyze_singularity(cusp, ORIGIN, BUDGET)
        assert report.vdim == 0
        tested = 0
        while tested < 30:
            p = rand_poly(rng, 5)
            cls = GeneralizedFraction(p, cusp, rng.randint(1, 2))
            if cls.is_zero():
                continue
            assert membership(cls, report).in_l
            tested += 1
        for name in ("node", "inode"):
            f = CURVES[name]
            report = analyze_singularity(f, ORIGIN, BUDGET)
            assert report.vdim == 1
            assert not membership(GeneralizedFraction(ONE, f, 1), report).in_l


STABILITY_CLASSES = [
    ("node", ONE, 1),
    ("node", s + t, 2),
    ("cusp", s, 2),
    ("tacnode", s, 1),
    ("tacnode", t, 2),
    ("inode", ONE, 1),
    ("inode", s * t, 2),
]


def test_criterion_7_structural_invariants(criterion):
    with criterion(7, "precision doubling, back-substitution, Hensel identity, factor multiply-back"):
        for name, p, m in STABILITY_CLASSES:
            f = CURVES[name]
            for c in Chain.all_at(f, ORIGIN, BUDGET):
                cls = GeneralizedFraction(p, f, m)
                assert parshin_residue(cls, c, BUDGET) == parshin_residue(cls, c, BUDGET.doubled())

        for name in ("node", "cusp", "tacnode", "inode", "parabola", "st", "s", "t"):
            f = CURVES[name]
            for b in newton_puiseux(f, ORIGIN, BUDGET):
                r = b.residual(f)
                assert r.is_zero_to_precision() and r.top >= BUDGET.inner
                d = hensel_deform(f, b, BUDGET)
                res = d.residual()
                assert all(x.is_zero_to_precision() for x in res.coeffs)
                assert res.top >= BUDGET.outer

        rng = random.Random(7)
        for _ in range(100):
            p = UniPoly([rng.randint(1, 4)])
            for _ in range(rng.randint(1, 3)):
                q = UniPoly([rng.randint(-6, 6) for _ in range(rng.randint(2, 4))])
                if q.degree > 0:
                    p = p * q
            if p.degree == 0:
                p = p * UniPoly([1, 1])
            unit, facs = factor_rational(p)
            prod = UniPoly([unit])
            for fac, mult in facs:
                prod = prod * fac**mult
            assert prod == p


@pytest.mark.parametrize(
    "name, vdim", [("node", 1), ("cusp", 0), ("inode", 1), ("tacnode", 1)]
)
def test_criterion_8_vdim_table(criterion, name, vdim):
    with criterion(8, f"vDim({name}) = {vdim}"):
        assert analyze_singularity(CURVES[name], ORIGIN, BUDGET).vdim == vdim
