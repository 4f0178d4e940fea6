from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from residue.algebra.multipoly import MultiPoly
from residue.algebra.numberfield import adjoin_root
from residue.algebra.parser import parse_rational
from residue.algebra.unipoly import UniPoly
from residue.errors import NonReducedError
from residue.fixtures import curve_table
from residue.forms import (
    Chain,
    DiffForm1,
    DiffForm2,
    GeneralizedFraction,
    d,
    global_residue_check_p1,
    local_residue_theorem_check,
    parshin_residue,
    residue_independence_check,
    trace_to_base,
    wedge,
)
from residue.series.budget import PrecisionBudget

import oracle

F = Fraction
CURVES = curve_table()
B = PrecisionBudget(inner=12, outer=4)
s, t = MultiPoly.var("s"), MultiPoly.var("t")
ONE = MultiPoly.constant(1)


def chains(name, point=(0, 0)):
    return Chain.all_at(CURVES[name], point, B)


def lead_sign(branch):
    """Leading coefficient of T (as +-1 or +-theta)."""
    n, c = branch.T.terms()[0]
    return c


# ----------------------------------------------------------------------
# forms


def test_d_examples():
    f = CURVES["node"]
    assert d(f) == DiffForm1(3 * s**2 + 2 * s, -2 * t)
    assert d(MultiPoly.constant(5)).is_zero()
    assert d(s * t) == DiffForm1(t, s)


def test_wedge_examples():
    ds, dt = DiffForm1(ONE, 0), DiffForm1(0, ONE)
    assert wedge(ds, dt) == DiffForm2(ONE)
    assert wedge(ds, ds).is_zero()
    assert wedge(DiffForm1(s, ONE), dt) == DiffForm2(s)


def test_generalized_fraction_reduces_power():
    f = CURVES["node"]
    c = GeneralizedFraction(s * f, f, 2)
    assert c.m == 1 and c.p == s
    assert GeneralizedFraction(f, f, 1).is_zero()
    with pytest.raises(NonReducedError):
        GeneralizedFraction(ONE, f * f, 1)


# ----------------------------------------------------------------------
# Parshin residues


def test_st_calibration():
    w = DiffForm2(parse_rational("1/(s*t)"))
    (on_t,) = chains("t")
    (on_s,) = chains("s")
    assert parshin_residue(w, on_t).value == 1
    assert parshin_residue(w, on_s).value == -1


def test_node_class_opposite_values():
    cls = GeneralizedFraction(ONE, CURVES["node"], 1, "node")
    values = [parshin_residue(cls, c).value for c in chains("node")]
    assert values == [F(1, 2), F(-1, 2)]


def test_regular_form_has_zero_residue():
    for c in chains("node"):
        assert parshin_residue(DiffForm2(s), c).value == 0
        assert parshin_residue(DiffForm2(parse_rational("1/(s - 1)")), c).value == 0


def _oracle_branches(name):
    if name == "cusp":
        return {1: oracle.CUSP}
    return {"node": oracle.NODE, "tacnode": oracle.TACNODE}[name]


@pytest.mark.parametrize("name", ["node", "tacnode", "cusp"])
@pytest.mark.parametrize("i, j", [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1)])
@pytest.mark.parametrize("m", [1, 2])
def test_residue_matches_sympy_oracle(name, i, j, m):
    f = CURVES[name]
    cls = GeneralizedFraction(s**i * t**j, f, m)
    for c in chains(name):
        got = parshin_residue(cls, c).value
        e, root, eps = _oracle_branches(name)[lead_sign(c.branch)]
        expected = oracle.branch_residue(oracle.S_**i * oracle.T_**j, m, e, root, eps)
        assert got == oracle.to_fraction(expected)


@pytest.mark.parametrize("i, j", [(0, 0), (1, 0), (0, 1)])
def test_inode_matches_explicit_conjugate_pair(i, j):
    # The class representative over Q(theta) against both complex branches.
    cls = GeneralizedFraction(s**i * t**j, CURVES["inode"], 1)
    (c,) = chains("inode")
    rv = parshin_residue(cls, c)
    e, root, eps = oracle.INODE_I
    p = oracle.S_**i * oracle.T_**j
    plus = oracle.branch_residue(p, 1, e, root, eps)
    minus = oracle.branch_residue(p, 1, e, -root, eps)
    re, im = sympy.re(plus), sympy.im(plus)
    theta = c.branch.field.gen
    sign = 1 if lead_sign(c.branch) == theta else -1
    assert rv.value == oracle.to_fraction(re) + sign * oracle.to_fraction(im) * theta
    assert rv.traced == oracle.to_fraction(sympy.simplify(plus + minus))


def test_precision_doubling_is_bit_stable():
    cls = GeneralizedFraction(s + t, CURVES["node"], 2)
    for c in chains("node"):
        a = parshin_residue(cls, c, B)
        b = parshin_residue(cls, c, B.doubled())
        assert a == b


# ----------------------------------------------------------------------
# normalization independence


def test_independence_examples():
    w = DiffForm2(parse_rational("1/(s*t)"))
    (on_t,) = chains("t")
    # {t = 0} has no "s" normalization: d(t)/ds vanishes identically.
    assert residue_independence_check(w, on_t) is None
    assert residue_independence_check(DiffForm2(0), on_t) is True
    cls = GeneralizedFraction(ONE, CURVES["node"], 1)
    for c in chains("node"):
        assert residue_independence_check(cls, c) is True


# ----------------------------------------------------------------------
# class well-definedness


linear = st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(1, 4))


@settings(max_examples=20)
@given(st.lists(linear, min_size=1, max_size=3), st.integers(0, 3), st.integers(0, 3))
def test_f_free_forms_have_zero_residue(lines, i, j):
    den = ONE
    for a, b, c in lines:
        den = den * (a * s + b * t + c)
    beta = DiffForm2(parse_rational(f"({(s**i * t**j).to_str()})/({den.to_str()})"))
    for c in chains("node"):
        assert parshin_residue(beta, c).value == 0


# ----------------------------------------------------------------------
# residue theorems


def test_global_examples():
    r = global_residue_check_p1(DiffForm1(parse_rational("1/s"), 0))
    assert dict(r.contributions) == {"0": 1, "∞": -1} and r.ok
    r = global_residue_check_p1(DiffForm1(parse_rational("1/(s^2 - 1)"), 0))
    assert dict(r.contributions) == {"1": F(1, 2), "-1": F(-1, 2), "∞": 0} and r.ok
    r = global_residue_check_p1(DiffForm1(s, 0))
    assert dict(r.contributions) == {"∞": 0} and r.ok


def test_global_irrational_poles_traced():
    r = global_residue_check_p1(DiffForm1(parse_rational("s/(s^2 - 2)"), 0))
    assert r.ok
    assert dict(r.contributions)["roots of s^2 - 2"] == 1


def test_global_local_values_match_sympy():
    x = sympy.Symbol("s")
    expr = (x**2 + 3) / ((x - 1) ** 2 * (x + 2))
    r = global_residue_check_p1(DiffForm1(parse_rational("(s^2 + 3)/((s - 1)^2*(s + 2))"), 0))
    vals = dict(r.contributions)
    for root in (1, -2):
        assert vals[str(root)] == oracle.to_fraction(sympy.residue(expr, x, root))
    assert r.ok


def test_local_examples():
    r = local_residue_theorem_check(DiffForm2(parse_rational("1/(s*t)")), (0, 0), B)
    assert sorted(v for _, v in r.contributions) == [-1, 1] and r.ok
    cls = GeneralizedFraction(ONE, CURVES["node"], 1)
    r = local_residue_theorem_check(cls, (0, 0), B)
    assert r.ok and len(r.contributions) == 2
    r = local_residue_theorem_check(DiffForm2(parse_rational("1/(s - 1)")), (0, 0), B)
    assert r.ok and r.contributions == ()


# ----------------------------------------------------------------------
# traces


def test_trace_examples():
    qi = adjoin_root(UniPoly([1, 0, 1]))
    qr2 = adjoin_root(UniPoly([-2, 0, 1]))
    assert trace_to_base(F(3), field=qi) == 6
    assert trace_to_base(qr2.gen) == 0
    assert trace_to_base(1 + qi.gen) == 2
    assert trace_to_base(F(5)) == 5
