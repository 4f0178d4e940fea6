from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from residue.algebra.multipoly import MultiPoly
from residue.algebra.parser import parse_expression as P
from residue.curves import (
    analyze_singularity,
    fundamental_class_check,
    membership_bound,
    singular_points,
    test_membership as membership,
)
from residue.errors import UnsupportedExtensionError
from residue.fixtures import curve_table
from residue.forms import Chain, GeneralizedFraction
from residue.series.budget import PrecisionBudget

F = Fraction
CURVES = curve_table()
B = PrecisionBudget(inner=12, outer=4)
s, t = MultiPoly.var("s"), MultiPoly.var("t")
ONE = MultiPoly.constant(1)


def report(name, point=(0, 0)):
    return analyze_singularity(CURVES[name], point, B)


def test_singular_points_examples():
    assert [(p, fld.degree) for p, fld in singular_points(CURVES["node"])] == [((0, 0), 1)]
    assert singular_points(CURVES["conic"]) == []
    assert [p for p, _ in singular_points(CURVES["tacnode"])] == [(0, 0)]
    assert singular_points(CURVES["parabola"]) == []


def test_singular_points_irrational():
    pts = singular_points(P("t^2 - (s^2 - 2)^2"))
    assert len(pts) == 1
    (x, y), fld = pts[0]
    assert fld.degree == 2 and x * x == 2 and y == 0


def test_singular_points_degree_cap():
    with pytest.raises(ValueError):
        singular_points(P("t^2 - s^9"))


def test_nested_extension_rejected():
    f = P("t^2 - (s^2 - 2)^2*(s + 1)")
    with pytest.raises(UnsupportedExtensionError):
        for pt, _ in singular_points(f):
            analyze_singularity(f, pt, B)


@pytest.mark.parametrize(
    "name, vdim, nbranches",
    [("node", 1, 2), ("cusp", 0, 1), ("inode", 1, 1), ("tacnode", 1, 2)],
)
def test_vdim_table(name, vdim, nbranches):
    r = report(name)
    assert r.vdim == vdim
    assert len(r.branches) == nbranches
    assert r.unibranch == (vdim == 0)


def test_inode_residue_field_degree():
    r = report("inode")
    (b,) = r.branches
    assert b.field.degree == 2 and b.class_size == 2 and r.field.degree == 1


def test_membership_bound_examples():
    cusp = GeneralizedFraction(ONE, CURVES["cusp"], 1)
    (c,) = Chain.all_at(CURVES["cusp"], (0, 0), B)
    bound = membership_bound(cusp, c)
    assert bound.N == 1 and sorted(bound.weights) == [2, 3]
    assert bound.monomials() == [(0, 0)]
    node = GeneralizedFraction(ONE, CURVES["node"], 1)
    for c in Chain.all_at(CURVES["node"], (0, 0), B):
        bound = membership_bound(node, c)
        assert bound.N == 0 and bound.monomials() == [(0, 0)]
    zero = GeneralizedFraction(CURVES["node"], CURVES["node"], 1)
    assert membership_bound(zero, c).N < 0


def test_membership_examples():
    node = GeneralizedFraction(ONE, CURVES["node"], 1)
    m = membership(node, report("node"))
    assert not m.in_l
    assert sorted(v.value for v in m.residues.values()) == [F(-1, 2), F(1, 2)]
    assert membership(GeneralizedFraction(ONE, CURVES["cusp"], 1), report("cusp")).in_l
    assert membership(GeneralizedFraction(s * CURVES["node"], CURVES["node"], 1), report("node")).in_l


def test_membership_report_invariant():
    m = membership(GeneralizedFraction(s, CURVES["tacnode"], 1), report("tacnode"))
    assert m.in_l == all(v.is_zero() for v in m.residues.values())


def test_tacnode_class_fails_only_beyond_monomial_one():
    m = membership(GeneralizedFraction(ONE, CURVES["tacnode"], 1), report("tacnode"))
    assert not m.in_l
    assert all(m.residues[(b, (0, 0))].is_zero() for b in (0, 1))


@pytest.mark.parametrize("name", ["node", "cusp", "tacnode", "inode"])
def test_fundamental_class_vanishes(name):
    fc = fundamental_class_check(CURVES[name], report(name))
    assert fc.all_zero
    assert fc.residues


def test_fundamental_class_smooth_curve_is_vacuous():
    assert singular_points(CURVES["parabola"]) == []
    fc = fundamental_class_check(CURVES["parabola"], None)
    assert fc.all_zero and fc.residues == {}


coefficients = st.lists(st.integers(-3, 3), min_size=6, max_size=6)
MONOMIALS = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]


@settings(max_examples=10)
@given(coefficients, coefficients)
def test_passing_classes_form_a_subspace(a, b):
    f = CURVES["node"]
    r = report("node")
    passing = [
        s**i * t**j
        for i, j in MONOMIALS
        if membership(GeneralizedFraction(s**i * t**j, f, 1), r).in_l
    ]
    assert passing
    pa = sum((c * p for c, p in zip(a, passing)), MultiPoly.constant(0))
    pb = sum((c * p for c, p in zip(b, passing)), MultiPoly.constant(0))
    assert membership(GeneralizedFraction(pa + pb, f, 1), r).in_l
