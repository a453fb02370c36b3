"""Milnor, Tjurina, and Bruce-Roberts numbers: route agreement, vector field
modules, characteristic ideals, and the randomized scanner."""

import random

import pytest

from germcalc import (ICIS, INFINITE, GermRing, Vector, br_codim2_formula, br_direct,
                      br_minus_direct, br_minus_formula, br_tor_formula, colength,
                      conjecture_scan, df_image, ideal_basis, is_icis,
                      is_member, jacobian_ideal, lc_ideals, milnor_icis,
                      milnor_number, polar_and_euler, render, section_milnor,
                      standard_basis, tau_via_theta_quotient, theta_x,
                      theta_x_trivial, tjurina, tor1_dimension,
                      verify_relative_identity)
from germcalc.invariants import random_linear_images
from germcalc.modops import jacobian_matrix


@pytest.fixture
def fourlines(R3):
    return ICIS((R3.parse("x^2+y^2+z^2"), R3.parse("x*y")))


# ---------------------------------------------------------------------------
# Milnor numbers

def test_milnor_hypersurfaces(R2):
    assert milnor_number(R2.parse("x^2+y^2")) == 1
    assert milnor_number(R2.parse("x^3+y^3")) == 4
    assert milnor_number(R2.parse("x^3+x*y^3")) == 7
    assert milnor_number(R2.parse("x^2*y")) is INFINITE


def test_milnor_icis_chain(fourlines, R3):
    assert milnor_icis(fourlines) == 5
    # 0-dimensional convention: colength minus one
    R2 = GermRing(("x", "y"))
    zero_dim = ICIS((R2.parse("x^2+y^2"), R2.parse("x*y")))
    assert milnor_icis(zero_dim) == 3


def test_is_icis(fourlines, R3):
    ok, cert = is_icis(fourlines)
    assert ok and cert["milnor"] == 5
    bad = ICIS((R3.parse("x*y"), R3.parse("x*z")))
    ok, cert = is_icis(bad)
    assert not ok
    assert cert["singular_colength"] is INFINITE


# ---------------------------------------------------------------------------
# Tjurina

def test_tjurina(fourlines, R2):
    assert tjurina(fourlines) == 5
    assert tjurina(ICIS((R2.parse("x^3+y^2"),))) == 2
    # weighted homogeneous: tau = mu
    assert tjurina(ICIS((R2.parse("x^3+x*y^3"),))) == 7


def test_tjurina_below_milnor_when_not_homogeneous(R2):
    X = ICIS((R2.parse("x^5+y^5+x^2*y^2"),))
    assert milnor_icis(X) == 11
    assert tjurina(X) == 10


# ---------------------------------------------------------------------------
# vector fields tangent to X

def test_theta_contains_trivial_fields(fourlines):
    theta = standard_basis(theta_x(fourlines))
    for v in theta_x_trivial(fourlines):
        assert theta.contains(v)


def test_theta_fields_are_tangent(fourlines, R3):
    # a derivation is tangent when it maps I_X into I_X
    I = ideal_basis(list(fourlines.phi))
    for v in theta_x(fourlines):
        for phi in fourlines.phi:
            img = sum((v.components[i] * phi.derivative(i)
                       for i in range(3)), R3.zero)
            assert is_member(Vector.ideal(img), I)


def test_euler_field_present(fourlines, R3):
    theta = standard_basis(theta_x(fourlines))
    euler = Vector(tuple(R3.var(i) for i in range(3)))
    assert theta.contains(euler)


def test_df_image_double_inclusion(fourlines, R3):
    # df applied to the trivial tangent fields spans J(f,phi) + phi_j * df/dx_i
    f = R3.parse("z^2+x*y")
    from germcalc.invariants import relative_jacobian_ideal
    lhs = [p for p in df_image(f, theta_x_trivial(fourlines)) if not p.is_zero]
    rhs = relative_jacobian_ideal(f, fourlines)
    rhs += [phi * f.derivative(i) for phi in fourlines.phi for i in range(3)]
    rhs = [p for p in rhs if not p.is_zero]
    sb_l, sb_r = ideal_basis(lhs), ideal_basis(rhs)
    assert all(is_member(Vector.ideal(p), sb_r) for p in lhs)
    assert all(is_member(Vector.ideal(p), sb_l) for p in rhs)


# ---------------------------------------------------------------------------
# Bruce-Roberts numbers

def test_br_minus_both_routes(fourlines, R3):
    f = R3.parse("z")
    assert br_minus_direct(f, fourlines) == 3
    assert br_minus_formula(f, fourlines) == 3


def test_relative_identity(fourlines, R3):
    res = verify_relative_identity(R3.parse("z^2+x*y"), fourlines)
    assert res["pass"]
    assert res["lhs"] == 7
    assert res["muX"] == 5 and res["tauX"] == 5


def test_br_all_routes_agree(fourlines, R3):
    f = R3.parse("z^2+x*y")
    assert br_direct(f, fourlines) == 9
    assert br_tor_formula(f, fourlines) == 9
    assert br_codim2_formula(f, fourlines) == 9


def test_br_linear_function(fourlines, R3):
    f = R3.parse("z")
    assert br_direct(f, fourlines) == 3
    assert br_tor_formula(f, fourlines) == 3
    assert br_codim2_formula(f, fourlines) == 3


def test_br_codim2_formula_requires_codimension_two(R2):
    X = ICIS((R2.parse("x^3+y^2"),))
    with pytest.raises(ValueError):
        br_codim2_formula(R2.parse("x"), X)


def test_tor1_hypersurface_case(R2):
    # for a hypersurface, dim Tor1 equals colength(I_X + Jf)
    X = ICIS((R2.parse("x^3+y^2"),))
    f = R2.parse("x+y^2")
    Jf = jacobian_ideal(f)
    tor = tor1_dimension(list(X.phi), Jf)
    assert tor == colength(ideal_basis(list(X.phi) + Jf))


def test_tau_via_theta_quotients(fourlines, R3):
    first, second = tau_via_theta_quotient(fourlines, R3.parse("z"))
    assert first == 5 and second == 5


def test_finiteness_equivalence_with_infinite_instance(R3):
    # f with non-isolated critical locus on X: both image ideals infinite
    X = ICIS((R3.parse("x^2+y^2+z^2"),))
    f = R3.parse("x^2")
    theta = theta_x(X)
    trivial = theta_x_trivial(X)
    full = [p for p in df_image(f, theta) if not p.is_zero]
    triv = [p for p in df_image(f, trivial) if not p.is_zero]
    c_full = colength(ideal_basis(full)) if full else INFINITE
    c_triv = colength(ideal_basis(triv)) if triv else INFINITE
    assert (c_full is INFINITE) == (c_triv is INFINITE)
    assert c_full is INFINITE


def test_polar_and_euler(fourlines):
    m, eu = polar_and_euler(fourlines)
    assert (m, eu) == (8, 4)


# ---------------------------------------------------------------------------
# characteristic ideals

def test_lc_line_in_one_variable():
    R1 = GermRing(("x",))
    bundle = lc_ideals(ICIS((R1.parse("x"),)))
    assert [render(g) for g in bundle.lc] == ["x*p1"]
    assert [render(g) for g in bundle.lc_minus] == ["x"]


def test_lc_worked_example(fourlines):
    bundle = lc_ideals(fourlines)
    rendered = [render(g) for g in bundle.lc_trivial]
    assert "x^2+y^2+z^2" in rendered
    assert "x*y" in rendered
    # plus at least one symbol-linear minor
    assert any("p" in s for s in rendered)


def test_lc_round_trip(fourlines):
    bundle = lc_ideals(fourlines)
    R = bundle.ring2n
    for g in bundle.lc + bundle.lc_minus + bundle.lc_trivial:
        assert R.parse(render(g)) == g


# ---------------------------------------------------------------------------
# randomized scanner

def test_conjecture_scan_codim2_matches():
    scan = conjecture_scan(n=2, k=2, trials=5, maxdeg=2, seed=42)
    assert scan["completed"] == 5
    assert scan["matches"] == 5
    assert scan["euler_all_zero"]


def test_conjecture_scan_codim3_euler():
    scan = conjecture_scan(n=3, k=3, trials=3, maxdeg=2, seed=7)
    assert scan["completed"] == 3
    assert scan["euler_all_zero"]


def test_scan_deterministic():
    a = conjecture_scan(n=2, k=2, trials=3, maxdeg=2, seed=9)
    b = conjecture_scan(n=2, k=2, trials=3, maxdeg=2, seed=9)
    assert a == b


# ---------------------------------------------------------------------------
# coordinate invariance

def test_invariants_under_linear_change(fourlines, R3):
    rng = random.Random(3)
    for _ in range(3):
        images = random_linear_images(R3, rng)
        moved = ICIS(tuple(p.substitute(images) for p in fourlines.phi))
        assert milnor_icis(moved) == 5
        assert tjurina(moved) == 5
