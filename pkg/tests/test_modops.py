"""Jacobian minors, syzygies, intersection and quotient of ideals,
subquotient colength, and Koszul homology."""

import pytest

from germcalc import (INFINITE, ArtinianAlgebra, Field, GermRing,
                      InternalError, PolyMatrix, Subquotient, Vector,
                      colength, determinant, ideal_basis, ideal_product,
                      intersect, is_member, jacobian_matrix, koszul_tor,
                      matrix_rank, maximal_minors, quotient_ideal, syzygies)


def contains_same_ideal(I, J):
    """Double inclusion of ideals given by generator lists."""
    sbI = ideal_basis(I)
    sbJ = ideal_basis(J)
    return (all(is_member(Vector.ideal(g), sbI) for g in J)
            and all(is_member(Vector.ideal(g), sbJ) for g in I))


# ---------------------------------------------------------------------------
# matrices and minors

def test_jacobian_matrix(R3):
    M = jacobian_matrix([R3.parse("x^2+y^2+z^2"), R3.parse("x*y")])
    assert M.nrows == 2 and M.ncols == 3
    assert M.entry(0, 2) == R3.parse("2*z")
    assert M.entry(1, 2).is_zero


def test_determinant(R2):
    x, y = R2.gens()
    rows = [[x, y], [y, x]]
    assert determinant(rows) == R2.parse("x^2-y^2")


def test_maximal_minors(R3):
    M = jacobian_matrix([R3.parse("x^2+y^2+z^2"), R3.parse("x*y")])
    minors = maximal_minors(M, 2)
    expected = ideal_basis([R3.parse("2*x^2-2*y^2"), R3.parse("2*y*z"),
                            R3.parse("2*x*z")])
    assert len(minors) == 3
    for m in minors:
        assert is_member(Vector.ideal(m), expected)


# ---------------------------------------------------------------------------
# syzygies

def test_koszul_syzygy(R2):
    x, y = R2.gens()
    M = PolyMatrix([[x, y]])
    rels = syzygies(M)
    assert rels
    for r in rels:
        assert M.apply(r).components[0].is_zero
    # the Koszul relation (y, -x) must be among them
    sb = None
    from germcalc import standard_basis
    sb = standard_basis(rels)
    assert sb.contains(Vector((y, -x)))


def test_syzygies_of_jacobian_with_relations(R3):
    phis = [R3.parse("x^2+y^2+z^2"), R3.parse("x*y")]
    M = jacobian_matrix(phis)
    rels = syzygies(M)
    for r in rels:
        image = M.apply(r)
        assert all(c.is_zero for c in image.components)


# ---------------------------------------------------------------------------
# intersection and quotient

def test_intersect_principal(R2):
    x, y = R2.gens()
    I = intersect([x], [y])
    assert contains_same_ideal(I, [x * y])


def test_intersect_nontrivial(R2):
    I = intersect([R2.parse("x^2"), R2.parse("y")], [R2.parse("x")])
    assert contains_same_ideal(I, [R2.parse("x^2"), R2.parse("x*y")])


def test_quotient_ideal(R2):
    x, y = R2.gens()
    Q = quotient_ideal([x * y, y * y], [y])
    assert contains_same_ideal(Q, [x, y])
    Q2 = quotient_ideal([x], [x])
    assert contains_same_ideal(Q2, [R2.one])


def test_ideal_product(R2):
    x, y = R2.gens()
    P = ideal_product([x, y], [x, y])
    assert contains_same_ideal(P, [x * x, x * y, y * y])


# ---------------------------------------------------------------------------
# subquotients

def test_subquotient_of_ideals(R2):
    x, y = R2.gens()
    # m/m^2 is two-dimensional
    S = Subquotient.of_ideals([x, y], [x * x, x * y, y * y])
    assert S.colength() == 2


def test_subquotient_rejects_non_inclusion(R2):
    x, y = R2.gens()
    with pytest.raises(ValueError):
        Subquotient.of_ideals([x], [y])


def test_subquotient_module(R2):
    x, y = R2.gens()
    # O^2 / (x,y-span of the unit vectors) has dimension 2
    e1 = Vector((R2.one, R2.zero))
    e2 = Vector((R2.zero, R2.one))
    num = [e1, e2]
    den = [e1.mul_poly(x), e1.mul_poly(y), e2.mul_poly(x), e2.mul_poly(y)]
    assert Subquotient(2, num, den).colength() == 2


def test_subquotient_infinite(R2):
    x, y = R2.gens()
    S = Subquotient.of_ideals([x], [x * y], check=False)
    assert S.colength() is INFINITE


# ---------------------------------------------------------------------------
# exact rank

def test_matrix_rank_over_q():
    from fractions import Fraction
    F = Field()
    rows = [[Fraction(1, 2), Fraction(1)], [Fraction(1), Fraction(2)],
            [Fraction(0), Fraction(1)]]
    assert matrix_rank(rows, F) == 2


def test_matrix_rank_mod_p():
    F = Field(5)
    rows = [[1, 2], [3, 6 % 5]]
    assert matrix_rank(rows, F) == 1


# ---------------------------------------------------------------------------
# Artinian algebras and Koszul homology

def test_artinian_algebra_tables_commute(R2):
    A = ArtinianAlgebra([R2.parse("x^2"), R2.parse("y^3")])
    assert A.dim == 6
    assert A.tables_commute()


def test_koszul_tor_transverse_squares(R2):
    I = [R2.parse("x"), R2.parse("y")]
    J = [R2.parse("x^2"), R2.parse("y^2")]
    assert koszul_tor(I, J) == [1, 2, 1]


def test_koszul_tor_euler_characteristic(R2):
    I = [R2.parse("x^2+y^3"), R2.parse("x*y")]
    J = [R2.parse("x^3"), R2.parse("y^2")]
    tors = koszul_tor(I, J)
    assert sum((-1) ** i * t for i, t in enumerate(tors)) == 0


def test_koszul_tor_mod_p():
    R = GermRing(("x", "y"), Field(32003))
    I = [R.parse("x"), R.parse("y")]
    J = [R.parse("x^2"), R.parse("y^2")]
    assert koszul_tor(I, J) == [1, 2, 1]
