from fractions import Fraction

import pytest

from bielliptic.curves import BiquadricPoint, QuarticPoint
from bielliptic.errors import BranchLocus, DegreeMismatch, PointNotOnCurve
from bielliptic.numberfield import UniPoly, fe_eval, fe_is_square, fe_sqrt, nf_create
from bielliptic.surface import (
    BiellipticSurface,
    ClosedPoint,
    SurfacePoint,
    ZeroCycle,
    degree_four_point,
    descend_point,
    generated_degree,
    lift_point,
    model_a_to_b,
    model_b_to_a,
    surface_contains,
    twist_curves,
    zero_cycle_of_degree_one,
)

from conftest import random_element


@pytest.fixture(scope="module")
def a(L):
    return L([9, -4, 6])


@pytest.fixture(scope="module")
def c_point(SL, ex, a):
    U0 = fe_sqrt(fe_eval(SL.g, ex.t0) / a)
    return QuarticPoint(ex.t0, U0)


@pytest.fixture(scope="module")
def d_point(SL, ex, a):
    x0 = ex.point.x
    Y1 = fe_sqrt(fe_eval(SL.p, x0) / a)
    return BiquadricPoint(x0, Y1, ex.generator_W / (a * Y1))


def test_published_point(SL, L):
    P = SL.point([1, 0, 1], [4851, -2133, 3357], [4158, -2025, 2826], [-54, 24, -42])
    assert surface_contains(SL, P)
    assert surface_contains(SL, P.negate_yz())


def test_non_points(S, Q):
    assert not surface_contains(S, S.point(0, 27, 0, 0))
    # model B with y = z = 0 needs g(t) p(x) = 0
    assert not surface_contains(S, S.point(1, 0, 0, 1, model="B"))


def test_surface_validation():
    with pytest.raises(ValueError):
        BiellipticSurface(p=UniPoly([1, 0, 1]), q=UniPoly([1, 0, 1]))
    with pytest.raises(ValueError):
        BiellipticSurface(g=UniPoly([1, 0, 1]))


def test_model_conversion(SL, ex, L):
    B = model_a_to_b(SL, ex.point)
    assert B.model == "B"
    assert B.y == L([2, -1, 1]) * ex.point.y
    assert surface_contains(SL, B)
    assert model_b_to_a(SL, B) == ex.point


def test_branch_locus():
    K = nf_create([1, 0, 1])  # Q(i), where p(i) = 0
    S = BiellipticSurface().base_change(K)
    P = S.point([0, 1], 0, 0, 0, model="B")
    with pytest.raises(BranchLocus):
        model_b_to_a(S, P)


def test_twist_pairs(S, SL, L, a):
    C, D = twist_curves(S, S.field.one)
    assert C.g == S.g and D.p == S.p and D.q == S.q
    Ca, Da = twist_curves(SL, a)
    assert Ca.a == a and Da.a == a


def test_square_twists_are_equivalent(SL, c_point, a, L):
    c = L([1, 2, -1])
    Ca, _ = twist_curves(SL, a)
    Cac, _ = twist_curves(SL, a * c * c)
    assert Ca.contains(c_point)
    assert Cac.contains(QuarticPoint(c_point.T, c_point.U / c))


def test_descend_untwisted(S):
    # Q(i, sqrt 2) carries (0, 27i) on C and (0, 1, sqrt 2) on D
    K = degree_four_point(S, 0, 0).field
    SK = S.base_change(K)
    i, r2 = fe_sqrt(K([-1, 0, 0, 0])), fe_sqrt(K([2, 0, 0, 0]))
    cp, dp = QuarticPoint(K.zero, 27 * i), BiquadricPoint(K.zero, K.one, r2)
    P = descend_point(SK, K.one, cp, dp)
    assert (P.x, P.y, P.z, P.t) == (K.zero, 27 * i, 27 * i * r2, K.zero)
    assert SK.contains(P)
    with pytest.raises(PointNotOnCurve):
        descend_point(SK, K.one, QuarticPoint(K.zero, K.one), dp)

def test_descend_to_published_point(SL, ex, a, c_point, d_point):
    B = descend_point(SL, a, c_point, d_point)
    A = model_b_to_a(SL, B)
    assert A in (ex.point, ex.point.negate_yz())
    assert surface_contains(SL, A)


def test_descend_is_mu2_invariant(SL, a, c_point, d_point):
    P = descend_point(SL, a, c_point, d_point)
    flipped = descend_point(SL, a, QuarticPoint(c_point.T, -c_point.U), d_point.conjugate())
    assert P == flipped


def test_lift_published_point(SL, ex, a):
    B = model_a_to_b(SL, ex.point)
    a_t, cp, dp = lift_point(SL, B)
    assert a_t == fe_eval(SL.g, ex.t0)
    assert fe_is_square(a_t * a).is_square
    assert descend_point(SL, a_t, cp, dp) == B


def test_lift_branch_locus():
    F = nf_create(list(BiellipticSurface().g.monic().coeffs), name="root of g")
    SF = BiellipticSurface().base_change(F)
    P = SF.point(0, 0, 0, F.gen, model="B")
    assert SF.contains(P)
    with pytest.raises(BranchLocus):
        lift_point(SF, P)

def test_lift_descend_round_trip(rng, S, SL, ex):
    # seeded points over the residue fields of random rational (x, t)
    for _ in range(10):
        x, t = Fraction(rng.randint(-9, 9), rng.randint(1, 4)), rng.randint(-9, 9)
        P4 = degree_four_point(S, x, t)
        SK = S.base_change(P4.field)
        B = model_a_to_b(SK, P4.point)
        assert descend_point(SK, *lift_point(SK, B)) == B
    B = model_a_to_b(SL, ex.point)
    assert descend_point(SL, *lift_point(SL, B)) == B

def test_generated_degree(L, ex):
    assert generated_degree([L.one], L) == 1
    assert generated_degree([ex.point.x], L) == 3


def test_closed_point_degree(ex):
    assert ClosedPoint(ex.point).degree == 3


def test_degree_four_point_at_origin(S):
    P4 = degree_four_point(S, 0, 0)
    assert P4.degree == 4
    assert P4.field.poly == UniPoly([531441, 0, 4374, 0, 1])
    assert BiellipticSurface().base_change(P4.field).contains(P4.point)
    # the residue field contains i and sqrt 2
    K = P4.field
    assert fe_is_square(K([-1, 0, 0, 0])).is_square
    assert fe_is_square(K([2, 0, 0, 0])).is_square


def test_degree_four_point_elsewhere(S):
    assert S.g(Fraction(10)) == 9561
    P4 = degree_four_point(S, 0, 10)
    assert P4.degree == 4


def test_degree_two_case(S):
    # g(9) q(1/4) = (297/4)^2 while g(9) p(1/4) is not a square
    assert S.g(9) * S.q(Fraction(1, 4)) == Fraction(297, 4) ** 2
    P = degree_four_point(S, Fraction(1, 4), 9)
    assert P.degree == 2
    assert S.base_change(P.field).contains(P.point)

def test_zero_cycle(ex, S):
    P3 = ClosedPoint(ex.point)
    P4 = degree_four_point(S, 0, 0)
    z = zero_cycle_of_degree_one(P3, P4)
    assert z.degree == 1
    assert ZeroCycle(((1, P4),)).degree + ZeroCycle(((-1, P3),)).degree == 1


def test_zero_cycle_degree_mismatch(S):
    K5 = nf_create([-2, 0, 0, 0, 0, 1])  # x^5 - 2
    P5 = ClosedPoint(SurfacePoint(K5.gen, K5.zero, K5.zero, K5.zero, "B"))
    with pytest.raises(DegreeMismatch):
        zero_cycle_of_degree_one(P5, degree_four_point(S, 0, 0))


def test_rational_point_is_flagged():
    # a surface with the rational point (0, 1, 1/2, 0) on model A
    S = BiellipticSurface(g=UniPoly([1, 0, 0, 0, 1]), p=UniPoly([1, 0, 1]), q=UniPoly([4, 0, 1]))
    with pytest.warns(RuntimeWarning):
        P = degree_four_point(S, 0, 0)
    assert P.degree == 1
    assert S.contains(P.point)
