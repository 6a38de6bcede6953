from fractions import Fraction

import mpmath
import pytest

from bielliptic.errors import BadReduction, DivisionByZero, FieldMismatch, ReducibleDetected
from bielliptic.numberfield import (
    PrimeSite,
    SquareStatus,
    UniPoly,
    degree_one_sites,
    discriminant,
    fe_add,
    fe_embeddings,
    fe_eval,
    fe_height,
    fe_inv,
    fe_is_square,
    fe_minpoly,
    fe_mul,
    fe_norm,
    fe_reduce,
    fe_sqrt,
    fe_trace,
    nf_create,
)
from bielliptic.numberfield.poly import rational_roots
from bielliptic.surface import DEFAULT_G, DEFAULT_P, DEFAULT_Q

from conftest import random_element


# construction


def test_cubic_field_of_the_point(L):
    assert L.degree == 3
    assert L.discriminant == -31


def test_rationals_as_degree_one_field(Q):
    assert Q.degree == 1
    assert Q.element([Fraction(3, 4)]) * 4 == Q.element([3])


def test_smallest_discriminant_cubic(L1):
    assert L1.discriminant == -23


def test_minimal_cubic_discriminant_oracle():
    # x -> x + k keeps the discriminant, so the x^2 coefficient can be taken in {-1, 0, 1}
    best = None
    for b in (-1, 0, 1):
        for c in range(-40, 41):
            for d in range(-40, 41):
                f = UniPoly([d, c, b, 1])
                disc = discriminant(f)
                if disc == 0 or abs(disc) >= 31 or rational_roots(f):
                    continue
                if best is None or abs(disc) < abs(best[0]):
                    best = (disc, f)
    assert best[0] == -23
    assert nf_create(best[1]).discriminant == -23


def test_reducible_polynomials_rejected():
    with pytest.raises(ReducibleDetected):
        nf_create([-2, 1, 0, 1])  # root 1
    with pytest.raises(ReducibleDetected):
        nf_create([1, 0, 2, 0, 1])  # (x^2+1)^2


def test_element_length_enforced(L):
    from bielliptic.io import LiteralError, element_from_json

    with pytest.raises(ValueError):
        L.element([1, 2, 3, 4])
    with pytest.raises(LiteralError):
        element_from_json(["1", "2"], L)
    assert element_from_json(["5"], L) == L([5, 0, 0])
    assert len(L.element([1]).coeffs) == 3


# arithmetic examples


def test_products_reduce_by_defining_relation(L, theta):
    assert fe_mul(theta, theta * theta) == L([-1, -1, 0])
    assert L([1, 0, 1]) ** 2 == L([1, -1, 1])
    a = L([3, -2, 5])
    assert fe_add(a, L.zero) == a


def test_inverses(L, theta):
    assert fe_inv(theta) == L([-1, 0, -1])
    assert fe_inv(L.one) == L.one
    assert fe_inv(L([2, 0, 0])) == L([Fraction(1, 2), 0, 0])
    with pytest.raises(DivisionByZero):
        fe_inv(L.zero)


def test_eval_at_published_x(L, Q):
    x0 = L([1, 0, 1])
    assert fe_eval(DEFAULT_P, x0) == L([2, -1, 1])
    assert fe_eval(DEFAULT_Q, x0) == L([3, -1, 1])
    assert fe_eval(DEFAULT_G, Q.zero) == Q([-729])


def test_norm_trace_minpoly(L, theta):
    assert fe_norm(theta) == -1
    assert fe_trace(theta) == 0
    assert fe_norm(L([5, 0, 0])) == 125
    assert fe_minpoly(theta**2) == UniPoly([-1, 1, 2, 1])
    assert fe_minpoly(L([7, 0, 0])) == UniPoly([-7, 1])


def test_minpoly_by_linear_algebra(L, theta):
    # 1, theta^2, theta^4, theta^6 are dependent; solve for the relation directly
    powers = [(theta**2) ** k for k in range(4)]
    m = UniPoly([-1, 1, 2, 1])
    total = sum((c * pw for c, pw in zip(m.coeffs, powers)), L.zero)
    assert total.is_zero()


def test_embeddings(L, Q, theta):
    emb = fe_embeddings(theta, 64)
    assert abs(emb[0] - mpmath.mpf("-0.682327803828019")) < 1e-14
    assert abs(mpmath.im(emb[1])) > 1 and abs(emb[1] - mpmath.conj(emb[2])) < 1e-14
    assert all(abs(v - 3) < 1e-15 for v in fe_embeddings(L([3, 0, 0])))
    assert abs(fe_embeddings(L([1, 0, 1]))[0] - mpmath.mpf("1.465571231876768")) < 1e-12
    assert fe_embeddings(Q([Fraction(1, 3)]))[0] == pytest.approx(1 / 3)


def test_field_mismatch(L, L1):
    with pytest.raises(FieldMismatch):
        L.gen + L1.gen


# squares


def test_twist_class_identity(L):
    alpha = L([9, -4, 6]) * fe_inv(L([2, -1, 1]))
    res = fe_is_square(alpha)
    assert res.status is SquareStatus.SQUARE
    assert res.witness in (L([1, -1, 1]), -L([1, -1, 1]))
    assert L([2, -1, 1]) * L([1, -1, 1]) ** 2 == L([9, -4, 6])


def test_generator_w_coordinate(L):
    alpha = L([2, -1, 1]) * L([3, -1, 1])
    assert alpha == L([8, -4, 5])
    res = fe_is_square(alpha)
    assert res.is_square and res.witness in (L([2, -1, 2]), -L([2, -1, 2]))


def test_negative_is_nonsquare(L):
    res = fe_is_square(L([-1, 0, 0]))
    assert res.status is SquareStatus.NONSQUARE
    assert res.certificate == ("real", 0)


def test_sqrt_examples(L, Q):
    assert fe_sqrt(L([1, -1, 1]) ** 2) == L([1, -1, 1])
    root = fe_sqrt(L([8, -4, 5]))
    assert root == L([2, -1, 2])
    assert fe_embeddings(root)[0] == pytest.approx(3.6134702675815)
    assert fe_sqrt(Q([Fraction(9, 4)])) == Q([Fraction(3, 2)])


def test_sqrt_in_totally_complex_field(quadratic_field):
    K = quadratic_field
    w = K([3, -7])
    r = fe_sqrt(w * w)
    assert r in (w, -w)
    assert fe_is_square(K.gen).status is SquareStatus.NONSQUARE


def test_nonsquare_certificate_is_checkable(L, theta):
    res = fe_is_square(theta * L([3, 1, -2]) ** 2)
    kind, where = res.certificate
    if kind == "site":
        from bielliptic.numberfield.modular import legendre

        assert legendre(fe_reduce(theta * L([3, 1, -2]) ** 2, where), where.p) == -1


# heights and sites


def test_heights(L, ex):
    assert fe_height(L([2, -1, 1])) == 2
    assert fe_height(ex.t0) == 54
    assert fe_height(L([Fraction(1, 3), 0, 0])) == 3
    assert fe_height(L.zero) == 0


def test_degree_one_sites(L, Q):
    s = degree_one_sites(L, 2)
    assert [(x.p, x.root) for x in s] == [(3, 1), (11, 2)]
    assert [(x.p, x.root) for x in degree_one_sites(Q, 3)] == [(2, 0), (3, 0), (5, 0)]
    assert all(x.p != 3 for x in degree_one_sites(L, 4, avoid={3}))


def test_site_validation(L):
    with pytest.raises(ValueError):
        PrimeSite(L, 5, 1)
    with pytest.raises(ValueError):
        PrimeSite(L, 31, 17)  # 31 divides the discriminant


def test_reduce_examples(L, theta):
    site = PrimeSite(L, 3, 1)
    assert fe_reduce(theta, site) == 1
    assert fe_reduce(L([1, 0, 1]), site) == 2
    with pytest.raises(BadReduction):
        fe_reduce(L([Fraction(1, 3), 0, 0]), site)


# seeded property suites


def test_field_axioms(rng, L):
    for _ in range(500):
        a, b, c = (random_element(rng, L) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == L.zero
        if not a.is_zero():
            assert a * a.inv() == L.one


def test_sqrt_round_trip(rng, L):
    for _ in range(500):
        a = random_element(rng, L, bound=50, allow_zero=False)
        sq = a * a
        res = fe_is_square(sq)
        assert res.is_square
        assert res.witness in (a, -a)
        assert fe_sqrt(sq) in (a, -a)


def test_theta_times_square_is_nonsquare(rng, L, theta):
    # theta has norm -1, and a square has positive norm
    for _ in range(500):
        a = random_element(rng, L, bound=30, allow_zero=False)
        res = fe_is_square(theta * a * a)
        assert res.status is SquareStatus.NONSQUARE


def test_norm_multiplicative(rng, L):
    for _ in range(200):
        a, b = random_element(rng, L), random_element(rng, L)
        assert fe_norm(a * b) == fe_norm(a) * fe_norm(b)


def test_embeddings_multiply_to_norm(rng, L):
    for _ in range(100):
        a = random_element(rng, L, allow_zero=False)
        prod = mpmath.fprod(fe_embeddings(a, 80))
        assert abs(prod - mpmath.mpf(fe_norm(a).numerator) / fe_norm(a).denominator) < 1e-15 * (1 + abs(prod))


def test_reduce_is_a_homomorphism(rng, L):
    sites = degree_one_sites(L, 6)
    for _ in range(200):
        a, b = random_element(rng, L, den_bound=1), random_element(rng, L, den_bound=1)
        for s in sites:
            p = s.p
            assert fe_reduce(a + b, s) == (fe_reduce(a, s) + fe_reduce(b, s)) % p
            assert fe_reduce(a * b, s) == fe_reduce(a, s) * fe_reduce(b, s) % p
