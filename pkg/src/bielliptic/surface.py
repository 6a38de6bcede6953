"""The bielliptic surface, its two affine models, the sign-action torsor
from the product of the two genus-one curves, and zero-cycles.

Model A:  p(x) y^2 = g(t),  q(x) z^2 = g(t)
Model B:  y^2 = g(t) p(x),  z^2 = g(t) q(x)

The torsor C x D -> S (model B) is x = X, t = T, y = UY, z = UZ; on the
twist C^a x D^a it becomes y = aUY, z = aUZ.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import isqrt, lcm

from .curves import (
    BiquadricPoint,
    BiquadricTwistCurve,
    EvenQuarticModel,
    QuarticPoint,
    QuarticTwistCurve,
    model_for,
)
from .errors import BranchLocus, DegreeMismatch, FieldMismatch, PointNotOnCurve, ZeroTwist
from .numberfield import FieldElement, NumberField, UniPoly, fe_eval, nf_create
from .numberfield.poly import sylvester_resultant

DEFAULT_G = UniPoly([-729, -351, -162, 0, 3])  # 3(T^4 - 54T^2 - 117T - 243)
DEFAULT_P = UniPoly([1, 0, 1])  # X^2 + 1
DEFAULT_Q = UniPoly([2, 0, 1])  # X^2 + 2

QQ = nf_create([0, 1], name="Q")


@dataclass(frozen=True)
class SurfacePoint:
    x: FieldElement
    y: FieldElement
    z: FieldElement
    t: FieldElement
    model: str = "A"

    def __post_init__(self):
        if self.model not in ("A", "B"):
            raise ValueError(f"unknown model {self.model!r}")
        K = self.x.field
        if any(c.field != K for c in (self.y, self.z, self.t)):
            raise FieldMismatch("surface point coordinates live in different fields")

    @property
    def field(self) -> NumberField:
        return self.x.field

    def negate_yz(self) -> SurfacePoint:
        return SurfacePoint(self.x, -self.y, -self.z, self.t, self.model)


@dataclass(frozen=True)
class BiellipticSurface:
    field: NumberField = QQ
    g: UniPoly = DEFAULT_G
    p: UniPoly = DEFAULT_P
    q: UniPoly = DEFAULT_Q

    def __post_init__(self):
        if self.g.degree != 4:
            raise ValueError("g must be a quartic")
        if self.p.degree != 2 or self.q.degree != 2 or self.p == self.q:
            raise ValueError("p and q must be distinct quadratics")

    def base_change(self, field: NumberField) -> BiellipticSurface:
        return BiellipticSurface(field, self.g, self.p, self.q)

    @cached_property
    def dprime(self) -> EvenQuarticModel:
        """Weierstrass model of W^2 = p(X)q(X) over the base field."""
        return model_for(self.p, self.q, self.field)

    def contains(self, P: SurfacePoint) -> bool:
        if P.field != self.field:
            raise FieldMismatch(f"point over {P.field!r}, surface over {self.field!r}")
        gt = fe_eval(self.g, P.t)
        px, qx = fe_eval(self.p, P.x), fe_eval(self.q, P.x)
        if P.model == "A":
            return px * P.y * P.y == gt and qx * P.z * P.z == gt
        return P.y * P.y == gt * px and P.z * P.z == gt * qx

    def point(self, x, y, z, t, model: str = "A") -> SurfacePoint:
        K = self.field
        return SurfacePoint(K.element(x), K.element(y), K.element(z), K.element(t), model)


def surface_contains(S: BiellipticSurface, P: SurfacePoint) -> bool:
    return S.contains(P)


def model_a_to_b(S: BiellipticSurface, P: SurfacePoint) -> SurfacePoint:
    if P.model != "A":
        raise ValueError("expected a model A point")
    return SurfacePoint(P.x, fe_eval(S.p, P.x) * P.y, fe_eval(S.q, P.x) * P.z, P.t, "B")


def model_b_to_a(S: BiellipticSurface, P: SurfacePoint) -> SurfacePoint:
    if P.model != "B":
        raise ValueError("expected a model B point")
    px, qx = fe_eval(S.p, P.x), fe_eval(S.q, P.x)
    if px.is_zero() or qx.is_zero():
        raise BranchLocus("p(x) or q(x) vanishes")
    return SurfacePoint(P.x, P.y / px, P.z / qx, P.t, "A")


def twist_curves(S: BiellipticSurface, a: FieldElement) -> tuple[QuarticTwistCurve, BiquadricTwistCurve]:
    if a.is_zero():
        raise ZeroTwist("twist parameter must be nonzero")
    return QuarticTwistCurve(S.field, a, S.g), BiquadricTwistCurve(S.field, a, S.p, S.q)


def descend_point(
    S: BiellipticSurface, a: FieldElement, cp: QuarticPoint, dp: BiquadricPoint
) -> SurfacePoint:
    C, D = twist_curves(S, a)
    if not C.contains(cp):
        raise PointNotOnCurve(f"{cp} is not on C^a")
    if not D.contains(dp):
        raise PointNotOnCurve(f"{dp} is not on D^a")
    aU = a * cp.U
    return SurfacePoint(dp.X, aU * dp.Y, aU * dp.Z, cp.T, "B")


def lift_point(S: BiellipticSurface, P: SurfacePoint) -> tuple[FieldElement, QuarticPoint, BiquadricPoint]:
    """Lift a model B point to the twist by a = g(t)."""
    if P.model != "B":
        raise ValueError("expected a model B point")
    if not S.contains(P):
        raise PointNotOnCurve(f"{P} is not on S")
    a = fe_eval(S.g, P.t)
    if a.is_zero():
        raise BranchLocus("g(t) = 0")
    K = S.field
    return a, QuarticPoint(P.t, K.one), BiquadricPoint(P.x, P.y / a, P.z / a)


# closed points and zero-cycles


def generated_degree(elements: list[FieldElement], field: NumberField) -> int:
    """Dimension over Q of the subalgebra generated by the given elements."""
    n = field.degree
    basis: list[list[Fraction]] = []  # echelon rows
    pivots: list[int] = []

    def insert(e: FieldElement) -> bool:
        v = list(e.coeffs)
        for row, piv in zip(basis, pivots):
            if v[piv]:
                c = v[piv] / row[piv]
                v = [a - c * b for a, b in zip(v, row)]
        for i in range(n):
            if v[i]:
                basis.append(v)
                pivots.append(i)
                return True
        return False

    insert(field.one)
    frontier = [field.one]
    while frontier:
        new = []
        for b in frontier:
            for e in elements:
                prod = b * e
                if insert(prod):
                    new.append(prod)
        frontier = new
    return len(basis)


@dataclass(frozen=True)
class ClosedPoint:
    """A closed point of S, given by a point over its residue field."""

    point: SurfacePoint

    def __post_init__(self):
        coords = [self.point.x, self.point.y, self.point.z, self.point.t]
        if generated_degree(coords, self.field) != self.field.degree:
            raise DegreeMismatch("coordinates do not generate the residue field")

    @property
    def field(self) -> NumberField:
        return self.point.field

    @property
    def degree(self) -> int:
        return self.field.degree


@dataclass(frozen=True)
class ZeroCycle:
    terms: tuple[tuple[int, ClosedPoint], ...]

    @property
    def degree(self) -> int:
        return sum(m * P.degree for m, P in self.terms)

    def __add__(self, other: ZeroCycle) -> ZeroCycle:
        return ZeroCycle(self.terms + other.terms)


def _rational_square_root(r: Fraction) -> Fraction | None:
    if r < 0:
        return None
    n, d = isqrt(r.numerator), isqrt(r.denominator)
    if n * n == r.numerator and d * d == r.denominator:
        return Fraction(n, d)
    return None


def _integral_monic(h: UniPoly) -> tuple[UniPoly, int]:
    """Scale w -> w/D so that the monic polynomial h becomes integral;
    returns the new polynomial and D."""
    D = lcm(*(c.denominator for c in h.coeffs))
    n = h.degree
    return UniPoly(c * D ** (n - i) for i, c in enumerate(h.coeffs)), D


def degree_four_point(S: BiellipticSurface, x, t) -> ClosedPoint:
    """Closed point over Q(sqrt(g(t)p(x)), sqrt(g(t)q(x))) above rational (x, t)."""
    if S.field.degree != 1:
        raise ValueError("degree_four_point works over a surface defined over Q")
    x, t = Fraction(x), Fraction(t)
    gt, px, qx = S.g(t), S.p(x), S.q(x)
    if gt == 0 or px == 0 or qx == 0:
        raise BranchLocus("g(t), p(x) or q(x) vanishes")
    A, B = gt * px, gt * qx
    rA, rB = _rational_square_root(A), _rational_square_root(B)
    target = BiellipticSurface(QQ, S.g, S.p, S.q)

    if rA is not None and rB is not None:
        warnings.warn(
            f"rational point on S at x={x}, t={t}; the surface was expected to have none",
            RuntimeWarning,
            stacklevel=2,
        )
        P = target.point(x, rA / px, rB / qx, t)
        return ClosedPoint(P)

    rAB = _rational_square_root(A * B)
    if rA is not None or rB is not None or rAB is not None:
        # quadratic residue field Q(sqrt(D))
        D = B if rA is not None else A
        h, scale = _integral_monic(UniPoly([-D, 0, 1]))
        K = nf_create(h, name=f"Q(sqrt({D}))")
        w = K.gen / scale
        if rA is not None:
            sqA, sqB = K.element(rA), w
        elif rB is not None:
            sqA, sqB = w, K.element(rB)
        else:
            sqA, sqB = w, K.element(rAB) / w
        P = target.base_change(K).point(x, sqA / px, sqB / qx, t)
        return ClosedPoint(P)

    # degree 4: primitive element w = sqrt(A) + c sqrt(B), conjugates distinct
    c = 1 if A != B else 2
    Bc = c * c * B
    # Res_y(y^2 - A, (w - y)^2 - Bc) as a polynomial in w
    W = UniPoly([0, 1])
    first = [UniPoly([-A]), UniPoly([0]), UniPoly([1])]
    second = [W * W - Bc, -2 * W, UniPoly([1])]
    h = sylvester_resultant(first, second)
    h, scale = _integral_monic(h.monic())
    K = nf_create(h, assume_irreducible=True, name="Q(sqrt(A), sqrt(B))")
    w = K.gen / scale
    sqA = (w**3 - (3 * A + Bc) * w) / (2 * (Bc - A))
    sqB = (w - sqA) / c
    if sqA * sqA != A or sqB * sqB != B:
        raise ArithmeticError("primitive element expansion failed")
    P = target.base_change(K).point(x, sqA / px, sqB / qx, t)
    if not target.base_change(K).contains(P):
        raise ArithmeticError("degree-four point is not on S")
    return ClosedPoint(P)


def zero_cycle_of_degree_one(P3: ClosedPoint, P4: ClosedPoint) -> ZeroCycle:
    if P3.degree != 3 or P4.degree != 4:
        raise DegreeMismatch(f"expected degrees 3 and 4, got {P3.degree} and {P4.degree}")
    cycle = ZeroCycle(((1, P4), (-1, P3)))
    assert cycle.degree == 1
    return cycle
