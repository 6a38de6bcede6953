"""Genus-one curves: the twist families aU^2 = g(T) and aY^2 = p(X),
aZ^2 = q(X), the elliptic curve W^2 = p(X)q(X) with its group law, the
quotient map by the sign action, the connecting homomorphism of that
2-isogeny, and torsion bounds from reduction at degree-one primes.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import (
    BadReduction,
    BadSite,
    FieldMismatch,
    PointNotOnCurve,
    SingularCurve,
    SingularQuartic,
    TorsionDetected,
    ZeroTwist,
)
from .numberfield import FieldElement, NumberField, PrimeSite, UniPoly, fe_eval, nf_create
from .numberfield.modular import residue_table


def _check_field(field: NumberField, *elements: FieldElement) -> None:
    for e in elements:
        if e.field != field:
            raise FieldMismatch(f"element of {e.field!r} used on a curve over {field!r}")


@dataclass(frozen=True)
class QuarticPoint:
    T: FieldElement
    U: FieldElement


@dataclass(frozen=True)
class BiquadricPoint:
    X: FieldElement
    Y: FieldElement
    Z: FieldElement

    def conjugate(self) -> BiquadricPoint:
        """Image under the sign action (X, Y, Z) -> (X, -Y, -Z)."""
        return BiquadricPoint(self.X, -self.Y, -self.Z)


@dataclass(frozen=True)
class QuarticTwistCurve:
    """C^a : a*U^2 = g(T)."""

    field: NumberField
    a: FieldElement
    g: UniPoly

    def __post_init__(self):
        _check_field(self.field, self.a)
        if self.a.is_zero():
            raise ZeroTwist("twist parameter must be nonzero")
        if self.g.degree != 4:
            raise ValueError(f"g must have degree 4, got {self.g.degree}")

    def contains(self, P: QuarticPoint) -> bool:
        _check_field(self.field, P.T, P.U)
        return self.a * P.U * P.U == fe_eval(self.g, P.T)


@dataclass(frozen=True)
class BiquadricTwistCurve:
    """D^a : a*Y^2 = p(X), a*Z^2 = q(X)."""

    field: NumberField
    a: FieldElement
    p: UniPoly
    q: UniPoly

    def __post_init__(self):
        _check_field(self.field, self.a)
        if self.a.is_zero():
            raise ZeroTwist("twist parameter must be nonzero")
        if self.p.degree != 2 or self.q.degree != 2:
            raise ValueError("p and q must be quadratics")
        if self.p == self.q:
            raise ValueError("p and q must differ")

    def contains(self, P: BiquadricPoint) -> bool:
        _check_field(self.field, P.X, P.Y, P.Z)
        return (
            self.a * P.Y * P.Y == fe_eval(self.p, P.X)
            and self.a * P.Z * P.Z == fe_eval(self.q, P.X)
        )


def quartic_contains(C: QuarticTwistCurve, P: QuarticPoint) -> bool:
    return C.contains(P)


def biquadric_contains(D: BiquadricTwistCurve, P: BiquadricPoint) -> bool:
    return D.contains(P)


# Weierstrass curves y^2 = x^3 + a2 x^2 + a4 x + a6


@dataclass(frozen=True)
class ECPoint:
    x: FieldElement | None = None
    y: FieldElement | None = None

    @classmethod
    def infinity(cls) -> ECPoint:
        return cls()

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __repr__(self) -> str:
        if self.is_infinity:
            return "ECPoint(Infinity)"
        return f"ECPoint(x={self.x}, y={self.y})"


INFINITY = ECPoint()


def cubic_discriminant(a2, a4, a6):
    return -4 * a2**3 * a6 + a2**2 * a4**2 + 18 * a2 * a4 * a6 - 4 * a4**3 - 27 * a6**2


@dataclass(frozen=True)
class WeierstrassCurve:
    field: NumberField
    a2: FieldElement
    a4: FieldElement
    a6: FieldElement

    def __post_init__(self):
        _check_field(self.field, self.a2, self.a4, self.a6)
        if self.discriminant.is_zero():
            raise SingularCurve("cubic has a repeated root")

    @property
    def discriminant(self) -> FieldElement:
        return cubic_discriminant(self.a2, self.a4, self.a6)

    def rhs(self, x: FieldElement) -> FieldElement:
        return ((x + self.a2) * x + self.a4) * x + self.a6

    def contains(self, P: ECPoint) -> bool:
        if P.is_infinity:
            return True
        _check_field(self.field, P.x, P.y)
        return P.y * P.y == self.rhs(P.x)

    def point(self, x, y) -> ECPoint:
        P = ECPoint(self.field.element(x), self.field.element(y))
        if not self.contains(P):
            raise PointNotOnCurve(f"{P} is not on {self}")
        return P

    def neg(self, P: ECPoint) -> ECPoint:
        if P.is_infinity:
            return P
        return ECPoint(P.x, -P.y)

    def add(self, P: ECPoint, Q: ECPoint) -> ECPoint:
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        if P.x == Q.x:
            if P.y == -Q.y:
                return INFINITY
            lam = (3 * P.x * P.x + 2 * self.a2 * P.x + self.a4) / (2 * P.y)
        else:
            lam = (Q.y - P.y) / (Q.x - P.x)
        x3 = lam * lam - self.a2 - P.x - Q.x
        y3 = lam * (P.x - x3) - P.y
        return ECPoint(x3, y3)

    def mul(self, n: int, P: ECPoint) -> ECPoint:
        if n < 0:
            return self.mul(-n, self.neg(P))
        result, base = INFINITY, P
        while n:
            if n & 1:
                result = self.add(result, base)
            n >>= 1
            if n:
                base = self.add(base, base)
        return result

    def __repr__(self) -> str:
        return f"WeierstrassCurve(y^2 = x^3 + ({self.a2})x^2 + ({self.a4})x + ({self.a6}))"


def _require_on(E: WeierstrassCurve, *points: ECPoint) -> None:
    for P in points:
        if not E.contains(P):
            raise PointNotOnCurve(f"{P} is not on {E}")


def ec_on_curve(E: WeierstrassCurve, P: ECPoint) -> bool:
    return E.contains(P)


def ec_add(E: WeierstrassCurve, P: ECPoint, Q: ECPoint) -> ECPoint:
    _require_on(E, P, Q)
    return E.add(P, Q)


def ec_neg(E: WeierstrassCurve, P: ECPoint) -> ECPoint:
    _require_on(E, P)
    return E.neg(P)


def ec_mul(E: WeierstrassCurve, n: int, P: ECPoint) -> ECPoint:
    _require_on(E, P)
    return E.mul(n, P)


# the even quartic v^2 = u^4 + pc*u^2 + rc and its Weierstrass model


@dataclass(frozen=True)
class QuarticCurvePoint:
    """Point of v^2 = u^4 + pc*u^2 + rc: affine (u, v), or one of the two
    points at infinity, labelled by the sign of v/u^2 there."""

    u: FieldElement | None = None
    v: FieldElement | None = None
    infinity_sign: int = 0

    @property
    def is_infinite(self) -> bool:
        return self.infinity_sign != 0


@dataclass(frozen=True)
class EvenQuarticModel:
    """The curve v^2 = u^4 + pc*u^2 + rc together with the birational map to
    y^2 = x^3 - 2*pc*x^2 + (pc^2 - 4*rc)*x given by s = v + u^2,
    x = 2s + pc, y = 2ux. The point at infinity with v ~ +u^2 is the origin;
    the one with v ~ -u^2 goes to the 2-torsion point (0, 0)."""

    field: NumberField
    pc: Fraction
    rc: Fraction
    curve: WeierstrassCurve = dc_field(repr=False)

    @property
    def quartic(self) -> UniPoly:
        return UniPoly([self.rc, 0, self.pc, 0, 1])

    @property
    def two_torsion(self) -> ECPoint:
        return ECPoint(self.field.zero, self.field.zero)

    def quartic_contains(self, P: QuarticCurvePoint) -> bool:
        if P.is_infinite:
            return P.infinity_sign in (1, -1)
        _check_field(self.field, P.u, P.v)
        return P.v * P.v == fe_eval(self.quartic, P.u)

    def to_weierstrass(self, P: QuarticCurvePoint) -> ECPoint:
        if not self.quartic_contains(P):
            raise PointNotOnCurve(f"{P} is not on the quartic")
        if P.infinity_sign == 1:
            return INFINITY
        if P.infinity_sign == -1:
            return self.two_torsion
        x = 2 * (P.v + P.u * P.u) + self.pc
        return ECPoint(x, 2 * P.u * x)

    def from_weierstrass(self, P: ECPoint) -> QuarticCurvePoint:
        if not self.curve.contains(P):
            raise PointNotOnCurve(f"{P} is not on {self.curve}")
        if P.is_infinity:
            return QuarticCurvePoint(infinity_sign=1)
        if P.x.is_zero():
            return QuarticCurvePoint(infinity_sign=-1)
        u = P.y / (2 * P.x)
        v = (P.x - self.pc) / 2 - u * u
        return QuarticCurvePoint(u, v)


def even_quartic_to_weierstrass(pc, rc, field: NumberField | None = None) -> EvenQuarticModel:
    pc, rc = Fraction(pc), Fraction(rc)
    if field is None:
        field = nf_create([0, 1], name="Q")
    # disc(u^4 + pc u^2 + rc) = 16 rc (pc^2 - 4 rc)^2
    if rc == 0 or pc * pc - 4 * rc == 0:
        raise SingularQuartic(f"v^2 = u^4 + {pc}u^2 + {rc} is singular")
    E = WeierstrassCurve(field, field.element(-2 * pc), field.element(pc * pc - 4 * rc), field.zero)
    return EvenQuarticModel(field, pc, rc, E)


def model_for(p: UniPoly, q: UniPoly, field: NumberField) -> EvenQuarticModel:
    """Weierstrass model of W^2 = p(X)q(X) for monic even quadratics p, q."""
    for h in (p, q):
        if h.degree != 2 or h[2] != 1 or h[1] != 0:
            raise ValueError(f"{h} is not of the form X^2 + c")
    prod = p * q
    return even_quartic_to_weierstrass(prod[2], prod[0], field)


def phi_quartic(D: BiquadricTwistCurve, P: BiquadricPoint) -> QuarticCurvePoint:
    """Quotient by the sign action: (X, Y, Z) -> (X, W = a*Y*Z)."""
    if not D.contains(P):
        raise PointNotOnCurve(f"{P} is not on D^a")
    return QuarticCurvePoint(P.X, D.a * P.Y * P.Z)


def phi_map(D: BiquadricTwistCurve, P: BiquadricPoint, model: EvenQuarticModel) -> ECPoint:
    return model.to_weierstrass(phi_quartic(D, P))


def delta_phi(model: EvenQuarticModel, P: ECPoint) -> FieldElement:
    """Representative of the class of P in K*/K*^2 (not canonicalised)."""
    field = model.field
    if P.is_infinity:
        return field.one
    if P.x.is_zero():
        return field.element(model.pc * model.pc - 4 * model.rc)
    return P.x


# reduction at degree-one primes and torsion


@dataclass(frozen=True)
class FpCurve:
    p: int
    a2: int
    a4: int
    a6: int

    @property
    def discriminant(self) -> int:
        return cubic_discriminant(self.a2, self.a4, self.a6) % self.p

    def __repr__(self) -> str:
        return f"FpCurve(p={self.p}: y^2 = x^3 + {self.a2}x^2 + {self.a4}x + {self.a6})"


def ec_reduce(E: WeierstrassCurve, site: PrimeSite) -> FpCurve:
    if site.field != E.field:
        raise FieldMismatch("site belongs to another field")
    a2, a4, a6 = (c.reduce(site) for c in (E.a2, E.a4, E.a6))
    return FpCurve(site.p, a2, a4, a6)


def good_reduction(E: WeierstrassCurve, site: PrimeSite) -> bool:
    try:
        Ep = ec_reduce(E, site)
    except BadReduction:
        return False
    return site.p % 2 == 1 and Ep.discriminant != 0


def ec_count_points(Ep: FpCurve) -> int:
    """#E(F_p), point at infinity included."""
    p = Ep.p
    squares = residue_table(p)
    total = 1
    for x in range(p):
        r = (((x + Ep.a2) * x + Ep.a4) * x + Ep.a6) % p
        if r == 0:
            total += 1
        elif squares[r]:
            total += 2
    return total


def _valuation(n: int, ell: int) -> int:
    v = 0
    while n % ell == 0:
        n //= ell
        v += 1
    return v


def _prime_divisors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def torsion_bound(E: WeierstrassCurve, sites: list[PrimeSite]) -> int:
    """Multiple of #E(K)_tors: for each prime l, the l-part of the torsion
    injects into E(F_p) at every good odd degree-one site with p != l."""
    if len(sites) < 2:
        raise BadSite("at least two sites are needed")
    ps = [s.p for s in sites]
    if len(set(ps)) != len(ps):
        raise BadSite("site primes must be distinct")
    for s in sites:
        if s.p == 2 or not good_reduction(E, s):
            raise BadSite(f"{s} is not an odd prime of good reduction")
    counts = {s.p: ec_count_points(ec_reduce(E, s)) for s in sites}
    bound = 1
    ells = sorted({ell for n in counts.values() for ell in _prime_divisors(n)})
    for ell in ells:
        bound *= ell ** min(_valuation(n, ell) for p, n in counts.items() if p != ell)
    return bound


@dataclass(frozen=True)
class NontorsionCertificate:
    point: ECPoint
    bound: int
    multiples: tuple[ECPoint, ...]


def certify_nontorsion(E: WeierstrassCurve, P: ECPoint, bound: int) -> NontorsionCertificate:
    """Show n*P != O for n = 1..bound, hence P has infinite order when bound
    is a multiple of the torsion order."""
    _require_on(E, P)
    multiples = []
    Q = INFINITY
    for n in range(1, bound + 1):
        Q = E.add(Q, P)
        if Q.is_infinity:
            raise TorsionDetected(n)
        multiples.append(Q)
    return NontorsionCertificate(P, bound, tuple(multiples))

