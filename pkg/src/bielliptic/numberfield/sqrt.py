"""Square detection and square roots in number fields.

Square roots are computed p-adically: pick a rational prime p that splits
completely, take square roots of the reductions at every degree-one prime
above p, Hensel-lift them to p**k, interpolate back to the power basis and
rationally reconstruct the coefficients. The precision p**k is driven by a
coefficient bound read off from the archimedean embeddings. Every candidate
is verified by exact squaring, so a wrong bound can only cost completeness,
never correctness.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, log

import mpmath

from ..errors import NotASquare
from . import modular
from .field import FieldElement, PrimeSite

DEFAULT_SITE_BUDGET = 20
DEFAULT_PRECISION_BUDGET = 3  # precision escalations before giving up
# sites screened after a failed square root, before answering UNKNOWN
EXTENDED_SITE_BUDGET = 400


class SquareStatus(enum.Enum):
    SQUARE = "square"
    NONSQUARE = "nonsquare"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class SquareTest:
    status: SquareStatus
    witness: FieldElement | None = None
    # ("real", embedding index) or ("site", PrimeSite) for nonsquares
    certificate: tuple | None = None

    @property
    def is_square(self) -> bool:
        return self.status is SquareStatus.SQUARE

    @property
    def is_nonsquare(self) -> bool:
        return self.status is SquareStatus.NONSQUARE

    def __bool__(self) -> bool:
        return self.is_square


def screen_sites(alpha: FieldElement, sites) -> PrimeSite | None:
    """First odd site at which alpha reduces to a nonzero non-residue."""
    for site in sites:
        p = site.p
        if p == 2 or alpha.den % p == 0:
            continue
        r = alpha.reduce(site)
        if r and modular.legendre(r, p) == -1:
            return site
    return None


def fe_is_square(
    alpha: FieldElement,
    site_budget: int = DEFAULT_SITE_BUDGET,
    precision_budget: int | None = None,
) -> SquareTest:
    """Three-valued square test. Never returns a wrong answer; returns
    UNKNOWN when the square root search exhausts its budget."""
    field = alpha.field
    if alpha.is_zero():
        return SquareTest(SquareStatus.SQUARE, witness=field.zero)
    for i in range(field.real_root_count):
        if alpha.real_sign(i) < 0:
            return SquareTest(SquareStatus.NONSQUARE, certificate=("real", i))
    site = screen_sites(alpha, field.sites(site_budget))
    if site is not None:
        return SquareTest(SquareStatus.NONSQUARE, certificate=("site", site))
    try:
        root = fe_sqrt(alpha, precision_budget=precision_budget)
    except NotASquare as exc:
        if exc.site is not None:
            return SquareTest(SquareStatus.NONSQUARE, certificate=("site", exc.site))
        more = field.sites(max(site_budget, EXTENDED_SITE_BUDGET))[site_budget:]
        site = screen_sites(alpha, more)
        if site is not None:
            return SquareTest(SquareStatus.NONSQUARE, certificate=("site", site))
        return SquareTest(SquareStatus.UNKNOWN)
    return SquareTest(SquareStatus.SQUARE, witness=root)


def canonical_sign(root: FieldElement) -> FieldElement:
    """Choose between root and -root: positive at the first real embedding,
    or the lexicographically larger coefficient vector if there is none."""
    field = root.field
    if root.is_zero():
        return root
    if field.real_root_count:
        return root if root.real_sign(0) > 0 else -root
    neg = -root
    return root if root.coeffs > neg.coeffs else neg


def fe_sqrt(alpha: FieldElement, precision_budget: int | None = None) -> FieldElement:
    """Exact square root with canonical sign; raises NotASquare.
    precision_budget defaults to the module-level DEFAULT_PRECISION_BUDGET."""
    if precision_budget is None:
        precision_budget = DEFAULT_PRECISION_BUDGET
    field = alpha.field
    if alpha.is_zero():
        return alpha
    if field.degree == 1:
        return _sqrt_rational(alpha)
    e = isqrt(alpha.den)
    if e * e == alpha.den:
        integral, scale = list(alpha.num), e
    else:
        integral, scale = [c * alpha.den for c in alpha.num], alpha.den
    target = FieldElement._make(field, integral, 1)
    gamma = _sqrt_integral(target, scale, precision_budget)
    if gamma is None:
        gamma = _sqrt_by_embeddings(target, precision_budget)
    if gamma is None:
        raise NotASquare(f"no square root of {alpha} found within budget")
    return canonical_sign(gamma / scale)


def _sqrt_rational(alpha: FieldElement) -> FieldElement:
    n, d = alpha.num[0], alpha.den
    if n < 0:
        raise NotASquare(f"{Fraction(n, d)} is negative")
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn != n or rd * rd != d:
        raise NotASquare(f"{Fraction(n, d)} is not a rational square")
    return alpha.field.element([Fraction(rn, rd)])


def coefficient_bound(target: FieldElement) -> int:
    """Bound on |coefficients| of a square root of target, from the
    embeddings: solve the Vandermonde system with |sqrt(σ_j(target))|."""
    field = target.field
    n = field.degree
    prec = 80
    emb = target.embeddings(prec)
    roots = field.roots(prec)
    with mpmath.workprec(prec):
        vand = mpmath.matrix(n, n)
        for j, r in enumerate(roots):
            for i in range(n):
                vand[j, i] = mpmath.mpc(r) ** i
        vinv = mpmath.inverse(vand)
        mags = [mpmath.sqrt(abs(v)) for v in emb]
        bound = max(
            sum(abs(vinv[i, j]) * mags[j] for j in range(n)) for i in range(n)
        )
        return int(mpmath.ceil(2 * bound)) + 2


def _split_prime(field, target: FieldElement, scale: int):
    """First odd prime p not dividing disc or scale, splitting completely,
    at which target is a unit at every root. Raises NotASquare on a
    non-residue."""
    n = field.degree
    for p in modular.primes(3):
        if field.discriminant % p == 0 or scale % p == 0:
            continue
        rts = modular.roots_mod_prime(field.int_coeffs, p)
        if len(rts) != n:
            continue
        vals = [modular.eval_mod(target.num, r, p) for r in rts]
        if any(v == 0 for v in vals):
            continue
        for r, v in zip(rts, vals):
            if modular.legendre(v, p) == -1:
                site = PrimeSite(field, p, r)
                raise NotASquare(f"non-residue at the prime ({p}, theta - {r})", site)
        return p, rts, vals
    raise AssertionError("unreachable")


def _sqrt_integral(target: FieldElement, scale: int, precision_budget: int) -> FieldElement | None:
    """Hensel-lifted square root of an element with integer coefficients."""
    field = target.field
    n = field.degree
    den_bound = max(1, isqrt(abs(field.discriminant)))
    num_bound = coefficient_bound(target) * den_bound
    p, rts, vals = _split_prime(field, target, scale)
    need = 2 * num_bound * den_bound + 1
    k = max(1, int(log(need) / log(p)) + 2)
    for _ in range(precision_budget):
        m = p**k
        lifted_roots = [modular.hensel_lift_root(field.int_coeffs, r, p, k) for r in rts]
        values = [modular.eval_mod(target.num, r, m) for r in lifted_roots]
        base = [
            modular.hensel_lift_sqrt(v, modular.sqrt_mod_prime(v0, p), p, k)
            for v, v0 in zip(values, vals)
        ]
        for signs in itertools.product((1, -1), repeat=n - 1):
            ys = [base[0]] + [s * b % m for s, b in zip(signs, base[1:])]
            coeffs = modular.interpolate_mod(lifted_roots, ys, m)
            fracs = [modular.rational_reconstruction(c, m, num_bound, den_bound) for c in coeffs]
            if any(f is None for f in fracs):
                continue
            cand = field.element(fracs)
            if cand * cand == target:
                return cand
        # the bound was estimated numerically; widen and retry
        k *= 2
        num_bound = num_bound * num_bound
    return None


def _sqrt_by_embeddings(target: FieldElement, precision_budget: int) -> FieldElement | None:
    """Fallback: recover the root from its archimedean images."""
    field = target.field
    n = field.degree
    mult = abs(field.discriminant)
    prec = 64 + 2 * max(abs(c) for c in target.num).bit_length()
    for _ in range(precision_budget):
        emb = target.embeddings(prec)
        roots = field.roots(prec)
        with mpmath.workprec(prec):
            vand = mpmath.matrix(n, n)
            for j, r in enumerate(roots):
                for i in range(n):
                    vand[j, i] = mpmath.mpc(r) ** i
            vinv = mpmath.inverse(vand)
            sq = [mpmath.sqrt(mpmath.mpc(v)) for v in emb]
            for signs in itertools.product((1, -1), repeat=n - 1):
                s = [sq[0]] + [sg * v for sg, v in zip(signs, sq[1:])]
                coeffs = []
                for i in range(n):
                    c = sum(vinv[i, j] * s[j] for j in range(n)) * mult
                    coeffs.append(Fraction(int(mpmath.nint(mpmath.re(c))), mult))
                cand = field.element(coeffs)
                if cand * cand == target:
                    return cand
        prec *= 2
    return None
