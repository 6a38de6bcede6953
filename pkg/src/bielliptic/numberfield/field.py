"""Number fields K = Q[x]/(f) in the power basis, and their elements."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import mpmath

from ..errors import BadReduction, DivisionByZero, FieldMismatch, NotMonic, ReducibleDetected
from . import modular
from .poly import (
    UniPoly,
    cauchy_bound,
    discriminant,
    poly_gcd,
    poly_xgcd,
    rational_roots,
    sign_changes_at,
    sturm_sequence,
    to_fraction,
)

# primes tried when screening irreducibility of degree >= 4 polynomials
_IRREDUCIBILITY_SCREEN_PRIMES = 60


class NumberField:
    """K = Q[θ]/(f) for a monic irreducible integer polynomial f.

    Construct through :func:`nf_create`, which performs the irreducibility
    checks. Instances are immutable apart from caches of root data, which
    only ever get more precise.
    """

    def __init__(self, poly: UniPoly, name: str | None = None):
        self.poly = poly
        self.degree = poly.degree
        self.int_coeffs: tuple[int, ...] = tuple(int(c) for c in poly.coeffs)
        self.discriminant = int(discriminant(poly))
        self.name = name
        self._lock = threading.Lock()
        self._sites: list[PrimeSite] = []
        self._site_cursor = 2
        self._real_intervals: list[tuple[Fraction, Fraction]] | None = None
        self._complex_roots: tuple[int, list] | None = None

    # identity is the defining polynomial
    def __eq__(self, other) -> bool:
        return isinstance(other, NumberField) and self.int_coeffs == other.int_coeffs

    def __hash__(self) -> int:
        return hash(("NumberField", self.int_coeffs))

    def __repr__(self) -> str:
        label = f"{self.name}: " if self.name else ""
        return f"NumberField({label}{self.poly.format('x')})"

    def __getstate__(self):
        return {"poly": self.poly, "name": self.name}

    def __setstate__(self, state):
        self.__init__(state["poly"], state["name"])

    def __call__(self, coeffs) -> FieldElement:
        return self.element(coeffs)

    def element(self, coeffs) -> FieldElement:
        """Element from a coefficient list (power basis, constant first),
        or from a single rational."""
        if isinstance(coeffs, FieldElement):
            if coeffs.field != self:
                raise FieldMismatch("element belongs to another field")
            return coeffs
        if isinstance(coeffs, (int, Fraction, str)):
            coeffs = [coeffs]
        fracs = [to_fraction(c) for c in coeffs]
        if len(fracs) > self.degree:
            if any(fracs[self.degree:]):
                raise ValueError(
                    f"expected at most {self.degree} coefficients, got {len(fracs)}"
                )
            fracs = fracs[: self.degree]
        fracs += [Fraction(0)] * (self.degree - len(fracs))
        den = lcm(*(c.denominator for c in fracs))
        return FieldElement._make(self, [int(c * den) for c in fracs], den)

    def from_poly(self, poly: UniPoly) -> FieldElement:
        return self.element((poly % self.poly).coeffs)

    @property
    def zero(self) -> FieldElement:
        return FieldElement._make(self, [0] * self.degree, 1)

    @property
    def one(self) -> FieldElement:
        return self.element([1])

    @property
    def gen(self) -> FieldElement:
        if self.degree == 1:
            return self.element([-self.poly.coeffs[0]])
        return self.element([0, 1])

    # reduction mod f of an integer coefficient list of any length
    def _reduce_ints(self, prod: list[int]) -> list[int]:
        n = self.degree
        f = self.int_coeffs
        for k in range(len(prod) - 1, n - 1, -1):
            c = prod[k]
            if c:
                base = k - n
                for i in range(n):
                    if f[i]:
                        prod[base + i] -= c * f[i]
            prod[k] = 0
        out = prod[:n]
        out += [0] * (n - len(out))
        return out

    # real roots: exact isolating intervals

    def real_root_intervals(self) -> list[tuple[Fraction, Fraction]]:
        with self._lock:
            if self._real_intervals is None:
                self._real_intervals = _isolate_real_roots(self.poly)
            return list(self._real_intervals)

    @property
    def real_root_count(self) -> int:
        return len(self.real_root_intervals())

    def refine_real_root(self, i: int, width: Fraction) -> tuple[Fraction, Fraction]:
        """Isolating interval of the i-th real root (ascending) of width <= width."""
        intervals = self.real_root_intervals()
        lo, hi = intervals[i]
        if hi - lo <= width:
            return lo, hi
        f = self.poly
        flo = f(lo)
        while hi - lo > width:
            mid = (lo + hi) / 2
            fm = f(mid)
            if fm == 0:
                lo = hi = mid
                break
            if (fm < 0) == (flo < 0):
                lo, flo = mid, fm
            else:
                hi = mid
        with self._lock:
            cur_lo, cur_hi = self._real_intervals[i]
            if hi - lo < cur_hi - cur_lo:
                self._real_intervals[i] = (lo, hi)
        return lo, hi

    def roots(self, prec: int) -> list:
        """Approximations of all roots of f, real roots ascending first and
        then complex roots by increasing imaginary part."""
        reals = []
        width = Fraction(1, 2 ** (prec + 8))
        for i in range(self.real_root_count):
            lo, hi = self.refine_real_root(i, width)
            with mpmath.workprec(prec + 16):
                reals.append(mpmath.mpf(lo.numerator) / lo.denominator / 2
                             + mpmath.mpf(hi.numerator) / hi.denominator / 2)
        return reals + self._complex_roots_at(prec)

    def _complex_roots_at(self, prec: int) -> list:
        n_complex = self.degree - self.real_root_count
        if n_complex == 0:
            return []
        with self._lock:
            cached = self._complex_roots
        if cached is not None and cached[0] >= prec:
            return list(cached[1])
        work = prec + 32 + 4 * self.degree
        with mpmath.workprec(work):
            coeffs = [mpmath.mpf(c) for c in reversed(self.int_coeffs)]
            approx = mpmath.polyroots(coeffs, maxsteps=200 + prec, extraprec=work)
            approx = sorted(approx, key=lambda z: abs(mpmath.im(z)))[-n_complex:]
            polished = [_newton_polish(self.int_coeffs, z, work) for z in approx]
            polished.sort(key=lambda z: mpmath.im(z))
        with self._lock:
            if self._complex_roots is None or self._complex_roots[0] < prec:
                self._complex_roots = (prec, polished)
        return polished

    # degree-one primes

    def sites(self, count: int, avoid: Iterable[int] = ()) -> list[PrimeSite]:
        avoid = set(avoid)
        with self._lock:
            while sum(1 for s in self._sites if s.p not in avoid) < count:
                p = self._site_cursor
                self._site_cursor = next(modular.primes(p + 1))
                if self.discriminant % p == 0:
                    continue
                rts = modular.roots_mod_prime(self.int_coeffs, p)
                if rts:
                    self._sites.append(PrimeSite(self, p, rts[0]))
            return [s for s in self._sites if s.p not in avoid][:count]


def _newton_polish(coeffs: Sequence[int], z, prec: int):
    with mpmath.workprec(prec):
        for _ in range(8):
            fz = mpmath.polyval(list(reversed(coeffs)), z)
            dz = mpmath.polyval([i * c for i, c in reversed(list(enumerate(coeffs)))][:-1], z)
            if dz == 0:
                break
            z = z - fz / dz
        return z


def _isolate_real_roots(f: UniPoly) -> list[tuple[Fraction, Fraction]]:
    if f.degree == 1:
        r = -f.coeffs[0] / f.coeffs[1]
        return [(r, r)]
    seq = sturm_sequence(f)
    bound = Fraction(int(cauchy_bound(f)) + 1)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        n = sign_changes_at(seq, lo) - sign_changes_at(seq, hi)
        if n == 0:
            continue
        if n == 1 and f(lo) != 0 and f(hi) != 0:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((lo, mid))
        stack.append((mid, hi))
    return sorted(out)


@dataclass(frozen=True)
class PrimeSite:
    """A degree-one prime of a number field: (p, θ - root)."""

    field: NumberField
    p: int
    root: int

    def __post_init__(self):
        if self.field.discriminant % self.p == 0:
            raise ValueError(f"{self.p} divides the discriminant")
        if modular.eval_mod(self.field.int_coeffs, self.root, self.p) != 0:
            raise ValueError(f"{self.root} is not a root of f mod {self.p}")

    def __repr__(self) -> str:
        return f"PrimeSite(p={self.p}, root={self.root})"


class FieldElement:
    """Element of a number field, stored as integer numerators over a
    positive common denominator, in lowest terms."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: NumberField, coeffs):
        other = field.element(coeffs)
        self.field, self.num, self.den = field, other.num, other.den

    @classmethod
    def _make(cls, field: NumberField, num: list[int], den: int) -> FieldElement:
        if den == 0:
            raise DivisionByZero("zero denominator")
        if den < 0:
            num, den = [-c for c in num], -den
        g = gcd(den, *num)
        if g != 1:
            num = [c // g for c in num]
            den //= g
        self = object.__new__(cls)
        self.field = field
        self.num = tuple(num)
        self.den = den
        return self

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def to_poly(self) -> UniPoly:
        return UniPoly(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"FieldElement([{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        var = "θ" if self.field.degree > 1 else "x"
        if self.field.degree == 1:
            return str(self.coeffs[0])
        return self.to_poly().format(var)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(Fraction(self.num[0], self.den))
        return hash((self.num, self.den))

    def _coerce(self, other) -> FieldElement | None:
        """None for operand types we do not handle."""
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element([other])
        return None

    def __neg__(self) -> FieldElement:
        return FieldElement._make(self.field, [-c for c in self.num], self.den)

    def __add__(self, other) -> FieldElement:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return FieldElement._make(self.field, [a + b for a, b in zip(self.num, other.num)], self.den)
        d = self.den * other.den
        return FieldElement._make(
            self.field,
            [a * other.den + b * self.den for a, b in zip(self.num, other.num)],
            d,
        )

    __radd__ = __add__

    def __sub__(self, other) -> FieldElement:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> FieldElement:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> FieldElement:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.num, other.num
        n = self.field.degree
        if other.is_rational():
            c = b[0]
            return FieldElement._make(self.field, [x * c for x in a], self.den * other.den)
        if self.is_rational():
            c = a[0]
            return FieldElement._make(self.field, [x * c for x in b], self.den * other.den)
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return FieldElement._make(self.field, self.field._reduce_ints(prod), self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> FieldElement:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other) -> FieldElement:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, n: int) -> FieldElement:
        if n < 0:
            return self.inv() ** (-n)
        result, base = self.field.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inv(self) -> FieldElement:
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.is_rational():
            return self.field.element([Fraction(self.den, self.num[0])])
        g, s, _ = poly_xgcd(self.to_poly(), self.field.poly)
        if g.degree != 0:
            raise ReducibleDetected(f"non-trivial gcd {g} with defining polynomial")
        return self.field.from_poly(s)

    # invariants

    def mult_matrix(self) -> list[list[Fraction]]:
        """Matrix of multiplication by self on the power basis (columns are
        images of basis vectors)."""
        n = self.field.degree
        cols = []
        basis = self.field.one
        theta = self.field.gen
        for _ in range(n):
            cols.append((self * basis).coeffs)
            basis = basis * theta
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def charpoly(self) -> UniPoly:
        return _faddeev_leverrier(self.mult_matrix())

    def norm(self) -> Fraction:
        if self.is_rational():
            return Fraction(self.num[0], self.den) ** self.field.degree
        cp = self.charpoly()
        return (-1) ** self.field.degree * cp.coeffs[0] if cp.coeffs else Fraction(0)

    def trace(self) -> Fraction:
        if self.is_rational():
            return Fraction(self.num[0], self.den) * self.field.degree
        return -self.charpoly()[self.field.degree - 1]

    def minpoly(self) -> UniPoly:
        cp = self.charpoly()
        return (cp // poly_gcd(cp, cp.derivative())).monic()

    def height(self) -> int:
        if self.is_zero():
            return 0
        return max(max(abs(c) for c in self.num), self.den)

    def reduce(self, site: PrimeSite) -> int:
        if site.field != self.field:
            raise FieldMismatch("site belongs to another field")
        p = site.p
        if self.den % p == 0:
            raise BadReduction(f"denominator {self.den} divisible by {p}")
        return modular.eval_mod(self.num, site.root, p) * pow(self.den, -1, p) % p

    def real_sign(self, i: int) -> int:
        """Sign of the image under the i-th real embedding, certified with
        exact interval arithmetic."""
        if self.is_zero():
            return 0
        if self.is_rational():
            return 1 if self.num[0] > 0 else -1
        field = self.field
        lo, hi = field.real_root_intervals()[i]
        width = max(hi - lo, Fraction(1, 2**20))
        while True:
            lo, hi = field.refine_real_root(i, width)
            low, high = _interval_horner(self.num, lo, hi)
            if low > 0:
                return 1
            if high < 0:
                return -1
            width /= 2**16

    def embeddings(self, precision: int = 53) -> list:
        if precision < 32:
            raise ValueError("precision must be at least 32 bits")
        if self.is_rational():
            with mpmath.workprec(precision + 16):
                val = mpmath.mpf(self.num[0]) / self.den
            return [val] * self.field.degree
        # bits lost to cancellation when evaluating the numerator polynomial
        extra = max(abs(c) for c in self.num).bit_length() + 4 * self.field.degree
        roots = self.field.roots(precision + extra + 16)
        out = []
        with mpmath.workprec(precision + extra + 16):
            for r in roots:
                acc = mpmath.mpf(0)
                for c in reversed(self.num):
                    acc = acc * r + c
                out.append(acc / self.den)
        return out


def _interval_horner(num: Sequence[int], lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    a = b = Fraction(num[-1])
    for c in reversed(num[:-1]):
        prods = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(prods) + c, max(prods) + c
    return a, b


def _faddeev_leverrier(m: list[list[Fraction]]) -> UniPoly:
    n = len(m)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # mk <- m @ mk + c_{n-k+1} I
        prod = [[sum(m[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            prod[i][i] += coeffs[n - k + 1]
        mk = prod
        am = [[sum(m[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(am[i][i] for i in range(n)) / k
    return UniPoly(coeffs)


def nf_create(f, assume_irreducible: bool = False, name: str | None = None) -> NumberField:
    """Build K = Q[x]/(f).

    Irreducibility is proved by the rational root test for degree <= 3. For
    higher degree it is screened by looking for a prime modulo which f is
    irreducible; if none is found the caller must pass
    ``assume_irreducible=True``.
    """
    if not isinstance(f, UniPoly):
        f = UniPoly(f)
    if f.degree < 1:
        raise NotMonic("defining polynomial must have degree >= 1")
    if not f.is_monic() or not f.has_integer_coeffs():
        raise NotMonic(f"defining polynomial {f} must be monic with integer coefficients")
    n = f.degree
    if n >= 2 and rational_roots(f):
        raise ReducibleDetected(f"{f} has a rational root")
    if n >= 4 and not assume_irreducible:
        disc = int(discriminant(f))
        if disc == 0:
            raise ReducibleDetected(f"{f} is not squarefree")
        ints = [int(c) for c in f.coeffs]
        tried = 0
        for p in modular.primes(2):
            if tried >= _IRREDUCIBILITY_SCREEN_PRIMES:
                raise ReducibleDetected(
                    f"could not certify irreducibility of {f} modulo any of "
                    f"{tried} primes; pass assume_irreducible=True if it is"
                )
            if disc % p == 0:
                continue
            tried += 1
            if modular.irreducible_mod_p(ints, p):
                break
    return NumberField(f, name=name)


def degree_one_sites(field: NumberField, count: int, avoid: Iterable[int] = ()) -> list[PrimeSite]:
    return field.sites(count, avoid)


def fe_reduce(alpha: FieldElement, site: PrimeSite) -> int:
    return alpha.reduce(site)


def fe_eval(poly: UniPoly, alpha: FieldElement) -> FieldElement:
    if not isinstance(alpha, FieldElement):
        raise FieldMismatch("fe_eval expects a FieldElement argument")
    acc = alpha.field.zero
    for c in reversed(poly.coeffs):
        acc = acc * alpha + c
    return acc
