"""Integer and modular primitives: primes, residuosity, square roots mod p,
Hensel lifting and rational reconstruction."""

from __future__ import annotations

from fractions import Fraction
from itertools import count
from math import gcd, isqrt
from typing import Iterator, Sequence


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def primes(start: int = 2) -> Iterator[int]:
    for n in count(max(start, 2)):
        if is_prime(n):
            yield n


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def residue_table(p: int) -> list[bool]:
    """table[u] is True iff u is zero or a nonzero square mod p."""
    table = [False] * p
    for y in range(p):
        table[y * y % p] = True
    return table


def sqrt_mod_prime(a: int, p: int) -> int:
    """A square root of a modulo an odd prime p (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        raise ValueError(f"{a} is not a square mod {p}")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def eval_mod(coeffs: Sequence[int], x: int, m: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % m
    return acc


def roots_mod_prime(coeffs: Sequence[int], p: int) -> list[int]:
    """Roots in [0, p) of an integer polynomial, by exhaustion."""
    return [r for r in range(p) if eval_mod(coeffs, r, p) == 0]


def hensel_lift_root(coeffs: Sequence[int], root: int, p: int, k: int) -> int:
    """Lift a simple root of f mod p to a root mod p**k (Newton iteration)."""
    deriv = [i * c for i, c in enumerate(coeffs)][1:]
    modulus, r = p, root % p
    target = p**k
    while modulus < target:
        modulus = min(modulus * modulus, target)
        fr = eval_mod(coeffs, r, modulus)
        dr = eval_mod(deriv, r, modulus)
        r = (r - fr * pow(dr, -1, modulus)) % modulus
    return r


def hensel_lift_sqrt(value: int, root: int, p: int, k: int) -> int:
    """Lift s with s^2 = value mod p (s a unit, p odd) to precision p**k."""
    modulus, s = p, root % p
    target = p**k
    while modulus < target:
        modulus = min(modulus * modulus, target)
        s = (s - (s * s - value) * pow(2 * s, -1, modulus)) % modulus
    return s


def rational_reconstruction(u: int, m: int, num_bound: int, den_bound: int) -> Fraction | None:
    """Find n/d = u mod m with |n| <= num_bound and 0 < d <= den_bound.

    Unique when 2 * num_bound * den_bound < m; returns None if no such
    fraction exists.
    """
    u %= m
    r0, r1 = m, u
    t0, t1 = 0, 1
    while r1 > num_bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > den_bound:
        return None
    if t1 < 0:
        r1, t1 = -r1, -t1
    if gcd(r1, t1) != 1:
        return None
    return Fraction(r1, t1)


def interpolate_mod(xs: Sequence[int], ys: Sequence[int], m: int) -> list[int]:
    """Coefficients (constant first) of the unique polynomial of degree
    < len(xs) through the points, modulo m. Pairwise differences of xs must
    be units mod m."""
    n = len(xs)
    result = [0] * n
    for j in range(n):
        basis = [1]
        denom = 1
        for i in range(n):
            if i == j:
                continue
            basis = _mul_linear(basis, -xs[i], m)
            denom = denom * (xs[j] - xs[i]) % m
        scale = ys[j] * pow(denom, -1, m) % m
        for k, c in enumerate(basis):
            result[k] = (result[k] + scale * c) % m
    return result


def _mul_linear(poly: list[int], c: int, m: int) -> list[int]:
    # poly * (x + c)
    out = [0] * (len(poly) + 1)
    for k, a in enumerate(poly):
        out[k] = (out[k] + a * c) % m
        out[k + 1] = (out[k + 1] + a) % m
    return out


def symmetric_residue(u: int, m: int) -> int:
    u %= m
    return u - m if u > m // 2 else u


# polynomials over F_p, as int lists constant first

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def fp_poly_mod(a: list[int], f: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    f = _trim([c % p for c in f])
    inv = pow(f[-1], -1, p)
    df = len(f) - 1
    while len(a) - 1 >= df and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - df
        for i, b in enumerate(f):
            a[shift + i] = (a[shift + i] - c * b) % p
        _trim(a)
    return a


def fp_poly_mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return fp_poly_mod(out, f, p)


def fp_poly_powmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    result, base = [1], fp_poly_mod(a, f, p)
    while e:
        if e & 1:
            result = fp_poly_mulmod(result, base, f, p)
        base = fp_poly_mulmod(base, base, f, p)
        e >>= 1
    return fp_poly_mod(result, f, p)


def fp_poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    while b:
        a, b = b, fp_poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _prime_factors(n: int) -> list[int]:
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


def irreducible_mod_p(f: Sequence[int], p: int) -> bool:
    """Rabin's irreducibility test for f (leading coefficient a unit) over F_p."""
    f = _trim([c % p for c in f])
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]

    def frob_power(k: int) -> list[int]:
        h = x
        for _ in range(k):
            h = fp_poly_powmod(h, p, f, p)
        return h

    for q in _prime_factors(n):
        h = frob_power(n // q)
        diff = _trim([(a - b) % p for a, b in _zip_pad(h, x)])
        if len(fp_poly_gcd(f, diff, p)) > 1:
            return False
    h = frob_power(n)
    return not _trim([(a - b) % p for a, b in _zip_pad(h, x)])


def _zip_pad(a: list[int], b: list[int]):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]
