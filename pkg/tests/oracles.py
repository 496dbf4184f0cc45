"""Reference computations used to freeze expected values.

Each oracle takes a different route from the library code it checks:
ideal lattices instead of form composition, a rational log series instead
of the truncated p-adic one, global Fermat quotients in Z[theta] instead of
local factors, brute-force root counts instead of factor types.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import gcd, isqrt


def is_prime_naive(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, isqrt(n) + 1))


def fundamental_discs(lo: int) -> list[int]:
    """Negative fundamental discriminants D with lo <= D < 0, by the definition."""
    out = []
    for D in range(lo, 0):
        if D % 4 == 1:
            ok = all(D % (q * q) for q in range(2, isqrt(-D) + 1))
        elif D % 4 == 0:
            m = D // 4
            ok = m % 4 in (2, 3) and all(m % (q * q) for q in range(2, isqrt(-m) + 1))
        else:
            ok = False
        if ok:
            out.append(D)
    return out


# -- class numbers via ideal lattices ---------------------------------------
# Elements x + y*w with w = (s + sqrt D)/2, s = D mod 4; lattices in HNF rows.


def _lattice_hnf(vectors):
    """HNF basis ((n1, m), (0, n2)) of the Z-span of 2-vectors (x, y)."""
    vecs = [list(v) for v in vectors if v != (0, 0)]
    # column y first: gcd of y-coordinates
    rows = vecs
    while True:
        nz = [r for r in rows if r[1] != 0]
        if len(nz) <= 1:
            break
        nz.sort(key=lambda r: abs(r[1]))
        piv = nz[0]
        new = [piv]
        for r in nz[1:]:
            q = r[1] // piv[1]
            new.append([r[0] - q * piv[0], r[1] - q * piv[1]])
        rows = new + [r for r in rows if r[1] == 0]
    g_row = next(r for r in rows if r[1] != 0)
    if g_row[1] < 0:
        g_row = [-g_row[0], -g_row[1]]
    n1 = 0
    for r in rows:
        if r is not g_row and r[1] == 0:
            n1 = gcd(n1, r[0])
    return n1, g_row  # lattice = Z*(n1, 0) + Z*g_row


def _mul_w(D: int, x1, y1, x2, y2):
    s = D % 4
    c = (s * s - D) // 4  # w^2 = s*w - c
    return (x1 * x2 - c * y1 * y2, x1 * y2 + x2 * y1 + s * y1 * y2)


def primitive_ideals(D: int, bound: float):
    """Primitive ideals [a, (b + sqrt D)/2] with a <= bound, as (a, b) with -a < b <= a."""
    s = D % 4
    out = []
    for a in range(1, int(bound) + 1):
        for b in range(-a + 1, a + 1):
            if b % 2 == s % 2 and (b * b - D) % (4 * a) == 0:
                out.append((a, b))
    return out


def _ideal_basis(D: int, a: int, b: int):
    s = D % 4
    return [(a, 0), ((b - s) // 2, 1)]


def _conj_basis(D: int, a: int, b: int):
    return _ideal_basis(D, a, -b)


def _has_element_of_norm(D: int, lattice, T: int) -> bool:
    n1, (gx, gy) = lattice
    s = D % 4
    for y in range(-2 * isqrt(4 * T // -D + 1) - 2, 2 * isqrt(4 * T // -D + 1) + 3):
        r = 4 * T + D * y * y
        if r < 0:
            continue
        t = isqrt(r)
        if t * t != r:
            continue
        for z in {t, -t}:
            if (z - s * y) % 2:
                continue
            x = (z - s * y) // 2
            if y % gy:
                continue
            k = y // gy
            if (x - k * gx) % n1 == 0:
                return True
    return False


def ideals_equivalent(D: int, I, J) -> bool:
    """I ~ J iff I * conj(J) contains an element of norm N(I) N(J)."""
    prods = [_mul_w(D, *u, *v) for u in _ideal_basis(D, *I) for v in _conj_basis(D, *J)]
    lat = _lattice_hnf(prods)
    return _has_element_of_norm(D, lat, I[0] * J[0])


def class_number_minkowski(D: int) -> int:
    bound = 2 / math.pi * math.sqrt(-D)
    reps = []
    for I in primitive_ideals(D, bound):
        if not any(ideals_equivalent(D, I, J) for J in reps):
            reps.append(I)
    return len(reps)


# -- p-adic logarithm by a rational series -----------------------------------


def log_series(u: int, p: int, N: int) -> int:
    """log_p(u) mod p^N for a p-adic unit u given as an integer, via log(u^(p-1))/(p-1)."""
    mod = p ** (N + 4)
    z = (pow(u, p - 1, mod) - 1) % mod
    total = Fraction(0)
    k = 1
    while True:
        term = Fraction(z**k, k)
        # the term's valuation is at least k - log_p(k); stop once it clears N
        if k - math.log(k, p) > N + 2:
            break
        total += term if k % 2 else -term
        k += 1
    total /= p - 1
    m = p**N
    return total.numerator * pow(total.denominator, -1, m) % m


# -- cubic fields --------------------------------------------------------------


def _mul_cubic(f, x, y, m):
    """Product in Z[x]/(f, m), f = x^3 + c2 x^2 + c1 x + c0 given as (c0, c1, c2)."""
    c0, c1, c2 = f
    prod = [0] * 5
    for i in range(3):
        for j in range(3):
            prod[i + j] += x[i] * y[j]
    for k in (4, 3):
        t = prod[k]
        prod[k] = 0
        prod[k - 1] -= t * c2
        prod[k - 2] -= t * c1
        prod[k - 3] -= t * c0
    return tuple(c % m for c in prod[:3])


def global_fermat_trivial(f, eps, p: int) -> bool:
    """eps^((p^3-1)(p^2-1)) = 1 mod p^2 in Z[theta]: the non-p-rational case."""
    m = p * p
    e = (p**3 - 1) * (p**2 - 1)
    result, base = (1, 0, 0), tuple(c % m for c in eps)
    while e:
        if e & 1:
            result = _mul_cubic(f, result, base, m)
        base = _mul_cubic(f, base, base, m)
        e >>= 1
    return result == (1, 0, 0)


def cubic_root_count(f, p: int) -> int:
    c0, c1, c2 = f
    return sum((x**3 + c2 * x * x + c1 * x + c0) % p == 0 for x in range(p))


def in_S_oracle(f, disc: int, p: int) -> bool:
    return p > 3 and disc % p != 0 and cubic_root_count(f, p) == 0


# -- Cohen-Lenstra via the pentagonal number theorem ---------------------------


def euler_function(x: float, terms: int = 60) -> float:
    """prod_{t>=1} (1 - x^t) = sum_k (-1)^k x^(k(3k-1)/2), k over all integers."""
    total = 1.0
    for k in range(1, terms):
        sign = -1.0 if k % 2 else 1.0
        total += sign * (x ** (k * (3 * k - 1) // 2) + x ** (k * (3 * k + 1) // 2))
    return total
