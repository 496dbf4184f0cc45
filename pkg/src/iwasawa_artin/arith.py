"""Exact integer and modular arithmetic shared by the rest of the package.

Everything here works on plain Python ints, so there is no overflow at any
operand size.  Polynomials are lists of coefficients, constant term first.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field

# Deterministic Miller-Rabin witnesses: correct for every n < 3.3e24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def modpow(a: int, e: int, m: int) -> int:
    """Return a**e mod m by left-to-right square-and-multiply."""
    if e < 0:
        raise ValueError("negative exponent")
    if m == 1:
        return 0
    result = 1
    base = a % m
    for bit in bin(e)[2:]:
        result = result * result % m
        if bit == "1":
            result = result * base % m
    return result


def jacobi(a: int, n: int) -> int:
    if n <= 0 or n % 2 == 0:
        raise ValueError("n must be odd and positive")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(D: int, n: int) -> int:
    """Kronecker symbol (D/n) for n >= 1."""
    if n < 1:
        raise ValueError("n must be positive")
    result = 1
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if D % 2 == 0:
            return 0
        if v % 2 and D % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * jacobi(D, n)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _sieve(limit: int) -> bytearray:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"[: min(2, limit + 1)]
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return flags


def primes_in_range(lo: int, hi: int) -> list[int]:
    """All primes p with lo <= p <= hi, ascending."""
    if lo > hi:
        raise ValueError("lo > hi")
    lo = max(lo, 2)
    if hi < lo:
        return []
    if hi <= 10**7:
        flags = _sieve(hi)
        return [p for p in range(lo, hi + 1) if flags[p]]
    # segmented sieve over [lo, hi] with small primes up to sqrt(hi)
    small = primes_in_range(2, math.isqrt(hi))
    seg = bytearray([1]) * (hi - lo + 1)
    for q in small:
        start = max(q * q, (lo + q - 1) // q * q)
        seg[start - lo :: q] = bytearray(len(range(start, hi + 1, q)))
    return [lo + i for i, flag in enumerate(seg) if flag]


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorisation; intended for discriminant-sized inputs."""
    n = abs(n)
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def squarefree_part(n: int) -> int:
    sign = -1 if n < 0 else 1
    core = 1
    for q, e in factorize(n).items():
        if e % 2:
            core *= q
    return sign * core


def fundamental_discriminant(n: int) -> int:
    """Discriminant of Q(sqrt(n)) for a non-square integer n."""
    d = squarefree_part(n)
    if d == 1:
        raise ValueError("square argument has no quadratic field")
    return d if d % 4 == 1 else 4 * d


def is_fundamental_discriminant(D: int) -> bool:
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return squarefree_part(D) == D
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and squarefree_part(m) == m
    return False


def sqrt_mod_prime(a: int, p: int) -> int:
    """A square root of a modulo an odd prime p (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        raise ValueError(f"{a} is not a square mod {p}")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def hensel_sqrt(a: int, p: int, k: int, root: int) -> int:
    """Lift a simple square root of a mod odd prime p to a root mod p**k."""
    mod = p
    x = root % p
    while mod < p**k:
        mod = min(mod * mod, p**k)
        x = (x - (x * x - a) * pow(2 * x, -1, mod)) % mod
    return x


# ---------------------------------------------------------------------------
# polynomials over Z and Z/mZ (coefficient lists, constant term first)


def poly_trim(f: list[int]) -> list[int]:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_mul(f: list[int], g: list[int], m: int | None = None) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    if m is not None:
        out = [c % m for c in out]
    return poly_trim(out)


def poly_divmod_monic(f: list[int], g: list[int], m: int | None = None):
    """Divide f by the monic polynomial g; returns (quotient, remainder)."""
    f = list(f)
    dg = len(g) - 1
    if g[-1] != 1:
        raise ValueError("divisor must be monic")
    if len(f) <= dg:
        return [], poly_trim([c % m for c in f] if m else f)
    q = [0] * (len(f) - dg)
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i] % m if m else f[i]
        if c:
            q[i - dg] = c
            for j in range(dg + 1):
                f[i - dg + j] -= c * g[j]
    rem = f[:dg]
    if m:
        rem = [c % m for c in rem]
        q = [c % m for c in q]
    return poly_trim(q), poly_trim(rem)


def poly_mulmod(f: list[int], g: list[int], modulus: list[int], m: int) -> list[int]:
    return poly_divmod_monic(poly_mul(f, g, m), modulus, m)[1]


def poly_powmod(f: list[int], e: int, modulus: list[int], m: int) -> list[int]:
    result = [1 % m] if m > 1 else []
    base = poly_divmod_monic(f, modulus, m)[1]
    for bit in bin(e)[2:]:
        result = poly_mulmod(result, result, modulus, m)
        if bit == "1":
            result = poly_mulmod(result, base, modulus, m)
    return result


def poly_eval(f: list[int], x, m: int | None = None):
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
        if m is not None:
            acc %= m
    return acc


def poly_gcd_mod_p(f: list[int], g: list[int], p: int) -> list[int]:
    """Monic gcd over F_p."""
    f = poly_trim([c % p for c in f])
    g = poly_trim([c % p for c in g])
    while g:
        inv = pow(g[-1], -1, p)
        g = [c * inv % p for c in g]
        f, g = g, poly_divmod_monic(f, g, p)[1]
    if not f:
        return []
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def poly_xgcd_mod_p(f: list[int], g: list[int], p: int):
    """Return (d, s, t) with s*f + t*g = d = monic gcd(f, g) over F_p."""

    def sub(a, b):
        n = max(len(a), len(b))
        a = a + [0] * (n - len(a))
        b = b + [0] * (n - len(b))
        return poly_trim([(x - y) % p for x, y in zip(a, b)])

    r0, r1 = poly_trim([c % p for c in f]), poly_trim([c % p for c in g])
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        inv = pow(r1[-1], -1, p)
        monic = [c * inv % p for c in r1]
        q, r = poly_divmod_monic(r0, monic, p)
        q = [c * inv % p for c in q]
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, poly_mul(q, s1, p))
        t0, t1 = t1, sub(t0, poly_mul(q, t1, p))
    inv = pow(r0[-1], -1, p)
    return ([c * inv % p for c in r0], [c * inv % p for c in s0], [c * inv % p for c in t0])


def roots_mod_p(f: list[int], p: int) -> list[int]:
    """Distinct roots in F_p of a polynomial, ascending.

    Uses gcd with x^p - x and deterministic equal-degree splitting, so it is
    fast for large p.
    """
    f = poly_trim([c % p for c in f])
    if not f:
        raise ValueError("zero polynomial")
    if len(f) == 1:
        return []
    if p < 64:
        return [x for x in range(p) if poly_eval(f, x, p) == 0]
    inv = pow(f[-1], -1, p)
    f = [c * inv % p for c in f]
    xp = poly_powmod([0, 1], p, f, p)
    h = poly_gcd_mod_p(f, _sub_x(xp, p), p)
    roots: list[int] = []
    _split_linear(h, p, roots, 0)
    return sorted(roots)


def _sub_x(g: list[int], p: int) -> list[int]:
    g = list(g) + [0] * max(0, 2 - len(g))
    g[1] = (g[1] - 1) % p
    return poly_trim(g)


def _split_linear(h: list[int], p: int, out: list[int], shift: int) -> None:
    # h is monic, squarefree and a product of distinct linear factors
    deg = len(h) - 1
    if deg <= 0:
        return
    if deg == 1:
        out.append((-h[0]) % p)
        return
    a = shift
    while True:
        w = poly_powmod([a, 1], (p - 1) // 2, h, p)
        w = list(w) or [0]
        w[0] = (w[0] - 1) % p
        g = poly_gcd_mod_p(h, poly_trim(w), p)
        if 0 < len(g) - 1 < deg:
            _split_linear(g, p, out, a + 1)
            _split_linear(poly_divmod_monic(h, g, p)[0], p, out, a + 1)
            return
        a += 1


# ---------------------------------------------------------------------------
# monic cubic polynomials


class FactorType(enum.Enum):
    THREE_ROOTS = "three"
    ONE_ROOT = "one"
    IRREDUCIBLE = "irreducible"
    RAMIFIED = "ramified"


@dataclass(frozen=True)
class CubicPoly:
    """Monic integer cubic x^3 + c2 x^2 + c1 x + c0, irreducible over Q."""

    c0: int
    c1: int
    c2: int
    c3: int = field(default=1)

    def __post_init__(self):
        if self.c3 != 1:
            raise ValueError("cubic must be monic")
        # rational roots of a monic integer cubic are integer divisors of c0
        if self.c0 == 0 or any(
            poly_eval(self.coeffs, s * d) == 0
            for d in _divisors(abs(self.c0))
            for s in (1, -1)
        ):
            raise ValueError(f"{self} is reducible over Q")

    @property
    def coeffs(self) -> list[int]:
        return [self.c0, self.c1, self.c2, 1]

    @property
    def discriminant(self) -> int:
        a, b, c = self.c2, self.c1, self.c0
        return a * a * b * b - 4 * b**3 - 4 * a**3 * c - 27 * c * c + 18 * a * b * c

    def __str__(self):
        terms = ["x^3"]
        for coef, mono in ((self.c2, "x^2"), (self.c1, "x"), (self.c0, "")):
            if coef:
                sign = "+" if coef > 0 else "-"
                mag = abs(coef)
                body = mono if (mag == 1 and mono) else f"{mag}{mono}"
                terms.append(f"{sign}{body}")
        return "".join(terms)

    @classmethod
    def parse(cls, text: str) -> "CubicPoly":
        """Accept "c3,c2,c1,c0" or polynomial text such as "x^3-x-1"."""
        text = text.strip()
        if re.fullmatch(r"\s*-?\d+(\s*,\s*-?\d+){3}\s*", text):
            c3, c2, c1, c0 = (int(t) for t in text.split(","))
            return cls(c0, c1, c2, c3)
        coeffs = parse_univariate(text)
        if len(coeffs) != 4:
            raise ValueError(f"not a cubic: {text!r}")
        return cls(coeffs[0], coeffs[1], coeffs[2], coeffs[3])


def _divisors(n: int) -> list[int]:
    return sorted(_divisors_from_factors(factorize(n)))


def _divisors_from_factors(fac: dict[int, int]) -> list[int]:
    divs = [1]
    for q, e in fac.items():
        divs = [d * q**k for d in divs for k in range(e + 1)]
    return divs


_TOKEN = re.compile(r"\s*(?:(\d+)|([a-zA-Z])|(\*\*|[-+*^()]))")


def parse_univariate(text: str) -> list[int]:
    """Parse an integer polynomial in one variable into a coefficient list.

    Small recursive-descent grammar: sums of products of integers, the
    variable, parentheses and non-negative integer powers.
    """
    tokens = []
    pos = 0
    text = text.strip()
    var = None
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at {text[pos:]!r}")
        num, name, op = m.groups()
        if name:
            if var is None:
                var = name
            elif name != var:
                raise ValueError("more than one variable")
            tokens.append(("var", name))
        elif num:
            tokens.append(("num", int(num)))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    tokens.append(("end", None))
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        tok = tokens[i]
        i += 1
        return tok

    def add(a, b, sign=1):
        n = max(len(a), len(b))
        a = a + [0] * (n - len(a))
        b = b + [0] * (n - len(b))
        return [x + sign * y for x, y in zip(a, b)]

    def expr():
        sign = 1
        if peek() == ("op", "-"):
            take()
            sign = -1
        elif peek() == ("op", "+"):
            take()
        acc = [sign * c for c in term()]
        while peek() in (("op", "+"), ("op", "-")):
            s = 1 if take()[1] == "+" else -1
            acc = add(acc, term(), s)
        return acc

    def term():
        acc = power()
        while True:
            if peek() == ("op", "*"):
                take()
                acc = poly_mul(acc, power()) or [0]
            elif peek()[0] in ("var", "num") or peek() == ("op", "("):
                acc = poly_mul(acc, power()) or [0]
            else:
                return acc

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, val = take()
            if kind != "num":
                raise ValueError("exponent must be a non-negative integer")
            out = [1]
            for _ in range(val):
                out = poly_mul(out, base) or [0]
            return out
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return [val]
        if kind == "var":
            return [0, 1]
        if (kind, val) == ("op", "("):
            inner = expr()
            if take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return inner
        if (kind, val) == ("op", "-"):
            return [-c for c in atom()]
        raise ValueError(f"unexpected token {val!r}")

    result = expr()
    if peek()[0] != "end":
        raise ValueError(f"trailing input in {text!r}")
    return poly_trim(result) or [0]


def factor_type_cubic(f: CubicPoly, p: int) -> FactorType:
    """Splitting pattern of f modulo p (Frobenius cycle type when unramified)."""
    if p < 2:
        raise ValueError("p must be >= 2")
    if f.discriminant % p == 0:
        return FactorType.RAMIFIED
    n = len(roots_mod_p(f.coeffs, p))
    if n == 3:
        return FactorType.THREE_ROOTS
    if n == 1:
        return FactorType.ONE_ROOT
    if n == 0:
        return FactorType.IRREDUCIBLE
    raise AssertionError("squarefree cubic cannot have exactly two roots")


# ---------------------------------------------------------------------------
# integer lattices


def hnf(rows: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of a full-rank integer lattice.

    Returns an upper-triangular basis with positive diagonal and entries above
    the diagonal reduced into [0, pivot).
    """
    n = len(rows[0])
    work = [list(r) for r in rows if any(r)]
    basis: list[list[int]] = []
    for col in range(n):
        pivot_rows = [r for r in work if r[col] != 0]
        rest = [r for r in work if r[col] == 0]
        while len(pivot_rows) > 1:
            pivot_rows.sort(key=lambda r: abs(r[col]))
            piv = pivot_rows[0]
            nxt = [piv]
            for r in pivot_rows[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                (nxt if r[col] else rest).append(r)
            pivot_rows = nxt
        if not pivot_rows:
            raise ValueError("lattice is not of full rank")
        piv = pivot_rows[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        basis.append(piv)
        work = [r for r in rest if any(r)]
    for i in range(n):
        for j in range(i):
            q = basis[j][i] // basis[i][i]
            if q:
                basis[j] = [a - q * b for a, b in zip(basis[j], basis[i])]
    return basis
