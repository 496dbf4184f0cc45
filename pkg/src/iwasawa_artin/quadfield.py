"""Imaginary quadratic fields through binary quadratic forms.

A form (a, b, c) with b*b - 4ac = D < 0 stands for the ideal
a*Z + ((-b + sqrt(D))/2)*Z.  Elements of the ring of integers are written
(x + y*sqrt(D))/2 with x = y*D (mod 2).

For a split prime p one of the two primes above p is *designated*.  It is
the prime P for which the generator of P**r0 (r0 the order of the class of
P) has an associate of argument strictly between 0 and pi/w.  The conjugate
prime then has its generators in (pi/w, 2*pi/w), so the choice is well
defined.  Generators are reported as the associate with argument in
[0, 2*pi/w).
"""

from __future__ import annotations

import csv
import enum
import math
import os
import tempfile
import threading
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

from .arith import is_fundamental_discriminant, is_prime, kronecker
from .errors import InvalidDiscriminant, NotPrincipal, SearchExhausted

GENERATOR_BOUND = 10**12


def unit_count(D: int) -> int:
    return {-3: 6, -4: 4}.get(D, 2)


# ---------------------------------------------------------------------------
# forms


@dataclass(frozen=True)
class BinaryQF:
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @classmethod
    def principal(cls, D: int) -> "BinaryQF":
        k = D % 2
        return cls(1, k, (k - D) // 4)

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        return b >= 0 if (abs(b) == a or a == c) else True

    def reduced(self) -> "BinaryQF":
        return reduce_with_transform(self)[0]

    def __mul__(self, other: "BinaryQF") -> "BinaryQF":
        return compose(self, other)

    def __pow__(self, n: int) -> "BinaryQF":
        result = BinaryQF.principal(self.discriminant)
        base = self.reduced()
        if n < 0:
            base = BinaryQF(base.a, -base.b, base.c).reduced()
            n = -n
        while n:
            if n & 1:
                result = compose(result, base)
            base = compose(base, base)
            n >>= 1
        return result

    def is_principal(self) -> bool:
        return self.reduced().a == 1


def reduce_with_transform(f: BinaryQF):
    """Reduce a positive definite form.

    Returns (g, M) with M = [[p, q], [r, s]] in SL2(Z) and
    g(u, v) = f(p*u + q*v, r*u + s*v).
    """
    a, b, c = f.a, f.b, f.c
    if a <= 0 or f.discriminant >= 0:
        raise ValueError("form must be positive definite")
    m = [[1, 0], [0, 1]]
    while True:
        # bring b into (-a, a]
        if not -a < b <= a:
            k = (a - b) // (2 * a)
            # substitute x -> x + k*y
            c = a * k * k + b * k + c
            b = b + 2 * a * k
            m = [[m[0][0], m[0][0] * k + m[0][1]], [m[1][0], m[1][0] * k + m[1][1]]]
        if a > c:
            # substitute (x, y) -> (-y, x)
            a, b, c = c, -b, a
            m = [[m[0][1], -m[0][0]], [m[1][1], -m[1][0]]]
            continue
        if a == c and b < 0:
            a, b, c = c, -b, a
            m = [[m[0][1], -m[0][0]], [m[1][1], -m[1][0]]]
        return BinaryQF(a, b, c), m


def _xgcd(a: int, b: int):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def compose(f: BinaryQF, g: BinaryQF) -> BinaryQF:
    """Gaussian composition of primitive forms of the same discriminant, reduced."""
    D = f.discriminant
    if g.discriminant != D:
        raise ValueError("forms have different discriminants")
    a1, b1, c1 = f.a, f.b, f.c
    a2, b2, c2 = g.a, g.b, g.c
    if a1 > a2:
        a1, b1, c1, a2, b2, c2 = a2, b2, c2, a1, b1, c1
    s = (b1 + b2) // 2
    n = b2 - s
    if a2 % a1 == 0:
        y1, d = 0, a1
    else:
        d, u, v = _xgcd(a2, a1)
        y1 = u
    if s % d == 0:
        y2, x2, d1 = -1, 0, d
    else:
        d1, x2, y2 = _xgcd(s, d)
        y2 = -y2
    v1 = a1 // d1
    v2 = a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    c3 = (c2 * d1 + r * (b2 + v2 * r)) // v1
    return BinaryQF(a3, b3, c3).reduced()


def reduced_forms(D: int) -> list[BinaryQF]:
    """All reduced primitive forms of discriminant D < 0."""
    out = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (a == c and b < 0):
                continue
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            out.append(BinaryQF(a, b, c))
        a += 1
    return out


def _count_reduced(D: int) -> int:
    return len(reduced_forms(D))


# ---------------------------------------------------------------------------
# class-number cache


def cache_dir() -> Path:
    return Path(os.environ.get("IWASAWA_CACHE_DIR", "cache"))


class ClassNumberCache:
    """In-process memo for h(D), optionally backed by ``classnumbers.csv``.

    Loading is lazy and happens once; ``save`` rewrites the file atomically.
    """

    def __init__(self, path: Path | None = None):
        self._path = path
        self._data: dict[int, int] = {}
        self._loaded = False
        self._lock = threading.Lock()

    @property
    def path(self) -> Path:
        return self._path or cache_dir() / "classnumbers.csv"

    def _load(self):
        if self._loaded:
            return
        with self._lock:
            if self._loaded:
                return
            if self.path.exists():
                with open(self.path, newline="") as fh:
                    for row in csv.DictReader(fh):
                        self._data.setdefault(int(row["D"]), int(row["h"]))
            self._loaded = True

    def get(self, D: int) -> int:
        self._load()
        h = self._data.get(D)
        if h is None:
            h = _count_reduced(D)
            with self._lock:
                self._data.setdefault(D, h)
        return h

    def save(self) -> Path:
        self._load()
        path = self.path
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        with os.fdopen(fd, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["D", "h"])
            for D in sorted(self._data, reverse=True):
                w.writerow([D, self._data[D]])
        os.replace(tmp, path)
        return path


CLASS_NUMBERS = ClassNumberCache()


def _check_disc(D: int) -> None:
    if D >= 0 or not is_fundamental_discriminant(D):
        raise InvalidDiscriminant(f"{D} is not a negative fundamental discriminant")
    if -D > 10**7:
        raise InvalidDiscriminant(f"|{D}| exceeds 10^7")


def class_number(D: int) -> int:
    """Number of reduced forms of discriminant D."""
    _check_disc(D)
    return CLASS_NUMBERS.get(D)


# ---------------------------------------------------------------------------
# elements


@dataclass(frozen=True)
class QuadElement:
    """The integer (x + y*sqrt(D))/2 of Q(sqrt(D))."""

    D: int
    x: int
    y: int

    def __post_init__(self):
        if (self.x - self.y * self.D) % 2:
            raise ValueError("x and y*D must have the same parity")

    @property
    def norm(self) -> int:
        return (self.x * self.x - self.D * self.y * self.y) // 4

    @property
    def trace(self) -> int:
        return self.x

    def conjugate(self) -> "QuadElement":
        return QuadElement(self.D, self.x, -self.y)

    def __neg__(self):
        return QuadElement(self.D, -self.x, -self.y)

    def __mul__(self, other: "QuadElement") -> "QuadElement":
        x = (self.x * other.x + self.D * self.y * other.y) // 2
        y = (self.x * other.y + self.y * other.x) // 2
        return QuadElement(self.D, x, y)

    def __pow__(self, n: int) -> "QuadElement":
        result = QuadElement(self.D, 2, 0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __complex__(self):
        return complex(self.x / 2, self.y * math.sqrt(-self.D) / 2)

    def associates(self) -> list["QuadElement"]:
        return [self * u for u in units(self.D)]

    def canonical(self) -> "QuadElement":
        """The associate whose argument lies in [0, 2*pi/w)."""
        for a in self.associates():
            if _in_sector(a, half=False):
                return a
        raise AssertionError("no associate in the fundamental sector")

    def __str__(self):
        if self.D == -4 and self.x % 2 == 0:
            return _fmt_gauss(self.x // 2, self.y)
        sign = "+" if self.y >= 0 else "-"
        return f"({self.x}{sign}{abs(self.y)}*sqrt({self.D}))/2"


def _fmt_gauss(a: int, b: int) -> str:
    if b == 0:
        return str(a)
    sign = "+" if b > 0 else "-"
    mag = "" if abs(b) == 1 else str(abs(b))
    return f"{a}{sign}{mag}i"


def units(D: int) -> list[QuadElement]:
    one = QuadElement(D, 2, 0)
    if D == -4:
        i = QuadElement(D, 0, 1)
        return [one, i, -one, -i]
    if D == -3:
        rho = QuadElement(D, 1, 1)  # (1 + sqrt(-3))/2, a primitive 6th root of unity
        return [rho**k for k in range(6)]
    return [one, -one]


def _in_sector(a: QuadElement, half: bool) -> bool:
    """Argument in [0, 2pi/w), or strictly inside (0, pi/w) when ``half``."""
    x, y, w = a.x, a.y, unit_count(a.D)
    if half:
        if w == 2:
            return x > 0 and y > 0
        if w == 4:
            return y > 0 and 2 * y < x
        return y > 0 and 3 * y < x
    if w == 2:
        return y > 0 or (y == 0 and x > 0)
    if w == 4:
        return x > 0 and y >= 0
    return x > 0 and 0 <= y < x


# ---------------------------------------------------------------------------
# splitting and principal generators


class Splitting(enum.Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


@dataclass(frozen=True)
class SplitType:
    kind: Splitting
    p: int
    form: BinaryQF | None = None

    @property
    def b(self) -> int:
        """sqrt(D) is congruent to this root modulo the designated prime."""
        return self.form.b

    def __str__(self):
        return self.kind.value


def _root_mod_4p(D: int, p: int) -> int:
    """Least b >= 0 with b*b = D (mod 4p)."""
    for b in range(2 * p):
        if (b * b - D) % (4 * p) == 0:
            return b
    raise ValueError(f"D is not a square mod 4*{p}")


def _lift_root(D: int, p: int, b: int, r: int) -> int:
    """Lift b (b*b = D mod 4p, p not dividing D) to b_r mod 2p^r with b_r^2 = D mod 4p^r."""
    m = 2 * p
    for k in range(1, r):
        # b^2 = D mod 4p^k; look for b + t*2p^k
        step = 2 * p**k
        for t in range(p):
            cand = b + t * step
            if (cand * cand - D) % (4 * p ** (k + 1)) == 0:
                b = cand
                break
        else:
            raise AssertionError("root did not lift")
        m = 2 * p ** (k + 1)
    return b % m


def _prime_form(D: int, p: int, b: int) -> BinaryQF:
    return BinaryQF(p, b, (b * b - D) // (4 * p))


def _form_order(f: BinaryQF, bound: int) -> int:
    g = f.reduced()
    acc = g
    for r in range(1, bound + 1):
        if acc.a == 1:
            return r
        acc = compose(acc, g)
    raise AssertionError("form order exceeds the class number")


def _generator_of_power(D: int, p: int, b: int, r: int) -> QuadElement | None:
    """A generator of P**r for P = (p, (-b + sqrt D)/2), or None if not principal."""
    br = _lift_root(D, p, b, r) if r > 1 else b
    pr = p**r
    f = BinaryQF(pr, -br, (br * br - D) // (4 * pr))
    # u*p^r + v*(-br + sqrt D)/2 has norm p^r * f(u, v)
    g, m = reduce_with_transform(f)
    if g.a != 1:
        return None
    u, v = m[0][0], m[1][0]
    alpha = QuadElement(D, 2 * u * pr - v * br, v)
    assert alpha.norm == pr
    return alpha


def _in_prime(alpha: QuadElement, p: int, b: int) -> bool:
    """alpha in (p, (-b + sqrt D)/2)? ((x + y*b)/2 must be divisible by p.)"""
    return ((alpha.x + alpha.y * b) // 2) % p == 0


class _Designations:
    def __init__(self):
        self._data: dict[tuple[int, int], tuple[int, int]] = {}
        self._lock = threading.Lock()

    def get(self, D: int, p: int) -> tuple[int, int]:
        key = (D, p)
        hit = self._data.get(key)
        if hit is None:
            hit = _designate(D, p)
            with self._lock:
                self._data.setdefault(key, hit)
        return hit


def _designate(D: int, p: int) -> tuple[int, int]:
    """(b, r0) for the designated prime above a split p."""
    b0 = _root_mod_4p(D, p)
    # the form (p, b, c) is the ideal (p, (-b + sqrt D)/2); its conjugate uses -b
    r0 = _form_order(_prime_form(D, p, b0), class_number(D))
    alpha = _generator_of_power(D, p, -b0 % (2 * p), r0)
    # alpha generates the r0-th power of (p, (b0 + sqrt D)/2), which has sqrt D = -b0
    for a in alpha.associates():
        if _in_sector(a, half=True):
            return (-b0) % (2 * p), r0
    return b0, r0


_DESIGNATED = _Designations()


def splitting(D: int, p: int) -> SplitType:
    _check_disc(D)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    k = kronecker(D, p)
    if k == 0:
        return SplitType(Splitting.RAMIFIED, p)
    if k == -1:
        return SplitType(Splitting.INERT, p)
    b, _ = _DESIGNATED.get(D, p)
    # the form (p, b, c) is the designated prime; take b in (-p, p]
    b_form = b % (2 * p)
    if b_form > p:
        b_form -= 2 * p
    return SplitType(Splitting.SPLIT, p, _prime_form(D, p, b_form))


def prime_class_order(D: int, p: int) -> int:
    st = splitting(D, p)
    if st.kind is not Splitting.SPLIT:
        raise ValueError(f"{p} does not split in Q(sqrt({D}))")
    return _DESIGNATED.get(D, p)[1]


def designated_root(D: int, p: int) -> int:
    """The residue s mod p with sqrt(D) = s modulo the designated prime (p odd)."""
    st = splitting(D, p)
    if st.kind is not Splitting.SPLIT:
        raise ValueError(f"{p} does not split in Q(sqrt({D}))")
    return st.form.b % p


def principal_generator(D: int, p: int, r: int, bound: int = GENERATOR_BOUND) -> QuadElement:
    """Canonical generator of P**r for the designated prime P above p."""
    if r < 1:
        raise ValueError("r must be positive")
    if p**r > bound:
        raise SearchExhausted(f"{p}^{r} exceeds the generator bound {bound}")
    return _principal_generator(D, p, r)


def _principal_generator(D: int, p: int, r: int) -> QuadElement:
    r0 = prime_class_order(D, p)
    if r % r0:
        raise NotPrincipal(f"P^{r} is not principal (class order {r0})")
    b = splitting(D, p).form.b
    alpha = _generator_of_power(D, p, b % (2 * p), r)
    if alpha is None:
        raise NotPrincipal(f"P^{r} is not principal")
    alpha = alpha.canonical()
    # membership in P and non-membership in its conjugate pin down (alpha) = P^r
    assert _in_prime(alpha, p, b) and not _in_prime(alpha, p, -b)
    return alpha


# ---------------------------------------------------------------------------


class ImagQuadField:
    """Q(sqrt(D)) for a negative fundamental discriminant D."""

    def __init__(self, D: int):
        _check_disc(D)
        self.D = D

    @property
    def w(self) -> int:
        return unit_count(self.D)

    @cached_property
    def h(self) -> int:
        return class_number(self.D)

    def splitting(self, p: int) -> SplitType:
        return splitting(self.D, p)

    def __repr__(self):
        return f"ImagQuadField({self.D})"

    def __eq__(self, other):
        return isinstance(other, ImagQuadField) and other.D == self.D

    def __hash__(self):
        return hash(self.D)
