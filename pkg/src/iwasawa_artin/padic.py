"""Finite-precision p-adic arithmetic.

Two kinds of values live here: :class:`PAdicNumber` for elements of Q_p
(stored as ``p**val * unit`` with ``unit`` known modulo ``p**prec``) and
:class:`LocalElement` for elements of an unramified extension
``Z_p[X]/(H)`` of degree at most three, computed modulo ``p**N``.

The logarithm is Iwasawa's branch, ``log p = 0``.  For odd p the series for
``log(1 + x)`` with ``v(x) >= 1`` loses no absolute precision, so the result
of :func:`iwasawa_log` is known modulo ``p**N`` where N is the absolute
precision of the unit part of the input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from .arith import poly_divmod_monic, poly_mul, roots_mod_p
from .errors import PrecisionExhausted

INF = math.inf


def _vp(n: int, p: int) -> int:
    if n == 0:
        return INF
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class PAdicNumber:
    """``p**val * unit`` with ``unit`` a p-adic unit known modulo ``p**prec``.

    ``val == inf`` is an exact zero.  ``prec == 0`` with finite ``val`` is an
    inexact zero, i.e. a value only known to be divisible by ``p**val``.
    """

    p: int
    unit: int
    val: float | int
    prec: float | int

    def __post_init__(self):
        if self.val != INF and self.prec > 0 and self.unit % self.p == 0:
            raise ValueError("unit part must be prime to p")

    @classmethod
    def from_int(cls, n: int, p: int, prec: int) -> "PAdicNumber":
        """n at relative precision ``prec`` (``prec`` digits of the unit part)."""
        if n == 0:
            return cls(p, 0, INF, INF)
        v = _vp(n, p)
        return cls(p, (n // p**v) % p**prec, v, prec)

    @classmethod
    def from_residue(cls, r: int, p: int, absprec: int) -> "PAdicNumber":
        """The class of r modulo ``p**absprec``."""
        r %= p**absprec
        if r == 0:
            return cls(p, 0, absprec, 0)
        v = _vp(r, p)
        return cls(p, r // p**v, v, absprec - v)

    @classmethod
    def from_fraction(cls, num: int, den: int, p: int, prec: int) -> "PAdicNumber":
        a = cls.from_int(num, p, prec)
        b = cls.from_int(den, p, prec)
        return a / b

    @property
    def is_exact_zero(self) -> bool:
        return self.val == INF

    @property
    def absprec(self):
        return self.val + self.prec

    def is_zero(self) -> bool:
        return self.val == INF or self.prec == 0

    def is_unit(self) -> bool:
        return self.val == 0 and self.prec > 0

    def residue(self) -> int:
        """Integer representative modulo ``p**absprec``; requires val >= 0."""
        if self.val == INF:
            return 0
        if self.val < 0:
            raise ValueError("value is not integral")
        return (self.unit * self.p**self.val) % self.p ** int(self.absprec)

    def _parts(self):
        return self.p, self.val, self.unit

    def __neg__(self):
        if self.is_zero():
            return self
        return PAdicNumber(self.p, (-self.unit) % self.p**self.prec, self.val, self.prec)

    def __add__(self, other):
        other = self._coerce(other)
        if self.val == INF:
            return other
        if other.val == INF:
            return self
        absprec = min(self.absprec, other.absprec)
        low = min(self.val, other.val)
        if absprec <= low:
            return PAdicNumber(self.p, 0, absprec, 0)
        k = int(absprec - low)
        mod = self.p**k
        total = (
            self.unit * self.p ** int(self.val - low) + other.unit * self.p ** int(other.val - low)
        ) % mod
        if total == 0:
            return PAdicNumber(self.p, 0, absprec, 0)
        v = _vp(total, self.p)
        return PAdicNumber(self.p, (total // self.p**v) % self.p ** (k - v), low + v, k - v)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.val == INF or other.val == INF:
            return PAdicNumber(self.p, 0, INF, INF)
        if self.prec == 0 or other.prec == 0:
            return PAdicNumber(self.p, 0, self.val + other.val + min(self.prec, other.prec), 0)
        prec = min(self.prec, other.prec)
        unit = self.unit * other.unit
        if prec != INF:
            unit %= self.p ** int(prec)
        return PAdicNumber(self.p, unit, self.val + other.val, prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by a p-adic zero")
        if self.val == INF:
            return self
        if self.prec == 0:
            return PAdicNumber(self.p, 0, self.val - other.val, 0)
        prec = min(self.prec, other.prec)
        if prec == INF:
            raise ValueError("exact division needs a finite precision")
        mod = self.p ** int(prec)
        unit = self.unit * pow(other.unit, -1, mod) % mod
        return PAdicNumber(self.p, unit, self.val - other.val, prec)

    def _coerce(self, other):
        if isinstance(other, PAdicNumber):
            if other.p != self.p:
                raise ValueError("mixed primes")
            return other
        if isinstance(other, int):
            return PAdicNumber.from_int(other, self.p, INF if other == 0 else self.prec)
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            return PAdicNumber.from_int(1, self.p, self.prec) / (self ** (-e))
        if self.val == INF:
            return self if e else PAdicNumber.from_int(1, self.p, INF)
        mod = self.p ** int(self.prec)
        return PAdicNumber(self.p, pow(self.unit, e, mod), self.val * e, self.prec)

    def with_sign_normalised(self) -> "PAdicNumber":
        """The representative among {x, -x} whose leading unit digit is <= p/2."""
        if self.is_zero():
            return self
        return -self if self.unit % self.p > self.p // 2 else self

    def __repr__(self):
        if self.val == INF:
            return f"PAdicNumber(0, p={self.p})"
        if self.prec == 0:
            return f"PAdicNumber(O({self.p}^{self.val}))"
        return f"PAdicNumber({self.unit}*{self.p}^{self.val} + O({self.p}^{self.absprec}))"


def iwasawa_log(u, branch_log_p: int = 0):
    """Iwasawa p-adic logarithm of a unit or p-unit, with ``log p = 0``.

    Accepts a :class:`PAdicNumber` or a :class:`LocalElement` and returns the
    same kind of value.  Raises :class:`PrecisionExhausted` if the result is
    indistinguishable from zero at the available precision.
    """
    if branch_log_p != 0:
        raise ValueError("only the Iwasawa branch log p = 0 is implemented")
    if isinstance(u, LocalElement):
        return _local_log(u)
    if not isinstance(u, PAdicNumber):
        raise TypeError("expected PAdicNumber or LocalElement")
    p = u.p
    if p < 5:
        raise ValueError("logarithm is only supported for p >= 5")
    if u.is_zero():
        raise ValueError("log of zero")
    if u.val == 0 and u.unit == 1 and u.prec == INF:
        return PAdicNumber(p, 0, INF, INF)
    # p-unit: log(p^v * w) = log(w) on this branch
    N = int(u.prec)
    if N < 1:
        raise PrecisionExhausted("no significant digits in the argument")
    mod = p**N
    y = pow(u.unit, p - 1, mod)
    x = (y - 1) % mod
    s = _log1p_series(x, p, N)
    s = s * pow(p - 1, -1, mod) % mod
    if s == 0:
        raise PrecisionExhausted(f"log is 0 modulo {p}^{N}")
    return PAdicNumber.from_residue(s, p, N)


def _log1p_series(x: int, p: int, N: int) -> int:
    """Sum of (-1)^(k+1) x^k / k modulo p**N, for v_p(x) >= 1 and p >= 5."""
    mod = p**N
    if x % mod == 0:
        return 0
    total = 0
    # k - v_p(k) >= N for every k > 2N + 2 when p >= 5
    for k in range(1, 2 * N + 3):
        e = _vp(k, p)
        if k - e >= N:
            continue
        term = pow(x, k, p ** (N + e)) // p**e
        term = term * pow(k // p**e, -1, mod)
        total += term if k % 2 else -term
    return total % mod


def teichmueller(a: int, p: int, N: int) -> PAdicNumber:
    """The (p-1)-st root of unity congruent to a modulo p, modulo p**N."""
    if a % p == 0:
        raise ValueError("teichmueller lift needs a unit residue")
    mod = p**N
    x = a % mod
    while True:
        y = pow(x, p, mod)
        if y == x:
            return PAdicNumber.from_residue(x, p, N)
        x = y


# ---------------------------------------------------------------------------
# unramified extensions


class UnramifiedLocal:
    """The ring Z_p[X]/(H) modulo p**N, for H monic and irreducible mod p.

    Such a ring is the valuation ring of the unramified extension of Q_p of
    degree ``f = deg H``, reduced modulo ``p**N``.
    """

    def __init__(self, p: int, modulus: list[int], N: int):
        if not 1 <= len(modulus) - 1 <= 3:
            raise ValueError("residue degree must be 1, 2 or 3")
        self.p = p
        self.N = N
        self.mod = p**N
        self.modulus = [c % self.mod for c in modulus]
        if self.modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        self.f = len(modulus) - 1
        if self.f > 1 and _has_factor_mod_p(self.modulus, p):
            raise ValueError("modulus is reducible mod p")

    def __repr__(self):
        return f"UnramifiedLocal(p={self.p}, f={self.f}, N={self.N})"

    def __eq__(self, other):
        return (
            isinstance(other, UnramifiedLocal)
            and (self.p, self.N, self.modulus) == (other.p, other.N, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.N, tuple(self.modulus)))

    def element(self, coords) -> "LocalElement":
        coords = list(coords)
        if len(coords) > self.f:
            coords = poly_divmod_monic(coords, self.modulus, self.mod)[1]
        coords = [c % self.mod for c in coords] + [0] * (self.f - len(coords))
        return LocalElement(self, tuple(coords[: self.f]))

    def one(self) -> "LocalElement":
        return self.element([1])

    def generator(self) -> "LocalElement":
        return self.element([0, 1])

    @cached_property
    def frobenius_of_generator(self) -> "LocalElement":
        """The root of H congruent to X**p, found by Newton iteration."""
        X = self.generator()
        z = X ** self.p
        dH = [i * c for i, c in enumerate(self.modulus)][1:]
        for _ in range(self.N.bit_length() + 2):
            z = z - z.evaluate_poly(self.modulus) * z.evaluate_poly(dH).inverse()
        return z


def _has_factor_mod_p(h: list[int], p: int) -> bool:
    # degree <= 3: reducible iff it has a root
    return bool(roots_mod_p(h, p))


@dataclass(frozen=True)
class LocalElement:
    ring: UnramifiedLocal
    coords: tuple

    def _wrap(self, coords) -> "LocalElement":
        return self.ring.element(coords)

    def __add__(self, other):
        other = self._coerce(other)
        return self._wrap([a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return self._wrap([a - b for a, b in zip(self.coords, other.coords)])

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return self._wrap([-a for a in self.coords])

    def __mul__(self, other):
        other = self._coerce(other)
        prod = poly_mul(list(self.coords), list(other.coords), self.ring.mod)
        return self._wrap(poly_divmod_monic(prod, self.ring.modulus, self.ring.mod)[1])

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ring.one()
        base = self
        for bit in bin(e)[2:]:
            result = result * result
            if bit == "1":
                result = result * base
        return result

    def _coerce(self, other):
        if isinstance(other, LocalElement):
            if other.ring != self.ring:
                raise ValueError("elements of different rings")
            return other
        if isinstance(other, int):
            return self.ring.element([other])
        raise TypeError(f"cannot combine LocalElement with {type(other).__name__}")

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.element([other])
        return isinstance(other, LocalElement) and self.ring == other.ring and self.coords == other.coords

    def __hash__(self):
        return hash((self.ring, self.coords))

    def valuation(self):
        vals = [_vp(c, self.ring.p) for c in self.coords]
        v = min(vals)
        return INF if v == INF or v >= self.ring.N else v

    def is_unit(self) -> bool:
        return any(c % self.ring.p for c in self.coords)

    def inverse(self) -> "LocalElement":
        if not self.is_unit():
            raise ZeroDivisionError("not a unit")
        p, f, N = self.ring.p, self.ring.f, self.ring.N
        order = (p**f - 1) * p ** (f * (N - 1))
        return self ** (order - 1)

    def evaluate_poly(self, coeffs: list[int]) -> "LocalElement":
        acc = self.ring.element([0])
        for c in reversed(coeffs):
            acc = acc * self + c
        return acc

    def frobenius(self) -> "LocalElement":
        """Apply the arithmetic Frobenius (the lift of x -> x**p)."""
        sigma_x = self.ring.frobenius_of_generator
        return sigma_x.evaluate_poly(list(self.coords))

    def divide_by_p(self, k: int = 1) -> "LocalElement":
        """Exact division by p**k; the quotient is known modulo p**(N-k)."""
        q = self.ring.p**k
        if any(c % q for c in self.coords):
            raise ValueError("element is not divisible by p^k")
        return self._wrap([c // q for c in self.coords])

    def residues(self, k: int = 1) -> tuple:
        m = self.ring.p**k
        return tuple(c % m for c in self.coords)

    def __repr__(self):
        return f"LocalElement({list(self.coords)} mod p^{self.ring.N})"


def norm_to_base(x: LocalElement) -> PAdicNumber:
    """Norm to Q_p: the product of the f Frobenius conjugates of x."""
    ring = x.ring
    acc = x
    conj = x
    for _ in range(ring.f - 1):
        conj = conj.frobenius()
        acc = acc * conj
    if any(acc.coords[1:]):
        raise PrecisionExhausted("norm did not land in Z_p at this precision")
    return PAdicNumber.from_residue(acc.coords[0], ring.p, ring.N)


def _local_log(u: LocalElement) -> LocalElement:
    ring = u.ring
    p, f = ring.p, ring.f
    if p < 5:
        raise ValueError("logarithm is only supported for p >= 5")
    v = u.valuation()
    if v == INF:
        raise ValueError("log of zero")
    w = u.divide_by_p(v) if v else u
    prec = ring.N - v
    if prec < 1:
        raise PrecisionExhausted("no significant digits in the argument")
    # work with a few extra digits so that dividing by k loses nothing
    extra = 1
    while p**extra <= 2 * prec + 3:
        extra += 1
    big = UnramifiedLocal(p, ring.modulus, prec + extra)
    x = big.element(w.coords) ** (p**f - 1) - 1
    total = big.element([0])
    xk = big.one()
    for k in range(1, 2 * prec + 3):
        xk = xk * x
        e = _vp(k, p)
        if k - e >= prec:
            continue
        term = xk.divide_by_p(e) * pow(k // p**e, -1, big.mod) if e else xk * pow(k, -1, big.mod)
        total = total + term if k % 2 else total - term
    total = total * pow(p**f - 1, -1, big.mod)
    mod_prec = p**prec
    coords = [c % mod_prec for c in total.coords]
    if not any(coords):
        raise PrecisionExhausted(f"log is 0 modulo {p}^{prec}")
    return ring.element(coords)
