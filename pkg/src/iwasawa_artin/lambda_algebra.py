"""Power series over Z_p at finite precision: Weierstrass preparation,
mu/lambda invariants, characteristic elements and Euler characteristics.

A :class:`CharSeries` stores coefficients a_0..a_M of f(T) = sum a_i T^i.
Inexact series know each a_i modulo p**N.  Exact series (products of
integer polynomials) carry their true integer coefficients, which is how
"f(0) = 0" can be a certain fact rather than a precision artifact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .arith import poly_mul, poly_trim
from .errors import PrecisionExhausted

DEFAULT_M = 64
DEFAULT_N = 12
GUARD = 8


class _Undefined:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "Undefined"

    def __bool__(self):
        return False


Undefined = _Undefined()


def _v(a: int, p: int, cap: int | None = None) -> int | None:
    """Valuation of a, or None if a vanishes (to precision ``cap`` if given)."""
    if cap is not None:
        a %= p**cap
    if a == 0:
        return None
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v


@dataclass(frozen=True)
class CoeffRing:
    """The coefficient ring O.  Only O = Z_p is implemented (q = p, e = 1)."""

    p: int
    N: int = DEFAULT_N

    @property
    def q(self) -> int:
        return self.p

    @property
    def e(self) -> int:
        return 1

    @property
    def modulus(self) -> int:
        return self.p**self.N


@dataclass(frozen=True)
class CharSeries:
    ring: CoeffRing
    coeffs: tuple
    exact: bool = False

    def __post_init__(self):
        if not self.exact:
            m = self.ring.modulus
            object.__setattr__(self, "coeffs", tuple(c % m for c in self.coeffs))

    @classmethod
    def from_coeffs(cls, coeffs, p: int, N: int = DEFAULT_N, M: int | None = None, exact=False):
        coeffs = list(coeffs)
        if M is not None:
            coeffs = (coeffs + [0] * (M + 1))[: M + 1]
        return cls(CoeffRing(p, N), tuple(coeffs), exact)

    @classmethod
    def polynomial(cls, coeffs, p: int, N: int = DEFAULT_N) -> "CharSeries":
        """An exact polynomial, constant term first."""
        return cls(CoeffRing(p, N), tuple(poly_trim(list(coeffs)) or [0]), True)

    @property
    def p(self) -> int:
        return self.ring.p

    @property
    def M(self) -> int:
        return len(self.coeffs) - 1

    def valuations(self) -> list:
        """Per-coefficient valuations; None marks a coefficient that is 0 as far as known."""
        cap = None if self.exact else self.ring.N
        return [_v(c, self.p, cap) for c in self.coeffs]

    def __mul__(self, other: "CharSeries") -> "CharSeries":
        if self.ring != other.ring:
            raise ValueError("series over different rings")
        if self.exact and other.exact:
            return CharSeries(self.ring, tuple(poly_mul(list(self.coeffs), list(other.coeffs)) or [0]), True)
        M = min(s.M for s in (self, other) if not s.exact)
        prod = poly_mul(list(self.coeffs[: M + 1]), list(other.coeffs[: M + 1]), self.ring.modulus)
        return CharSeries.from_coeffs(prod, self.p, self.ring.N, M)

    def truncate(self, M: int) -> "CharSeries":
        """The inexact series a_0..a_M."""
        return CharSeries.from_coeffs(self.coeffs, self.p, self.ring.N, M)

    def to_json(self) -> str:
        known = None if self.exact else self.ring.N
        return json.dumps({"p": self.p, "coefficients": [[c, known] for c in self.coeffs]})

    @classmethod
    def from_json(cls, text: str, default_N: int = DEFAULT_N) -> "CharSeries":
        data = json.loads(text)
        pairs = data["coefficients"]
        known = [k for _, k in pairs if k is not None]
        if not known:
            return cls.polynomial([c for c, _ in pairs], data["p"], default_N)
        return cls.from_coeffs([c for c, _ in pairs], data["p"], min(known))


@dataclass(frozen=True)
class StructureData:
    """Elementary-divisor data: the mu_i and pairs (distinguished g_j, lambda_j)."""

    p: int
    mus: tuple = ()
    polys: tuple = field(default=())

    def __post_init__(self):
        for m in self.mus:
            if m < 1:
                raise ValueError("each mu_i must be >= 1")
        for g, lam in self.polys:
            if lam < 1:
                raise ValueError("each lambda_j must be >= 1")
            if not is_distinguished(list(g), self.p):
                raise ValueError(f"{list(g)} is not a distinguished polynomial")


def is_distinguished(g: list[int], p: int) -> bool:
    g = poly_trim(list(g))
    return bool(g) and g[-1] == 1 and all(c % p == 0 for c in g[:-1])


def weierstrass_invariants(f: CharSeries) -> tuple[int, int]:
    vals = f.valuations()
    known = [v for v in vals if v is not None]
    if not known:
        raise PrecisionExhausted("every coefficient is 0 at this precision")
    mu = min(known)
    return mu, vals.index(mu)


def vanishing_order(f: CharSeries) -> int:
    vals = f.valuations()
    for i, v in enumerate(vals):
        if v is not None:
            return i
    raise PrecisionExhausted("every coefficient is 0 at this precision")


def _inverse_mod_T(u: list[int], n: int, m: int) -> list[int]:
    """First n coefficients of 1/u modulo m, for u(0) a unit."""
    inv0 = pow(u[0], -1, m)
    out = [0] * n
    for k in range(n):
        s = 1 if k == 0 else 0
        for i in range(1, min(k, len(u) - 1) + 1):
            s -= u[i] * out[k - i]
        out[k] = s * inv0 % m
    return out


def weierstrass_prepare(f: CharSeries, guard: int = GUARD):
    """Write f = p**mu * g * u with g distinguished of degree lambda and u a unit.

    Returns ``(mu, g, u)`` with g a list of integers (constant term first)
    and u a CharSeries.  Both are known modulo p**k where k = N - mu, further
    capped at (M + 1) // lambda for truncated input; ``u.ring.N`` records k.  The factorisation
    f/p**mu = g*u is lifted one p-adic digit at a time from T**lam * u_bar.
    """
    p = f.p
    mu, lam = weierstrass_invariants(f)
    M = f.M if not f.exact else max(f.M, lam + guard + 1)
    prec = (f.ring.N - mu) if not f.exact else f.ring.N
    if prec < 1:
        raise PrecisionExhausted("no digits left after removing p**mu")
    mod = p**prec
    pmu = p**mu
    f1 = [(c // pmu) % mod for c in (list(f.coeffs) + [0] * (M + 1))[: M + 1]]

    ubar = [c % p for c in f1[lam:]]
    ubar_inv = _inverse_mod_T(ubar, max(lam, 1), p)
    g = [0] * lam + [1]
    u = [c % p for c in f1[lam:]] + [0] * lam
    u = u[: M + 1]
    pk = 1
    for _ in range(prec + 1):
        prod = poly_mul(g, u, mod)[: M + 1]
        prod += [0] * (M + 1 - len(prod))
        err = [(a - b) % mod for a, b in zip(f1, prod)]
        if not any(err):
            break
        while not any((e // pk) % p for e in err):
            pk *= p
        if any(e % pk for e in err):
            raise PrecisionExhausted("Weierstrass iteration lost track of the error")
        E = [(e // pk) % p for e in err]
        dg = poly_mul(E[:lam], ubar_inv, p)[:lam] if lam else []
        dg += [0] * (lam - len(dg))
        corr = poly_mul(ubar, dg, p) + [0] * (M + 1)
        du = [(E[i + lam] - corr[i + lam]) % p for i in range(M + 1 - lam)] + [0] * lam
        g = [(g[i] + pk * dg[i]) % mod for i in range(lam)] + [1]
        u = [(u[i] + pk * du[i]) % mod for i in range(M + 1)]
    else:
        raise PrecisionExhausted("Weierstrass iteration did not converge")
    if not f.exact and lam:
        # the unknown tail T^(M+1)*h is divisible by p^((M+1)//lam) modulo g
        prec = min(prec, (M + 1) // lam)
    m = p**prec
    g = [c % m for c in g[:-1]] + [1]
    u_series = CharSeries.from_coeffs(u[: M - lam + 1], p, prec)
    return mu, g, u_series


def characteristic_element(S: StructureData, N: int = DEFAULT_N) -> CharSeries:
    f = [S.p ** sum(S.mus)]
    for g, lam in S.polys:
        for _ in range(lam):
            f = poly_mul(f, list(g))
    return CharSeries.polynomial(f, S.p, N)


def structure_invariants(S: StructureData) -> tuple[int, int]:
    """(sum mu_i, sum lambda_j * deg g_j), read off the structure data."""
    return sum(S.mus), sum(lam * (len(poly_trim(list(g))) - 1) for g, lam in S.polys)


def euler_characteristic(f: CharSeries):
    """q**v(f(0)), or ``Undefined`` when f(0) = 0 exactly."""
    a0 = f.coeffs[0]
    if f.exact:
        if a0 == 0:
            return Undefined
        return f.ring.q ** _v(a0, f.p)
    v = _v(a0, f.p, f.ring.N)
    if v is None:
        raise PrecisionExhausted("f(0) is 0 to the available precision")
    return f.ring.q**v


def base_change_invariants(mu: int, lam: int, e_rel: int) -> tuple[int, int]:
    """Invariants after extending scalars to a ring with ramification index e_rel."""
    if e_rel < 1:
        raise ValueError("ramification index must be >= 1")
    return e_rel * mu, lam
