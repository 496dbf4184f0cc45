"""Complex cubic fields Q(theta), f(theta) = 0, with negative discriminant.

All arithmetic happens in the order Z[theta].  Primes dividing its index in
the maximal order are detected with Dedekind's criterion and refused, so
whenever a computation here succeeds Z[theta] is the full ring of integers.
Elements are coordinate triples (a, b, c) meaning a + b*theta + c*theta^2.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .arith import (
    CubicPoly,
    factorize,
    fundamental_discriminant,
    hnf,
    is_prime,
    poly_divmod_monic,
    poly_gcd_mod_p,
    poly_mul,
    poly_trim,
    primes_in_range,
    roots_mod_p,
)
from .errors import HypothesisViolated, IndexObstruction, SearchExhausted
from .lattice import fincke_pohst, lll
from .errors import PrecisionExhausted
from .padic import UnramifiedLocal, iwasawa_log
from .quadfield import class_number

R_MIN = 0.28  # lower bound for the regulator of a complex cubic field
UNIT_SEARCH_LIMIT = 1e12  # largest real embedding of a unit the search will reach


class PRational(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "?"


def factor_cubic_mod_p(f: list[int], p: int) -> list[tuple[list[int], int]]:
    """Monic irreducible factors of f mod p with multiplicities."""
    f = [c % p for c in f]
    out = []
    rest = f
    for r in roots_mod_p(f, p):
        e = 0
        lin = [(-r) % p, 1]
        while True:
            q, rem = poly_divmod_monic(rest, lin, p)
            if any(rem):
                break
            rest = q
            e += 1
        out.append((lin, e))
    rest = poly_trim(rest)
    if len(rest) > 1:
        # no roots left: irreducible of degree 2 or 3, or a square of a quadratic (impossible in degree <= 3)
        out.append((rest, 1))
    return out


@dataclass(frozen=True)
class CubicUnit:
    a: int
    b: int
    c: int
    real: float  # value under the real embedding

    @property
    def coords(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    @property
    def regulator(self) -> float:
        return abs(math.log(abs(self.real)))

    def __str__(self):
        out = ""
        for coef, mon in ((self.a, ""), (self.b, "t"), (self.c, "t^2")):
            if not coef:
                continue
            mag = str(abs(coef)) if abs(coef) != 1 or not mon else ""
            sign = "-" if coef < 0 else ("+" if out else "")
            out += f"{sign}{mag}{mon}"
        return out or "0"


class CubicField:
    """The field generated by a root of a monic irreducible cubic with d(f) < 0."""

    def __init__(self, f: CubicPoly | str):
        if isinstance(f, str):
            f = CubicPoly.parse(f)
        self.poly = f
        self.f = f.coeffs  # constant term first, monic
        self.d = f.discriminant
        if self.d >= 0:
            raise ValueError("only cubic fields with negative discriminant are supported")
        roots = np.roots([1, f.c2, f.c1, f.c0])
        real = min(roots, key=lambda z: abs(z.imag)).real
        # polish the real root
        for _ in range(3):
            real -= (real**3 + f.c2 * real**2 + f.c1 * real + f.c0) / (3 * real**2 + 2 * f.c2 * real + f.c1)
        self.theta_r = float(real)
        cplx = max(roots, key=lambda z: z.imag)
        self.theta_c = complex(cplx)

    def __repr__(self):
        return f"CubicField({self.poly})"

    # -- arithmetic in Z[theta] ------------------------------------------------

    def mul(self, x, y) -> tuple[int, int, int]:
        prod = poly_mul(list(x), list(y))
        rem = poly_divmod_monic(prod, self.f)[1] if len(prod) > 3 else prod
        rem = list(rem) + [0] * (3 - len(rem))
        return tuple(rem[:3])

    def power(self, x, e: int, m: int | None = None) -> tuple[int, int, int]:
        result = (1, 0, 0)
        base = tuple(x)
        while e:
            if e & 1:
                result = self.mul(result, base)
                if m:
                    result = tuple(c % m for c in result)
            base = self.mul(base, base)
            if m:
                base = tuple(c % m for c in base)
            e >>= 1
        return result

    def norm(self, x) -> int:
        rows = [x, self.mul(x, (0, 1, 0)), self.mul(x, (0, 0, 1))]
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    def real_embedding(self, x) -> float:
        t = self.theta_r
        return x[0] + x[1] * t + x[2] * t * t

    def complex_embedding(self, x) -> complex:
        t = self.theta_c
        return x[0] + x[1] * t + x[2] * t * t

    # -- index and local structure ---------------------------------------------

    @cached_property
    def index_primes(self) -> tuple[int, ...]:
        """Primes dividing [O_K : Z[theta]], by Dedekind's criterion."""
        out = []
        for q, e in factorize(self.d).items():
            if e >= 2 and not self._dedekind_ok(q):
                out.append(q)
        return tuple(out)

    def _dedekind_ok(self, q: int) -> bool:
        facs = factor_cubic_mod_p(self.f, q)
        g = [1]
        for t, _ in facs:
            g = poly_mul(g, t)
        h = poly_divmod_monic([c % q for c in self.f], [c % q for c in g], q)[0]
        gh = poly_mul(g, h)
        F = [(a - b) for a, b in zip(self.f + [0] * 4, gh + [0] * 4)]
        assert all(c % q == 0 for c in F)
        F = poly_trim([(c // q) % q for c in F])
        d = poly_gcd_mod_p([c % q for c in g], [c % q for c in h], q)
        if F:
            d = poly_gcd_mod_p(F, d, q)
        return len(d) == 1

    def require_maximal(self) -> None:
        if self.index_primes:
            raise IndexObstruction(f"index primes {self.index_primes}: Z[theta] is not maximal")

    @property
    def field_discriminant(self) -> int:
        self.require_maximal()
        return self.d

    @property
    def quadratic_discriminant(self) -> int:
        """Fundamental discriminant of the quadratic resolvent field Q(sqrt d)."""
        return fundamental_discriminant(self.d)

    def prime_factors(self, q: int) -> list[tuple[list[int], int]]:
        """Factors (g, e) of f mod q; the prime (q, g(theta)) has norm q**deg g."""
        return factor_cubic_mod_p(self.f, q)

    # -- ideals ------------------------------------------------------------------

    def ideal(self, gens) -> tuple:
        """HNF basis (rows) of the ideal generated by ``gens``."""
        rows = []
        for g in gens:
            for j in range(3):
                rows.append(list(self.mul(g, tuple(int(k == j) for k in range(3)))))
        return tuple(tuple(r) for r in hnf(rows))

    def prime_ideal(self, q: int, g: list[int]) -> tuple:
        return self.ideal([(q, 0, 0), self.mul((1, 0, 0), g)])

    def ideal_mul(self, I, J) -> tuple:
        rows = [list(self.mul(u, v)) for u in I for v in J]
        return tuple(tuple(r) for r in hnf(rows))

    @staticmethod
    def ideal_norm(I) -> int:
        return I[0][0] * I[1][1] * I[2][2]

    @cached_property
    def minkowski_bound(self) -> float:
        return (4 / math.pi) * (6 / 27) * math.sqrt(abs(self.d))

    def _gram(self, basis, wr: float, wc: float) -> np.ndarray:
        R = np.array([self.real_embedding(b) for b in basis])
        C = np.array([self.complex_embedding(b) for b in basis])
        return wr * np.outer(R, R) + wc * np.real(np.outer(C, np.conj(C)))

    def _short_elements(self, basis, wr: float, wc: float, bound: float, limit=10**6):
        G = self._gram(basis, wr, wc)
        U = lll(G)
        red = [tuple(sum(int(U[i, k]) * basis[k][j] for k in range(3)) for j in range(3)) for i in range(3)]
        Gr = self._gram(red, wr, wc)
        for x in fincke_pohst(Gr, bound, limit):
            yield tuple(sum(x[i] * red[i][j] for i in range(3)) for j in range(3))

    # -- units -------------------------------------------------------------------

    @cached_property
    def fundamental_unit(self) -> CubicUnit:
        return fundamental_unit(self)

    def is_principal(self, I) -> tuple | None:
        """A generator of I, or None.  The search is complete given the fundamental unit."""
        n = self.ideal_norm(I)
        eps = abs(self.fundamental_unit.real)
        scale = n ** (2 / 3)
        # some generator has |real| <= n^(1/3)*eps and |complex| <= n^(1/3)
        wr, wc = 1 / (scale * eps * eps), 1 / scale
        expected = 4 * math.pi * eps / math.sqrt(abs(self.d)) + 100
        if expected > 10**6:
            raise SearchExhausted("principality search box is too large")
        for a in self._short_elements(I, wr, wc, 2.0 + 1e-6):
            if abs(self.norm(a)) == n:
                return a
        return None

    @cached_property
    def class_number(self) -> int:
        return class_number_cubic(self)


def _unit_candidates(F: CubicField, T: float):
    """Elements with |real| <= T*sqrt(3) and |complex|^2 <= 3/T (covers every unit of real size in [1, T])."""
    basis = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    yield from F._short_elements(basis, 1 / (T * T), T, 3.0 + 1e-6)


def _kth_root(F: CubicField, u: tuple, k: int):
    """An element b with b**k = u, or None."""
    ur, uc = F.real_embedding(u), F.complex_embedding(u)
    br = math.copysign(abs(ur) ** (1 / k), ur) if k % 2 else abs(ur) ** (1 / k)
    cands_r = [br] if k % 2 else [br, -br]
    V = np.array(
        [
            [1, F.theta_r, F.theta_r**2],
            [1, F.theta_c.real, (F.theta_c**2).real],
            [0, F.theta_c.imag, (F.theta_c**2).imag],
        ]
    )
    Vinv = np.linalg.inv(V)
    for r in cands_r:
        for j in range(k):
            bc = abs(uc) ** (1 / k) * np.exp(1j * (np.angle(uc) + 2 * math.pi * j) / k)
            coords = Vinv @ np.array([r, bc.real, bc.imag])
            b = tuple(int(round(c)) for c in coords)
            if F.power(b, k) == tuple(u):
                return b
    return None


def fundamental_unit(F: CubicField) -> CubicUnit:
    """The unit of Z[theta] with least real embedding greater than 1.

    Units with real embedding in [1, T] are enumerated for T = 2, 4, 8, ...
    The first nontrivial one is certified fundamental by the regulator bound:
    if it were eps0**k then its regulator would be at least k * R_MIN, and
    every k allowed by that bound is ruled out by a failed k-th root.
    """
    F.require_maximal()
    T = 2.0
    while T <= UNIT_SEARCH_LIMIT:
        best = None
        for a in _unit_candidates(F, T):
            if abs(F.norm(a)) != 1 or a == (1, 0, 0):
                continue
            r = abs(F.real_embedding(a))
            if r < 1:
                continue
            if abs(r - 1) < 1e-9:
                continue
            if best is None or r < best[1]:
                best = (a, r)
        if best is not None:
            a, _ = best
            u = _canonical_unit(F, a)
            kmax = int(u.regulator / R_MIN)
            for k in range(2, kmax + 1):
                root = _kth_root(F, u.coords, k)
                if root is not None:
                    u = _canonical_unit(F, root)
            return u
        T *= 2
    raise SearchExhausted(f"no unit with real embedding below {UNIT_SEARCH_LIMIT:g}")


def _canonical_unit(F: CubicField, a) -> CubicUnit:
    r = F.real_embedding(a)
    if abs(r) < 1:
        # invert: the inverse of a unit u is N(u) * u^2-adjugate; use u^-1 = conj-product
        a = _unit_inverse(F, a)
        r = F.real_embedding(a)
    if r < 0:
        a = tuple(-c for c in a)
        r = -r
    return CubicUnit(*a, real=r)


def _unit_inverse(F: CubicField, a) -> tuple:
    n = F.norm(a)
    # solve a * x = 1 via the multiplication matrix
    rows = [F.mul(a, e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    M = np.array(rows, dtype=float).T
    x = np.linalg.solve(M, np.array([1.0, 0.0, 0.0]))
    inv = tuple(int(round(c)) for c in x)
    if F.mul(a, inv) != (1, 0, 0):
        raise ArithmeticError(f"failed to invert unit of norm {n}")
    return inv


# ---------------------------------------------------------------------------
# class number


UNIT_IDEAL = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def _primes_above(F: CubicField, q: int):
    """[(norm, HNF, exponent in qO)] for the primes above q."""
    return [(q ** (len(g) - 1), F.prime_ideal(q, g), e) for g, e in F.prime_factors(q)]


def _complement(F: CubicField, above, i: int):
    """Integral ideal C with P_i * C = (q): the other primes above q with their multiplicities."""
    C = UNIT_IDEAL
    for j, (_, P, e) in enumerate(above):
        for _ in range(e - 1 if j == i else e):
            C = F.ideal_mul(C, P)
    return C


def _ideals_up_to(F: CubicField, bound: float):
    """All nonzero ideals of norm <= bound as (norm, HNF, complement HNF).

    The complement J' of J satisfies J * J' = (m) for an integer m, so that
    I ~ J exactly when I * J' is principal.
    """
    primes = []
    for q in primes_in_range(2, max(int(bound), 2)):
        above = _primes_above(F, q)
        for i, (nq, P, _) in enumerate(above):
            if nq <= bound:
                primes.append((nq, P, _complement(F, above, i)))
    out = [(1, UNIT_IDEAL, UNIT_IDEAL)]

    def extend(start, norm, I, C):
        for i in range(start, len(primes)):
            nq, P, Pc = primes[i]
            if norm * nq > bound:
                continue
            J, Jc = F.ideal_mul(I, P), F.ideal_mul(C, Pc)
            out.append((norm * nq, J, Jc))
            extend(i, norm * nq, J, Jc)

    extend(0, 1, UNIT_IDEAL, UNIT_IDEAL)
    return out


def class_number_cubic(F: CubicField) -> int:
    """Count ideal classes among the ideals of norm up to the Minkowski bound."""
    F.require_maximal()
    if abs(F.d) > 10**5:
        raise HypothesisViolated("|d|<=10^5", f"d = {F.d}")
    reps: list = []
    for _, I, Ic in _ideals_up_to(F, F.minkowski_bound):
        if not any(F.is_principal(F.ideal_mul(I, Jc)) is not None for Jc in reps):
            reps.append(Ic)
    return len(reps)


# ---------------------------------------------------------------------------
# p-rationality


def _local_factors(F: CubicField, p: int, N: int) -> list[list[int]]:
    """Lifts to Z/p^N of the irreducible factors of f over Z_p (p unramified)."""
    facs = F.prime_factors(p)
    mod = p**N
    f = [c % mod for c in F.f]
    df = [(i * c) % mod for i, c in enumerate(F.f)][1:]
    out = []
    lin_roots = []
    for g, e in facs:
        if e != 1:
            raise HypothesisViolated("p unramified", f"{p} divides the discriminant")
        if len(g) == 2:
            r = (-g[0]) % p
            m = p
            while m < mod:
                m = min(m * m, mod)
                fr = sum(c * pow(r, i, m) for i, c in enumerate(f)) % m
                dfr = sum(c * pow(r, i, m) for i, c in enumerate(df)) % m
                r = (r - fr * pow(dfr, -1, m)) % m
            lin_roots.append(r)
            out.append([(-r) % mod, 1])
    rest = f
    for r in lin_roots:
        rest = poly_divmod_monic(rest, [(-r) % mod, 1], mod)[0]
    if len(rest) > 1:
        out.append([c % mod for c in rest])
    return out


def fermat_quotient_vector(F: CubicField, u, p: int, N: int = 4) -> tuple[int, ...]:
    """Concatenated log(u)/p mod p over the primes above p."""
    out = []
    for G in _local_factors(F, p, N):
        ring = UnramifiedLocal(p, G, N)
        x = ring.element(list(u))
        try:
            lg = iwasawa_log(x)
        except PrecisionExhausted:
            out.extend([0] * ring.f)
            continue
        if lg.valuation() < 1:
            raise AssertionError("log of a unit must be divisible by p")
        out.extend(c // p % p for c in lg.coords)
    return tuple(out)


def p_rational_cubic(F: CubicField, p: int) -> PRational:
    if p < 5 or not is_prime(p):
        raise HypothesisViolated("p>=5 prime", f"p = {p}")
    if F.d % p == 0:
        raise HypothesisViolated("p∤d", f"{p} divides d(f) = {F.d}")
    F.require_maximal()
    if F.class_number % p == 0:
        return PRational.UNKNOWN
    vec = fermat_quotient_vector(F, F.fundamental_unit.coords, p)
    return PRational.YES if any(vec) else PRational.NO


def p_rational_imquad(D: int, p: int) -> PRational:
    """p >= 5: Yes when p does not divide h; a divisible h leaves the question open."""
    if p < 5 or not is_prime(p):
        raise HypothesisViolated("p>=5 prime", f"p = {p}")
    return PRational.UNKNOWN if class_number(D) % p == 0 else PRational.YES
