"""Lambda-invariants of imaginary quadratic fields at split primes.

Two routes decide whether lambda_p(K) is 1 or larger when p splits and
p does not divide h_K:

* Gold's congruence.  Take a generator alpha of P**r with r >= 2 and
  p not dividing r.  Then lambda_p(K) > 1 exactly when
  alpha**(p-1) = 1 modulo Pbar**2.  Because Pbar**2 contains conj(alpha),
  alpha is congruent to Tr(alpha) there, and O/Pbar**2 is Z/p**2, so the test
  reduces to Tr(alpha)**(p-1) = 1 (mod p**2).
* The p-adic regulator.  With P**h = (alpha),
  Reg_p = (1/h) * log_p(iota(alpha / conj(alpha))), where iota is the
  embedding into Q_p in which P is the maximal ideal.  lambda_p(K) = 1
  exactly when Reg_p / p is a p-adic unit.

For a split prime the vanishing order r_{p,K} is taken to be 1, and 0 for
inert or ramified p.  This is the convention under which Gold's criterion,
the regulator identity and lambda >= r_{p,K} fit together.  The other
labelling (0 for split, 1 otherwise) is kept in the evidence record as
``printed_r``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .arith import hensel_sqrt, modpow
from .errors import HypothesisViolated, PrecisionExhausted
from .padic import PAdicNumber, iwasawa_log
from .quadfield import (
    QuadElement,
    Splitting,
    _principal_generator,
    class_number,
    prime_class_order,
    splitting,
    unit_count,
)

DEFAULT_PREC = 5
MAX_PREC = 10

CONVENTION_NOTE = "r_pK=1 for split p, 0 for inert/ramified p"


class GoldOutcome(enum.Enum):
    LAMBDA_EQ_ONE = "LambdaEqOne"
    LAMBDA_GT_ONE = "LambdaGtOne"


class LambdaValue(enum.Enum):
    ZERO = "Zero"
    ONE = "One"
    GREATER_THAN_ONE = "GreaterThanOne"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class GoldResult:
    outcome: GoldOutcome
    r: int
    alpha: QuadElement
    value: int  # Tr(alpha)^(p-1) mod p^2

    @property
    def gt_one(self) -> bool:
        return self.outcome is GoldOutcome.LAMBDA_GT_ONE


def _check_split_hypotheses(D: int, p: int) -> int:
    if p < 5:
        raise HypothesisViolated("p>=5", f"p = {p}")
    st = splitting(D, p)
    if st.kind is not Splitting.SPLIT:
        raise HypothesisViolated("split", f"{p} is {st.kind.value} in Q(sqrt({D}))")
    if unit_count(D) % p == 0:
        raise HypothesisViolated("p∤w", f"{p} divides w = {unit_count(D)}")
    h = class_number(D)
    if h % p == 0:
        raise HypothesisViolated("p∤h", f"{p} divides h = {h}")
    return h


def gold_exponent(D: int, p: int) -> int:
    """Least multiple r of the class order of P with r >= 2 and p not dividing r."""
    r0 = prime_class_order(D, p)
    r = r0
    while r < 2 or r % p == 0:
        r += r0
    return r


def gold_test(D: int, p: int, r: int | None = None) -> GoldResult:
    _check_split_hypotheses(D, p)
    if r is None:
        r = gold_exponent(D, p)
    elif r < 2 or r % p == 0:
        raise ValueError("r must be >= 2 and prime to p")
    alpha = _principal_generator(D, p, r)
    return gold_from_generator(alpha, p, r)


def gold_from_generator(alpha: QuadElement, p: int, r: int) -> GoldResult:
    p2 = p * p
    value = modpow(alpha.trace % p2, p - 1, p2)
    outcome = GoldOutcome.LAMBDA_GT_ONE if value == 1 else GoldOutcome.LAMBDA_EQ_ONE
    return GoldResult(outcome, r, alpha, value)


def embed(alpha: QuadElement, p: int, N: int) -> int:
    """iota(alpha) modulo p**N, for the embedding attached to the designated prime."""
    s0 = splitting(alpha.D, p).form.b % p
    s = hensel_sqrt(alpha.D, p, N, s0)
    mod = p**N
    return (alpha.x + alpha.y * s) * pow(2, -1, mod) % mod


def gross_regulator(D: int, p: int, N: int | None = None) -> PAdicNumber:
    """Reg_p(K) = (1/h) log_p iota(alpha/conj(alpha)) with sign normalised.

    Since iota(alpha) * iota(conj alpha) = p**h and log p = 0, this equals
    -(2/h) log_p iota(conj alpha), which only involves a unit.
    """
    h = _check_split_hypotheses(D, p)
    precs = [N] if N is not None else list(range(DEFAULT_PREC, MAX_PREC + 1))
    alpha = _principal_generator(D, p, h)
    last = None
    for n in precs:
        unit = embed(alpha.conjugate(), p, n)
        try:
            lg = iwasawa_log(PAdicNumber.from_residue(unit, p, n))
        except PrecisionExhausted as exc:
            last = exc
            continue
        reg = lg * PAdicNumber.from_fraction(-2, h, p, n)
        return reg.with_sign_normalised()
    raise PrecisionExhausted(f"regulator is 0 modulo {p}^{precs[-1]}") from last


def normalized_regulator(D: int, p: int, N: int | None = None) -> PAdicNumber:
    """Reg_p / p**r_{p,K} with r_{p,K} = 1 for split p."""
    reg = gross_regulator(D, p, N)
    return PAdicNumber(p, reg.unit, reg.val - 1, reg.prec)


@dataclass
class LambdaVerdict:
    D: int
    p: int
    value: LambdaValue
    evidence: dict = field(default_factory=dict)

    def __str__(self):
        return self.value.value


def lambda_classify(D: int, p: int) -> LambdaVerdict:
    ev: dict = {"convention": CONVENTION_NOTE, "mu": "0 (Ferrero-Washington, abelian fields)"}
    h = class_number(D)
    w = unit_count(D)
    st = splitting(D, p)
    ev["split"] = st.kind.value
    ev["h"] = h
    ev["p_divides_h"] = h % p == 0
    split = st.kind is Splitting.SPLIT
    ev["r_pK"] = 1 if split else 0
    ev["printed_r"] = 0 if split else 1

    def done(value):
        return LambdaVerdict(D, p, value, ev)

    if p < 5 or w % p == 0:
        ev["reason"] = "requires p>=5 and p∤w"
        return done(LambdaValue.UNKNOWN)
    if not split:
        return done(LambdaValue.UNKNOWN if h % p == 0 else LambdaValue.ZERO)
    if h % p == 0:
        ev["reason"] = "p divides h"
        return done(LambdaValue.UNKNOWN)
    g = gold_test(D, p)
    ev["gold_r"] = g.r
    ev["gold_alpha"] = str(g.alpha)
    ev["gold_value"] = g.value
    ev["w_K(mu_p)~p"] = True
    try:
        reg = gross_regulator(D, p)
        ev["reg_valuation"] = reg.val
    except PrecisionExhausted:
        ev["reg_valuation"] = f">={MAX_PREC}"
    return done(LambdaValue.GREATER_THAN_ONE if g.gt_one else LambdaValue.ONE)
