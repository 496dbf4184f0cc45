"""The ten acceptance criteria.

Run under pytest (one PASS/FAIL line per criterion is printed in the
terminal summary) or directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import math
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from iwasawa_artin.arith import primes_in_range
from iwasawa_artin.artin import (
    DihedralS3Rep,
    build_icosahedral_group,
    in_S,
    plus_dimension,
    trace_multiset,
)
from iwasawa_artin.errors import ClosureFailure, PrecisionExhausted
from iwasawa_artin.invariants import gold_test, gross_regulator, lambda_classify
from iwasawa_artin.lambda_algebra import (
    CharSeries,
    CoeffRing,
    Undefined,
    characteristic_element,
    euler_characteristic,
    structure_invariants,
    weierstrass_invariants,
    weierstrass_prepare,
)
from iwasawa_artin.quadfield import _count_reduced, class_number, splitting, unit_count, Splitting
from iwasawa_artin.survey import cohen_lenstra, ejv, rank_failure, scan_T
from gen import random_product, random_structure
from oracles import class_number_minkowski, euler_function, fundamental_discs, is_prime_naive, log_series

PHI = (1 + math.sqrt(5)) / 2


# -- criterion 1 ---------------------------------------------------------------


def criterion_1():
    discs = fundamental_discs(-2000)
    t = time.perf_counter()
    lib = {D: _count_reduced(D) for D in discs}
    elapsed = time.perf_counter() - t
    bad = [D for D in discs if lib[D] != class_number_minkowski(D)]
    ok = not bad and elapsed < 60
    return ok, f"{len(discs)} discriminants, {len(bad)} mismatches, {elapsed:.2f}s"


# -- criterion 2 ---------------------------------------------------------------


def criterion_2():
    t = time.perf_counter()
    pairs = disagree = 0
    for D in fundamental_discs(-200):
        h, w = class_number(D), unit_count(D)
        for p in primes_in_range(5, 499):
            if (h * w) % p == 0 or splitting(D, p).kind is not Splitting.SPLIT:
                continue
            pairs += 1
            gold = gold_test(D, p).gt_one
            try:
                reg_big = gross_regulator(D, p).val >= 2
            except PrecisionExhausted:
                reg_big = True
            disagree += gold != reg_big
    elapsed = time.perf_counter() - t
    return disagree == 0 and pairs > 0 and elapsed < 120, f"{pairs} pairs, {disagree} disagreements, {elapsed:.2f}s"


# -- criterion 3 ---------------------------------------------------------------


def _brute_primitive(D: int, n: int):
    """Some (x, y) with (x^2 - D y^2)/4 = n and (x + y sqrt D)/2 not divisible by any p | n."""
    ymax = math.isqrt(4 * n // -D) + 1
    for y in range(0, ymax + 1):
        r = 4 * n + D * y * y
        if r < 0:
            break
        x = math.isqrt(r)
        if x * x == r and (x - y * D) % 2 == 0:
            if all(x % q or y % q for q in range(2, n + 1) if n % q == 0 and is_prime_naive(q)):
                return x, y
    return None


def _sqrt_lift(D: int, p: int, N: int, s0: int) -> int:
    s = s0
    for k in range(2, N + 1):
        m = p**k
        s = next(c for c in (s + j * p ** (k - 1) for j in range(p)) if (c * c - D) % m == 0)
    return s


def _oracle_lambda(D: int, p: int) -> str:
    """Euler's criterion, brute-force generators, the Gold trace and a series logarithm."""
    e = pow(D % p, (p - 1) // 2, p)
    h = class_number_minkowski(D)
    if e != 1:
        return "Zero" if h % p else "Unknown"
    r0 = next(r for r in itertools.count(1) if _brute_primitive(D, p**r))
    r = next(k * r0 for k in itertools.count(1) if k * r0 >= 2 and (k * r0) % p)
    x, y = _brute_primitive(D, p**r)
    gold_gt1 = pow(x % p**2, p - 1, p**2) == 1
    x0, y0 = _brute_primitive(D, p**r0)
    N = 8
    s0 = next(s for s in range(p) if (s * s - D) % p == 0 and (x0 + y0 * s) % p == 0)
    s = _sqrt_lift(D, p, N, s0)
    unit = (x0 - y0 * s) * pow(2, -1, p**N) % p**N  # iota(conj alpha)
    lg = log_series(unit, p, N)
    v = next(k for k in range(N + 1) if lg % p ** (k + 1)) if lg else N
    log_gt1 = v >= 2
    assert gold_gt1 == log_gt1
    return "GreaterThanOne" if gold_gt1 else "One"


PINNED = {(-4, 5): "One", (-3, 13): "GreaterThanOne", (-23, 5): "Zero"}


def criterion_3():
    oracle = {k: _oracle_lambda(*k) for k in PINNED}
    lib = {k: lambda_classify(*k).value.value for k in PINNED}
    ok = oracle == PINNED and lib == PINNED
    return ok, ", ".join(f"{k}->{lib[k]}" for k in PINNED)


# -- criterion 4 ---------------------------------------------------------------


def criterion_4():
    rng = random.Random(20240601)
    t = time.perf_counter()
    bad = total = 0
    for p in (5, 7):
        for _ in range(1000):
            mu, g, f = random_product(rng, p)
            mu2, g2, _ = weierstrass_prepare(f)
            total += 1
            bad += (mu2, g2) != (mu, g)
    elapsed = time.perf_counter() - t
    return bad == 0 and elapsed < 10, f"{total} products, {bad} mismatches, {elapsed:.2f}s"


# -- criterion 5 ---------------------------------------------------------------


def criterion_5():
    ring = CoeffRing(5, 2)
    n = bad = 0
    for coeffs in itertools.product(range(25), repeat=5):
        f = CharSeries(ring, coeffs)
        try:
            chi_one = euler_characteristic(f) == 1
        except PrecisionExhausted:
            chi_one = False
        try:
            trivial = weierstrass_invariants(f) == (0, 0)
        except PrecisionExhausted:
            trivial = False
        n += 1
        bad += chi_one != trivial
    rng = random.Random(7)
    bad_formula = 0
    for _ in range(1000):
        S = random_structure(rng, 5)
        chi = euler_characteristic(characteristic_element(S))
        # independent: f(0) = 5^(sum mu) * prod g_j(0)^lambda_j
        a0 = 5 ** sum(S.mus) * math.prod(g[0] ** lam for g, lam in S.polys)
        if a0 == 0:
            bad_formula += chi is not Undefined
            continue
        v = 0
        while a0 % 5 == 0:
            a0 //= 5
            v += 1
        bad_formula += chi != 5**v
        bad_formula += (chi == 1) != (structure_invariants(S) == (0, 0))
    ok = bad == 0 and bad_formula == 0 and n == 25**5
    return ok, f"{n} series exhaustive, {bad} dichotomy failures; {bad_formula} formula failures on 1000 products"


# -- criterion 6 ---------------------------------------------------------------


def criterion_6():
    try:
        G = build_icosahedral_group(tol=1e-6)
    except ClosureFailure as exc:
        return False, f"closure failed: {exc}"
    traces = trace_multiset(G)
    expected = {3.0: 1, -1.0: 15, 0.0: 20, PHI: 12, 1 - PHI: 12}
    five = [g for g in G if g.axis_class == "vertex"]
    eig_ok = True
    targets = [1, np.exp(2j * math.pi / 5), np.exp(-2j * math.pi / 5)]
    for g in five:
        if abs(g.trace - PHI) > 1e-9:
            continue
        ev = np.linalg.eigvals(g.matrix)
        eig_ok &= all(min(abs(e - z) for e in ev) < 1e-9 for z in targets)
    ok = len(G) == 60 and traces == expected and plus_dimension(G) == 1 and eig_ok
    return ok, f"|G|={len(G)}, traces={ {round(k, 6): v for k, v in traces.items()} }, d+={plus_dimension(G)}"


# -- criterion 7 ---------------------------------------------------------------


def criterion_7():
    rep = DihedralS3Rep.from_poly("x^3-x-1")
    t = time.perf_counter()
    ps = primes_in_range(2, 10**5)
    count = sum(bool(in_S(rep, p)) for p in ps)
    elapsed = time.perf_counter() - t
    ratio = count / len(ps)
    return 0.313 <= ratio <= 0.353 and elapsed < 30, f"{count}/{len(ps)} = {ratio:.4f}, {elapsed:.2f}s"


# -- criterion 8 ---------------------------------------------------------------


def criterion_8():
    rep = scan_T("x^3-x-1", 10**4)
    counts, n = [], 0
    for r in rep.rows:
        if r["verdict"] == "certified":
            n += 1
            ok_row = (
                r["prational_L"] == "yes"
                and r["prational_K0"] == "yes"
                and r["hK_source"] == "exact"
                and "assumed-h" not in r["notes"]
            )
            if not ok_row:
                return False, f"row {r['p']} certified without verified evidence"
        counts.append(n)
    nondecreasing = all(a <= b for a, b in zip(counts, counts[1:]))
    c = rep.summaries["c_fit"]
    ok = nondecreasing and n > 0 and not rep.metadata["assume_h"]
    return ok, f"{n} certified primes <= 10^4 (c*log x fit: c={c:.2f}, reported only)"


# -- criterion 9 ---------------------------------------------------------------


def criterion_9():
    diffs = []
    for p in (5, 7, 13):
        diffs.append(abs(ejv(p, 0, 60) - cohen_lenstra(p, 60)))
        diffs.append(abs(ejv(p, 0, 60) - euler_function(1 / p)))
    rf = rank_failure(1, 2, 5)
    ok = max(diffs) < 1e-12 and rf == Fraction("0.04")
    return ok, f"max |EJV-CL| = {max(diffs):.1e}, rank-failure(1,2,5) = {rf}"


# -- criterion 10 --------------------------------------------------------------


def criterion_10():
    results = []
    for X in (10**5, 10**4):
        serial = scan_T("x^3-x-1", X)
        parallel = scan_T("x^3-x-1", X, workers=4)
        results.append(serial.to_csv() == parallel.to_csv() and serial.to_json() == parallel.to_json())
    return all(results), f"byte-identical at X=10^5: {results[0]}, X=10^4: {results[1]}"


CRITERIA = {
    1: ("class-number oracle equivalence", criterion_1),
    2: ("Gold and regulator agree", criterion_2),
    3: ("pinned lambda classifications", criterion_3),
    4: ("Weierstrass round-trip", criterion_4),
    5: ("Euler-characteristic dichotomy", criterion_5),
    6: ("icosahedral suite", criterion_6),
    7: ("Chebotarev sanity", criterion_7),
    8: ("T(rho) counting property", criterion_8),
    9: ("heuristic identities", criterion_9),
    10: ("parallel scan determinism", criterion_10),
}


def _line(k: int, ok: bool, detail: str) -> str:
    return f"criterion {k:2d} [{'PASS' if ok else 'FAIL'}] {CRITERIA[k][0]}: {detail}"


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    from conftest import ACCEPTANCE_LINES

    try:
        ok, detail = CRITERIA[k][1]()
    except Exception as exc:  # report, then fail
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    line = _line(k, ok, detail)
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    failures = 0
    for k in sorted(CRITERIA):
        ok, detail = CRITERIA[k][1]()
        failures += not ok
        print(_line(k, ok, detail), flush=True)
    sys.exit(1 if failures else 0)
