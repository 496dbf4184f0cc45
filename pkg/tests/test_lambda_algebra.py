import random

import pytest
from hypothesis import given, settings, strategies as st

from iwasawa_artin.errors import PrecisionExhausted
from iwasawa_artin.lambda_algebra import (
    CharSeries,
    StructureData,
    Undefined,
    base_change_invariants,
    characteristic_element,
    euler_characteristic,
    structure_invariants,
    vanishing_order,
    weierstrass_invariants,
    weierstrass_prepare,
)
from gen import random_product, random_structure


def poly(coeffs, p=5):
    return CharSeries.polynomial(coeffs, p)


def test_invariants_examples():
    assert weierstrass_invariants(poly([10, 5, 2, 1])) == (0, 2)  # (T^2+5)(2+T)
    assert weierstrass_invariants(poly([5, 5])) == (1, 0)
    assert weierstrass_invariants(poly([0, 0, 0, 1])) == (0, 3)


def test_prepare_examples():
    mu, g, u = weierstrass_prepare(poly([10, 5, 2, 1]))
    assert (mu, g) == (0, [5, 0, 1])
    assert list(u.coeffs[:3]) == [2, 1, 0]
    mu, g, u = weierstrass_prepare(poly([5, 5]))
    assert (mu, g) == (1, [1]) and list(u.coeffs[:2]) == [1, 1]
    mu, g, u = weierstrass_prepare(poly([0, 1, 5]))
    assert (mu, g) == (0, [0, 1]) and list(u.coeffs[:2]) == [1, 5]


def test_characteristic_element_examples():
    S = StructureData(5, (1,), (((5, 1), 1),))
    f = characteristic_element(S)
    assert list(f.coeffs) == [25, 5]
    assert structure_invariants(S) == (1, 1) == weierstrass_invariants(f)
    assert list(characteristic_element(StructureData(5)).coeffs) == [1]
    S = StructureData(5, (), (((5, 0, 1), 2),))
    assert list(characteristic_element(S).coeffs) == [25, 0, 10, 0, 1]
    assert structure_invariants(S) == (0, 4)


def test_structure_data_validation():
    with pytest.raises(ValueError):
        StructureData(5, (), (((1, 1), 1),))  # T + 1 is not distinguished
    with pytest.raises(ValueError):
        StructureData(5, (0,))


def test_euler_characteristic_examples():
    assert euler_characteristic(poly([25, 1])) == 25
    assert euler_characteristic(poly([3, 1])) == 1
    assert euler_characteristic(poly([0, 5, 1])) is Undefined
    with pytest.raises(PrecisionExhausted):
        euler_characteristic(CharSeries.from_coeffs([0, 1], 5, 4, 3))


def test_vanishing_order_and_base_change():
    assert vanishing_order(poly([0, 0, 5, 1])) == 2
    assert vanishing_order(poly([1, 1])) == 0
    assert vanishing_order(poly([5, 1])) == 0
    assert base_change_invariants(2, 3, 3) == (6, 3)
    assert base_change_invariants(0, 4, 5) == (0, 4)
    assert base_change_invariants(1, 0, 2) == (2, 0)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([5, 7]), st.integers(0, 2**32))
def test_prepare_round_trip(p, seed):
    mu, g, f = random_product(random.Random(seed), p)
    mu2, g2, u = weierstrass_prepare(f)
    assert (mu2, g2) == (mu, g)
    # re-expansion agrees with f to the certified precision
    m = p ** (u.ring.N + mu)
    lam = len(g) - 1
    from iwasawa_artin.arith import poly_mul

    back = poly_mul(g, list(u.coeffs))
    for i in range(f.M - lam):
        assert (p**mu * back[i] - f.coeffs[i]) % m == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_euler_formula_on_structures(seed):
    S = random_structure(random.Random(seed), 5)
    f = characteristic_element(S)
    chi = euler_characteristic(f)
    a0 = f.coeffs[0]
    if a0 == 0:
        assert chi is Undefined
    else:
        v = 0
        while a0 % 5 == 0:
            a0 //= 5
            v += 1
        assert chi == 5**v
        assert (chi == 1) == (structure_invariants(S) == (0, 0))


def test_json_round_trip():
    f = CharSeries.from_coeffs([1, 5, 25, 3], 5, 4, 3)
    assert CharSeries.from_json(f.to_json()) == f
    g = poly([5, 0, 1])
    assert CharSeries.from_json(g.to_json()) == g


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([5, 7]), st.integers(0, 2**32))
def test_short_truncations_report_their_precision(p, seed):
    from iwasawa_artin.arith import poly_mul
    from gen import random_distinguished, random_unit

    rng = random.Random(seed)
    M, N = rng.randint(1, 10), rng.randint(2, 8)
    mu, lam = rng.randint(0, min(2, N - 1)), rng.randint(0, M)
    g = random_distinguished(rng, p, lam, N)
    u = random_unit(rng, p, M + 5, N)
    f = CharSeries.from_coeffs([p**mu * c for c in poly_mul(g, u)], p, N, M)
    mu2, g2, unit = weierstrass_prepare(f)
    k = unit.ring.N
    assert k == (N - mu if lam == 0 else min(N - mu, (M + 1) // lam))
    assert mu2 == mu and len(g2) == len(g)
    assert all((a - b) % p**k == 0 for a, b in zip(g, g2))
