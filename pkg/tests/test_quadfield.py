import pytest
from hypothesis import given, settings, strategies as st

from iwasawa_artin.errors import InvalidDiscriminant, NotPrincipal, SearchExhausted
from iwasawa_artin.quadfield import (
    BinaryQF,
    ClassNumberCache,
    ImagQuadField,
    QuadElement,
    Splitting,
    class_number,
    compose,
    prime_class_order,
    principal_generator,
    reduce_with_transform,
    reduced_forms,
    splitting,
)
from oracles import class_number_minkowski, fundamental_discs, is_prime_naive

DISCS = fundamental_discs(-400)


def test_class_number_examples():
    assert class_number(-23) == 3
    assert class_number(-4) == 1
    assert class_number(-47) == 5
    assert [(f.a, f.b, f.c) for f in reduced_forms(-23)] == [(1, 1, 6), (2, -1, 3), (2, 1, 3)]


def test_class_number_rejects_bad_input():
    for D in (-1, -8 * 9, 5, -12):
        with pytest.raises(InvalidDiscriminant):
            class_number(D)


@pytest.mark.parametrize("D", DISCS[::7])
def test_class_number_matches_ideal_oracle(D):
    assert class_number(D) == class_number_minkowski(D)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(DISCS), st.data())
def test_composition_is_a_group_law(D, data):
    forms = reduced_forms(D)
    f = data.draw(st.sampled_from(forms))
    g = data.draw(st.sampled_from(forms))
    k = data.draw(st.sampled_from(forms))
    e = BinaryQF.principal(D)
    assert compose(f, e) == f.reduced()
    assert compose(compose(f, g), k) == compose(f, compose(g, k))
    assert compose(f, g) == compose(g, f)
    assert (f ** len(forms)).is_principal()
    inv = BinaryQF(f.a, -f.b, f.c)
    assert compose(f, inv).is_principal()


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 50), st.integers(-50, 50), st.integers(1, 50))
def test_reduction_transform(a, b, c):
    D = b * b - 4 * a * c
    if D >= 0:
        return
    f = BinaryQF(a, b, c)
    g, M = reduce_with_transform(f)
    assert g.is_reduced() and g.discriminant == D
    (p, q), (r, s) = M
    assert p * s - q * r == 1
    for u, v in ((1, 0), (0, 1), (1, 1), (2, -3)):
        X, Y = p * u + q * v, r * u + s * v
        assert g.a * u * u + g.b * u * v + g.c * v * v == f.a * X * X + f.b * X * Y + f.c * Y * Y


def test_splitting_examples():
    assert splitting(-4, 5).kind is Splitting.SPLIT
    assert splitting(-4, 7).kind is Splitting.INERT
    assert splitting(-23, 23).kind is Splitting.RAMIFIED
    assert splitting(-23, 2).kind is Splitting.SPLIT


def test_class_orders_and_generators():
    assert prime_class_order(-23, 2) == 3
    assert prime_class_order(-4, 5) == 1
    assert prime_class_order(-23, 59) == 1
    assert principal_generator(-23, 2, 3) == QuadElement(-23, 3, 1)
    assert str(principal_generator(-4, 5, 1)) == "2+i"
    assert str(principal_generator(-4, 5, 2)) == "3+4i"
    with pytest.raises(NotPrincipal):
        principal_generator(-23, 2, 2)


@pytest.mark.parametrize("D", [-3, -4, -7, -23, -47, -163, -199])
def test_generators_have_the_right_norm_and_prime(D):
    for p in [q for q in range(3, 200) if is_prime_naive(q)]:
        st_ = splitting(D, p)
        if st_.kind is not Splitting.SPLIT:
            continue
        r0 = prime_class_order(D, p)
        if p**r0 > 10**12:
            with pytest.raises(SearchExhausted):
                principal_generator(D, p, r0)
            continue
        a = principal_generator(D, p, r0)
        assert a.norm == p**r0
        assert a.x % p or a.y % p  # not divisible by p, so P^r0 and not p * (...)
        # alpha lies in the designated prime: (x + y b)/2 = 0 mod p
        assert (a.x + a.y * st_.form.b) % p == 0
        assert a == a.canonical()


def test_generator_search_bound():
    with pytest.raises(SearchExhausted):
        principal_generator(-199, 5, 9 * prime_class_order(-199, 5), bound=10**6)


def test_cache_save_and_reload(tmp_path):
    cache = ClassNumberCache(tmp_path / "h.csv")
    assert cache.get(-47) == 5
    path = cache.save()
    assert path.read_text().splitlines()[:2] == ["D,h", "-47,5"]
    fresh = ClassNumberCache(path)
    assert fresh.get(-47) == 5


def test_field_object():
    K = ImagQuadField(-3)
    assert (K.w, K.h) == (6, 1)
    assert ImagQuadField(-4) == ImagQuadField(-4)
