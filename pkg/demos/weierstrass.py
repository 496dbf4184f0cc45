"""Weierstrass preparation and Euler characteristics in Z_5[[T]]."""

import random

from iwasawa_artin.arith import poly_mul
from iwasawa_artin.lambda_algebra import (
    CharSeries,
    StructureData,
    characteristic_element,
    euler_characteristic,
    weierstrass_prepare,
)

# %% An exact polynomial: (T^2 + 5)(2 + T)
f = CharSeries.polynomial([10, 5, 2, 1], 5)
mu, g, u = weierstrass_prepare(f)
print("f = (T^2+5)(2+T):  mu =", mu, " g =", g, " u starts", list(u.coeffs[:4]))
print("Euler characteristic:", euler_characteristic(f))

# %% A truncated series: 25 * (T^3 + 5T + 10) * (random unit), known mod 5^12 up to T^64
rng = random.Random(1)
unit = [rng.randrange(5**12) for _ in range(65)]
unit[0] = 3
h = CharSeries.from_coeffs([25 * c for c in poly_mul([10, 5, 0, 1], unit)], 5, 12, 64)
mu, g, u = weierstrass_prepare(h)
print("truncated series:  mu =", mu, " g =", g, " known mod 5 ^", u.ring.N)

# %% Structure data -> characteristic element
S = StructureData(5, mus=(1,), polys=(((5, 1), 1), ((5, 0, 1), 2)))
F = characteristic_element(S)
print("5 * (T+5) * (T^2+5)^2 has chi =", euler_characteristic(F))
