"""Primes in S(rho) and T(rho) for the dihedral representation attached to x^3 - x - 1.

K0 = Q(theta) has discriminant -23, its Galois closure K is the Hilbert
class field of Q(sqrt(-23)), and h_K = 1 is certified by Minkowski's bound.
"""

from iwasawa_artin.artin import DihedralS3Rep, certify_T, icosahedral_checklist
from iwasawa_artin.cubicfield import CubicField
from iwasawa_artin.survey import scan_T

F = CubicField("x^3-x-1")
print("d =", F.d, " h =", F.class_number, " fundamental unit:", F.fundamental_unit)

rep = DihedralS3Rep(F)
print("d_K =", rep.sextic_discriminant)
v = certify_T(rep, 13)
print("p = 13:", v.t_status.value, v.evidence)

# %% Counting certified primes
report = scan_T(rep, 20000)
s = report.summaries
print(f"|S| = {s['S']}, certified = {s['certified']}, undetermined = {s['undetermined']}")
print(f"Chebotarev ratio {s['chebotarev_ratio']:.4f} (expected 1/3)")
for x, n in s["N_T"]:
    print(f"  N_T({x}) = {n}")
print(f"least-squares c in N_T(x) ~ c log x: {s['c_fit']:.2f}")

# %% The icosahedral side
print(icosahedral_checklist(7)["checks"])
