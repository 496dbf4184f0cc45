"""Lambda-invariants of Q(i) and Q(sqrt(-3)) at split primes.

Gold's congruence and the p-adic regulator give the same answer; this
script prints both for a handful of primes, then runs a small scan.
"""

from iwasawa_artin.invariants import gold_test, gross_regulator, lambda_classify
from iwasawa_artin.survey import scan_lambda

# %% Gold's congruence, one prime at a time
for D, p in [(-4, 5), (-4, 13), (-3, 7), (-3, 13)]:
    g = gold_test(D, p)
    reg = gross_regulator(D, p)
    print(f"D={D:3d} p={p:2d}  alpha={g.alpha}  Tr^(p-1) mod p^2 = {g.value:4d}  v(Reg)={reg.val}  ->",
          lambda_classify(D, p))

# %% A scan over p <= 2000 for Q(sqrt(-3))
rep = scan_lambda(-3, 2000)
s = rep.summaries
print()
print("primes scanned:", len(rep.rows))
print("lambda = 0 / 1 / >1 / ?:", s["count_zero"], s["count_one"], s["count_gt1"], s["count_unknown"])
print("split primes with lambda > 1:", [r["p"] for r in rep.rows if r["lambda"] == "gt1"])
print(f"M(X) = {s['M']}   1/2 log log X = {s['half_loglog']:.3f}   sum over split p of (1/p - 1/p^2) = {s['split_sum']:.3f}")
