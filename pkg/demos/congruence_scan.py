"""
Scanning the mod 8 congruence
=============================

For primes p1, p2 = 3 (mod 4) the quantity H = h(D) Psi(omega_D)/n - h(-p1) h(-p2) theta
is divisible by 8, for D = p1 p2 and for D = 4 p1 p2.  This script scans all
pairs up to a bound, shows how the 2-adic valuation of H is distributed, and
lists the first few cases where H is not divisible by 16.
"""

import sys
from collections import Counter

from quadcong.arith import valuation
from quadcong.congruence import scan

bound = int(sys.argv[1]) if len(sys.argv) > 1 else 5000
records = scan(bound, (1, 2))
print(f"{len(records)} records for p1 p2 <= {bound}; all divisible by 8: {all(r.holds_mod8 for r in records)}")

# how much more than 8 divides H?
for f in (1, 2):
    hist = Counter("H=0" if r.H == 0 else f"2^{valuation(2, r.H)}" for r in records if r.f == f)
    print(f"f={f}:", dict(sorted(hist.items())))

# the congruence is sharp: plenty of H are exactly divisible by 8
sharp = [r for r in records if r.H % 16]
for r in sharp[:8]:
    print(f"  D={r.delta:6d}  h={r.h_pos}  Psi={r.psi_omega:4d}  h(-p1)h(-p2)={r.h_neg1 * r.h_neg2}  H={r.H_factored}")
