"""Norm-one formulas for C4 and C9, checked two ways.

Run: python3 demos/01_small_cyclic.py
"""
from normforge import formulas as lib
from normforge.oracle import oracle_check
from normforge.ring import to_text

F = lib.palfy_c4()
print("C4:", to_text(F.poly))
print("  symbolic:", F.verify(), " matrix model:", oracle_check(F.group, F.poly, seed=1))

for p in (2, 3, 5):
    F = lib.cp2_formula(p)
    count, deg = F.stats()
    print(f"C{p * p}: {count} monomials (written with {F.info['formal_terms']}), degree {deg}, verified {F.verify()}")

print("C9 formula equals the written-out 22-term formula:", lib.cp2_formula(3).poly == lib.c9_reference())
